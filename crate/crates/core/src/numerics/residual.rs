use num_complex::Complex64;

use crate::{Error, Result};

/// Second-order equation `Ψ'' + B(φ)Ψ = 0` whose bracket `B` the residual
/// check evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquationForm {
    /// `B = ε − (k₀² − ¼)/cos²φ − (k₁² − ¼)/sin²φ`.
    PoschlTeller { epsilon: f64, k0: f64, k1: f64 },
    /// `B = 2R²E + 2μR cot|φ| + (p² − ¼)/sin²φ`.
    Coulomb {
        energy: f64,
        mu: f64,
        radius: f64,
        p_squared: f64,
    },
}

/// `coupling/w²`, or zero when the coupling vanishes (even where `w = 0`).
fn inverse_square(coupling: f64, w: f64) -> f64 {
    if coupling == 0.0 {
        0.0
    } else {
        coupling / (w * w)
    }
}

impl EquationForm {
    pub fn bracket(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        match *self {
            Self::PoschlTeller { epsilon, k0, k1 } => {
                epsilon - inverse_square(k0 * k0 - 0.25, c) - inverse_square(k1 * k1 - 0.25, s)
            }
            Self::Coulomb {
                energy,
                mu,
                radius,
                p_squared,
            } => {
                let a = phi.abs();
                2.0 * radius * radius * energy + 2.0 * mu * radius * a.cos() / a.sin() + inverse_square(p_squared - 0.25, s)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub step: f64,
    pub max_residual: f64,
}

/// Largest central-difference residual `|Ψ'' + BΨ|` over the `n + 1` nodes
/// `a + ih` of `window = (a, b)`, `h = (b − a)/n`.
///
/// Complex values are judged by the larger of the real and imaginary parts.
pub fn ode_residual<F>(wavefn: F, form: EquationForm, window: (f64, f64), n: usize) -> Result<ResidualSample>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (a, b) = window;
    if !(a < b) || n < 2 {
        return Err(Error::Domain(format!("residual window ({a}, {b}) with {n} steps")));
    }
    let h = (b - a) / n as f64;
    let values = (0..=n + 2)
        .map(|i| wavefn(a + (i as f64 - 1.0) * h))
        .collect::<Result<Vec<_>>>()?;
    let mut max_residual = 0.0_f64;
    for i in 1..=n + 1 {
        let phi = a + (i as f64 - 1.0) * h;
        let second = (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h);
        let r = second + values[i] * form.bracket(phi);
        max_residual = max_residual.max(r.re.abs()).max(r.im.abs());
    }
    Ok(ResidualSample { step: h, max_residual })
}

/// Observed order `p` from residuals `r ∝ h^p` on two grids.
pub fn convergence_order(coarse: ResidualSample, fine: ResidualSample) -> f64 {
    (coarse.max_residual / fine.max_residual).ln() / (coarse.step / fine.step).ln()
}
