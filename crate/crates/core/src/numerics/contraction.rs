use num_complex::Complex64;
use twofloat::TwoFloat;

use super::ValidationReport;
use crate::coulomb::{self, flat_binding, CoulombSystem};
use crate::specfun::{hyp1f1_terminating, ln_gamma_real};
use crate::{Error, Result};

const GAP_TOLERANCE: f64 = 1e-14;
/// Largest acceptable shape deviation at the smallest radius.
const SHAPE_TOLERANCE: f64 = 0.5;
const Y_SAMPLES: usize = 200;

/// Sampling plan for the `R → ∞` comparison: a fixed grid in the flat scaled
/// coordinate `y = 2μx/(n+ν)` (with `x = Rφ`) and an increasing sequence of
/// radii.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionFrame {
    pub y_grid: Vec<f64>,
    pub radius_sequence: Vec<f64>,
}

impl ContractionFrame {
    pub fn new(y_grid: Vec<f64>, radius_sequence: Vec<f64>) -> Result<Self> {
        if radius_sequence.is_empty() || radius_sequence.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter(format!(
                "radii must be non-empty and strictly increasing: {radius_sequence:?}"
            )));
        }
        if y_grid.is_empty() || y_grid.iter().any(|&y| !(y > 0.0 && y.is_finite())) {
            return Err(Error::InvalidParameter("y grid must be non-empty and positive".into()));
        }
        Ok(Self { y_grid, radius_sequence })
    }

    /// Uniform `y` grid on `(0, 20 + 5n]`, which covers the bulk of the
    /// state's support.
    pub fn standard(n: usize, radius_sequence: Vec<f64>) -> Result<Self> {
        let y_max = 20.0 + 5.0 * n as f64;
        let grid = (1..=Y_SAMPLES).map(|j| y_max * j as f64 / Y_SAMPLES as f64).collect();
        Self::new(grid, radius_sequence)
    }

    /// Flat coordinate `x = y(n+ν)/(2μ)`.
    pub fn x_of(y: f64, mu: f64, level: f64) -> f64 {
        y * level / (2.0 * mu)
    }
}

/// `ε_n = −μ²/(2(n+ν)²)`.
pub fn flat_limit_energy(mu: f64, n: usize, nu: f64) -> f64 {
    -flat_binding(mu, n as f64 + nu)
}

/// `Φ_n^ν(y) = √μ/(Γ(2ν)(n+ν)) · √(Γ(n+2ν)/(2·n!)) · y^ν e^{−|y|/2} ₁F₁(−n; 2ν; y)`.
pub fn flat_limit_wavefunction(mu: f64, n: usize, nu: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("flat wavefunction needs y > 0, got {y}")));
    }
    let nf = n as f64;
    let ln_prefactor = 0.5 * mu.ln() - ln_gamma_real(2.0 * nu)? - (nf + nu).ln()
        + 0.5 * (ln_gamma_real(nf + 2.0 * nu)? - std::f64::consts::LN_2 - ln_gamma_real(nf + 1.0)?);
    let f = hyp1f1_terminating(n, Complex64::new(2.0 * nu, 0.0), Complex64::new(y, 0.0))?;
    Ok((ln_prefactor + nu * y.ln() - 0.5 * y).exp() * f.re)
}

/// Checks both halves of the contraction limit for state `n` of `sys`:
///
/// * the energy gap `E_n(R) − ε_n` against `(n+ν)²/(2R²)`, with its log-log
///   decay rate across the radii;
/// * the sup-norm deviation between `Ψ_n(φ = x/R)` (after a least-squares
///   scale fit) and `Φ_n(y)`, which must shrink strictly as `R` grows.
pub fn contraction_check(sys: &CoulombSystem, n: usize, radii: &[f64]) -> Result<Vec<ValidationReport>> {
    let frame = ContractionFrame::standard(n, radii.to_vec())?;
    let nu = sys.nu();
    let level = n as f64 + nu;
    let mu = sys.mu();
    let tag = format!("contraction/nu={nu}/n={n}");

    let mut gap_expected = Vec::new();
    let mut gap_measured = Vec::new();
    for &r in &frame.radius_sequence {
        let terms = coulomb::energy_terms(&sys.with_radius(r)?, n)?;
        // E_n(R) and ε_n carried in double-double so the difference keeps
        // full precision even when the gap is 1e−8 of either term.
        let energy = TwoFloat::from(terms.confinement) - TwoFloat::from(terms.binding);
        let gap = energy - TwoFloat::from(flat_limit_energy(mu, n, nu));
        gap_measured.push(gap.hi() + gap.lo());
        gap_expected.push(level * level / (2.0 * r * r));
    }
    let gap_rate = min_log_slope(&frame.radius_sequence, &gap_measured);
    let gap_report = ValidationReport::new(format!("{tag}/energy-gap"), "energy-gap", gap_expected, gap_measured, GAP_TOLERANCE)
        .with_rate(gap_rate, Some(2.0 - 1e-9));

    let reference = frame
        .y_grid
        .iter()
        .map(|&y| flat_limit_wavefunction(mu, n, nu, y))
        .collect::<Result<Vec<f64>>>()?;
    let ref_peak = reference.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut deviations = Vec::new();
    let mut scales = Vec::new();
    for &r in &frame.radius_sequence {
        let curved = sys.with_radius(r)?;
        let mut samples = Vec::with_capacity(frame.y_grid.len());
        for &y in &frame.y_grid {
            let phi = ContractionFrame::x_of(y, mu, level) / r;
            if !(phi > 0.0 && phi < std::f64::consts::PI) {
                return Err(Error::Domain(format!("x/R = {phi} leaves (0, pi) at R = {r}")));
            }
            samples.push(coulomb::wavefunction(&curved, n, phi)?.re);
        }
        let scale = reference.iter().zip(&samples).map(|(a, b)| a * b).sum::<f64>()
            / samples.iter().map(|b| b * b).sum::<f64>();
        let deviation = reference
            .iter()
            .zip(&samples)
            .fold(0.0_f64, |m, (a, b)| m.max((scale * b - a).abs()))
            / ref_peak;
        deviations.push(deviation);
        scales.push(scale);
    }
    let shape_rate = min_log_slope(&frame.radius_sequence, &deviations);
    let shape_report = ValidationReport::new(
        format!("{tag}/shape"),
        "shape-deviation",
        vec![0.0; deviations.len()],
        deviations,
        SHAPE_TOLERANCE,
    )
    .with_rate(shape_rate, Some(f64::MIN_POSITIVE))
    .with_notes(format!(
        "fitted scales {scales:?}; rate is the smallest log-log decay slope between consecutive radii"
    ));

    Ok(vec![gap_report, shape_report])
}

/// Smallest `−d ln f / d ln R` between consecutive radii.
fn min_log_slope(radii: &[f64], values: &[f64]) -> f64 {
    radii
        .windows(2)
        .zip(values.windows(2))
        .map(|(r, v)| -(v[1] / v[0]).ln() / (r[1] / r[0]).ln())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gauss_legendre, EndpointRefinement};
    use crate::{Branch, CircleGeometry};

    fn system(k1: f64, branch: Branch) -> CoulombSystem {
        CoulombSystem::new(CircleGeometry::new(100.0).unwrap(), 1.0, k1, branch).unwrap()
    }

    #[test]
    fn flat_energy_values() {
        assert_eq!(flat_limit_energy(1.0, 0, 0.25), -8.0);
        assert_eq!(flat_limit_energy(2.0, 1, 1.0), -0.5);
    }

    #[test]
    fn gap_at_hundred() {
        let reports = contraction_check(&system(1.0, Branch::Plus), 0, &[100.0, 1000.0]).unwrap();
        assert!((reports[0].numeric[0] - 5e-5).abs() < 1e-19);
        assert!(reports[0].passed);
    }

    #[test]
    fn flat_wavefunction_is_half_normalized() {
        // ∫ Φ² dx = ½ with dx = (n+ν)/(2μ) dy.
        for (n, nu) in [(0, 0.25), (2, 0.75), (1, 1.0)] {
            let mu = 1.5;
            let rule = gauss_legendre(40, 20, 0.0, 150.0, EndpointRefinement::Left).unwrap();
            let integral: f64 = rule.integrate(|y| {
                let v = flat_limit_wavefunction(mu, n, nu, y).unwrap();
                v * v
            });
            let norm = integral * (n as f64 + nu) / (2.0 * mu);
            assert!((norm - 0.5).abs() < 1e-10, "n={n}, nu={nu}: {norm}");
        }
    }

    #[test]
    fn shape_converges() {
        for (k1, branch) in [(0.5, Branch::Plus), (0.5, Branch::Minus)] {
            let reports = contraction_check(&system(k1, branch), 1, &[1e2, 1e3, 1e4]).unwrap();
            let shape = &reports[1];
            assert!(shape.passed, "{shape:?}");
            assert!(shape.numeric[2] < 1e-3);
        }
    }

    #[test]
    fn frame_validation() {
        assert!(ContractionFrame::new(vec![1.0], vec![10.0, 5.0]).is_err());
        assert!(ContractionFrame::new(vec![0.0], vec![10.0]).is_err());
        let frame = ContractionFrame::standard(0, vec![10.0]).unwrap();
        assert_eq!(frame.y_grid.len(), Y_SAMPLES);
    }
}
