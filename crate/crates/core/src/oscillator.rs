//! Singular oscillator on the circle,
//! `V(φ) = (ω²R²/2) tan²φ + (k₁² − ¼)/(2R² sin²φ)`.
//!
//! The Schrödinger equation `Ψ'' + 2R²[E − V]Ψ = 0` is of Pöschl–Teller type
//! with `ε = 2R²E + ω²R⁴` and `k₀² = ω²R⁴ + ¼`. For `k₁ > ½` only the `Plus`
//! family exists and the motion is confined to `(0, π/2)`. For `0 < k₁ ≤ ½`
//! both families contribute and the motion domain is `(−π/2, π/2)`; there the
//! `Plus` states are continued as odd and the `Minus` states as even functions
//! of `φ`. Wavefunctions are normalized by `R∫₀^{π/2} Ψ² dφ = 1` in every case.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::specfun::{hyp2f1_terminating, ln_gamma_real};
use crate::{Branch, CircleGeometry, Error, PoschlTellerForm, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSystem {
    geometry: CircleGeometry,
    omega: f64,
    k1: f64,
    branch: Branch,
}

impl OscillatorSystem {
    pub fn new(geometry: CircleGeometry, omega: f64, k1: f64, branch: Branch) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "oscillator frequency omega must be finite and >= 0, got {omega}"
            )));
        }
        if !(k1.is_finite() && k1 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "oscillator singularity strength k1 must be finite and > 0, got {k1}"
            )));
        }
        branch.check(k1)?;
        Ok(Self {
            geometry,
            omega,
            k1,
            branch,
        })
    }

    pub fn geometry(&self) -> CircleGeometry {
        self.geometry
    }

    pub fn radius(&self) -> f64 {
        self.geometry.radius()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn with_branch(&self, branch: Branch) -> Result<Self> {
        Self::new(self.geometry, self.omega, self.k1, branch)
    }

    /// `k₀ = √(ω²R⁴ + ¼) ≥ ½`.
    pub fn k0(&self) -> f64 {
        let r2 = self.radius() * self.radius();
        (self.omega * self.omega * r2 * r2 + 0.25).sqrt()
    }

    /// Open interval of allowed motion.
    pub fn motion_domain(&self) -> (f64, f64) {
        if self.k1 > 0.5 {
            (0.0, FRAC_PI_2)
        } else {
            (-FRAC_PI_2, FRAC_PI_2)
        }
    }
}

/// One bound state of a spectrum listing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub n: usize,
    pub branch: Branch,
    pub energy: f64,
}

/// `V = ½ω²R² tan²φ + (k₁² − ¼)/(2R² sin²φ)`.
///
/// A term whose coupling vanishes is dropped, so with `k₁ = ½` the point
/// `φ = 0` is regular (pure Pöschl–Teller well).
pub fn potential(sys: &OscillatorSystem, phi: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::SingularPoint { phi });
    }
    let r = sys.radius();
    let (s, c) = phi.sin_cos();
    let turns = phi / FRAC_PI_2;
    let on_quarter_turn = (turns - turns.round()).abs() < 1e-12;
    let odd_quarter = turns.round().rem_euclid(2.0) == 1.0;
    let mut v = 0.0;
    if sys.omega != 0.0 {
        if on_quarter_turn && odd_quarter {
            return Err(Error::SingularPoint { phi });
        }
        let tan = s / c;
        v += 0.5 * sys.omega * sys.omega * r * r * tan * tan;
    }
    let centrifugal = sys.k1 * sys.k1 - 0.25;
    if centrifugal != 0.0 {
        if on_quarter_turn && !odd_quarter {
            return Err(Error::SingularPoint { phi });
        }
        v += centrifugal / (2.0 * r * r * s * s);
    }
    Ok(v)
}

pub fn reduce_to_poschl_teller(sys: &OscillatorSystem, energy: f64) -> PoschlTellerForm {
    let r2 = sys.radius() * sys.radius();
    let epsilon = 2.0 * r2 * energy + sys.omega * sys.omega * r2 * r2;
    PoschlTellerForm {
        epsilon: Complex64::new(epsilon, 0.0),
        k0: Complex64::new(sys.k0(), 0.0),
        k1: sys.k1,
    }
}

/// Inverse of the `ε` map: `E = (ε − ω²R⁴)/(2R²)`.
pub fn energy_from_epsilon(sys: &OscillatorSystem, epsilon: f64) -> f64 {
    let r2 = sys.radius() * sys.radius();
    (epsilon - sys.omega * sys.omega * r2 * r2) / (2.0 * r2)
}

/// Quantized Pöschl–Teller eigenvalue `ε = (2n ± k₁ + k₀ + 1)²`.
pub fn energy_epsilon(n: usize, k0: f64, k1: f64, branch: Branch) -> Result<f64> {
    branch.check(k1)?;
    let m = 2.0 * n as f64 + branch.sign() * k1 + k0 + 1.0;
    Ok(m * m)
}

/// `E_n = [(2n ± k₁ + ½)² + (2k₀ + 1)(2n ± k₁ + 1)] / (2R²)`.
pub fn energy_level(sys: &OscillatorSystem, n: usize) -> Result<f64> {
    sys.branch.check(sys.k1)?;
    let r = sys.radius();
    let shifted = 2.0 * n as f64 + sys.branch.sign() * sys.k1;
    let a = shifted + 0.5;
    Ok((a * a + (2.0 * sys.k0() + 1.0) * (shifted + 1.0)) / (2.0 * r * r))
}

/// `ln` of the normalization prefactor of the n-th state.
fn ln_norm(sys: &OscillatorSystem, n: usize) -> Result<f64> {
    let k0 = sys.k0();
    let ks = sys.branch.sign() * sys.k1;
    let nf = n as f64;
    let ln_num = (2.0 * (2.0 * nf + k0 + ks + 1.0)).ln()
        + ln_gamma_real(nf + k0 + ks + 1.0)?
        + ln_gamma_real(nf + ks + 1.0)?;
    let ln_den = sys.radius().ln()
        + 2.0 * ln_gamma_real(1.0 + ks)?
        + ln_gamma_real(nf + k0 + 1.0)?
        + ln_gamma_real(nf + 1.0)?;
    Ok(0.5 * (ln_num - ln_den))
}

/// Normalized wavefunction
/// `Ψ_n = N·(sin φ)^{½±k₁}(cos φ)^{½+k₀}·₂F₁(−n, n+k₀±k₁+1; 1±k₁; sin²φ)`.
pub fn wavefunction(sys: &OscillatorSystem, n: usize, phi: f64) -> Result<f64> {
    sys.branch.check(sys.k1)?;
    let (lo, hi) = sys.motion_domain();
    if !(phi > lo && phi < hi) {
        return Err(Error::Domain(format!(
            "phi = {phi} is outside the motion domain ({lo}, {hi})"
        )));
    }
    let k0 = sys.k0();
    let ks = sys.branch.sign() * sys.k1;
    let s = phi.abs().sin();
    let c = phi.cos();
    let f = hyp2f1_terminating(
        n,
        Complex64::new(n as f64 + k0 + ks + 1.0, 0.0),
        Complex64::new(1.0 + ks, 0.0),
        Complex64::new(s * s, 0.0),
    )?;
    let value = ln_norm(sys, n)?.exp() * s.powf(0.5 + ks) * c.powf(0.5 + k0) * f.re;
    let parity = match sys.branch {
        Branch::Plus if phi < 0.0 => -1.0,
        _ => 1.0,
    };
    Ok(parity * value)
}

/// Levels `n = 0..=n_max` of every admissible branch, merged and sorted by
/// energy.
pub fn spectrum(sys: &OscillatorSystem, n_max: usize) -> Result<Vec<Level>> {
    let mut levels = Vec::new();
    for branch in Branch::admissible(sys.k1) {
        let family = sys.with_branch(branch)?;
        for n in 0..=n_max {
            levels.push(Level {
                n,
                branch,
                energy: energy_level(&family, n)?,
            });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.branch.cmp(&b.branch)));
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    use super::*;

    fn sys(omega: f64, r: f64, k1: f64, branch: Branch) -> OscillatorSystem {
        OscillatorSystem::new(CircleGeometry::new(r).unwrap(), omega, k1, branch).unwrap()
    }

    #[test]
    fn construction_enforces_branch_rule() {
        let g = CircleGeometry::new(1.0).unwrap();
        assert!(matches!(
            OscillatorSystem::new(g, 1.0, 0.75, Branch::Minus),
            Err(Error::Branch { .. })
        ));
        assert!(OscillatorSystem::new(g, -1.0, 1.0, Branch::Plus).is_err());
        assert!(OscillatorSystem::new(g, 1.0, 0.0, Branch::Plus).is_err());
    }

    #[test]
    fn potential_values() {
        let v = potential(&sys(1.0, 1.0, 0.5, Branch::Plus), FRAC_PI_4).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let v = potential(&sys(0.0, 1.0, 1.0, Branch::Plus), FRAC_PI_4).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
        let near = potential(&sys(0.0, 1.0, 1.0, Branch::Plus), FRAC_PI_2 - 1e-3).unwrap();
        assert!(near < v);
        let v = potential(&sys(2.0, 3.0, 1.0, Branch::Plus), FRAC_PI_6).unwrap();
        assert!((v - 6.166_666_666_666_667).abs() < 1e-13);
    }

    #[test]
    fn potential_singular_points() {
        let s = sys(1.0, 1.0, 1.0, Branch::Plus);
        for phi in [0.0, FRAC_PI_2, -FRAC_PI_2, std::f64::consts::PI] {
            assert!(matches!(potential(&s, phi), Err(Error::SingularPoint { .. })));
        }
        // k₁ = ½: no centrifugal term, the origin is an ordinary point.
        let pt = sys(1.0, 1.0, 0.5, Branch::Plus);
        assert_eq!(potential(&pt, 0.0).unwrap(), 0.0);
        assert!(potential(&pt, FRAC_PI_2).is_err());
    }

    #[test]
    fn poschl_teller_reduction() {
        let s = sys(0.0, 1.0, 1.0, Branch::Plus);
        let form = reduce_to_poschl_teller(&s, 2.0);
        assert_eq!(form.epsilon.re, 4.0);
        assert_eq!(form.k0.re, 0.5);
        let s = sys(1.0, 1.0, 1.0, Branch::Plus);
        let form = reduce_to_poschl_teller(&s, 0.0);
        assert_eq!(form.epsilon.re, 1.0);
        assert!((form.k0.re - 1.118_033_988_749_895).abs() < 1e-15);
        let s = sys(0.7, 1.3, 2.0, Branch::Plus);
        let e = 3.25;
        let back = energy_from_epsilon(&s, reduce_to_poschl_teller(&s, e).epsilon.re);
        assert!((back - e).abs() < 1e-14);
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(energy_epsilon(0, 0.5, 1.0, Branch::Plus).unwrap(), 6.25);
        let v = energy_epsilon(2, 5f64.sqrt() / 2.0, 0.25, Branch::Minus).unwrap();
        assert!((v - 34.433_822_893_124).abs() < 1e-12);
        assert_eq!(energy_epsilon(1, 0.5, 0.5, Branch::Minus).unwrap(), 9.0);
        assert_eq!(energy_epsilon(1, 0.5, 0.5, Branch::Plus).unwrap(), 16.0);
        assert!(matches!(
            energy_epsilon(0, 0.5, 0.75, Branch::Minus),
            Err(Error::Branch { .. })
        ));
    }

    #[test]
    fn energy_values() {
        let s = sys(0.0, 1.0, 1.0, Branch::Plus);
        assert!((energy_level(&s, 0).unwrap() - 3.125).abs() < 1e-15);
        let s = sys(1.0, 1.0, 1.0, Branch::Plus);
        assert!((energy_level(&s, 0).unwrap() - 4.361_067_977_499_79).abs() < 1e-13);
        let levels: Vec<f64> = (0..10).map(|n| energy_level(&s, n).unwrap()).collect();
        assert!(levels.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn spectrum_branch_rule() {
        let s = sys(0.0, 1.0, 0.5, Branch::Plus);
        let levels = spectrum(&s, 1).unwrap();
        assert_eq!(levels.len(), 4);
        for level in &levels {
            let direct = energy_level(&s.with_branch(level.branch).unwrap(), level.n).unwrap();
            assert_eq!(level.energy, direct);
        }
        assert!(levels.windows(2).all(|w| w[1].energy > w[0].energy));
        assert_eq!(levels[0].branch, Branch::Minus);

        let s = sys(1.0, 1.0, 0.75, Branch::Plus);
        assert!(spectrum(&s, 4).unwrap().iter().all(|l| l.branch == Branch::Plus));
    }

    #[test]
    fn wavefunction_boundaries_and_sign() {
        let s = sys(1.0, 1.0, 1.5, Branch::Plus);
        for n in 0..4 {
            assert!(wavefunction(&s, n, 1e-6).unwrap().abs() < 1e-9);
            assert!(wavefunction(&s, n, FRAC_PI_2 - 1e-6).unwrap().abs() < 1e-7);
        }
        for phi in [0.1, 0.7, 1.4] {
            assert!(wavefunction(&s, 0, phi).unwrap() > 0.0);
        }
        assert!(matches!(wavefunction(&s, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(wavefunction(&s, 0, FRAC_PI_2), Err(Error::Domain(_))));
        assert!(matches!(wavefunction(&s, 0, -0.3), Err(Error::Domain(_))));
    }

    #[test]
    fn wavefunction_parity_on_full_well() {
        let plus = sys(1.0, 1.0, 0.5, Branch::Plus);
        let minus = sys(1.0, 1.0, 0.5, Branch::Minus);
        for phi in [0.2, 0.9, 1.3] {
            for n in 0..3 {
                let p = wavefunction(&plus, n, phi).unwrap();
                assert_eq!(wavefunction(&plus, n, -phi).unwrap(), -p);
                let m = wavefunction(&minus, n, phi).unwrap();
                assert_eq!(wavefunction(&minus, n, -phi).unwrap(), m);
            }
        }
        assert_eq!(wavefunction(&plus, 1, 0.0).unwrap(), 0.0);
        assert!(wavefunction(&minus, 0, 0.0).unwrap() > 0.0);
    }
}
