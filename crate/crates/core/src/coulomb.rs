//! Singular Coulomb system on the circle and its duality with the singular
//! oscillator.
//!
//! The Schrödinger equation is taken as
//!
//! ```text
//! Ψ'' + (2R²E + 2μR cot|φ| + (p² − ¼)/sin²φ) Ψ = 0,   k₁² = 2 − 4p²,
//! ```
//!
//! so the potential is `V = −(μ/R) cot|φ| − (p² − ¼)/(2R² sin²φ)`. The change
//! of variable `e^{iφ} = cos θ` with `k = iμ` maps it onto the Pöschl–Teller
//! equation with `ε = 2R²E + 2kR`, `k₀² = 2R²E − 2kR`. Quantization fixes
//! `k₀ = −(n + ν) + iσ`, with `ν = (1 ± k₁)/2` and `σ = μR/(n + ν)`.
//!
//! `ν = 1` (`k₁ = 1`) is the pure Coulomb problem; `ν = ¾, ¼` (`k₁ = ½`) are the
//! two families that contract to one-dimensional Coulomb anyons.
//!
//! Branch choices: `(sin φ)^ν`, `Log` and the square root of the general
//! normalization constant all use principal branches.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{hyp2f1_terminating, ln_gamma_complex, ln_gamma_real};
use crate::{Branch, CircleGeometry, Error, PoschlTellerForm, Result};

/// Imaginary parts of complexified intermediates below this (relative) size
/// are rounding noise and are dropped from real results.
const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombSystem {
    geometry: CircleGeometry,
    mu: f64,
    k1: f64,
    branch: Branch,
}

impl CoulombSystem {
    /// `k1` is the duality singularity strength, `k₁² = 2 − 4p²`, restricted to
    /// `0 ≤ k₁ < √2` (equivalently `0 < p² ≤ ½`).
    pub fn new(geometry: CircleGeometry, mu: f64, k1: f64, branch: Branch) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Coulomb coupling mu must be finite and > 0, got {mu}"
            )));
        }
        if !(k1.is_finite() && k1 >= 0.0 && k1 * k1 < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "Coulomb k1 must satisfy 0 <= k1 < sqrt(2) (0 < p^2 <= 1/2), got {k1}"
            )));
        }
        branch.check(k1)?;
        Ok(Self {
            geometry,
            mu,
            k1,
            branch,
        })
    }

    /// Builds the system from `p²` instead of `k₁`.
    pub fn from_p_squared(geometry: CircleGeometry, mu: f64, p_squared: f64, branch: Branch) -> Result<Self> {
        if !(p_squared > 0.0 && p_squared <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "p^2 must lie in (0, 1/2], got {p_squared}"
            )));
        }
        Self::new(geometry, mu, (2.0 - 4.0 * p_squared).sqrt(), branch)
    }

    pub fn geometry(&self) -> CircleGeometry {
        self.geometry
    }

    pub fn radius(&self) -> f64 {
        self.geometry.radius()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn with_branch(&self, branch: Branch) -> Result<Self> {
        Self::new(self.geometry, self.mu, self.k1, branch)
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(CircleGeometry::new(radius)?, self.mu, self.k1, self.branch)
    }

    pub fn p_squared(&self) -> f64 {
        (2.0 - self.k1 * self.k1) / 4.0
    }

    /// `ν = (1 ± k₁)/2`.
    pub fn nu(&self) -> f64 {
        0.5 * (1.0 + self.branch.sign() * self.k1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombQuantumNumbers {
    pub n: usize,
    pub nu: f64,
    pub sigma: f64,
    pub k0: Complex64,
}

/// Confinement and binding parts of `E = (n+ν)²/(2R²) − μ²/(2(n+ν)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyTerms {
    pub confinement: f64,
    pub binding: f64,
}

impl EnergyTerms {
    pub fn total(&self) -> f64 {
        self.confinement - self.binding
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn on_half_turn(phi: f64) -> bool {
    let turns = phi / PI;
    (turns - turns.round()).abs() < 1e-12
}

pub fn potential(sys: &CoulombSystem, phi: f64) -> Result<f64> {
    if !phi.is_finite() || on_half_turn(phi) {
        return Err(Error::SingularPoint { phi });
    }
    let r = sys.radius();
    let a = phi.abs();
    let s = phi.sin();
    Ok(-(sys.mu / r) * (a.cos() / a.sin()) - (sys.p_squared() - 0.25) / (2.0 * r * r * s * s))
}

/// Complex Pöschl–Teller parameters at energy `E`:
/// `ε = 2R²E + 2iμR`, `k₀² = 2R²E − 2iμR`, `k₁² = 2 − 4p²`.
pub fn duality_parameters(sys: &CoulombSystem, energy: f64) -> PoschlTellerForm {
    let r = sys.radius();
    let k = Complex64::new(0.0, sys.mu);
    let epsilon = 2.0 * r * r * energy + 2.0 * k * r;
    let k0_squared = 2.0 * r * r * energy - 2.0 * k * r;
    PoschlTellerForm {
        epsilon,
        k0: -k0_squared.sqrt(),
        k1: sys.k1,
    }
}

pub fn quantize(sys: &CoulombSystem, n: usize) -> Result<CoulombQuantumNumbers> {
    sys.branch.check(sys.k1)?;
    let nu = sys.nu();
    let level = n as f64 + nu;
    let sigma = sys.mu * sys.radius() / level;
    Ok(CoulombQuantumNumbers {
        n,
        nu,
        sigma,
        k0: Complex64::new(-level, sigma),
    })
}

pub fn energy_terms(sys: &CoulombSystem, n: usize) -> Result<EnergyTerms> {
    let q = quantize(sys, n)?;
    let level = n as f64 + q.nu;
    let r = sys.radius();
    Ok(EnergyTerms {
        confinement: level * level / (2.0 * r * r),
        binding: flat_binding(sys.mu, level),
    })
}

/// `μ²/(2(n+ν)²)`, also the depth of the flat-space level.
pub(crate) fn flat_binding(mu: f64, level: f64) -> f64 {
    mu * mu / (2.0 * level * level)
}

/// `E_n = (n+ν)²/(2R²) − μ²/(2(n+ν)²)`.
pub fn energy_level(sys: &CoulombSystem, n: usize) -> Result<f64> {
    energy_terms(sys, n).map(|t| t.total())
}

/// Energy recovered through the complex duality route: `ε = (2n ± k₁ + k₀ + 1)²`
/// with the quantized `k₀`, then `E = (ε − 2iμR)/(2R²)`.
pub fn energy_from_duality(sys: &CoulombSystem, n: usize) -> Result<f64> {
    let q = quantize(sys, n)?;
    let r = sys.radius();
    let m = 2.0 * n as f64 + sys.branch.sign() * sys.k1 + q.k0 + 1.0;
    let epsilon = m * m;
    let energy = (epsilon - Complex64::new(0.0, 2.0 * sys.mu * r)) / (2.0 * r * r);
    let residue = energy.im.abs();
    if residue > IMAGINARY_RESIDUE_LIMIT * energy.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            quantity: "Coulomb energy",
            residue,
        });
    }
    Ok(energy.re)
}

/// `ln C` for [`norm_constant_sigma`].
pub fn ln_norm_constant_sigma(n: usize, nu: f64, sigma: f64, radius: f64) -> Result<f64> {
    if !(nu > 0.0 && sigma.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "normalization needs nu > 0, finite sigma and R > 0 (nu = {nu}, sigma = {sigma}, R = {radius})"
        )));
    }
    let nf = n as f64;
    let level = nf + nu;
    let ln_abs_gamma = ln_gamma_complex(Complex64::new(nu, sigma))?.re;
    let ln_root = (level * level + sigma * sigma).ln() + ln_gamma_real(nf + 2.0 * nu)?
        - (4.0 * PI * radius * level).ln()
        - ln_gamma_real(nf + 1.0)?;
    Ok(0.5 * sigma * PI + nu * LN_2 + ln_abs_gamma - ln_gamma_real(2.0 * nu)? + 0.5 * ln_root)
}

/// Real normalization constant of the `φ`-form wavefunction:
/// `C = e^{σπ/2}·2^ν·|Γ(ν+iσ)|/Γ(2ν)·√[((n+ν)² + σ²)Γ(n+2ν)/(4πR(n+ν)n!)]`.
/// For `ν = 1` this is `e^{σπ/2}|Γ(1+iσ)|√(((n+1)² + σ²)/(πR))`.
pub fn norm_constant_sigma(n: usize, nu: f64, sigma: f64, radius: f64) -> Result<f64> {
    ln_norm_constant_sigma(n, nu, sigma, radius).map(f64::exp)
}

/// Normalization constant obtained from the contour integral in the `θ`
/// variable (principal square root):
///
/// ```text
/// C_n = √[ (−ik₀)(2n+k₀±k₁+1) Γ(n+1±k₁) Γ(n+k₀±k₁+1)
///          / (R (1−e^{2iπk₀}) (2n±k₁+1) n! Γ(1±k₁)² Γ(n+k₀+1)) ]
/// ```
///
/// It normalizes `(sin θ)^{1±k₁}(cos θ)^{k₀}F(…; sin²θ)`; multiply its modulus
/// by [`angle_map_factor`] to compare with [`norm_constant_sigma`].
pub fn norm_constant_general(n: usize, k0: Complex64, k1: f64, radius: f64, branch: Branch) -> Result<Complex64> {
    let ks = branch.sign() * k1;
    let nf = n as f64;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let boundary = one - (2.0 * PI * i * k0).exp();
    if boundary.norm() == 0.0 {
        return Err(Error::Domain(format!("1 - exp(2 pi i k0) vanishes for k0 = {k0}")));
    }
    let ln_num = (-i * k0).ln()
        + (2.0 * nf + k0 + ks + 1.0).ln()
        + ln_gamma_real(nf + 1.0 + ks)?
        + ln_gamma_complex(nf + k0 + ks + 1.0)?;
    let ln_den = radius.ln()
        + boundary.ln()
        + (2.0 * nf + ks + 1.0).ln()
        + ln_gamma_real(nf + 1.0)?
        + 2.0 * ln_gamma_real(1.0 + ks)?
        + ln_gamma_complex(nf + k0 + 1.0)?;
    let mut ln_square = ln_num - ln_den;
    // Principal root: bring the argument of the radicand into (−π, π].
    ln_square.im = ln_square.im.rem_euclid(2.0 * PI);
    if ln_square.im > PI {
        ln_square.im -= 2.0 * PI;
    }
    Ok((0.5 * ln_square).exp())
}

/// `2^ν`: modulus ratio between the `φ`-form and `θ`-form normalizations,
/// from `(sin θ)^{2ν} = 2^ν (sin φ)^ν e^{iν(φ − π/2)}` under `e^{iφ} = cos θ`.
pub fn angle_map_factor(nu: f64) -> f64 {
    nu.exp2()
}

/// Wavefunction `Ψ = C (sin φ)^ν e^{−iφ(n−iσ)} ₂F₁(−n, ν+iσ; 2ν; 1 − e^{2iφ})`
/// on `0 < φ < π`.
pub fn wavefunction(sys: &CoulombSystem, n: usize, phi: f64) -> Result<Complex64> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::Domain(format!(
            "Coulomb wavefunction is defined on (0, pi), got phi = {phi}"
        )));
    }
    wavefunction_at(sys, n, Complex64::new(phi, 0.0))
}

/// Analytic continuation of [`wavefunction`] to complex `φ` with `sin φ ≠ 0`.
pub fn wavefunction_at(sys: &CoulombSystem, n: usize, phi: Complex64) -> Result<Complex64> {
    let q = quantize(sys, n)?;
    let s = phi.sin();
    if s.norm() == 0.0 || !(phi.re.is_finite() && phi.im.is_finite()) {
        return Err(Error::Domain(format!("sin(phi) vanishes or phi is not finite at phi = {phi}")));
    }
    let i = Complex64::new(0.0, 1.0);
    let ln_c = ln_norm_constant_sigma(n, q.nu, q.sigma, sys.radius())?;
    let exponent = ln_c + q.nu * s.ln() - i * phi * Complex64::new(n as f64, -q.sigma);
    let f = hyp2f1_terminating(
        n,
        Complex64::new(q.nu, q.sigma),
        Complex64::new(2.0 * q.nu, 0.0),
        1.0 - (2.0 * i * phi).exp(),
    )?;
    Ok(exponent.exp() * f)
}

/// `Ψ^◊(φ) = [Ψ(φ̄)]*`, the complex conjugate combined with the inversion
/// `φ → −φ` along the imaginary axis of `φ`. On the real segment `(0, π)` it
/// reduces to `Ψ*(φ)`, and on `φ = it` to `Ψ*(−φ)`.
pub fn diamond_conjugate(sys: &CoulombSystem, n: usize, phi: f64) -> Result<Complex64> {
    wavefunction(sys, n, phi).map(|v| v.conj())
}

pub fn diamond_conjugate_at(sys: &CoulombSystem, n: usize, phi: Complex64) -> Result<Complex64> {
    wavefunction_at(sys, n, phi.conj()).map(|v| v.conj())
}

/// Even or odd continuation of the state to `φ ∈ (−π, π)`:
/// `Ψ⁺(φ) = Ψ(|φ|)`, `Ψ⁻(φ) = sgn(φ)·Ψ(|φ|)`, both zero at `φ = 0`.
///
/// Only available when the motion extends over both half-circles, i.e. for
/// `p² ≤ ¼` (`k₁ ≥ 1`, which includes the pure Coulomb case).
pub fn extend_parity(sys: &CoulombSystem, n: usize, phi: f64, parity: Parity) -> Result<Complex64> {
    if sys.k1 < 1.0 {
        return Err(Error::Branch {
            branch: sys.branch,
            k1: sys.k1,
            reason: "motion is confined to one half-circle when p^2 > 1/4",
        });
    }
    if !(phi > -PI && phi < PI) {
        return Err(Error::Domain(format!("phi = {phi} is outside (-pi, pi)")));
    }
    if phi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let value = wavefunction(sys, n, phi.abs())?;
    Ok(match parity {
        Parity::Odd if phi < 0.0 => -value,
        _ => value,
    })
}
