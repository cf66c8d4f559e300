use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Circle `s₀² + s₁² = R²`, parametrized as `s₀ = R cos φ`, `s₁ = R sin φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleGeometry {
    radius: f64,
}

impl CircleGeometry {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "circle radius must be finite and > 0, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Ambient Cartesian coordinates `(s₀, s₁)` of the point at angle `phi`.
    pub fn embed(&self, phi: f64) -> (f64, f64) {
        (self.radius * phi.cos(), self.radius * phi.sin())
    }
}

/// Sign in front of `k₁` in the solution family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// `Minus` is admissible only when the extra `1/sin²` term is attractive,
    /// i.e. `0 < |k₁| ≤ ½`. `Plus` is always admissible.
    pub fn is_admissible(self, k1: f64) -> bool {
        match self {
            Branch::Plus => true,
            Branch::Minus => k1.abs() > 0.0 && k1.abs() <= 0.5,
        }
    }

    pub fn check(self, k1: f64) -> Result<()> {
        if self.is_admissible(k1) {
            Ok(())
        } else {
            Err(Error::Branch {
                branch: self,
                k1,
                reason: "minus requires 0 < |k1| <= 1/2",
            })
        }
    }

    /// Branches that contribute bound states for this `k₁`, `Plus` first.
    pub fn admissible(k1: f64) -> Vec<Branch> {
        [Branch::Plus, Branch::Minus]
            .into_iter()
            .filter(|b| b.is_admissible(k1))
            .collect()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters `(ε, k₀, k₁)` of the reduced Pöschl–Teller equation.
///
/// Real for the oscillator. For the Coulomb system `ε` and `k₀` are complex;
/// `k₀` is then the root with non-positive real part, the one selected by
/// quantization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoschlTellerForm {
    pub epsilon: Complex64,
    pub k0: Complex64,
    pub k1: f64,
}

impl PoschlTellerForm {
    pub fn k0_squared(&self) -> Complex64 {
        self.k0 * self.k0
    }

    pub fn k1_squared(&self) -> f64 {
        self.k1 * self.k1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_rejects_non_positive_radius() {
        assert!(CircleGeometry::new(0.0).is_err());
        assert!(CircleGeometry::new(-1.0).is_err());
        assert!(CircleGeometry::new(f64::NAN).is_err());
        let g = CircleGeometry::new(2.0).unwrap();
        let (s0, s1) = g.embed(0.3);
        assert!((s0 * s0 + s1 * s1 - 4.0).abs() < 1e-14);
    }

    #[test]
    fn branch_rule() {
        assert!(Branch::Plus.is_admissible(3.0));
        assert!(Branch::Minus.is_admissible(0.5));
        assert!(Branch::Minus.is_admissible(-0.25));
        assert!(!Branch::Minus.is_admissible(0.75));
        assert!(!Branch::Minus.is_admissible(0.0));
        assert_eq!(Branch::admissible(0.75), vec![Branch::Plus]);
        assert_eq!(Branch::admissible(0.5), vec![Branch::Plus, Branch::Minus]);
        assert!(matches!(
            Branch::Minus.check(0.75),
            Err(Error::Branch { branch: Branch::Minus, .. })
        ));
    }
}
