//! Reference values computed without floating-point rounding, plus the
//! closed-form gamma identity used to audit the log-gamma routine.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::specfun::gamma_abs;
use crate::{Error, Result};

/// Complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq)]
struct Exact {
    re: BigRational,
    im: BigRational,
}

impl Exact {
    fn from_complex(z: Complex64) -> Result<Self> {
        let part = |x: f64| {
            BigRational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("{x} has no exact rational form")))
        };
        Ok(Self {
            re: part(z.re)?,
            im: part(z.im)?,
        })
    }

    fn integer(k: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(k)),
            im: BigRational::zero(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        Some(Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        })
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// `₂F₁(−n, b; c; x)` (or `₁F₁(−n; c; x)` when `b` is `None`) summed in exact
/// rational arithmetic from the binary values of the inputs, rounded once at
/// the end.
pub fn terminating_series_exact(n: usize, b: Option<Complex64>, c: Complex64, x: Complex64) -> Result<Complex64> {
    let b = b.map(Exact::from_complex).transpose()?;
    let c = Exact::from_complex(c)?;
    let x = Exact::from_complex(x)?;
    let mut term = Exact::integer(1);
    let mut sum = term.clone();
    for j in 0..n {
        let jj = Exact::integer(j as i64);
        let mut numer = x.mul(&Exact::integer(j as i64 - n as i64));
        if let Some(b) = &b {
            numer = numer.mul(&b.add(&jj));
        }
        let denom = c.add(&jj).mul(&Exact::integer(j as i64 + 1));
        term = term
            .mul(&numer)
            .div(&denom)
            .ok_or(Error::DegenerateDenominator { index: j })?;
        sum = sum.add(&term);
    }
    Ok(sum.to_complex())
}

/// `|Γ(1+iσ)|²·sinh(πσ)/(πσ)`, identically one.
pub fn gamma_identity(sigma: f64) -> Result<f64> {
    let g = gamma_abs(Complex64::new(1.0, sigma))?;
    Ok(g * g * (PI * sigma).sinh() / (PI * sigma))
}
