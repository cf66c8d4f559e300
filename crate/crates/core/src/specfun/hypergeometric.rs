//! Terminating hypergeometric series `₂F₁(−n, b; c; x)` and `₁F₁(−n; c; y)`.
//!
//! Both are degree-`n` polynomials summed by the forward term recurrence
//! `t_{j+1} = t_j·(−n+j)(b+j)x / ((c+j)(j+1))`. Terms and the running sum are
//! carried in double-double complex arithmetic: for `|b|, |c|, |x| ≤ 1` and
//! `n ≤ 30` the terms can exceed the sum by eleven orders of magnitude, which
//! plain compensated summation of f64 terms cannot absorb.

use num_complex::Complex;
use num_complex::Complex64;
use twofloat::TwoFloat;

use super::check_finite;
use crate::{Error, Result};

type Wide = Complex<TwoFloat>;

fn widen(z: Complex64) -> Wide {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

/// Quotient in full double-double precision. `TwoFloat`'s own division is
/// only accurate to about one f64 ulp, so its result gets one Newton
/// correction from the exact residual `a − q·b`.
fn div_wide(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b;
    let r = a - q * b;
    q + TwoFloat::from(r.hi() / b.hi())
}

fn div_complex(a: Wide, b: Wide) -> Wide {
    let norm = b.re * b.re + b.im * b.im;
    let p = a * b.conj();
    Wide::new(div_wide(p.re, norm), div_wide(p.im, norm))
}

fn narrow(z: Wide) -> Complex64 {
    Complex64::new(z.re.hi() + z.re.lo(), z.im.hi() + z.im.lo())
}

pub fn hyp2f1_terminating(n: usize, b: Complex64, c: Complex64, x: Complex64) -> Result<Complex64> {
    check_finite("b", b)?;
    check_finite("c", c)?;
    check_finite("x", x)?;
    terminating_series(n, Some(b), c, x)
}

pub fn hyp1f1_terminating(n: usize, c: Complex64, y: Complex64) -> Result<Complex64> {
    check_finite("c", c)?;
    check_finite("y", y)?;
    terminating_series(n, None, c, y)
}

fn terminating_series(n: usize, b: Option<Complex64>, c: Complex64, x: Complex64) -> Result<Complex64> {
    // (c)_j appears for j = 1..=n, i.e. factors c, c+1, ..., c+n−1.
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() && (-c.re) < n as f64 {
        return Err(Error::DegenerateDenominator {
            index: (-c.re) as usize,
        });
    }
    let x = widen(x);
    let b = b.map(widen);
    let c = widen(c);
    let one = TwoFloat::from(1.0);
    let mut term = Wide::new(one, TwoFloat::from(0.0));
    let mut sum = term;
    for j in 0..n {
        let jf = TwoFloat::from(j as f64);
        let mut numer = x * TwoFloat::from(j as f64 - n as f64);
        if let Some(b) = b {
            numer *= b + jf;
        }
        let denom = (c + jf) * (jf + one);
        term = div_complex(term * numer, denom);
        sum += term;
    }
    let value = narrow(sum);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!(
            "terminating series overflowed for n = {n}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn wide_division_is_double_double() {
        let q = div_wide(TwoFloat::from(1.0), TwoFloat::from(3.0));
        let r = q * TwoFloat::from(3.0) - TwoFloat::from(1.0);
        assert!(r.hi().abs() < 1e-31, "{:e}", r.hi());
    }

    #[test]
    fn empty_series() {
        let v = hyp2f1_terminating(0, Complex64::new(3.0, 1.0), r(-2.5), r(7.0)).unwrap();
        assert_eq!(v, r(1.0));
        assert_eq!(hyp1f1_terminating(0, r(0.5), r(9.0)).unwrap(), r(1.0));
    }

    #[test]
    fn one_term_series() {
        let v = hyp2f1_terminating(1, r(2.0), r(4.0), r(0.5)).unwrap();
        assert!((v - r(0.75)).norm() < 1e-16);
        let w = hyp1f1_terminating(1, r(0.5), r(1.0)).unwrap();
        assert!((w - r(-1.0)).norm() < 1e-16);
    }

    #[test]
    fn rational_two_term_value() {
        // 1 − 3 + 3/2
        let v = hyp1f1_terminating(2, r(2.0), r(3.0)).unwrap();
        assert!((v - r(-0.5)).norm() < 1e-15);
    }

    #[test]
    fn binomial_identity() {
        // ₂F₁(−n, b; b; x) = (1−x)ⁿ
        for b in [r(0.7), Complex64::new(-0.3, 1.2), r(5.0)] {
            let v = hyp2f1_terminating(3, b, b, r(0.25)).unwrap();
            assert!((v - r(0.421875)).norm() < 1e-15, "b = {b}: {v}");
        }
    }

    #[test]
    fn degenerate_denominator() {
        // c = −1 makes (c+1) vanish once j reaches 1, which needs n ≥ 2.
        assert!(matches!(
            hyp2f1_terminating(2, r(1.0), r(-1.0), r(0.5)),
            Err(Error::DegenerateDenominator { index: 1 })
        ));
        assert!(matches!(
            hyp1f1_terminating(1, r(0.0), r(0.5)),
            Err(Error::DegenerateDenominator { index: 0 })
        ));
        // The series stops before reaching c + j = 0.
        assert!(hyp2f1_terminating(2, r(1.0), r(-2.0), r(0.5)).is_ok());
    }
}
