//! Special functions needed by the closed-form wavefunctions and normalization
//! constants: complex log-gamma, `|Γ|`, Pochhammer symbols and terminating
//! hypergeometric series.

mod gamma;
mod hypergeometric;

pub use gamma::{gamma_abs, ln_gamma_complex, ln_gamma_real, pochhammer};
pub use hypergeometric::{hyp1f1_terminating, hyp2f1_terminating};

use num_complex::Complex64;

use crate::{Error, Result};

pub(crate) fn check_finite(name: &str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {z}")))
    }
}
