use thiserror::Error;

use crate::Branch;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypergeometric denominator (c)_j vanishes at j = {index}")]
    DegenerateDenominator { index: usize },

    #[error("potential is singular at phi = {phi}")]
    SingularPoint { phi: f64 },

    #[error("{branch} branch is not admissible for k1 = {k1}: {reason}")]
    Branch {
        branch: Branch,
        k1: f64,
        reason: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenvalue bisection did not converge: {0}")]
    Convergence(String),

    #[error("imaginary residue {residue:e} in {quantity} exceeds the truncation threshold")]
    ImaginaryResidue { quantity: &'static str, residue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
