use crate::{Error, Result};

/// Symmetric tridiagonal matrix on the uniform grid `grid_offset + i·grid_step`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    pub grid_step: f64,
    pub grid_offset: f64,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>, grid_step: f64, grid_offset: f64) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal dimensions inconsistent: {} diagonal, {} off-diagonal entries",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
            grid_step,
            grid_offset,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.grid_offset + i as f64 * self.grid_step
    }
}

/// Second-order finite-difference discretization of
/// `H = −(1/(2R²)) d²/dφ² + V(φ)` on `n` interior nodes of `(a, b)` with
/// Dirichlet conditions at both ends.
///
/// Nodes sit at `a + i·h`, `i = 1..=n`, `h = (b − a)/(n + 1)`, so a potential
/// singular at an endpoint is never sampled there.
pub fn build_hamiltonian<V>(potential: V, radius: f64, domain: (f64, f64), n: usize) -> Result<TridiagonalMatrix>
where
    V: Fn(f64) -> Result<f64>,
{
    let (a, b) = domain;
    if !(a < b) || !(radius > 0.0) {
        return Err(Error::Domain(format!("invalid domain ({a}, {b}) or radius {radius}")));
    }
    if n < 16 {
        return Err(Error::InvalidParameter(format!("need at least 16 grid nodes, got {n}")));
    }
    let h = (b - a) / (n as f64 + 1.0);
    let kinetic = 1.0 / (2.0 * radius * radius * h * h);
    let diagonal = (1..=n)
        .map(|i| {
            let phi = a + i as f64 * h;
            let v = potential(phi)?;
            if v.is_finite() {
                Ok(2.0 * kinetic + v)
            } else {
                Err(Error::SingularPoint { phi })
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    TridiagonalMatrix::new(diagonal, vec![-kinetic; n - 1], h, a + h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_entries() {
        let m = build_hamiltonian(Ok, 2.0, (0.0, 1.0), 19).unwrap();
        let h = 1.0 / 20.0;
        assert_eq!(m.grid_step, h);
        assert_eq!(m.dim(), 19);
        let kinetic = 1.0 / (2.0 * 4.0 * h * h);
        for i in 0..m.dim() {
            let expected = 1.0 / (4.0 * h * h) + m.node(i);
            assert!((m.diagonal[i] - expected).abs() < 1e-12);
        }
        assert!(m.off_diagonal.iter().all(|&e| e == -kinetic));
    }

    #[test]
    fn singular_node_is_reported() {
        let err = build_hamiltonian(|x| Ok(1.0 / (x - 0.5)), 1.0, (0.0, 1.0), 19).unwrap_err();
        assert!(matches!(err, Error::SingularPoint { .. }));
        assert!(build_hamiltonian(|_| Ok(0.0), 1.0, (0.0, 1.0), 8).is_err());
    }
}
