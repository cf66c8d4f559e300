//! Numerical machinery that cross-checks the closed-form results without
//! reusing them: composite Gauss–Legendre quadrature, a finite-difference
//! Hamiltonian with a Sturm-bisection eigensolver, ODE residuals, Richardson
//! extrapolation and the `R → ∞` contraction-limit comparison.

mod contraction;
mod eigen;
mod hamiltonian;
pub mod oracle;
mod quadrature;
mod report;
mod residual;
mod richardson;
mod suite;
mod validate;

pub use contraction::{contraction_check, flat_limit_energy, flat_limit_wavefunction, ContractionFrame};
pub use eigen::{eigenvalues_tridiagonal, sturm_count};
pub use hamiltonian::{build_hamiltonian, TridiagonalMatrix};
pub use quadrature::{gauss_legendre, EndpointRefinement, QuadratureRule};
pub use report::ValidationReport;
pub use residual::{convergence_order, ode_residual, EquationForm, ResidualSample};
pub use richardson::richardson;
pub use suite::{run_suite, Suite, SuiteConfig};
pub use validate::{
    coulomb_diamond_norm, oscillator_norm, validate_system, GridSchedule, SystemDescriptor, Tolerances,
};
