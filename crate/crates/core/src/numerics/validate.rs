use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::{
    build_hamiltonian, convergence_order, eigenvalues_tridiagonal, gauss_legendre, ode_residual, richardson,
    EndpointRefinement, EquationForm, ValidationReport,
};
use crate::coulomb::{self, CoulombSystem};
use crate::oscillator::{self, OscillatorSystem};
use crate::{Branch, Result};

/// Fraction of the motion domain trimmed from each end for residual checks.
const RESIDUAL_TRIM: f64 = 0.05;
const NORM_PANELS: usize = 16;
const NORM_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemDescriptor {
    Oscillator(OscillatorSystem),
    Coulomb(CoulombSystem),
}

impl SystemDescriptor {
    pub fn case_id(&self) -> String {
        match self {
            Self::Oscillator(s) => format!(
                "oscillator/omega={}/R={}/k1={}/{}",
                s.omega(),
                s.radius(),
                s.k1(),
                s.branch()
            ),
            Self::Coulomb(s) => format!("coulomb/mu={}/R={}/k1={}/{}", s.mu(), s.radius(), s.k1(), s.branch()),
        }
    }
}

/// Finite-difference grids and residual sampling used by [`validate_system`].
///
/// The eigenvalue check runs on `coarse` interior nodes and on `2·coarse + 1`,
/// which halves the step exactly so Richardson extrapolation applies as is.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSchedule {
    pub coarse: usize,
    pub residual_steps: usize,
    pub residual_states: Vec<usize>,
}

impl GridSchedule {
    pub fn fine(&self) -> usize {
        2 * self.coarse + 1
    }
}

impl Default for GridSchedule {
    fn default() -> Self {
        Self {
            coarse: 4096,
            residual_steps: 200,
            residual_states: vec![0, 2, 5],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative error allowed on extrapolated eigenvalues (absolute for a
    /// zero level).
    pub spectrum: f64,
    /// Absolute error allowed on quadrature norms.
    pub norm: f64,
    /// Minimum observed convergence order of the FD eigenvalues and of the
    /// ODE residuals.
    pub min_order: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            spectrum: 1e-5,
            norm: 1e-8,
            min_order: 1.8,
        }
    }
}

/// `R∫₀^{π/2} Ψ_n² dφ`, which equals one.
pub fn oscillator_norm(sys: &OscillatorSystem, n: usize) -> Result<f64> {
    let rule = gauss_legendre(NORM_PANELS, NORM_ORDER, 0.0, FRAC_PI_2, EndpointRefinement::Both)?;
    let integral: f64 = rule.try_integrate(|phi| oscillator::wavefunction(sys, n, phi).map(|v| v * v))?;
    Ok(sys.radius() * integral)
}

/// `R∫₀^π Ψ_n Ψ_n^◊ dφ`, which equals ½.
pub fn coulomb_diamond_norm(sys: &CoulombSystem, n: usize) -> Result<Complex64> {
    let rule = gauss_legendre(NORM_PANELS, NORM_ORDER, 0.0, PI, EndpointRefinement::Both)?;
    let integral: Complex64 = rule.try_integrate(|phi| {
        Ok(coulomb::wavefunction(sys, n, phi)? * coulomb::diamond_conjugate(sys, n, phi)?)
    })?;
    Ok(integral * sys.radius())
}

/// Cross-checks the closed-form results for one system: FD + Richardson
/// eigenvalues of the lowest `levels` states, quadrature norms of states
/// `0..levels`, and ODE residual convergence for the scheduled states.
///
/// The FD oracle only sees the potential. Coulomb states of the minus family
/// (boundary exponent below one) are not FD-resolvable and are checked by
/// norm and residual only.
pub fn validate_system(
    desc: &SystemDescriptor,
    levels: usize,
    schedule: &GridSchedule,
    tol: &Tolerances,
) -> Vec<ValidationReport> {
    let base = desc.case_id();
    let mut reports = Vec::new();
    let fd_resolvable = !matches!(desc, SystemDescriptor::Coulomb(s) if s.branch() == Branch::Minus);
    if levels > 0 && fd_resolvable {
        reports.push(capture(&base, "fd-spectrum", tol.spectrum, || {
            spectrum_report(desc, levels, schedule, tol)
        }));
    }
    for n in 0..levels {
        reports.push(capture(&format!("{base}/n={n}"), "norm", tol.norm, || norm_report(desc, n, tol)));
    }
    for &n in &schedule.residual_states {
        reports.push(capture(&format!("{base}/n={n}"), "ode-residual", 0.1, || {
            residual_report(desc, n, schedule, tol)
        }));
    }
    reports
}

/// Turns an evaluation error into a failed report instead of aborting the
/// whole run.
fn capture<F>(case_id: &str, metric: &str, tolerance: f64, f: F) -> ValidationReport
where
    F: FnOnce() -> Result<ValidationReport>,
{
    f().unwrap_or_else(|e| ValidationReport::failed(format!("{case_id}/{metric}"), metric, tolerance, e.to_string()))
}

fn spectrum_report(
    desc: &SystemDescriptor,
    levels: usize,
    schedule: &GridSchedule,
    tol: &Tolerances,
) -> Result<ValidationReport> {
    let case_id = format!("{}/fd-spectrum", desc.case_id());
    let (analytic, coarse, fine, notes) = match desc {
        SystemDescriptor::Oscillator(sys) => {
            let mut analytic: Vec<f64> = oscillator::spectrum(sys, levels)?.iter().map(|l| l.energy).collect();
            analytic.truncate(levels);
            let domain = sys.motion_domain();
            let v = |phi: f64| oscillator::potential(sys, phi);
            let coarse = eigenvalues_tridiagonal(&build_hamiltonian(v, sys.radius(), domain, schedule.coarse)?, levels)?;
            let fine = eigenvalues_tridiagonal(&build_hamiltonian(v, sys.radius(), domain, schedule.fine())?, levels)?;
            let notes = if Branch::admissible(sys.k1()).len() > 1 {
                "analytic levels: sorted union of plus and minus branches"
            } else {
                "analytic levels: plus branch"
            };
            (analytic, coarse, fine, notes)
        }
        SystemDescriptor::Coulomb(sys) => {
            let principal = sys.with_branch(Branch::Plus)?;
            let analytic = (0..levels)
                .map(|n| coulomb::energy_level(&principal, n))
                .collect::<Result<Vec<f64>>>()?;
            let v = |phi: f64| coulomb::potential(sys, phi);
            let domain = (0.0, PI);
            let coarse = eigenvalues_tridiagonal(&build_hamiltonian(v, sys.radius(), domain, schedule.coarse)?, levels)?;
            let fine = eigenvalues_tridiagonal(&build_hamiltonian(v, sys.radius(), domain, schedule.fine())?, levels)?;
            (analytic, coarse, fine, "analytic levels: plus family (Dirichlet-regular states)")
        }
    };
    let extrapolated: Vec<f64> = coarse.iter().zip(&fine).map(|(&c, &f)| richardson(c, f, 2)).collect();
    let order = analytic
        .iter()
        .zip(coarse.iter().zip(&fine))
        .map(|(a, (c, f))| ((c - a).abs() / (f - a).abs()).log2())
        .fold(f64::INFINITY, f64::min);
    Ok(ValidationReport::new(case_id, "fd-spectrum", analytic, extrapolated, tol.spectrum)
        .with_rate(order, Some(tol.min_order))
        .with_grid(vec![schedule.coarse, schedule.fine()])
        .with_notes(notes))
}

fn norm_report(desc: &SystemDescriptor, n: usize, tol: &Tolerances) -> Result<ValidationReport> {
    let case_id = format!("{}/n={n}/norm", desc.case_id());
    let report = match desc {
        SystemDescriptor::Oscillator(sys) => {
            ValidationReport::new(case_id, "l2-norm", vec![1.0], vec![oscillator_norm(sys, n)?], tol.norm)
        }
        SystemDescriptor::Coulomb(sys) => {
            let v = coulomb_diamond_norm(sys, n)?;
            // Real part must be ½ and the imaginary part must vanish.
            ValidationReport::new(case_id, "diamond-norm", vec![0.5, 0.0], vec![v.re, v.im], tol.norm)
        }
    };
    // Norm tolerances are absolute; rescale the relative column accordingly.
    Ok(absolute(report).with_grid(vec![NORM_PANELS, NORM_ORDER]))
}

fn absolute(report: ValidationReport) -> ValidationReport {
    let abs_err = report.abs_err.clone();
    report.with_errors(abs_err.clone(), abs_err)
}

fn residual_report(
    desc: &SystemDescriptor,
    n: usize,
    schedule: &GridSchedule,
    tol: &Tolerances,
) -> Result<ValidationReport> {
    let case_id = format!("{}/n={n}/ode-residual", desc.case_id());
    let steps = schedule.residual_steps;
    let (coarse, fine) = match desc {
        SystemDescriptor::Oscillator(sys) => {
            let form = EquationForm::PoschlTeller {
                epsilon: oscillator::energy_epsilon(n, sys.k0(), sys.k1(), sys.branch())?,
                k0: sys.k0(),
                k1: sys.k1(),
            };
            let window = trimmed((0.0, FRAC_PI_2));
            let f = |phi: f64| oscillator::wavefunction(sys, n, phi).map(|v| Complex64::new(v, 0.0));
            (ode_residual(f, form, window, steps)?, ode_residual(f, form, window, 2 * steps)?)
        }
        SystemDescriptor::Coulomb(sys) => {
            let form = EquationForm::Coulomb {
                energy: coulomb::energy_level(sys, n)?,
                mu: sys.mu(),
                radius: sys.radius(),
                p_squared: sys.p_squared(),
            };
            let window = trimmed((0.0, PI));
            let f = |phi: f64| coulomb::wavefunction(sys, n, phi);
            (ode_residual(f, form, window, steps)?, ode_residual(f, form, window, 2 * steps)?)
        }
    };
    let order = convergence_order(coarse, fine);
    Ok(ValidationReport::new(case_id, "ode-residual", vec![2.0], vec![order], 0.1)
        .with_rate(order, Some(tol.min_order))
        .with_grid(vec![steps, 2 * steps])
        .with_notes(format!(
            "max residual {:e} (h = {:e}) -> {:e} (h = {:e}); numeric column is the observed order",
            coarse.max_residual, coarse.step, fine.max_residual, fine.step
        )))
}

fn trimmed((a, b): (f64, f64)) -> (f64, f64) {
    let cut = RESIDUAL_TRIM * (b - a);
    (a + cut, b - cut)
}
