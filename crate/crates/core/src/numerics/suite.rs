use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{gamma_identity, terminating_series_exact};
use super::{
    contraction_check, coulomb_diamond_norm, oscillator_norm, validate_system, GridSchedule, SystemDescriptor,
    Tolerances, ValidationReport,
};
use crate::coulomb::{self, CoulombSystem};
use crate::oscillator::OscillatorSystem;
use crate::specfun::{hyp1f1_terminating, hyp2f1_terminating};
use crate::{Branch, CircleGeometry, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OscillatorFd,
    CoulombFd,
    Norms,
    Specfun,
    Contraction,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::OscillatorFd,
        Suite::CoulombFd,
        Suite::Norms,
        Suite::Specfun,
        Suite::Contraction,
        Suite::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::OscillatorFd => "oscillator-fd",
            Suite::CoulombFd => "coulomb-fd",
            Suite::Norms => "norms",
            Suite::Specfun => "specfun",
            Suite::Contraction => "contraction",
            Suite::All => "all",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.as_str() == name)
    }
}

/// Grid sizes and tolerances of the standard suites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub oscillator_grid: usize,
    pub coulomb_grid: usize,
    pub residual_steps: usize,
    pub oscillator_tolerance: f64,
    pub coulomb_tolerance: f64,
    pub norm_tolerance: f64,
    pub specfun_tolerance: f64,
    pub min_order: f64,
    pub contraction_radii: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            oscillator_grid: 4096,
            coulomb_grid: 8192,
            residual_steps: 200,
            oscillator_tolerance: 1e-5,
            coulomb_tolerance: 1e-4,
            norm_tolerance: 1e-8,
            specfun_tolerance: 1e-12,
            min_order: 1.8,
            contraction_radii: vec![1e2, 1e3, 1e4],
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<ValidationReport> + Send + Sync + 'a>;

/// Runs the selected suite. Cases run concurrently on the current rayon pool;
/// the merged list is ordered by `case_id`.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Vec<ValidationReport> {
    let mut jobs: Vec<Job> = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::OscillatorFd) {
        oscillator_jobs(config, &mut jobs);
    }
    if wants(Suite::CoulombFd) {
        coulomb_jobs(config, &mut jobs);
    }
    if wants(Suite::Norms) {
        norm_jobs(config, &mut jobs);
    }
    if wants(Suite::Specfun) {
        specfun_jobs(config, &mut jobs);
    }
    if wants(Suite::Contraction) {
        contraction_jobs(config, &mut jobs);
    }
    let mut reports: Vec<ValidationReport> = jobs.par_iter().flat_map_iter(|job| job()).collect();
    reports.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    reports
}

fn failure(case_id: &str, metric: &str, tolerance: f64, err: crate::Error) -> Vec<ValidationReport> {
    vec![ValidationReport::failed(case_id, metric, tolerance, err.to_string())]
}

fn oscillator_jobs<'a>(config: &'a SuiteConfig, jobs: &mut Vec<Job<'a>>) {
    // Singular well on the quarter circle, and the pure Pöschl–Teller well
    // k₁ = ½ whose spectrum interleaves both branches.
    let cases = [(1.5, Branch::Plus, 5), (0.5, Branch::Plus, 6)];
    for (k1, branch, levels) in cases {
        jobs.push(Box::new(move || {
            let sys = match CircleGeometry::new(1.0).and_then(|g| OscillatorSystem::new(g, 1.0, k1, branch)) {
                Ok(s) => s,
                Err(e) => return failure("oscillator", "setup", 0.0, e),
            };
            let schedule = GridSchedule {
                coarse: config.oscillator_grid,
                residual_steps: config.residual_steps,
                residual_states: vec![0, 2, 5],
            };
            let tol = Tolerances {
                spectrum: config.oscillator_tolerance,
                norm: config.norm_tolerance,
                min_order: config.min_order,
            };
            validate_system(&SystemDescriptor::Oscillator(sys), levels, &schedule, &tol)
        }));
    }
    // Minus-branch states only enter through norms and residuals.
    jobs.push(Box::new(move || {
        let sys = match CircleGeometry::new(1.0).and_then(|g| OscillatorSystem::new(g, 1.0, 0.5, Branch::Minus)) {
            Ok(s) => s,
            Err(e) => return failure("oscillator", "setup", 0.0, e),
        };
        let schedule = GridSchedule {
            coarse: config.oscillator_grid,
            residual_steps: config.residual_steps,
            residual_states: vec![0, 2, 5],
        };
        let tol = Tolerances {
            spectrum: config.oscillator_tolerance,
            norm: config.norm_tolerance,
            min_order: config.min_order,
        };
        validate_system(&SystemDescriptor::Oscillator(sys), 0, &schedule, &tol)
    }));
}

fn coulomb_jobs<'a>(config: &'a SuiteConfig, jobs: &mut Vec<Job<'a>>) {
    // (k₁, branch, FD levels): ν = 1 gets the FD eigenvalue check, ν = ¾ and
    // ν = ¼ (boundary exponent below one) residuals only.
    let cases = [(1.0, Branch::Plus, 4), (0.5, Branch::Plus, 0), (0.5, Branch::Minus, 0)];
    for (k1, branch, levels) in cases {
        jobs.push(Box::new(move || {
            let sys = match CircleGeometry::new(1.0).and_then(|g| CoulombSystem::new(g, 1.0, k1, branch)) {
                Ok(s) => s,
                Err(e) => return failure("coulomb", "setup", 0.0, e),
            };
            let schedule = GridSchedule {
                coarse: config.coulomb_grid,
                residual_steps: config.residual_steps,
                residual_states: vec![0, 2, 5],
            };
            let tol = Tolerances {
                spectrum: config.coulomb_tolerance,
                norm: config.norm_tolerance,
                min_order: config.min_order,
            };
            validate_system(&SystemDescriptor::Coulomb(sys), levels, &schedule, &tol)
        }));
    }
}

/// `(ν, k₁, branch)` of the three Coulomb families.
pub(crate) const COULOMB_FAMILIES: [(f64, f64, Branch); 3] =
    [(0.25, 0.5, Branch::Minus), (0.75, 0.5, Branch::Plus), (1.0, 1.0, Branch::Plus)];
const MU_R_GRID: [f64; 3] = [0.5, 1.0, 2.0];
const NORM_STATES: usize = 6;

fn norm_jobs<'a>(config: &'a SuiteConfig, jobs: &mut Vec<Job<'a>>) {
    for (nu, k1, branch) in COULOMB_FAMILIES {
        for mu in MU_R_GRID {
            jobs.push(Box::new(move || {
                let tag = format!("norms/coulomb/nu={nu}/muR={mu}");
                let sys = match CircleGeometry::new(1.0).and_then(|g| CoulombSystem::new(g, mu, k1, branch)) {
                    Ok(s) => s,
                    Err(e) => return failure(&tag, "setup", 0.0, e),
                };
                vec![diamond_report(&tag, &sys, config), consistency_report(&tag, &sys, config)]
            }));
        }
    }
    for (omega, radius, k1, branch) in [
        (1.0, 1.0, 1.5, Branch::Plus),
        (1.0, 1.0, 0.5, Branch::Plus),
        (1.0, 1.0, 0.5, Branch::Minus),
        (0.7, 1.3, 0.3, Branch::Minus),
        (2.0, 0.8, 2.5, Branch::Plus),
    ] {
        jobs.push(Box::new(move || {
            let tag = format!("norms/oscillator/omega={omega}/R={radius}/k1={k1}/{branch}");
            let sys = match CircleGeometry::new(radius).and_then(|g| OscillatorSystem::new(g, omega, k1, branch)) {
                Ok(s) => s,
                Err(e) => return failure(&tag, "setup", 0.0, e),
            };
            let values: Result<Vec<f64>> = (0..NORM_STATES).map(|n| oscillator_norm(&sys, n)).collect();
            match values {
                Ok(v) => {
                    let report = ValidationReport::new(format!("{tag}/l2-norm"), "l2-norm", vec![1.0; v.len()], v, config.norm_tolerance);
                    let abs = report.abs_err.clone();
                    vec![report.with_errors(abs.clone(), abs)]
                }
                Err(e) => failure(&format!("{tag}/l2-norm"), "l2-norm", config.norm_tolerance, e),
            }
        }));
    }
}

fn diamond_report(tag: &str, sys: &CoulombSystem, config: &SuiteConfig) -> ValidationReport {
    let case_id = format!("{tag}/diamond-norm");
    let values: Result<Vec<Complex64>> = (0..NORM_STATES).map(|n| coulomb_diamond_norm(sys, n)).collect();
    match values {
        Ok(values) => {
            let errors: Vec<f64> = values.iter().map(|v| (v - Complex64::new(0.5, 0.0)).norm()).collect();
            ValidationReport::new(
                case_id,
                "diamond-norm",
                vec![0.5; values.len()],
                values.iter().map(|v| v.re).collect(),
                config.norm_tolerance,
            )
            .with_errors(errors.clone(), errors)
            .with_notes("error column is |I − ½| including the imaginary part")
        }
        Err(e) => ValidationReport::failed(case_id, "diamond-norm", config.norm_tolerance, e.to_string()),
    }
}

/// `2^ν|C_general|` against `C_σ`, the two routes to the normalization.
fn consistency_report(tag: &str, sys: &CoulombSystem, _config: &SuiteConfig) -> ValidationReport {
    let case_id = format!("{tag}/norm-consistency");
    let values: Result<Vec<(f64, f64)>> = (0..NORM_STATES)
        .map(|n| {
            let q = coulomb::quantize(sys, n)?;
            let direct = coulomb::norm_constant_sigma(n, q.nu, q.sigma, sys.radius())?;
            let general = coulomb::norm_constant_general(n, q.k0, sys.k1(), sys.radius(), sys.branch())?;
            Ok((direct, coulomb::angle_map_factor(q.nu) * general.norm()))
        })
        .collect();
    match values {
        Ok(pairs) => ValidationReport::new(
            case_id,
            "norm-consistency",
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
            1e-10,
        ),
        Err(e) => ValidationReport::failed(case_id, "norm-consistency", 1e-10, e.to_string()),
    }
}

/// Deterministic low-discrepancy point in the unit disc.
fn disc_point(k: usize, salt: f64) -> Complex64 {
    let frac = |x: f64| x - x.floor();
    let u = frac(0.5 + k as f64 * 0.618_033_988_749_894_9 + salt);
    let v = frac(0.5 + k as f64 * 0.754_877_666_246_692_7 + 2.0 * salt);
    Complex64::from_polar(u.sqrt(), 2.0 * PI * v)
}

const ORACLE_SAMPLES: usize = 6;
const MAX_ORACLE_N: usize = 30;

fn specfun_jobs<'a>(config: &'a SuiteConfig, jobs: &mut Vec<Job<'a>>) {
    jobs.push(Box::new(move || {
        let sigmas: Vec<f64> = (0..100).map(|i| 10f64.powf(-3.0 + 4.0 * i as f64 / 99.0)).collect();
        let values: Result<Vec<f64>> = sigmas.iter().map(|&s| gamma_identity(s)).collect();
        match values {
            Ok(v) => vec![ValidationReport::new(
                "specfun/gamma-identity",
                "gamma-identity",
                vec![1.0; v.len()],
                v,
                config.specfun_tolerance,
            )
            .with_notes("|Gamma(1+i sigma)|^2 sinh(pi sigma)/(pi sigma), 100 log-spaced sigma in [1e-3, 10]")],
            Err(e) => failure("specfun/gamma-identity", "gamma-identity", config.specfun_tolerance, e),
        }
    }));
    for with_b in [true, false] {
        jobs.push(Box::new(move || {
            let name = if with_b { "hyp2f1-oracle" } else { "hyp1f1-oracle" };
            let case_id = format!("specfun/{name}");
            let mut exact_mod = Vec::new();
            let mut fast_mod = Vec::new();
            let mut abs_err = Vec::new();
            let mut rel_err = Vec::new();
            for n in 0..=MAX_ORACLE_N {
                for s in 0..ORACLE_SAMPLES {
                    let k = n * ORACLE_SAMPLES + s;
                    let b = disc_point(k, 0.1);
                    let c = disc_point(k, 0.37);
                    let x = disc_point(k, 0.71);
                    let pair = if with_b {
                        terminating_series_exact(n, Some(b), c, x).and_then(|e| Ok((e, hyp2f1_terminating(n, b, c, x)?)))
                    } else {
                        terminating_series_exact(n, None, c, x).and_then(|e| Ok((e, hyp1f1_terminating(n, c, x)?)))
                    };
                    match pair {
                        Ok((exact, fast)) => {
                            let diff = (fast - exact).norm();
                            exact_mod.push(exact.norm());
                            fast_mod.push(fast.norm());
                            abs_err.push(diff);
                            rel_err.push(diff / exact.norm());
                        }
                        Err(e) => return failure(&case_id, name, config.specfun_tolerance, e),
                    }
                }
            }
            vec![ValidationReport::new(case_id, name, exact_mod, fast_mod, config.specfun_tolerance)
                .with_errors(abs_err, rel_err)
                .with_grid(vec![MAX_ORACLE_N, ORACLE_SAMPLES])
                .with_notes("columns hold moduli; errors are complex |fast - exact| against exact rational summation")]
        }));
    }
}

fn contraction_jobs<'a>(config: &'a SuiteConfig, jobs: &mut Vec<Job<'a>>) {
    for (nu, k1, branch) in COULOMB_FAMILIES.into_iter().filter(|f| f.0 < 1.0) {
        for n in 0..3 {
            jobs.push(Box::new(move || {
                let tag = format!("contraction/nu={nu}/n={n}");
                let radius = config.contraction_radii.first().copied().unwrap_or(1.0);
                CircleGeometry::new(radius)
                    .and_then(|g| CoulombSystem::new(g, 1.0, k1, branch))
                    .and_then(|sys| contraction_check(&sys, n, &config.contraction_radii))
                    .unwrap_or_else(|e| failure(&tag, "contraction", 0.0, e))
            }));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.as_str()), Some(s));
        }
        assert_eq!(Suite::parse("bogus"), None);
    }

    #[test]
    fn specfun_suite_passes_and_is_sorted() {
        let reports = run_suite(Suite::Specfun, &SuiteConfig::default());
        assert_eq!(reports.len(), 3);
        assert!(reports.windows(2).all(|w| w[0].case_id <= w[1].case_id));
        for r in &reports {
            assert!(r.passed, "{} max rel {}", r.case_id, r.max_rel_err());
        }
    }

    #[test]
    fn disc_points_stay_inside() {
        for k in 0..500 {
            assert!(disc_point(k, 0.3).norm() <= 1.0);
        }
    }
}
