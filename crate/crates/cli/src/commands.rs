use std::f64::consts::PI;

use serde::Serialize;

use circle_sqm::numerics::{run_suite, SuiteConfig, ValidationReport};
use circle_sqm::{coulomb, oscillator, Branch};

use crate::config::{Command, SpectrumArgs, System, SystemArgs, SystemKind, ValidateArgs, WavefunctionArgs};
use crate::output::{self, cell, cell_opt, num, num_opt, pretty, Document, Num, SCHEMA};
use crate::Failure;

pub fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(args) => spectrum(&args),
        Command::Wavefunction(args) => wavefunction(&args),
        Command::Validate(args) => validate(&args),
    }
}

/// Parameter echo written into every document.
#[derive(Serialize)]
struct SystemEcho {
    system: SystemKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<Num>,
    radius: Num,
    k1: Num,
    branch: Option<&'static str>,
}

impl SystemEcho {
    fn new(args: &SystemArgs, branch: Option<Branch>) -> Self {
        let (omega, mu) = match args.system {
            SystemKind::Oscillator => (Some(num(args.omega)), None),
            SystemKind::Coulomb => (None, Some(num(args.mu))),
        };
        Self {
            system: args.system,
            omega,
            mu,
            radius: num(args.radius),
            k1: num(args.k1),
            branch: branch.map(Branch::as_str),
        }
    }
}

// ---------------------------------------------------------------- spectrum

#[derive(Serialize)]
struct LevelRecord {
    system: SystemKind,
    n: usize,
    branch: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<Num>,
    energy: Num,
}

struct Level {
    n: usize,
    branch: Branch,
    nu: Option<f64>,
    sigma: Option<f64>,
    energy: f64,
}

struct SpectrumDoc {
    echo: SystemEcho,
    levels_per_branch: usize,
    kind: SystemKind,
    levels: Vec<Level>,
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a SystemEcho,
    levels_per_branch: usize,
    records: Vec<LevelRecord>,
}

impl Document for SpectrumDoc {
    fn to_json(&self) -> Result<String, Failure> {
        let records = self
            .levels
            .iter()
            .map(|l| LevelRecord {
                system: self.kind,
                n: l.n,
                branch: l.branch.as_str(),
                nu: num_opt(l.nu),
                sigma: num_opt(l.sigma),
                energy: num(l.energy),
            })
            .collect();
        pretty(&SpectrumJson {
            schema: SCHEMA,
            command: "spectrum",
            config: &self.echo,
            levels_per_branch: self.levels_per_branch,
            records,
        })
    }

    fn csv_header(&self) -> &'static [&'static str] {
        &["system", "n", "branch", "nu", "sigma", "energy"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let system = match self.kind {
            SystemKind::Oscillator => "oscillator",
            SystemKind::Coulomb => "coulomb",
        };
        self.levels
            .iter()
            .map(|l| {
                vec![
                    system.to_owned(),
                    l.n.to_string(),
                    l.branch.as_str().to_owned(),
                    cell_opt(l.nu),
                    cell_opt(l.sigma),
                    cell(l.energy),
                ]
            })
            .collect()
    }
}

fn spectrum(args: &SpectrumArgs) -> Result<(), Failure> {
    let branches = args.system.branches();
    // Validate every requested family before computing anything.
    let systems = branches
        .iter()
        .map(|&b| args.system.build(b).map(|s| (b, s)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut levels = Vec::new();
    for (branch, system) in systems {
        for n in 0..args.levels {
            levels.push(match system {
                System::Oscillator(s) => Level {
                    n,
                    branch,
                    nu: None,
                    sigma: None,
                    energy: oscillator::energy_level(&s, n)?,
                },
                System::Coulomb(s) => {
                    let q = coulomb::quantize(&s, n)?;
                    Level {
                        n,
                        branch,
                        nu: Some(q.nu),
                        sigma: Some(q.sigma),
                        energy: coulomb::energy_level(&s, n)?,
                    }
                }
            });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let doc = SpectrumDoc {
        echo: SystemEcho::new(&args.system, args.system.branch.map(Into::into)),
        levels_per_branch: args.levels,
        kind: args.system.system,
        levels,
    };
    output::write_atomic(args.output.output.as_deref(), &output::render(&doc, args.output.format)?)
}

// ------------------------------------------------------------ wavefunction

#[derive(Serialize)]
struct SampleRecord {
    phi: Num,
    re: Num,
    im: Num,
}

struct WavefunctionDoc {
    echo: SystemEcho,
    n: usize,
    domain: (f64, f64),
    samples: Vec<(f64, f64, f64)>,
}

#[derive(Serialize)]
struct WavefunctionJson<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a SystemEcho,
    n: usize,
    domain: [Num; 2],
    records: Vec<SampleRecord>,
}

impl Document for WavefunctionDoc {
    fn to_json(&self) -> Result<String, Failure> {
        pretty(&WavefunctionJson {
            schema: SCHEMA,
            command: "wavefunction",
            config: &self.echo,
            n: self.n,
            domain: [num(self.domain.0), num(self.domain.1)],
            records: self
                .samples
                .iter()
                .map(|&(phi, re, im)| SampleRecord {
                    phi: num(phi),
                    re: num(re),
                    im: num(im),
                })
                .collect(),
        })
    }

    fn csv_header(&self) -> &'static [&'static str] {
        &["phi", "re", "im"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.samples
            .iter()
            .map(|&(phi, re, im)| vec![cell(phi), cell(re), cell(im)])
            .collect()
    }
}

fn wavefunction(args: &WavefunctionArgs) -> Result<(), Failure> {
    if args.samples < 2 {
        return Err(Failure::Config(format!("--samples must be at least 2, got {}", args.samples)));
    }
    let branch: Branch = args.system.branch.map(Into::into).unwrap_or(Branch::Plus);
    let system = args.system.build(branch)?;
    let domain = match system {
        System::Oscillator(s) => s.motion_domain(),
        System::Coulomb(_) => (0.0, PI),
    };
    // Midpoints of `samples` equal cells: endpoints are never sampled.
    let h = (domain.1 - domain.0) / args.samples as f64;
    let mut samples = Vec::with_capacity(args.samples);
    for i in 0..args.samples {
        let phi = domain.0 + (i as f64 + 0.5) * h;
        let (re, im) = match system {
            System::Oscillator(s) => (oscillator::wavefunction(&s, args.n, phi)?, 0.0),
            System::Coulomb(s) => {
                let v = coulomb::wavefunction(&s, args.n, phi)?;
                (v.re, v.im)
            }
        };
        samples.push((phi, re, im));
    }
    let doc = WavefunctionDoc {
        echo: SystemEcho::new(&args.system, Some(branch)),
        n: args.n,
        domain,
        samples,
    };
    output::write_atomic(args.output.output.as_deref(), &output::render(&doc, args.output.format)?)
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct ReportRecord<'a> {
    case_id: &'a str,
    metric: &'a str,
    passed: bool,
    tolerance: Num,
    convergence_rate: Option<Num>,
    min_rate: Option<Num>,
    analytic: Vec<Num>,
    numeric: Vec<Num>,
    abs_err: Vec<Num>,
    rel_err: Vec<Num>,
    grid: &'a [usize],
    notes: Option<&'a str>,
}

#[derive(Serialize)]
struct ConfigEcho {
    oscillator_grid: usize,
    coulomb_grid: usize,
    residual_steps: usize,
    oscillator_tolerance: Num,
    coulomb_tolerance: Num,
    norm_tolerance: Num,
    specfun_tolerance: Num,
    min_order: Num,
    contraction_radii: Vec<Num>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ValidateJson<'a> {
    schema: &'static str,
    command: &'static str,
    suite: &'a str,
    config: ConfigEcho,
    summary: Summary,
    reports: Vec<ReportRecord<'a>>,
}

struct ValidateDoc {
    suite: String,
    config: SuiteConfig,
    reports: Vec<ValidationReport>,
}

impl ValidateDoc {
    fn failed(&self) -> usize {
        self.reports.iter().filter(|r| !r.passed).count()
    }
}

fn nums(values: &[f64]) -> Vec<Num> {
    values.iter().copied().map(num).collect()
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, &v| if v.is_nan() { f64::NAN } else { m.max(v) })
}

impl Document for ValidateDoc {
    fn to_json(&self) -> Result<String, Failure> {
        let c = &self.config;
        pretty(&ValidateJson {
            schema: SCHEMA,
            command: "validate",
            suite: &self.suite,
            config: ConfigEcho {
                oscillator_grid: c.oscillator_grid,
                coulomb_grid: c.coulomb_grid,
                residual_steps: c.residual_steps,
                oscillator_tolerance: num(c.oscillator_tolerance),
                coulomb_tolerance: num(c.coulomb_tolerance),
                norm_tolerance: num(c.norm_tolerance),
                specfun_tolerance: num(c.specfun_tolerance),
                min_order: num(c.min_order),
                contraction_radii: nums(&c.contraction_radii),
            },
            summary: Summary {
                total: self.reports.len(),
                passed: self.reports.len() - self.failed(),
                failed: self.failed(),
            },
            reports: self
                .reports
                .iter()
                .map(|r| ReportRecord {
                    case_id: &r.case_id,
                    metric: &r.metric,
                    passed: r.passed,
                    tolerance: num(r.tolerance),
                    convergence_rate: num_opt(r.convergence_rate),
                    min_rate: num_opt(r.min_rate),
                    analytic: nums(&r.analytic),
                    numeric: nums(&r.numeric),
                    abs_err: nums(&r.abs_err),
                    rel_err: nums(&r.rel_err),
                    grid: &r.grid,
                    notes: r.notes.as_deref(),
                })
                .collect(),
        })
    }

    fn csv_header(&self) -> &'static [&'static str] {
        &[
            "case_id",
            "metric",
            "passed",
            "cases",
            "max_abs_err",
            "max_rel_err",
            "tolerance",
            "convergence_rate",
            "min_rate",
            "grid",
            "notes",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.reports
            .iter()
            .map(|r| {
                vec![
                    r.case_id.clone(),
                    r.metric.clone(),
                    r.passed.to_string(),
                    r.analytic.len().to_string(),
                    cell(max_of(&r.abs_err)),
                    cell(max_of(&r.rel_err)),
                    cell(r.tolerance),
                    cell_opt(r.convergence_rate),
                    cell_opt(r.min_rate),
                    r.grid.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";"),
                    r.notes.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }
}

fn validate(args: &ValidateArgs) -> Result<(), Failure> {
    let suite = args.suite()?;
    let config = args.suite_config()?;
    let reports = run_suite(suite, &config);
    let doc = ValidateDoc {
        suite: suite.as_str().to_owned(),
        config,
        reports,
    };
    output::write_atomic(args.output.output.as_deref(), &output::render(&doc, args.output.format)?)?;
    match doc.failed() {
        0 => Ok(()),
        failed => Err(Failure::Checks {
            failed,
            total: doc.reports.len(),
        }),
    }
}
