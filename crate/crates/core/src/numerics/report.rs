use serde::Serialize;

/// Outcome of one cross-check.
///
/// `rel_err` is taken relative to `|analytic|`, falling back to the absolute
/// error for a zero reference value. The check passes iff
/// `max rel_err ≤ tolerance` and, when a minimum is set, the measured
/// convergence rate reaches it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub case_id: String,
    pub metric: String,
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    pub abs_err: Vec<f64>,
    pub rel_err: Vec<f64>,
    pub convergence_rate: Option<f64>,
    pub min_rate: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub grid: Vec<usize>,
    pub notes: Option<String>,
}

impl ValidationReport {
    pub fn new(
        case_id: impl Into<String>,
        metric: impl Into<String>,
        analytic: Vec<f64>,
        numeric: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        let abs_err: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, b)| (a - b).abs()).collect();
        let rel_err = abs_err
            .iter()
            .zip(&analytic)
            .map(|(&e, &a)| if a == 0.0 { e } else { e / a.abs() })
            .collect();
        let mut report = Self {
            case_id: case_id.into(),
            metric: metric.into(),
            analytic,
            numeric,
            abs_err,
            rel_err,
            convergence_rate: None,
            min_rate: None,
            tolerance,
            passed: false,
            grid: Vec::new(),
            notes: None,
        };
        report.passed = report.evaluate();
        report
    }

    /// Report for a check that could not be carried out.
    pub fn failed(case_id: impl Into<String>, metric: impl Into<String>, tolerance: f64, reason: String) -> Self {
        let mut report = Self::new(case_id, metric, Vec::new(), Vec::new(), tolerance);
        report.passed = false;
        report.notes = Some(reason);
        report
    }

    pub fn with_rate(mut self, rate: f64, min_rate: Option<f64>) -> Self {
        self.convergence_rate = Some(rate);
        self.min_rate = min_rate;
        self.passed = self.evaluate();
        self
    }

    /// Replaces the error columns (e.g. with complex-modulus or absolute
    /// errors) and re-evaluates `passed`.
    pub fn with_errors(mut self, abs_err: Vec<f64>, rel_err: Vec<f64>) -> Self {
        self.abs_err = abs_err;
        self.rel_err = rel_err;
        self.passed = self.evaluate();
        self
    }

    pub fn with_grid(mut self, grid: Vec<usize>) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = Some(notes.into());
        self
    }

    pub fn max_rel_err(&self) -> f64 {
        self.rel_err.iter().fold(0.0, |m, &e| if e.is_nan() { f64::NAN } else { m.max(e) })
    }

    fn evaluate(&self) -> bool {
        if self.analytic.is_empty()
            || self.analytic.len() != self.numeric.len()
            || self.rel_err.len() != self.analytic.len()
        {
            return false;
        }
        let within = self.rel_err.iter().all(|e| *e <= self.tolerance);
        let rate_ok = match (self.min_rate, self.convergence_rate) {
            (Some(min), Some(rate)) => rate >= min,
            (Some(_), None) => false,
            (None, _) => true,
        };
        within && rate_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_tolerance() {
        let r = ValidationReport::new("a", "m", vec![1.0, 0.0], vec![1.0 + 1e-7, 2e-7], 1e-6);
        assert!(r.passed);
        assert!((r.rel_err[1] - 2e-7).abs() < 1e-20);
        let r = ValidationReport::new("a", "m", vec![1.0], vec![1.1], 1e-6);
        assert!(!r.passed);
        let r = ValidationReport::new("a", "m", vec![1.0], vec![f64::NAN], 1e-6);
        assert!(!r.passed);
    }

    #[test]
    fn rate_threshold() {
        let r = ValidationReport::new("a", "m", vec![1.0], vec![1.0], 1e-6);
        assert!(r.clone().with_rate(1.99, Some(1.8)).passed);
        assert!(!r.clone().with_rate(1.5, Some(1.8)).passed);
        assert!(r.with_rate(0.5, None).passed);
    }

    #[test]
    fn empty_report_fails() {
        assert!(!ValidationReport::failed("x", "m", 1.0, "boom".into()).passed);
    }
}
