use std::f64::consts::PI;

use crate::{Error, Result};

/// Geometric grading toward a singular endpoint: each refined panel is this
/// fraction of the previous one.
const GRADING_RATIO: f64 = 0.25;
const GRADING_LEVELS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointRefinement {
    None,
    Left,
    Right,
    Both,
}

impl EndpointRefinement {
    fn left(self) -> bool {
        matches!(self, Self::Left | Self::Both)
    }

    fn right(self) -> bool {
        matches!(self, Self::Right | Self::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        F: FnMut(f64) -> T,
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&x, &w)| acc + f(x) * w)
    }

    /// Like [`integrate`](Self::integrate) for fallible integrands.
    pub fn try_integrate<T, F>(&self, mut f: F) -> Result<T>
    where
        F: FnMut(f64) -> Result<T>,
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let mut acc = T::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(x)? * w;
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`.
fn reference_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let m = order.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Composite Gauss–Legendre rule on `[a, b]` with `panel_count` equal panels.
///
/// With endpoint refinement the outermost panel at each refined end is
/// replaced by panels shrinking geometrically toward the endpoint, which keeps
/// integrands like `(sin φ)^{1/2}` accurate to near machine precision.
pub fn gauss_legendre(
    panel_count: usize,
    order: usize,
    a: f64,
    b: f64,
    refinement: EndpointRefinement,
) -> Result<QuadratureRule> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("quadrature interval [{a}, {b}] is empty")));
    }
    if order < 2 || panel_count == 0 {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs order >= 2 and at least one panel (order = {order}, panels = {panel_count})"
        )));
    }
    let width = (b - a) / panel_count as f64;
    let mut panels: Vec<(f64, f64)> = Vec::new();
    for p in 0..panel_count {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == panel_count { b } else { a + (p + 1) as f64 * width };
        let refine_left = p == 0 && refinement.left();
        let refine_right = p + 1 == panel_count && refinement.right();
        match (refine_left, refine_right) {
            (false, false) => panels.push((lo, hi)),
            (true, false) => panels.extend(graded(lo, hi, true)),
            (false, true) => panels.extend(graded(lo, hi, false)),
            (true, true) => {
                let mid = 0.5 * (lo + hi);
                panels.extend(graded(lo, mid, true));
                panels.extend(graded(mid, hi, false));
            }
        }
    }
    let (ref_nodes, ref_weights) = reference_rule(order);
    let mut nodes = Vec::with_capacity(panels.len() * order);
    let mut weights = Vec::with_capacity(panels.len() * order);
    for (lo, hi) in panels {
        let half = 0.5 * (hi - lo);
        let centre = 0.5 * (hi + lo);
        for (x, w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(centre + half * x);
            weights.push(half * w);
        }
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Splits `[lo, hi]` into panels graded toward `lo` (or `hi`).
fn graded(lo: f64, hi: f64, toward_lo: bool) -> Vec<(f64, f64)> {
    let len = hi - lo;
    // Panels narrower than a few hundred ulps of the endpoint would place
    // nodes on the endpoint itself.
    let endpoint = if toward_lo { lo } else { hi };
    let floor = 256.0 * f64::EPSILON * endpoint.abs();
    let mut cuts: Vec<f64> = (0..=GRADING_LEVELS)
        .map(|k| len * GRADING_RATIO.powi(k as i32))
        .take_while(|&w| w > floor)
        .collect();
    cuts.push(0.0);
    let mut panels: Vec<(f64, f64)> = cuts
        .windows(2)
        .map(|w| if toward_lo { (lo + w[1], lo + w[0]) } else { (hi - w[0], hi - w[1]) })
        .collect();
    panels.reverse();
    if !toward_lo {
        panels.reverse();
    }
    panels
}
