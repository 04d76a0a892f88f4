//! Gauss–Legendre rules and a globally adaptive panel integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_deriv(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, lo: f64, hi: f64) -> f64 {
        self.mapped(lo, hi).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The shared 32-point rule used for every panel integral.
pub fn gauss_legendre_32() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(32))
}

/// Result of an adaptive vector-valued integration.
#[derive(Debug, Clone)]
pub struct PanelIntegral {
    pub values: Vec<f64>,
    /// Estimated absolute error, summed over components.
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

struct Panel {
    lo: f64,
    hi: f64,
    left: Vec<f64>,
    right: Vec<f64>,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn build_panel<F>(eval: &F, lo: f64, hi: f64, whole: Vec<f64>) -> Panel
where
    F: Fn(f64, f64) -> Vec<f64> + Sync,
{
    let mid = 0.5 * (lo + hi);
    let left = eval(lo, mid);
    let right = eval(mid, hi);
    let err = whole
        .iter()
        .zip(left.iter().zip(&right))
        .map(|(w, (a, b))| (a + b - w).abs())
        .sum();
    Panel {
        lo,
        hi,
        left,
        right,
        err,
    }
}

/// Globally adaptive integration of a vector-valued integrand.
///
/// `eval(lo, hi)` must return the fixed-rule integral over `[lo, hi]` for
/// every component. Each panel is compared with the sum over its two
/// halves; the worst panel is bisected until the summed error estimate is
/// below `rel_tol` times the L1 norm of the total, or `max_panels` is hit.
/// The final sum runs over panels in ascending position, so the result does
/// not depend on thread scheduling.
pub fn adaptive_panels<F>(eval: &F, initial: &[(f64, f64)], rel_tol: f64, max_panels: usize) -> PanelIntegral
where
    F: Fn(f64, f64) -> Vec<f64> + Sync,
{
    let seeds: Vec<Panel> = initial
        .par_iter()
        .map(|&(lo, hi)| {
            let whole = eval(lo, hi);
            build_panel(eval, lo, hi, whole)
        })
        .collect();
    let mut heap: BinaryHeap<Panel> = seeds.into_iter().collect();

    let total_of = |heap: &BinaryHeap<Panel>| -> (Vec<f64>, f64) {
        let mut panels: Vec<&Panel> = heap.iter().collect();
        panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let dim = panels.first().map_or(0, |p| p.left.len());
        let mut total = vec![0.0; dim];
        let mut err = 0.0;
        for p in panels {
            for (t, (a, b)) in total.iter_mut().zip(p.left.iter().zip(&p.right)) {
                *t += a + b;
            }
            err += p.err;
        }
        (total, err)
    };

    loop {
        let (total, err) = total_of(&heap);
        let converged = err <= rel_tol * l1(&total) || err == 0.0;
        if converged || heap.len() >= max_panels {
            return PanelIntegral {
                values: total,
                error: err,
                panels: heap.len(),
                converged,
            };
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        let (a, b) = rayon::join(
            || build_panel(eval, worst.lo, mid, worst.left),
            || build_panel(eval, mid, worst.hi, worst.right),
        );
        heap.push(a);
        heap.push(b);
    }
}

/// Adaptive integral of a scalar function over `[lo, hi]`.
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, rel_tol: f64) -> PanelIntegral
where
    F: Fn(f64) -> f64 + Sync,
{
    let rule = gauss_legendre_32();
    let eval = |a: f64, b: f64| vec![rule.integrate(&f, a, b)];
    adaptive_panels(&eval, &[(lo, hi)], rel_tol, 2000)
}

/// Adaptive integral over `[start, ∞)` for an integrand that decays on the
/// length `scale`. Panels double in width; integration stops once a panel
/// adds less than `rel_tol * 1e-3` of the running total.
pub fn integrate_to_infinity<F>(f: F, start: f64, scale: f64, rel_tol: f64) -> PanelIntegral
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut total = 0.0;
    let mut error = 0.0;
    let mut panels = 0;
    let mut lo = start;
    let mut width = scale;
    let mut converged = true;
    for j in 0..80 {
        let hi = lo + width;
        let part = integrate_adaptive(&f, lo, hi, rel_tol);
        converged &= part.converged;
        total += part.values[0];
        error += part.error;
        panels += part.panels;
        if j >= 2 && part.values[0].abs() <= 1e-3 * rel_tol * total.abs() {
            return PanelIntegral {
                values: vec![total],
                error,
                panels,
                converged,
            };
        }
        lo = hi;
        width *= 2.0;
    }
    PanelIntegral {
        values: vec![total],
        error,
        panels,
        converged: false,
    }
}
