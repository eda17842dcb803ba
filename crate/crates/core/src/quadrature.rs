//! Gauss-Legendre rules, composite panels and a bisecting adaptive integrator.

use alloc::vec::Vec;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::PI;

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n` from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(m + h * x);
        }
        s * h
    }

    /// Append mapped nodes and weights for `[a, b]`.
    pub fn push_panel(&self, a: f64, b: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>) {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            nodes.push(m + h * x);
            weights.push(w * h);
        }
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule over consecutive breakpoints.
pub fn composite<F: FnMut(f64) -> f64>(rule: &GaussLegendre, breaks: &[f64], mut f: F) -> f64 {
    breaks
        .windows(2)
        .map(|ab| rule.integrate(ab[0], ab[1], &mut f))
        .sum()
}

/// Adaptive bisection: accept a panel when the one-panel and two-half-panel
/// values agree to its share of `max(abs_tol, rel_tol · |∫f|)`.
pub fn adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let rule = GaussLegendre::new(15);
    let whole = rule.integrate(a, b, &mut *f);
    let tol = abs_tol.max(rel_tol * whole.abs());
    adaptive_inner(f, &rule, a, b, whole, tol, 0)
}

fn adaptive_inner<F: FnMut(f64) -> f64>(
    f: &mut F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = rule.integrate(a, m, &mut *f);
    let right = rule.integrate(m, b, &mut *f);
    let refined = left + right;
    if depth >= 30 || (refined - whole).abs() <= tol {
        return refined;
    }
    adaptive_inner(f, rule, a, m, left, 0.5 * tol, depth + 1)
        + adaptive_inner(f, rule, m, b, right, 0.5 * tol, depth + 1)
}

/// `n + 1` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > 0.0 && n >= 1);
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                (l0 + (l1 - l0) * i as f64 / n as f64).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials_up_to_degree_2n_minus_1() {
        for n in [1usize, 2, 5, 16, 32] {
            let r = GaussLegendre::new(n);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = r.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg} got={got}");
            }
        }
    }

    #[test]
    fn weights_sum_to_two() {
        let r = GaussLegendre::new(16);
        let s: f64 = r.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_a_sharp_gaussian() {
        let mut f = |x: f64| (-(x * x) / 1e-4).exp();
        let got = adaptive(&mut f, -3.0, 3.0, 1e-14, 1e-13);
        let exact = (PI * 1e-4).sqrt();
        assert!((got - exact).abs() < 1e-12);
    }
}
