use super::{expand_roots_small, WaveSpeed, Zone, Zones};
use crate::{Error, Result};
use alloc::vec::Vec;
use nalgebra::Matrix4;
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// The four characteristic roots at one frequency as two conjugate pairs
/// `λ_R1 ± iλ_I1` and `λ_R2 ± iλ_I2`, with `λ_I1, λ_I2 ≥ 0`.
///
/// Pair 1 continues the oscillator pair `(−1 ± √3 i)/2` at `ξ = 0`, pair 2
/// the diffusion-plate pair that vanishes like `ξ²`. Along the positive
/// frequency axis pair 1 always carries the larger imaginary part, which is
/// how [`solve_quartic`] labels them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootQuartet {
    pub lam_r1: f64,
    pub lam_i1: f64,
    pub lam_r2: f64,
    pub lam_i2: f64,
    pub xi: f64,
    pub zone: Zone,
}

impl RootQuartet {
    /// `[λ1, λ2, λ3, λ4] = [R1+iI1, R1−iI1, R2+iI2, R2−iI2]`.
    pub fn roots(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.lam_r1, self.lam_i1),
            Complex64::new(self.lam_r1, -self.lam_i1),
            Complex64::new(self.lam_r2, self.lam_i2),
            Complex64::new(self.lam_r2, -self.lam_i2),
        ]
    }

    pub fn min_gap(&self) -> f64 {
        let r = self.roots();
        let mut g = f64::INFINITY;
        for i in 0..4 {
            for j in i + 1..4 {
                g = g.min((r[i] - r[j]).norm());
            }
        }
        g
    }

    pub fn max_real(&self) -> f64 {
        self.lam_r1.max(self.lam_r2)
    }

    /// `Π_{i<j} (λ_i − λ_j)²`, real for two conjugate pairs.
    pub fn discriminant(&self) -> f64 {
        let r = self.roots();
        let mut d = Complex64::new(1.0, 0.0);
        for i in 0..4 {
            for j in i + 1..4 {
                let g = r[i] - r[j];
                d *= g * g;
            }
        }
        d.re
    }

    /// Largest residual `|p(λ)| / max(1, ξ⁴)` over the four roots.
    pub fn residual(&self, a: WaveSpeed) -> f64 {
        let c = quartic_coefficients(a, self.xi);
        self.roots()
            .iter()
            .map(|&l| eval_poly(&c, l).0.norm())
            .fold(0.0, f64::max)
            / self.xi.powi(4).max(1.0)
    }
}

/// `[c0, c1, c2, c3]` of the monic quartic `λ⁴ + c3 λ³ + c2 λ² + c1 λ + c0`.
pub fn quartic_coefficients(a: WaveSpeed, xi: f64) -> [f64; 4] {
    let x2 = xi * xi;
    let a2 = a.a() * a.a();
    [a2 * x2 * x2, x2, 1.0 + (1.0 + a2) * x2, 1.0]
}

/// Pairwise root separation below which the Cramer formula is not used.
pub fn gap_tol(xi: f64) -> f64 {
    1e-8 * (1.0 + xi.abs())
}

fn eval_poly(c: &[f64; 4], l: Complex64) -> (Complex64, Complex64) {
    let p = (((l + c[3]) * l + c[2]) * l + c[1]) * l + c[0];
    let dp = ((l * 4.0 + 3.0 * c[3]) * l + 2.0 * c[2]) * l + c[1];
    (p, dp)
}

/// Roots of the characteristic quartic.
///
/// Eigenvalues of the companion matrix of the quartic rescaled by
/// `s = max(1, |ξ|)`, Newton polishing on the unscaled polynomial, then
/// conjugate symmetrisation. `ξ = 0` returns the exact factorisation
/// `λ²(λ² + λ + 1)`.
pub fn solve_quartic(a: WaveSpeed, xi: f64) -> Result<RootQuartet> {
    solve_quartic_in(a, xi, Zones::default())
}

pub fn solve_quartic_in(a: WaveSpeed, xi: f64, zones: Zones) -> Result<RootQuartet> {
    if !xi.is_finite() {
        return Err(Error::InvalidParameter("frequency must be finite"));
    }
    let zone = zones.classify(xi);
    if xi == 0.0 {
        return Ok(RootQuartet {
            lam_r1: -0.5,
            lam_i1: 3.0.sqrt() / 2.0,
            lam_r2: 0.0,
            lam_i2: 0.0,
            xi,
            zone,
        });
    }
    let c = quartic_coefficients(a, xi);
    let s = xi.abs().max(1.0);
    let mut m = Matrix4::<f64>::zeros();
    m[(1, 0)] = 1.0;
    m[(2, 1)] = 1.0;
    m[(3, 2)] = 1.0;
    m[(0, 3)] = -c[0] / s.powi(4);
    m[(1, 3)] = -c[1] / s.powi(3);
    m[(2, 3)] = -c[2] / s.powi(2);
    m[(3, 3)] = -c[3] / s;
    let ev = m.complex_eigenvalues();

    let mut r: [Complex64; 4] = [Complex64::new(0.0, 0.0); 4];
    for (k, e) in ev.iter().enumerate() {
        let mut l = Complex64::new(e.re, e.im) * s;
        for _ in 0..6 {
            let (p, dp) = eval_poly(&c, l);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            l -= step;
            if step.norm() <= 1e-15 * l.norm() {
                break;
            }
        }
        r[k] = l;
    }

    r.sort_by(|x, y| y.im.total_cmp(&x.im));
    let upper = [r[0], r[1]];
    let mut lower = [r[2], r[3]];
    // match each upper root with the lower root nearest its conjugate
    if (upper[0].conj() - lower[1]).norm() < (upper[0].conj() - lower[0]).norm() {
        lower.swap(0, 1);
    }
    let p0 = (upper[0] + lower[0].conj()) * 0.5;
    let p1 = (upper[1] + lower[1].conj()) * 0.5;
    let (first, second) = if p0.im.abs() >= p1.im.abs() {
        (p0, p1)
    } else {
        (p1, p0)
    };
    let q = RootQuartet {
        lam_r1: first.re,
        lam_i1: first.im.abs(),
        lam_r2: second.re,
        lam_i2: second.im.abs(),
        xi,
        zone,
    };
    let gap = q.min_gap();
    let tol = gap_tol(xi);
    if gap < tol {
        return Err(Error::DegenerateRoots { xi, gap, tol });
    }
    Ok(q)
}

/// Continuation labelling along an increasing sweep of positive frequencies.
///
/// The first frequency must lie in the interior zone; its roots are matched
/// to [`expand_roots_small`] and every later step assigns pairs by minimal
/// distance to the previous step. Used to confirm the ordering rule of
/// [`solve_quartic`].
pub fn track_roots(a: WaveSpeed, xis: &[f64]) -> Result<Vec<RootQuartet>> {
    let mut out: Vec<RootQuartet> = Vec::with_capacity(xis.len());
    let mut prev: Option<(Complex64, Complex64)> = None;
    for &xi in xis {
        let q = solve_quartic(a, xi)?;
        let anchor = match prev {
            Some(p) => p,
            None => {
                let e = expand_roots_small(a, xi)?;
                (
                    Complex64::new(e.lam_r1, e.lam_i1),
                    Complex64::new(e.lam_r2, e.lam_i2),
                )
            }
        };
        let u1 = Complex64::new(q.lam_r1, q.lam_i1);
        let u2 = Complex64::new(q.lam_r2, q.lam_i2);
        let keep = (u1 - anchor.0).norm() + (u2 - anchor.1).norm();
        let swap = (u2 - anchor.0).norm() + (u1 - anchor.1).norm();
        let (p1, p2) = if keep <= swap { (u1, u2) } else { (u2, u1) };
        out.push(RootQuartet {
            lam_r1: p1.re,
            lam_i1: p1.im,
            lam_r2: p2.re,
            lam_i2: p2.im,
            ..q
        });
        prev = Some((p1, p2));
    }
    Ok(out)
}
