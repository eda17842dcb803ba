use super::{gap_tol, InducedData, RootQuartet};
use crate::{Error, Result};
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Coefficient amplification `max|d_j| / max_k |u_k| s^{-k}` above which a
/// representation is flagged as ill-conditioned.
pub const AMPLIFICATION_LIMIT: f64 = 1e12;

/// `û(t) = Σ d_j e^{λ_j t}` for one frequency, or the closed form at `ξ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Representation {
    kind: Kind,
    /// `max|d_j|` relative to the scaled data size; large values mean the
    /// Cramer solve lost digits.
    pub amplification: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Modal {
        roots: [Complex64; 4],
        d: [Complex64; 4],
    },
    /// `û = u0 + u1 t + α(e^{rt}−1−rt)/r² + γ(e^{r̄t}−1−r̄t)/r̄²` with `r² + r + 1 = 0`.
    ZeroMode {
        u0: Complex64,
        u1: Complex64,
        alpha: Complex64,
        gamma: Complex64,
        r: Complex64,
    },
}

impl Representation {
    pub fn new(q: &RootQuartet, data: &InducedData) -> Result<Self> {
        if q.xi == 0.0 {
            return Ok(Self::zero_mode(data));
        }
        let gap = q.min_gap();
        let tol = gap_tol(q.xi);
        if gap < tol {
            return Err(Error::DegenerateRoots { xi: q.xi, gap, tol });
        }
        let d = cramer(q, &data.u);
        let roots = q.roots();
        let s = roots.iter().fold(1.0f64, |m, r| m.max(r.norm()));
        let mut scale = 0.0f64;
        let mut sk = 1.0;
        for u in &data.u {
            scale = scale.max(u.norm() / sk);
            sk *= s;
        }
        let dmax = d.iter().fold(0.0f64, |m, x| m.max(x.norm()));
        let amplification = if scale > 0.0 { dmax / scale } else { 0.0 };
        Ok(Self {
            kind: Kind::Modal { roots, d },
            amplification,
        })
    }

    fn zero_mode(data: &InducedData) -> Self {
        let [u0, u1, u2, u3] = data.u;
        let r = Complex64::new(-0.5, 3.0.sqrt() / 2.0);
        let rb = r.conj();
        let alpha = (u3 - rb * u2) / (r - rb);
        let gamma = (r * u2 - u3) / (r - rb);
        Self {
            kind: Kind::ZeroMode { u0, u1, alpha, gamma, r },
            amplification: 1.0,
        }
    }

    pub fn ill_conditioned(&self) -> bool {
        self.amplification > AMPLIFICATION_LIMIT
    }

    /// Modal coefficients `d_j`, or `None` for the zero mode.
    pub fn coefficients(&self) -> Option<[Complex64; 4]> {
        match self.kind {
            Kind::Modal { d, .. } => Some(d),
            Kind::ZeroMode { .. } => None,
        }
    }

    /// `d_t^k û(t)` for `k ≤ 3`, differentiating the representation exactly.
    pub fn eval(&self, t: f64, k: u32) -> Complex64 {
        match self.kind {
            Kind::Modal { roots, d } => {
                // conjugate pairs share e^{Rt}: e^{Rt}[cos(It)(A+B) + i sin(It)(A−B)]
                let mut acc = Complex64::new(0.0, 0.0);
                for p in 0..2 {
                    let l = roots[2 * p];
                    let e = l.re * t;
                    if e < -745.0 {
                        continue;
                    }
                    let (s, c) = (l.im * t).sin_cos();
                    let ga = d[2 * p] * l.powu(k);
                    let gb = d[2 * p + 1] * l.conj().powu(k);
                    acc += ((ga + gb) * c + I * s * (ga - gb)) * e.exp();
                }
                acc
            }
            Kind::ZeroMode {
                u0,
                u1,
                alpha,
                gamma,
                r,
            } => {
                let rb = r.conj();
                let er = (r * t).exp();
                let erb = (rb * t).exp();
                match k {
                    0 => {
                        u0 + u1 * t
                            + alpha * (er - 1.0 - r * t) / (r * r)
                            + gamma * (erb - 1.0 - rb * t) / (rb * rb)
                    }
                    1 => u1 + alpha * (er - 1.0) / r + gamma * (erb - 1.0) / rb,
                    _ => alpha * r.powu(k - 2) * er + gamma * rb.powu(k - 2) * erb,
                }
            }
        }
    }

    /// `[û, û', û'', û''']` at `t`.
    pub fn eval_all(&self, t: f64) -> [Complex64; 4] {
        [self.eval(t, 0), self.eval(t, 1), self.eval(t, 2), self.eval(t, 3)]
    }

    /// `Σ_j |d_j| e^{Re λ_j t}`, an upper envelope of `|û(t)|`.
    pub fn envelope(&self, t: f64) -> f64 {
        match self.kind {
            Kind::Modal { roots, d } => roots
                .iter()
                .zip(&d)
                .map(|(l, c)| c.norm() * (l.re * t).exp())
                .sum(),
            Kind::ZeroMode { u0, u1, alpha, gamma, .. } => {
                u0.norm() + u1.norm() * t + 2.0 * (alpha.norm() + gamma.norm()) * (1.0 + t)
            }
        }
    }
}

/// Evaluate `[û, û', û'', û''']` at time `t` from roots and induced data.
pub fn eval_fourier_solution(
    q: &RootQuartet,
    data: &InducedData,
    t: f64,
) -> Result<[Complex64; 4]> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("time must be non-negative"));
    }
    Ok(Representation::new(q, data)?.eval_all(t))
}

/// Cramer coefficients `d_j = det V_j / det V` from the expanded determinant
/// formulas in the pair parameters `(λ_R, λ_I)`.
fn cramer(q: &RootQuartet, u: &[Complex64; 4]) -> [Complex64; 4] {
    let (r1, i1, r2, i2) = (q.lam_r1, q.lam_i1, q.lam_r2, q.lam_i2);
    let [l1, l2, l3, l4] = q.roots();
    let s1 = r1 * r1 + i1 * i1;
    let s2 = r2 * r2 + i2 * i2;
    let dr = r2 - r1;
    let det = -4.0 * i1 * i2 * (dr * dr + (i2 + i1) * (i2 + i1)) * (dr * dr + (i2 - i1) * (i2 - i1));
    let [u0, u1, u2, u3] = *u;
    let sq = |z: Complex64| z * z;

    let v1 = -2.0 * I * l2 * i2 * s2 * (sq(r2 - l2) + i2 * i2) * u0
        + (2.0 * I * i2 * s2 * s2 + sq(l2) * sq(l4) * (l4 - l2) - sq(l2) * sq(l3) * (l3 - l2)) * u1
        + (-4.0 * I * r2 * i2 * s2 - l2 * l4 * (sq(l4) - sq(l2)) + l2 * l3 * (sq(l3) - sq(l2)))
            * u2
        + 2.0 * I * i2 * (sq(r2 - l2) + i2 * i2) * u3;
    let v2 = 2.0 * I * l1 * i2 * s2 * (sq(r2 - l1) + i2 * i2) * u0
        - (2.0 * I * i2 * s2 * s2 + sq(l1) * sq(l4) * (l4 - l1) - sq(l1) * sq(l3) * (l3 - l1)) * u1
        - (-4.0 * I * r2 * i2 * s2 - l1 * l4 * (sq(l4) - sq(l1)) + l1 * l3 * (sq(l3) - sq(l1)))
            * u2
        - 2.0 * I * i2 * (sq(r2 - l1) + i2 * i2) * u3;
    let v3 = -2.0 * I * l4 * i1 * s1 * (sq(r1 - l4) + i1 * i1) * u0
        + (2.0 * I * i1 * s1 * s1 + sq(l1) * sq(l4) * (l4 - l1) - sq(l2) * sq(l4) * (l4 - l2)) * u1
        + (-4.0 * I * r1 * i1 * s1 - l1 * l4 * (sq(l4) - sq(l1)) + l2 * l4 * (sq(l4) - sq(l2)))
            * u2
        + 2.0 * I * i1 * (sq(r1 - l4) + i1 * i1) * u3;
    let v4 = 2.0 * I * l3 * i1 * s1 * (sq(r1 - l3) + i1 * i1) * u0
        - (2.0 * I * i1 * s1 * s1 + sq(l1) * sq(l3) * (l3 - l1) - sq(l2) * sq(l3) * (l3 - l2)) * u1
        - (-4.0 * I * r1 * i1 * s1 - l1 * l3 * (sq(l3) - sq(l1)) + l2 * l3 * (sq(l3) - sq(l2)))
            * u2
        - 2.0 * I * i1 * (sq(r1 - l3) + i1 * i1) * u3;
    [v1 / det, v2 / det, v3 / det, v4 / det]
}
