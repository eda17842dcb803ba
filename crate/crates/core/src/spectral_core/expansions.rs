use super::{RootQuartet, WaveSpeed, Zones};
use crate::{Error, Result};
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Truncated small-frequency series
///
/// ```text
/// λ_{1,2} = (−1/2 ± √3/2 i) + (1/2 ± (1+2a²)/(2√3) i) ξ²
/// λ_{3,4} = (−1/2 ± c_a i) ξ² + (a² ∓ a²(a²−1)/√(4a²−1) i) ξ⁴
/// ```
pub fn expand_roots_small(a: WaveSpeed, xi: f64) -> Result<RootQuartet> {
    expand_roots_small_in(a, xi, Zones::default())
}

pub fn expand_roots_small_in(a: WaveSpeed, xi: f64, zones: Zones) -> Result<RootQuartet> {
    if xi.abs() > zones.eps0 {
        return Err(Error::ZoneViolation { xi, zone: "interior" });
    }
    let a2 = a.a() * a.a();
    let x2 = xi * xi;
    let s3 = 3.0.sqrt();
    Ok(RootQuartet {
        lam_r1: -0.5 + 0.5 * x2,
        lam_i1: s3 / 2.0 + (1.0 + 2.0 * a2) / (2.0 * s3) * x2,
        lam_r2: -0.5 * x2 + a2 * x2 * x2,
        lam_i2: a.c_a() * x2 - a2 * (a2 - 1.0) / (4.0 * a2 - 1.0).sqrt() * x2 * x2,
        xi,
        zone: zones.classify(xi),
    })
}

/// Truncated large-frequency series.
///
/// For `a = 1`: `λ_{1,2} = ±i|ξ| + (−1 ± √3 i)/4`, `λ_{3,4} = ±i|ξ| + (−1 ∓ √3 i)/4`.
/// For `a ≠ 1`: `λ_{1,2} = ±i|ξ| ± i/(2(1−a²)) |ξ|⁻¹ − 1/(2(1−a²)²) |ξ|⁻²` and
/// `λ_{3,4} = ±ia|ξ| − 1/2`.
///
/// The returned quartet follows the labelling of [`super::solve_quartic`]: the
/// pair with the larger imaginary part is pair 1, so for `a > 1` the
/// `±ia|ξ|` pair comes first.
pub fn expand_roots_large(a: WaveSpeed, xi: f64) -> Result<RootQuartet> {
    expand_roots_large_in(a, xi, Zones::default())
}

pub fn expand_roots_large_in(a: WaveSpeed, xi: f64, zones: Zones) -> Result<RootQuartet> {
    let r = xi.abs();
    if r < zones.n0 {
        return Err(Error::ZoneViolation { xi, zone: "exterior" });
    }
    let zone = zones.classify(xi);
    if a.equal_speeds() {
        let q = 3.0.sqrt() / 4.0;
        return Ok(RootQuartet {
            lam_r1: -0.25,
            lam_i1: r + q,
            lam_r2: -0.25,
            lam_i2: r - q,
            xi,
            zone,
        });
    }
    let d = 1.0 - a.a() * a.a();
    let slow = (-1.0 / (2.0 * d * d * r * r), r + 1.0 / (2.0 * d * r));
    let fast = (-0.5, a.a() * r);
    let (p1, p2) = if fast.1 > slow.1 { (fast, slow) } else { (slow, fast) };
    Ok(RootQuartet {
        lam_r1: p1.0,
        lam_i1: p1.1,
        lam_r2: p2.0,
        lam_i2: p2.1,
        xi,
        zone,
    })
}
