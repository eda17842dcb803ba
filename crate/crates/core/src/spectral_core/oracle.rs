use super::{quartic_coefficients, InducedData, WaveSpeed};
use crate::{Error, Result};
use num_complex::Complex64;
// shadowed by inherent methods whenever std is in the build graph
#[allow(unused_imports)]
use num_traits::Float;

/// Integrate the scalar fourth-order ODE directly, without the roots.
///
/// The ODE is written as a first-order system in `z_k = u^{(k)} / s^k` and
/// rescaled time `τ = s t` with `s = max(1, |ξ|)`, which keeps the system
/// matrix `B` of order one. Each step sums the Taylor series of `e^{hB} z`
/// until the terms fall below `rtol`; the step length adapts to `‖B‖`.
/// Returns `[û, û', û'', û''']` at `t`.
pub fn ode_oracle(
    induced: &InducedData,
    a: WaveSpeed,
    xi: f64,
    t: f64,
    rtol: f64,
) -> Result<[Complex64; 4]> {
    if !(1e-12..=1e-4).contains(&rtol) {
        return Err(Error::InvalidParameter("rtol must lie in [1e-12, 1e-4]"));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter("time must be finite and non-negative"));
    }
    let c = quartic_coefficients(a, xi);
    let s = xi.abs().max(1.0);
    let row = [-c[0] / s.powi(4), -c[1] / s.powi(3), -c[2] / s.powi(2), -c[3] / s];
    let norm_b = 1.0f64.max(row.iter().map(|x| x.abs()).sum());
    let apply = |z: &[Complex64; 4]| -> [Complex64; 4] {
        [
            z[1],
            z[2],
            z[3],
            z[0] * row[0] + z[1] * row[1] + z[2] * row[2] + z[3] * row[3],
        ]
    };

    let mut z = [Complex64::new(0.0, 0.0); 4];
    let mut sk = 1.0;
    for k in 0..4 {
        z[k] = induced.u[k] / sk;
        sk *= s;
    }
    let tau_end = s * t;
    let mut tau = 0.0;
    let h_max = 0.5 / norm_b;
    let tol = 1e-3 * rtol;
    while tau < tau_end {
        let mut h = h_max.min(tau_end - tau);
        if h <= 1e-15 * tau_end.max(1.0) {
            if tau_end - tau < 1e-15 * tau_end.max(1.0) {
                break;
            }
            return Err(Error::StepSizeUnderflow { t: tau / s });
        }
        loop {
            let size = vec_norm(&z);
            let mut term = z;
            let mut sum = z;
            let mut converged = false;
            for n in 1..=60 {
                let bt = apply(&term);
                let f = h / n as f64;
                for k in 0..4 {
                    term[k] = bt[k] * f;
                    sum[k] += term[k];
                }
                if n >= 4 && vec_norm(&term) <= tol * size.max(f64::MIN_POSITIVE) {
                    converged = true;
                    break;
                }
            }
            if converged || size == 0.0 {
                z = sum;
                break;
            }
            h *= 0.5;
            if h < 1e-12 * h_max {
                return Err(Error::StepSizeUnderflow { t: tau / s });
            }
        }
        tau += h;
    }

    let mut out = [Complex64::new(0.0, 0.0); 4];
    let mut sk = 1.0;
    for k in 0..4 {
        out[k] = z[k] * sk;
        sk *= s;
    }
    Ok(out)
}

fn vec_norm(z: &[Complex64; 4]) -> f64 {
    z.iter().fold(0.0f64, |m, x| m.max(x.norm()))
}
