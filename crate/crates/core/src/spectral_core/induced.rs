use super::WaveSpeed;
use num_complex::Complex64;

/// Which unknown the scalar fourth-order problem describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    W,
    Psi,
}

/// Initial values `(û(0), û'(0), û''(0), û'''(0))` of the scalar problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedData {
    pub u: [Complex64; 4],
}

/// Build the scalar-problem data from `(ŵ₀, ŵ₁, ψ̂₀, ψ̂₁)` at frequency `ξ`.
///
/// The second and third derivatives come from the system itself:
/// `ŵ'' = −ξ²ŵ − iξψ̂` and `ψ̂'' = −(1+a²ξ²)ψ̂ − ψ̂' + iξŵ`.
pub fn initial_data_transform(
    branch: Branch,
    data_hat: [Complex64; 4],
    a: WaveSpeed,
    xi: f64,
) -> InducedData {
    let [w0, w1, p0, p1] = data_hat;
    let ix = Complex64::new(0.0, xi);
    let x2 = xi * xi;
    let a2x2 = a.a() * a.a() * x2;
    let u = match branch {
        Branch::W => [w0, w1, -w0 * x2 - ix * p0, -w1 * x2 - ix * p1],
        Branch::Psi => [
            p0,
            p1,
            -p0 * (1.0 + a2x2) - p1 + ix * w0,
            p0 * (1.0 + a2x2) - p1 * a2x2 - ix * w0 + ix * w1,
        ],
    };
    InducedData { u }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn w_branch_examples() {
        let a = WaveSpeed::new(1.0).unwrap();
        let z = c(0.0, 0.0);
        let d = initial_data_transform(Branch::W, [c(1.0, 0.0), z, z, z], a, 2.0);
        assert_eq!(d.u, [c(1.0, 0.0), z, c(-4.0, 0.0), z]);
        let d = initial_data_transform(Branch::W, [z, z, z, c(1.0, 0.0)], a, 0.5);
        assert_eq!(d.u, [z, z, z, c(0.0, -0.5)]);
    }

    #[test]
    fn psi_branch_example() {
        let a = WaveSpeed::new(1.0).unwrap();
        let z = c(0.0, 0.0);
        let d = initial_data_transform(Branch::Psi, [z, z, z, c(1.0, 0.0)], a, 0.5);
        assert_eq!(d.u, [z, c(1.0, 0.0), c(-1.0, 0.0), c(-0.25, 0.0)]);
    }
}
