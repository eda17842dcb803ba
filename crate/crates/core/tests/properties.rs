use num_complex::Complex64;
use proptest::prelude::*;
use timoshenko_core::norms_rates::{fit_power_law, CutoffFamily};
use timoshenko_core::profiles::ghat;
use timoshenko_core::spectral_core::{quartic_coefficients, solve_quartic};
use timoshenko_core::WaveSpeed;

fn speed() -> impl Strategy<Value = WaveSpeed> {
    prop_oneof![Just(0.6), Just(1.0), Just(2.0)].prop_map(|a| WaveSpeed::new(a).unwrap())
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn elementary(l: &[Complex64; 4]) -> [Complex64; 4] {
    let mut e = [Complex64::new(0.0, 0.0); 4];
    for i in 0..4 {
        e[0] += l[i];
        for j in i + 1..4 {
            e[1] += l[i] * l[j];
            for k in j + 1..4 {
                e[2] += l[i] * l[j] * l[k];
            }
        }
    }
    e[3] = l[0] * l[1] * l[2] * l[3];
    e
}

proptest! {
    #[test]
    fn vieta_identities(a in speed(), xi in log_uniform(1e-3, 1e3)) {
        let q = solve_quartic(a, xi).unwrap();
        let e = elementary(&q.roots());
        let [c0, c1, c2, c3] = quartic_coefficients(a, xi);
        let expect = [-c3, c2, -c1, c0];
        for k in 0..4 {
            let rel = (e[k] - expect[k]).norm() / expect[k].abs();
            prop_assert!(rel <= 1e-9, "identity {} at xi={}: {}", k + 1, xi, rel);
        }
    }

    #[test]
    fn roots_are_damped_and_distinct(a in speed(), xi in log_uniform(1e-3, 1e3)) {
        let q = solve_quartic(a, xi).unwrap();
        prop_assert!(q.roots().iter().all(|l| l.re < 0.0));
        prop_assert!(q.discriminant() > 0.0);
        prop_assert!(q.lam_i1 != 0.0 && q.lam_i2 != 0.0);
    }

    #[test]
    fn cutoffs_partition_unity(
        xi in -50.0f64..50.0,
        eps0 in 0.01f64..0.5,
        n0 in 2.0f64..20.0,
    ) {
        let c = CutoffFamily { eps0, n0 };
        let (i, b, e) = (c.chi_int(xi), c.chi_bdd(xi), c.chi_ext(xi));
        prop_assert!((i + b + e - 1.0).abs() <= 1e-12);
        for v in [i, b, e] {
            prop_assert!((-1e-15..=1.0 + 1e-15).contains(&v));
        }
        let x = xi.abs();
        if x >= eps0 { prop_assert_eq!(i, 0.0); }
        if x <= 0.5 * eps0 { prop_assert_eq!(i, 1.0); }
        if x <= n0 { prop_assert_eq!(e, 0.0); }
        if x >= 2.0 * n0 { prop_assert_eq!(e, 1.0); }
        if x < 0.5 * eps0 || x > 2.0 * n0 { prop_assert!(b.abs() <= 1e-15); }
    }

    #[test]
    fn power_law_fit_is_scale_equivariant(
        alpha in -2.0f64..2.0,
        scale in log_uniform(1e-6, 1e6),
        wobble in 0.0f64..0.2,
    ) {
        let s: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let t = 10f64.powf(1.0 + i as f64 / 10.0);
                (t, t.powf(alpha) * (1.0 + wobble * (3.0 * t.ln()).sin()))
            })
            .collect();
        let scaled: Vec<(f64, f64)> = s.iter().map(|&(t, y)| (t, scale * y)).collect();
        let w = (10.0, 1e4);
        let (r0, r1) = (fit_power_law(&s, w).unwrap(), fit_power_law(&scaled, w).unwrap());
        prop_assert!((r0.exponent - r1.exponent).abs() <= 1e-12);
        prop_assert!((r1.prefactor / r0.prefactor / scale - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn plate_factor_is_bounded_by_time(
        a in speed(),
        t in 0.0f64..1e4,
        xi in -1e2f64..1e2,
    ) {
        let g = ghat(a, t, xi);
        prop_assert!(g.abs() <= t * (1.0 + 1e-12));
        prop_assert_eq!(g, ghat(a, t, -xi));
    }
}
