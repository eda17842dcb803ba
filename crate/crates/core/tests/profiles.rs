use std::f64::consts::PI;
use timoshenko_core::data::{Generator, InitialData};
use timoshenko_core::norms_rates::fit_power_law;
use timoshenko_core::profiles::*;
use timoshenko_core::quadrature::logspace;
use timoshenko_core::{Error, WaveSpeed};

fn one() -> WaveSpeed {
    WaveSpeed::new(1.0).unwrap()
}

#[test]
fn ghat_examples() {
    assert_eq!(ghat(one(), 2.0, 0.0), 2.0);
    assert_eq!(ghat(one(), 0.0, 3.0), 0.0);
    let z = 3f64.sqrt() / 2.0;
    let direct = z.sin() / z * (-0.5f64).exp();
    let v = ghat(one(), 1.0, 1.0);
    assert!((v - direct).abs() < 1e-15);
    assert!((v - 0.5335).abs() < 5e-5);
}

#[test]
fn kernel_symmetry_and_mass() {
    let a = one();
    for t in [0.5, 10.0, 400.0] {
        let grid = SpatialGrid::for_time(t, 800);
        let k = g_kernel(a, t, &grid).unwrap();
        let n = k.x.len();
        for j in 0..n {
            let m = n - 1 - j;
            assert!((k.g[j] - k.g[m]).abs() < 1e-12 * t);
            assert!((k.dg[j] + k.dg[m]).abs() < 1e-12 * t);
        }
        let h = grid.spacing();
        let mass = k.g.iter().sum::<f64>() * h - 0.5 * h * (k.g[0] + k.g[n - 1]);
        assert!((mass - t).abs() < 1e-7 * t, "t={t}: {mass}");
    }
}

#[test]
fn physical_and_spectral_kernel_norms_agree() {
    let a = one();
    for t in [1.0, 30.0, 1e3] {
        let grid = SpatialGrid::for_time(t, 1200);
        let k = g_kernel(a, t, &grid).unwrap();
        let physical = grid_l2(&grid, &k.g);
        let spectral = g_norm_spectral(a, t);
        assert!((physical - spectral).abs() <= 1e-8 * spectral, "t={t}: {physical} vs {spectral}");
    }
}

#[test]
fn kernel_norm_grows_like_t_to_three_quarters() {
    let a = one();
    let samples: Vec<(f64, f64)> = logspace(1e2, 1e4, 12)
        .into_iter()
        .map(|t| {
            let grid = SpatialGrid::for_time(t, 600);
            (t, grid_l2(&grid, &g_kernel(a, t, &grid).unwrap().g))
        })
        .collect();
    let e = fit_power_law(&samples, (1e2, 1e4)).unwrap().exponent;
    assert!((0.70..=0.80).contains(&e), "{e}");
}

#[test]
fn psi_profile_grows_like_t_to_one_quarter() {
    let a = one();
    let data = InitialData::w1_only(Generator::Gaussian { sigma: 1.0, amp: 1.0 });
    let samples: Vec<(f64, f64)> = logspace(1e2, 1e4, 12)
        .into_iter()
        .map(|t| {
            let grid = SpatialGrid::for_time(t, 600);
            (t, grid_l2(&grid, &profile_psi(a, t, &grid, &data).unwrap().psi_pf))
        })
        .collect();
    let e = fit_power_law(&samples, (1e2, 1e4)).unwrap().exponent;
    assert!((0.20..=0.30).contains(&e), "{e}");
}

#[test]
fn profiles_from_moments() {
    let a = WaveSpeed::new(1.5).unwrap();
    let grid = SpatialGrid::for_time(20.0, 200);

    let gauss = InitialData::w1_only(Generator::Gaussian { sigma: 1.0, amp: 1.0 });
    let p = profile_w(a, 20.0, &grid, &gauss).unwrap();
    for j in 0..p.x.len() {
        assert!((p.psi_pf[j] - p.dg[j] * PI.sqrt()).abs() < 1e-10 * (1.0 + p.dg[j].abs()));
        assert!((p.w_pf[j] - p.g[j] * PI.sqrt()).abs() < 1e-10 * (1.0 + p.g[j].abs()));
    }

    let odd = InitialData::w1_only(Generator::DGaussian { sigma: 1.0, amp: 1.0 });
    let p = profile_psi(a, 20.0, &grid, &odd).unwrap();
    for j in 0..p.x.len() {
        assert!(p.psi_pf[j].abs() < 1e-12);
        assert!((p.w_pf[j] - p.dg[j] * PI.sqrt()).abs() < 1e-10 * (1.0 + p.dg[j].abs()));
    }

    let shifted = InitialData {
        psi0: Generator::Gaussian { sigma: 2.0, amp: 0.5 },
        ..gauss
    };
    let p = profile_w(a, 20.0, &grid, &shifted).unwrap();
    let ppsi = 0.5 * 2.0 * PI.sqrt();
    for j in 0..p.x.len() {
        let expect = p.g[j] * PI.sqrt() - p.dg[j] * ppsi;
        assert!((p.w_pf[j] - expect).abs() < 1e-9 * (1.0 + expect.abs()));
    }
}

#[test]
fn profile_transform_matches_kernel_assembly() {
    let a = one();
    let (ww, pp) = profile_hat(a, 3.0, 0.4, (2.0, -1.0, 0.5));
    let g = ghat(a, 3.0, 0.4);
    assert!((ww.re - 2.0 * g).abs() < 1e-15);
    assert!((ww.im + 0.4 * g * (-1.0 + 0.5)).abs() < 1e-15);
    assert!(pp.re == 0.0 && (pp.im - 0.4 * g * 2.0).abs() < 1e-15);
}

#[test]
fn coarse_cutoff_is_a_resolution_error() {
    let grid = SpatialGrid::for_time(1.0, 50);
    assert!(matches!(g_kernel_with(one(), 1.0, &grid, 0.5), Err(Error::Resolution { .. })));
    assert!(matches!(g_kernel(one(), 0.0, &grid), Err(Error::InvalidParameter(_))));
}

#[test]
fn grid_shapes() {
    let g = SpatialGrid::symmetric(5.0, 10);
    assert_eq!(g.x.len(), 21);
    assert_eq!(g.x[0], -5.0);
    assert_eq!(g.x[10], 0.0);
    assert!((g.spacing() - 0.5).abs() < 1e-15);
    assert_eq!(*SpatialGrid::for_time(100.0, 4).x.last().unwrap(), 120.0);
}
