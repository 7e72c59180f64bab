use std::sync::Arc;

use emhd_core::experiments::ExperimentConfig;
use emhd_core::profiles::{
    make_g, make_h, orthogonality_ratio_of, semi_lagrangian_abar, tstar, DataFamily, ModelParams,
    Shear, H_SCALE,
};
use emhd_core::spectral::{
    divergence, l2_norm, sobolev_norm, sup_norm, Field, Grid, GridSpec, NormFlavor,
};

fn family() -> DataFamily {
    DataFamily::standard()
}

fn rule_grid(p: &ModelParams, t: f64) -> Arc<Grid<f64>> {
    Grid::new(ExperimentConfig::default().grid_for(p, &family().h, t).unwrap())
}

#[test]
fn g_derivative_matches_central_differences() {
    let g = make_g();
    let h = 1e-5;
    for k in 0..=900 {
        let rho = 2.05 + k as f64 * 1e-3;
        let fd = (g.eval(rho + h) - g.eval(rho - h)) / (2.0 * h);
        assert!((fd - g.eval_d1(rho)).abs() < 1e-6, "rho {rho}");
    }
    assert_eq!(g.eval(1.99f64), 0.0);
    assert_eq!(g.eval(3.01f64), 0.0);
}

#[test]
fn h_shape() {
    let h = make_h().unwrap();
    assert!((h.eval(2.5f64) - H_SCALE * 2.5f64.exp()).abs() < 1e-12);
    assert_eq!(h.eval(0.9f64), 0.0);
    assert_eq!(h.eval(4.1f64), 0.0);
    let min_d2 = (0..=10_000).map(|k| h.eval_d2(2.0 + k as f64 * 1e-4)).fold(f64::INFINITY, f64::min);
    assert!(min_d2 > 0.0);
}

#[test]
fn initial_data_structure() {
    let p = ModelParams::headline().with(8.0, 8, 0.5);
    let grid = rule_grid(&p, 0.0);
    let d = family().build_initial_data(&p, &grid).unwrap();
    let amp = p.a_amplitude();
    assert!(d.a0.mean().unwrap().abs() < 1e-12);
    assert!(d.a0.values().unwrap().iter().any(|v| v.abs() > 0.5 * amp));

    let spec = *grid.spec();
    let n = spec.n();
    let (a, b) = (d.a0.values().unwrap(), d.b0.values().unwrap());
    for i in 0..n {
        for j in 0..n {
            let r = spec.coord(i).hypot(spec.coord(j)) * p.lambda;
            if !(2.0..=3.0).contains(&r) {
                assert_eq!(a[i * n + j], 0.0);
            }
            if !(1.0..=4.0).contains(&r) {
                assert!(b[i * n + j].abs() <= 1e-14);
            }
        }
    }
    let div = divergence(&d.u0_spectral).unwrap();
    assert!(sup_norm(&div, 0).unwrap() <= 1e-10 * sup_norm(&d.u0_spectral[0], 1).unwrap());
}

#[test]
fn velocity_representations_agree_on_fine_grid() {
    let p = ModelParams::headline().with(8.0, 8, 0.5);
    let grid = Grid::new(GridSpec::new(768, 4.5 / 8.0).unwrap());
    let d = family().build_initial_data(&p, &grid).unwrap();
    assert!(d.velocity_mismatch().unwrap() < 1e-6);
}

#[test]
fn abar_at_zero_is_the_initial_datum() {
    let p = ModelParams::headline().with(8.0, 8, 0.5);
    let grid = rule_grid(&p, tstar(&p));
    let d = family().build_initial_data(&p, &grid).unwrap();
    let abar = family().eval_abar(&p, &grid, 0.0, Shear::Exact).unwrap();
    assert_eq!(abar.values().unwrap(), d.a0.values().unwrap());
}

#[test]
fn abar_preserves_l2() {
    let p = ModelParams::headline();
    let ts = tstar(&p);
    let grid = rule_grid(&p, ts);
    let l0 = l2_norm(&family().sample_abar(&p, &grid, 0.0, Shear::Exact)).unwrap();
    for t in [0.5 * ts, ts] {
        let l = l2_norm(&family().eval_abar(&p, &grid, t, Shear::Exact).unwrap()).unwrap();
        assert!(((l - l0) / l0).abs() < 1e-8);
    }
}

#[test]
fn abar_matches_semi_lagrangian_transport() {
    let p = ModelParams::headline().with(8.0, 8, 0.5);
    let t = 0.5 * tstar(&p);
    let grid = rule_grid(&p, t);
    let closed = family().eval_abar(&p, &grid, t, Shear::Exact).unwrap();
    let traced = semi_lagrangian_abar(&family(), &p, &grid, t, 400);
    let gap = l2_norm(&closed.sub(&traced).unwrap()).unwrap() / l2_norm(&closed).unwrap();
    assert!(gap < 1e-6, "{gap}");

    let displayed = family().eval_abar(&p, &grid, t, Shear::Displayed).unwrap();
    let phase_gap = l2_norm(&displayed.sub(&traced).unwrap()).unwrap() / l2_norm(&closed).unwrap();
    assert!(phase_gap > 0.1, "{phase_gap}");
}

#[test]
fn abar_outgrows_its_datum_as_epsilon_shrinks() {
    let base = ModelParams::headline();
    let growth = |eps: f64| {
        let p = base.with(base.lambda, base.n_osc, eps);
        let ts = tstar(&p);
        let grid = rule_grid(&p, ts);
        let at = |t: f64| {
            let f = family().sample_abar(&p, &grid, t, Shear::Exact).forward().unwrap();
            sobolev_norm(&f, p.beta, NormFlavor::Homogeneous).unwrap()
        };
        at(ts) / at(0.0)
    };
    assert!(growth(0.25) > growth(0.5));
}

#[test]
fn ubar_at_zero_and_divergence() {
    let p = ModelParams::headline().with(8.0, 8, 0.5);
    let grid = rule_grid(&p, tstar(&p));
    let d = family().build_initial_data(&p, &grid).unwrap();
    let u = family().eval_ubar(&p, &grid, 0.0).unwrap().u;
    assert_eq!(u[0].coeffs().unwrap(), d.u0_spectral[0].coeffs().unwrap());
    let later = family().eval_ubar(&p, &grid, tstar(&p)).unwrap().u;
    let div = divergence(&later).unwrap();
    assert!(sup_norm(&div, 0).unwrap() <= 1e-9 * sup_norm(&later[0], 1).unwrap());
    assert!(family().eval_ubar(&p, &grid, 2.0 * tstar(&p)).is_err());
}

#[test]
fn orthogonality_shrinks_with_frequency() {
    let p = ModelParams::headline();
    let ratio = |n: u32| {
        let q = p.with(p.lambda, n, p.eps);
        let grid = rule_grid(&q, tstar(&q));
        family().orthogonality_ratio(&q, &grid, tstar(&q)).unwrap()
    };
    let (r8, r16, r32) = (ratio(8), ratio(16), ratio(32));
    assert!(r8 > r16 && r16 > r32);
    assert!(r32 <= 0.6 * r16);

    let grid = Grid::new(GridSpec::new(128, std::f64::consts::PI).unwrap());
    let smooth = Field::from_fn(&grid, |x, y| (-4.0 * (x * x + y * y)).exp());
    assert!(orthogonality_ratio_of(&smooth).unwrap() <= 1e-10);

    let g = make_g();
    let bump = |n: usize| {
        let grid = Grid::new(GridSpec::new(n, 4.5 / p.lambda).unwrap());
        let f = Field::from_fn(&grid, |x, y| g.eval(p.lambda * x.hypot(y)));
        orthogonality_ratio_of(&f).unwrap()
    };
    let (coarse, fine) = (bump(256), bump(512));
    assert!(fine < 0.05 * coarse, "{coarse} {fine}");
}

#[test]
fn underresolved_request_rejected() {
    let p = ModelParams::headline();
    let grid = Grid::new(GridSpec::new(64, 4.5 / p.lambda).unwrap());
    assert!(family().build_initial_data(&p, &grid).is_err());
    assert!(family().eval_abar(&p, &grid, tstar(&p), Shear::Exact).is_err());
}
