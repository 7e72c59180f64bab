use std::sync::Arc;

use emhd_core::experiments::{
    convergence_with, inflation_experiment, relative_difference, scaling_sweep_with, ExperimentConfig, SweepAxes,
    TEnd,
};
use emhd_core::profiles::{DataFamily, ModelParams};
use emhd_core::solver::{RunStatus, Solver, SolverState, StepControl};
use emhd_core::spectral::{heat_propagator, Field, Grid, GridSpec};

fn quick(t_end: f64) -> ExperimentConfig {
    ExperimentConfig {
        params: ModelParams::headline().with(4.0, 2, 0.5),
        t_end: TEnd::Explicit(t_end),
        observer_stride: 5,
        ..ExperimentConfig::default()
    }
}

#[test]
fn sweep_records_do_not_depend_on_worker_count() {
    let cfg = ExperimentConfig {
        params: ModelParams::headline().with(8.0, 8, 0.5),
        s_list: vec![0.0, 1.0],
        sweep: SweepAxes { lambda: Some(vec![8.0, 16.0, 32.0]), ..SweepAxes::default() },
        ..ExperimentConfig::default()
    };
    let family = DataFamily::standard();
    let serial = scaling_sweep_with(&cfg, &family, 1).unwrap();
    let pooled = scaling_sweep_with(&cfg, &family, 4).unwrap();
    assert_eq!(serial, pooled);
    assert!(serial.iter().all(|r| r.point_errors.is_empty()));
    let a0 = serial.iter().find(|r| r.quantity == "a0_Hdot0").unwrap();
    assert!((a0.fit.as_ref().unwrap().slope + 3.2).abs() < 0.15);
}

#[test]
fn resolved_run_converges_spectrally() {
    let cfg = ExperimentConfig { grid_n: Some(64), ..quick(0.002) };
    let r = convergence_with(&cfg, &DataFamily::standard(), 4).unwrap();
    assert!(r.runs.iter().all(|run| run.status.is_completed()));
    let c = r.contraction();
    assert!(c.last().unwrap() >= &10.0, "{:?} {:?}", r.differences, c);
    assert!(r.ratio_changes[..3].iter().all(|c| *c < 1e-4), "{:?}", r.ratio_changes);
}

#[test]
fn underresolved_run_is_not_citable() {
    let cfg = ExperimentConfig { grid_n: Some(16), ..quick(0.002) };
    let r = convergence_with(&cfg, &DataFamily::standard(), 3).unwrap();
    assert!(!r.citable);
    assert!(r.ratio_changes.iter().any(|c| *c > 0.05), "{:?}", r.ratio_changes);
}

#[test]
fn radial_decay_is_exact_on_every_grid() {
    let t_end = 0.01;
    let finals: Vec<Field<f64>> = [96usize, 128, 192]
        .iter()
        .map(|&n| {
            let g: Arc<Grid<f64>> = Grid::new(GridSpec::new(n, std::f64::consts::PI).unwrap());
            let a0 = Field::from_fn(&g, |x, y| 0.1 * (-4.0 * (x * x + y * y)).exp());
            let mut s = Solver::new(&g, 0.5, 1.0, 1.0, StepControl::default().with_dt_max(5e-3)).unwrap();
            let (end, status) = s.evolve(&SolverState::new(&a0, &Field::zeros(&g)).unwrap(), t_end, 1, |_| Ok(())).unwrap();
            assert_eq!(status, RunStatus::Completed);
            let exact = heat_propagator(&a0, 0.5, 1.0, t_end).unwrap();
            let gap = relative_difference(&end.a, &exact).unwrap();
            assert!(gap < 1e-11, "n = {n}: {gap}");
            end.a
        })
        .collect();
    for w in finals.windows(2) {
        assert!(relative_difference(&w[0], &w[1]).unwrap() < 1e-11);
    }
}

#[test]
fn blow_up_truncates_the_series() {
    let mut cfg = quick(0.002);
    cfg.ctrl.blowup_threshold = 1e-12;
    let r = inflation_experiment(&cfg).unwrap();
    assert!(matches!(r.status, RunStatus::Unstable { .. }));
    assert!(r.series.truncated);
    assert!(r.series.times().iter().all(|&t| t < 0.002));
    assert!(r.series.rows().iter().flatten().all(|v| v.is_finite()));
}

#[test]
fn repeated_runs_are_identical() {
    let cfg = quick(0.001);
    let (x, y) = (inflation_experiment(&cfg).unwrap(), inflation_experiment(&cfg).unwrap());
    assert_eq!(x.series, y.series);
    assert_eq!(x.snapshots, y.snapshots);
    assert_eq!(x.records(), y.records());
}
