use peakon_core::integrator::{
    energy_ratio_monitor, size_estimate_check, standard_calibration_data, DEFAULT_C_S,
};
use peakon_core::systems::{hamiltonian_h1, hamiltonian_h2};
use peakon_core::{
    holder_lifespan, lifespan, rk4_step, solve, Error, Field, PeriodicGrid, SobolevIndex,
    SolveConfig, State, TimeStep,
};

fn smooth_cfg(t_final: f64) -> SolveConfig {
    SolveConfig {
        t_final,
        n_points: 64,
        ..SolveConfig::default()
    }
}

#[test]
fn lifespan_arithmetic() {
    assert!((lifespan(0.5, 0.5, 1.0, 0.5).unwrap() - 0.0625).abs() < 1e-15);
    assert!((holder_lifespan(1.0, 1.0, 0.5).unwrap() - 1.0 / 64.0).abs() < 1e-15);
    let a = lifespan(0.3, 0.2, DEFAULT_C_S, 0.5).unwrap();
    let b = lifespan(0.6, 0.4, DEFAULT_C_S, 0.5).unwrap();
    assert!((a / b - 4.0).abs() < 1e-12);
    assert!(lifespan(0.0, 0.0, 1.0, 0.5).unwrap().is_infinite());
    assert!(lifespan(1.0, 1.0, 1.0, 1.5).is_err());
}

#[test]
fn zero_state_is_a_fixed_point_of_rk4() {
    let z = State::zeros(PeriodicGrid::new(32).unwrap());
    for dt in [0.1, -0.3, 2.0] {
        assert_eq!(rk4_step(&z, dt, 0.0).unwrap(), z);
    }
}

#[test]
fn forward_then_backward_step_returns() {
    let g = PeriodicGrid::new(64).unwrap();
    let (u0, v0) = standard_calibration_data(g);
    let st = State::from_uv(u0, v0).unwrap();
    let s = SobolevIndex::new(1.0).unwrap();
    let err = |dt: f64| {
        let back = rk4_step(&rk4_step(&st, dt, 0.0).unwrap(), -dt, 0.0).unwrap();
        back.axpy(-1.0, &st).unwrap().norm(s)
    };
    let (e1, e2) = (err(0.02), err(0.01));
    assert!(e1 < 1e-7);
    assert!(e1 / e2 > 20.0, "round trip error ratio {}", e1 / e2);
}

#[test]
fn zero_data_gives_a_zero_trajectory() {
    let g = PeriodicGrid::new(32).unwrap();
    let cfg = SolveConfig {
        t_final: 1.0,
        dt: TimeStep::Fixed(0.25),
        n_points: 32,
        ..SolveConfig::default()
    };
    let traj = solve(&Field::zeros(g), &Field::zeros(g), &cfg).unwrap();
    assert_eq!(traj.times, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    assert!(traj
        .states
        .iter()
        .all(|s| s.norm(SobolevIndex::new(3.0).unwrap()) == 0.0));
    assert_eq!(traj.diagnostics.len(), traj.times.len());
}

#[test]
fn last_step_lands_on_the_final_time() {
    let g = PeriodicGrid::new(64).unwrap();
    let (u0, v0) = standard_calibration_data(g);
    let cfg = SolveConfig {
        dt: TimeStep::Fixed(0.004),
        ..smooth_cfg(0.01)
    };
    let traj = solve(&u0, &v0, &cfg).unwrap();
    assert_eq!(traj.times.len(), 4);
    assert_eq!(*traj.times.last().unwrap(), 0.01);
    assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn backward_integration() {
    let g = PeriodicGrid::new(64).unwrap();
    let (u0, v0) = standard_calibration_data(g);
    let traj = solve(&u0, &v0, &smooth_cfg(-0.01)).unwrap();
    assert_eq!(*traj.times.last().unwrap(), -0.01);
    assert!(traj.times.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn lifespan_is_enforced_unless_overridden() {
    let g = PeriodicGrid::new(64).unwrap();
    let (u0, v0) = standard_calibration_data(g);
    assert!(matches!(
        solve(&u0, &v0, &smooth_cfg(1.0)),
        Err(Error::BeyondLifespan { .. })
    ));
    let cfg = SolveConfig {
        override_lifespan: true,
        ..smooth_cfg(0.05)
    };
    assert!(solve(&u0, &v0, &cfg).is_ok());
    let other = Field::zeros(PeriodicGrid::new(32).unwrap());
    assert!(matches!(
        solve(&u0, &other, &smooth_cfg(0.01)),
        Err(Error::GridMismatch(..))
    ));
}

#[test]
fn small_data_conserves_both_hamiltonians() {
    let g = PeriodicGrid::new(64).unwrap();
    let u0 = Field::from_fn(g, |x| 0.1 * x.cos());
    let cfg = SolveConfig {
        override_lifespan: true,
        ..smooth_cfg(0.5)
    };
    let traj = solve(&u0, &u0, &cfg).unwrap();
    let (h1_0, h2_0) = (
        hamiltonian_h1(&traj.states[0]),
        hamiltonian_h2(&traj.states[0]),
    );
    let last = traj.last_state();
    assert!((hamiltonian_h1(last) - h1_0).abs() <= 1e-8 * h1_0.abs());
    assert!((hamiltonian_h2(last) - h2_0).abs() <= 1e-8 * h2_0.abs());
    let (d1, d2) = traj.hamiltonian_drift();
    assert!(d1 <= 1e-8 && d2 <= 1e-8);
}

#[test]
fn size_estimate_on_the_standard_run() {
    let cfg = smooth_cfg(0.02);
    let (u0, v0) = standard_calibration_data(cfg.grid().unwrap());
    let traj = solve(&u0, &v0, &cfg).unwrap();
    let report = size_estimate_check(&traj, &cfg).unwrap();
    assert!(report.pass);
    assert!(report.max_ratio < 1.0);
}

#[test]
fn energy_ratio_needs_a_moving_solution() {
    let g = PeriodicGrid::new(32).unwrap();
    let cfg = SolveConfig {
        t_final: 0.3,
        dt: TimeStep::Fixed(0.1),
        n_points: 32,
        ..SolveConfig::default()
    };
    let zero = solve(&Field::zeros(g), &Field::zeros(g), &cfg).unwrap();
    assert_eq!(energy_ratio_monitor(&zero).unwrap().sup(), None);

    let cfg = SolveConfig {
        dt: TimeStep::Fixed(0.002),
        ..smooth_cfg(0.02)
    };
    let (u0, v0) = standard_calibration_data(cfg.grid().unwrap());
    let traj = solve(&u0, &v0, &cfg).unwrap();
    let sup = energy_ratio_monitor(&traj).unwrap().sup().unwrap();
    assert!(sup > 0.0 && 2.0 * sup <= 1.05 * DEFAULT_C_S, "{sup}");
}

#[test]
fn config_json_round_trip() {
    let cfg = SolveConfig {
        dt: TimeStep::Fixed(0.001),
        eps: 0.05,
        ..smooth_cfg(0.1)
    };
    let text = serde_json::to_string(&cfg).unwrap();
    assert_eq!(serde_json::from_str::<SolveConfig>(&text).unwrap(), cfg);
}
