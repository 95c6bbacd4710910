use std::f64::consts::PI;

use peakon_core::spectral::{derivative, helmholtz_inverse};
use peakon_core::systems::{
    bracket_terms, conservative_rhs, hamiltonian_h1, hamiltonian_h2, mkdv_hierarchy_rhs,
    mollified_rhs, momentum_from_state, peak_location, peakon_profile, reformulated_rhs,
};
use peakon_core::{Field, HierarchyState, PeriodicGrid, SobolevIndex, State};

fn grid(n: usize) -> PeriodicGrid {
    PeriodicGrid::new(n).unwrap()
}

fn close(a: &Field, b: &Field, tol: f64) -> bool {
    a.values()
        .iter()
        .zip(b.values())
        .all(|(x, y)| (x - y).abs() <= tol)
}

fn cosine_state(n: usize) -> State {
    let g = grid(n);
    State::from_uv(Field::from_fn(g, f64::cos), Field::from_fn(g, f64::cos)).unwrap()
}

#[test]
fn momentum_examples() {
    let g = grid(32);
    let mom = momentum_from_state(&cosine_state(32));
    assert!(close(&mom.m, &Field::from_fn(g, |x| 2.0 * x.cos()), 1e-13));
    let c2 = State::from_uv(
        Field::from_fn(g, |x| (2.0 * x).cos()),
        Field::constant(g, 1.0),
    )
    .unwrap();
    let mom = momentum_from_state(&c2);
    assert!(close(
        &mom.m,
        &Field::from_fn(g, |x| 5.0 * (2.0 * x).cos()),
        1e-12
    ));
    assert!(close(&mom.n, &Field::constant(g, 1.0), 1e-14));
    assert!(close(&helmholtz_inverse(&mom.m), c2.u(), 1e-12));
}

#[test]
fn conservative_form_of_the_cosine_state() {
    let st = cosine_state(64);
    let (dm, dn) = conservative_rhs(&momentum_from_state(&st), &st).unwrap();
    let expected = Field::from_fn(st.grid(), |x| -x.sin() - 3.0 * (3.0 * x).sin());
    assert!(close(&dm, &expected, 1e-11));
    assert!(close(&dn, &dm, 1e-14));
}

#[test]
fn first_order_system_of_the_cosine_state() {
    let st = cosine_state(64);
    let d = reformulated_rhs(&st);
    let expected = Field::from_fn(st.grid(), |x| -0.5 * x.sin() - 0.3 * (3.0 * x).sin());
    assert!(close(d.u(), &expected, 1e-12));
    assert!(close(d.v(), &expected, 1e-12));
    assert!(close(d.w(), &derivative(d.u()), 1e-9));
}

#[test]
fn zero_state_is_stationary() {
    let z = State::zeros(grid(32));
    for f in reformulated_rhs(&z).fields() {
        assert_eq!(f.max_abs(), 0.0);
    }
    for f in mollified_rhs(&z, 0.1).unwrap().fields() {
        assert_eq!(f.max_abs(), 0.0);
    }
}

#[test]
fn mollified_rhs_approaches_the_unmollified_one() {
    let g = grid(64);
    let st = State::from_uv(
        Field::from_fn(g, |x| 0.3 * x.cos() + 0.1 * (4.0 * x).sin()),
        Field::from_fn(g, |x| 0.2 * (2.0 * x).sin() - 0.1 * (3.0 * x).cos()),
    )
    .unwrap();
    let exact = reformulated_rhs(&st);
    let s = SobolevIndex::new(1.0).unwrap();
    let gaps: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&eps| {
            let m = mollified_rhs(&st, eps).unwrap();
            m.axpy(-1.0, &exact).unwrap().norm(s)
        })
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
}

#[test]
fn forq_reduction_kills_the_coupling_terms() {
    let g = grid(64);
    let u = Field::from_fn(g, |x| 0.4 * x.sin() + 0.2 * (3.0 * x).cos());
    let st = State::from_uv(u.clone(), u).unwrap();
    let d = reformulated_rhs(&st);
    assert!(close(d.u(), d.v(), 1e-14));
    assert!(close(d.w(), d.z(), 1e-14));
    for f in bracket_terms(&st).fields() {
        assert!(f.max_abs() <= 1e-12);
    }
}

#[test]
fn hamiltonian_examples() {
    let st = cosine_state(64);
    assert!((hamiltonian_h1(&st) - 2.0 * PI).abs() < 1e-12);
    assert!((hamiltonian_h2(&st) - PI / 2.0).abs() < 1e-12);
    let g = grid(32);
    let half = State::from_uv(Field::from_fn(g, f64::cos), Field::zeros(g)).unwrap();
    assert_eq!(hamiltonian_h1(&half), 0.0);
    assert_eq!(hamiltonian_h2(&State::zeros(g)), 0.0);
}

#[test]
fn mkdv_hierarchy_example() {
    let g = grid(64);
    let c = Field::from_fn(g, f64::cos);
    let hs = HierarchyState::new(c.clone(), c).unwrap();
    let d = mkdv_hierarchy_rhs(&hs).unwrap();
    let expected = Field::from_fn(g, |x| -x.sin() + 6.0 * x.cos().powi(2) * x.sin());
    assert!(close(&d.mt, &expected, 1e-11));
    assert!(close(&d.nt, &d.mt, 1e-15));
}

#[test]
fn periodized_peakon() {
    let g = grid(512);
    let p = peakon_profile(1.0, 0.0, g).unwrap();
    let peak = p.values()[0];
    assert!(peak > 1.5f64.sqrt() && peak < 1.5f64.sqrt() * 1.01);
    for j in 1..g.len() / 2 {
        assert!((p.values()[j] - p.values()[g.len() - j]).abs() < 1e-13);
    }
    let expected = (2.0 * PI - 1.0).rem_euclid(2.0 * PI);
    assert!((peak_location(1.0, 1.0) - expected).abs() < 1e-15);
}
