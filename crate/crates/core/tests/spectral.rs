use std::f64::consts::PI;

use num_complex::Complex64;
use peakon_core::spectral::{
    bessel_apply, derivative, helmholtz_inverse, helmholtz_multiplier_dx, l2_inner,
    mollifier_symbol_at, mollify, product, sobolev_norm, spectral_inner,
};
use peakon_core::{Error, Field, PeriodicGrid, SobolevIndex};
use proptest::prelude::*;

fn grid(n: usize) -> PeriodicGrid {
    PeriodicGrid::new(n).unwrap()
}

fn sob(s: f64) -> SobolevIndex {
    SobolevIndex::new(s).unwrap()
}

fn max_diff(a: &Field, b: &Field) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn grids_must_be_even_and_large_enough() {
    for bad in [0, 4, 6, 9, 33] {
        assert!(
            matches!(PeriodicGrid::new(bad), Err(Error::InvalidGrid(_))),
            "{bad}"
        );
    }
    let g = grid(8);
    let nodes = g.nodes();
    assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    assert!(nodes[0] == 0.0 && *nodes.last().unwrap() < 2.0 * PI);
}

#[test]
fn coefficients_of_simple_functions() {
    let g = grid(16);
    let one = Field::constant(g, 1.0);
    assert!((one.coefficient(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!(one.coefficient(3).norm() < 1e-15);

    let c = Field::from_fn(g, f64::cos);
    assert!((c.coefficient(1).re - 0.5).abs() < 1e-15);
    assert!((c.coefficient(-1).re - 0.5).abs() < 1e-15);

    let s3 = Field::from_fn(g, |x| (3.0 * x).sin());
    assert!((s3.coefficient(3) - Complex64::new(0.0, -0.5)).norm() < 1e-14);
    assert!((s3.coefficient(-3) - Complex64::new(0.0, 0.5)).norm() < 1e-14);
}

#[test]
fn bessel_and_helmholtz_examples() {
    let g = grid(32);
    let c = Field::from_fn(g, f64::cos);
    assert!(max_diff(&bessel_apply(&c, sob(2.0)), &c.scale(2.0)) < 1e-13);
    assert!(max_diff(&helmholtz_inverse(&c.scale(2.0)), &c) < 1e-13);
    let one = Field::constant(g, 3.0);
    assert!(max_diff(&bessel_apply(&one, sob(1.7)), &one) < 1e-13);
}

#[test]
fn derivative_examples() {
    let g = grid(32);
    let d = derivative(&Field::from_fn(g, f64::sin));
    assert!(max_diff(&d, &Field::from_fn(g, f64::cos)) < 1e-13);
    let d2 = derivative(&Field::from_fn(g, |x| (2.0 * x).cos()));
    assert!(max_diff(&d2, &Field::from_fn(g, |x| -2.0 * (2.0 * x).sin())) < 1e-13);
    assert!(derivative(&Field::constant(g, 5.0)).max_abs() < 1e-14);
}

#[test]
fn helmholtz_dx_examples() {
    let g = grid(32);
    let a = helmholtz_multiplier_dx(&Field::from_fn(g, f64::sin));
    assert!(max_diff(&a, &Field::from_fn(g, |x| 0.5 * x.cos())) < 1e-14);
    let b = helmholtz_multiplier_dx(&Field::from_fn(g, |x| (3.0 * x).sin()));
    assert!(max_diff(&b, &Field::from_fn(g, |x| 0.3 * (3.0 * x).cos())) < 1e-14);
}

#[test]
fn sobolev_norm_examples() {
    let g = grid(32);
    let tau = 2.0 * PI;
    assert!((sobolev_norm(&Field::constant(g, 1.0), sob(4.0)) - tau.sqrt()).abs() < 1e-14);
    let c = Field::from_fn(g, f64::cos);
    assert!((sobolev_norm(&c, sob(0.0)) - PI.sqrt()).abs() < 1e-14);
    assert!((sobolev_norm(&c, sob(1.0)) - tau.sqrt()).abs() < 1e-14);
}

#[test]
fn mollifier_examples() {
    let g = grid(64);
    let one = Field::constant(g, 1.0);
    assert!(max_diff(&mollify(&one, 0.3).unwrap(), &one) < 1e-13);
    let e = Field::from_fn(g, f64::cos);
    let m = mollifier_symbol_at(1.0, 1);
    assert!(m > 0.0 && m < 1.0);
    assert!(max_diff(&mollify(&e, 1.0).unwrap(), &e.scale(m)) < 1e-13);
    assert!(mollify(&e, -0.1).is_err());
}

#[test]
fn product_examples() {
    let g = grid(8);
    let c = Field::from_fn(g, f64::cos);
    let s = Field::from_fn(g, f64::sin);
    let cc = product(&c, &c).unwrap();
    assert!(max_diff(&cc, &Field::from_fn(g, |x| 0.5 * (1.0 + (2.0 * x).cos()))) < 1e-14);
    let cs = product(&c, &s).unwrap();
    assert!(max_diff(&cs, &Field::from_fn(g, |x| 0.5 * (2.0 * x).sin())) < 1e-14);
    let one = Field::constant(g, 1.0);
    assert!(max_diff(&product(&c, &one).unwrap(), &c) < 1e-14);
    assert!(matches!(
        product(&c, &Field::zeros(grid(16))),
        Err(Error::GridMismatch(..))
    ));
}

fn band_limited(n: usize) -> impl Strategy<Value = Field> {
    prop::collection::vec(-1.0f64..1.0, 12).prop_map(move |a| {
        Field::from_fn(grid(n), |x| {
            a.chunks(2)
                .enumerate()
                .map(|(k, ab)| ab[0] * (k as f64 * x).cos() + ab[1] * (k as f64 * x).sin())
                .sum()
        })
    })
}

proptest! {
    #[test]
    fn plancherel(f in band_limited(32), g in band_limited(32)) {
        let phys = l2_inner(&f, &g).unwrap();
        let spec = spectral_inner(&f, &g).unwrap();
        prop_assert!((phys - 2.0 * PI * spec).abs() <= 1e-10 * (1.0 + phys.abs()));
    }

    #[test]
    fn bessel_round_trip(f in band_limited(32), s in -2.0f64..3.0) {
        let back = bessel_apply(&bessel_apply(&f, sob(s)), sob(-s));
        prop_assert!(max_diff(&back, &f) <= 1e-10 * (1.0 + f.max_abs()));
    }

    #[test]
    fn spectrum_is_hermitian(f in band_limited(16)) {
        for k in 1..8 {
            let (a, b) = (f.coefficient(k), f.coefficient(-k));
            prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn mollifier_contracts(f in band_limited(32), s in 0.0f64..4.0, eps in 0.05f64..1.0) {
        let j = mollify(&f, eps).unwrap();
        prop_assert!(sobolev_norm(&j, sob(s)) <= sobolev_norm(&f, sob(s)) * (1.0 + 1e-14));
    }

    #[test]
    fn mollifier_is_self_adjoint(f in band_limited(32), g in band_limited(32), eps in 0.05f64..1.0) {
        let a = l2_inner(&mollify(&f, eps).unwrap(), &g).unwrap();
        let b = l2_inner(&f, &mollify(&g, eps).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn derivative_bound(f in band_limited(32), s in 0.0f64..3.0) {
        let lhs = sobolev_norm(&derivative(&f), sob(s));
        prop_assert!(lhs <= sobolev_norm(&f, sob(s + 1.0)) * (1.0 + 1e-14));
    }
}
