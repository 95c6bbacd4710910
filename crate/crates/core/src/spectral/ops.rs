use std::f64::consts::PI;

use num_complex::Complex64;

use super::dealias::Padded;
use super::field::Field;
use super::mollifier::mollifier_symbol;
use super::SobolevIndex;
use crate::Result;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn forward_spectrum(f: &Field) -> Vec<Complex64> {
    f.spectrum().to_vec()
}

/// Multiplies every coefficient by `symbol(k)`. When `odd` is set the
/// Nyquist coefficient is dropped, since an odd symbol cannot keep it real.
pub fn apply_multiplier(f: &Field, odd: bool, symbol: impl Fn(i64) -> Complex64) -> Field {
    let grid = f.grid();
    let mut spec: Vec<Complex64> = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * symbol(grid.wavenumber(j)))
        .collect();
    if odd {
        spec[grid.nyquist_index()] = Complex64::new(0.0, 0.0);
    }
    Field::from_spectrum(grid, spec).expect("spectrum length matches grid")
}

fn bessel_symbol(k: i64, s: f64) -> f64 {
    (1.0 + (k * k) as f64).powf(0.5 * s)
}

/// `D^s = (1 - ∂²)^{s/2}`.
pub fn bessel_apply(f: &Field, s: SobolevIndex) -> Field {
    let s = s.value();
    apply_multiplier(f, false, |k| Complex64::new(bessel_symbol(k, s), 0.0))
}

/// `D^{-2} = (1 - ∂²)^{-1}`.
pub fn helmholtz_inverse(f: &Field) -> Field {
    apply_multiplier(f, false, |k| {
        Complex64::new(1.0 / (1.0 + (k * k) as f64), 0.0)
    })
}

pub fn derivative(f: &Field) -> Field {
    apply_multiplier(f, true, |k| I * k as f64)
}

pub fn nth_derivative(f: &Field, order: u32) -> Field {
    apply_multiplier(f, order % 2 == 1, |k| (I * k as f64).powu(order))
}

/// `D^{-2} ∂_x`, symbol `ik / (1 + k²)`.
pub fn helmholtz_multiplier_dx(f: &Field) -> Field {
    apply_multiplier(f, true, |k| I * (k as f64 / (1.0 + (k * k) as f64)))
}

pub fn sobolev_norm(f: &Field, s: SobolevIndex) -> f64 {
    let grid = f.grid();
    let s = s.value();
    let sum: f64 = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let k = grid.wavenumber(j);
            (1.0 + (k * k) as f64).powf(s) * c.norm_sqr()
        })
        .sum();
    (2.0 * PI * sum).sqrt()
}

/// Friedrichs mollifier `J_ε`. Rejects `ε <= 0`.
pub fn mollify(f: &Field, eps: f64) -> Result<Field> {
    let symbol = mollifier_symbol(eps, f.grid())?;
    let grid = f.grid();
    let spec = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * symbol[j])
        .collect();
    Field::from_spectrum(grid, spec)
}

/// Dealiased pointwise product (2× zero padding).
pub fn product(f: &Field, g: &Field) -> Result<Field> {
    f.check_grid(g)?;
    Ok(Padded::lift(f).mul_raw(&Padded::lift(g)).project())
}

/// Rectangle-rule `∫ f g dx` on the grid nodes.
pub fn l2_inner(f: &Field, g: &Field) -> Result<f64> {
    f.check_grid(g)?;
    let dx = f.grid().spacing();
    Ok(f.values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a * b)
        .sum::<f64>()
        * dx)
}

/// `Σ_k c_k(f) conj(c_k(g))`, real part.
pub fn spectral_inner(f: &Field, g: &Field) -> Result<f64> {
    f.check_grid(g)?;
    Ok(f.spectrum()
        .iter()
        .zip(g.spectrum())
        .map(|(a, b)| (a * b.conj()).re)
        .sum())
}
