//! Symbol of the periodic Friedrichs mollifier.
//!
//! With `j(y) = I₁ exp(1/(y² - 1))` on `|y| < 1` and `j_ε(x) = Σ_k F(j)(εk) e^{ikx}`,
//! the transform conventions give `F(J_ε f)(k) = m(εk) F(f)(k)` where
//! `m(ξ) = ∫_{-1}^{1} j(y) cos(ξ y) dy`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::grid::PeriodicGrid;
use crate::{Error, Result};

const QUAD_TOL: f64 = 1e-12;
const MAX_DEPTH: u32 = 40;

fn bump(y: f64) -> f64 {
    let d = y * y - 1.0;
    if d >= 0.0 {
        0.0
    } else {
        (1.0 / d).exp()
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson over `panels` equal sub-intervals; the panel split
/// keeps oscillatory integrands from fooling the first error estimate.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    let h = (b - a) / panels as f64;
    let panel_tol = tol / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = a + h * p as f64;
            let hi = lo + h;
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(f, lo, hi, fa, fm, fb, whole, panel_tol, MAX_DEPTH)
        })
        .sum()
}

/// `I₁ = (∫_{-1}^{1} exp(1/(x² - 1)) dx)^{-1}`.
pub fn bump_normalization() -> f64 {
    static I1: OnceLock<f64> = OnceLock::new();
    *I1.get_or_init(|| 1.0 / (2.0 * adaptive_simpson(&bump, 0.0, 1.0, 8, 0.1 * QUAD_TOL)))
}

/// `m(ξ) = ∫_{-1}^{1} j(y) cos(ξ y) dy` at `ξ = εk`.
pub fn mollifier_symbol_at(eps: f64, k: i64) -> f64 {
    let xi = (eps * k as f64).abs();
    if xi == 0.0 {
        return 1.0;
    }
    let i1 = bump_normalization();
    let panels = 8 + (2.0 * xi).ceil() as usize;
    let integrand = |y: f64| bump(y) * (xi * y).cos();
    2.0 * i1 * adaptive_simpson(&integrand, 0.0, 1.0, panels, 0.5 * QUAD_TOL / i1)
}

type SymbolCache = RwLock<HashMap<(u64, usize), Arc<[f64]>>>;

fn cache() -> &'static SymbolCache {
    static CACHE: OnceLock<SymbolCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Mollifier symbol in slot order for `grid`, cached per `(ε, N)`.
pub fn mollifier_symbol(eps: f64, grid: PeriodicGrid) -> Result<Arc<[f64]>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mollifier width must be positive, got {eps}"
        )));
    }
    let key = (eps.to_bits(), grid.len());
    if let Some(sym) = cache().read().unwrap().get(&key) {
        return Ok(sym.clone());
    }
    let mut guard = cache().write().unwrap();
    let sym = guard.entry(key).or_insert_with(|| {
        let half = grid.nyquist_index() as i64;
        let by_k: Vec<f64> = (0..=half).map(|k| mollifier_symbol_at(eps, k)).collect();
        (0..grid.len())
            .map(|j| by_k[grid.wavenumber(j).unsigned_abs() as usize])
            .collect::<Vec<_>>()
            .into()
    });
    Ok(sym.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from an independent 30-digit quadrature.
    const I1_INV: f64 = 0.443_993_816_168_079_4;

    #[test]
    fn normalization_constant() {
        assert!((1.0 / bump_normalization() - I1_INV).abs() < 1e-13);
    }

    #[test]
    fn golden_symbol_values() {
        let cases = [
            (1.0, 1, 0.923_119_010_817_905_2),
            (0.05, 1, 0.999_802_371_751_518_2),
            (0.4, 3, 0.890_641_386_856_698_3),
            (0.1, 10, 0.923_119_010_817_905_2),
            (0.05, 50, 0.584_729_501_832_356_5),
        ];
        for (eps, k, want) in cases {
            let got = mollifier_symbol_at(eps, k);
            assert!(
                (got - want).abs() < 1e-11,
                "eps={eps} k={k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn symbol_bounded_and_even() {
        let g = PeriodicGrid::new(256).unwrap();
        let sym = mollifier_symbol(0.4, g).unwrap();
        assert!((sym[0] - 1.0).abs() < 1e-15);
        for j in 0..g.len() {
            assert!(sym[j].abs() <= 1.0 + 1e-12);
            assert_eq!(sym[j], sym[g.reflect_index(j)]);
        }
    }

    #[test]
    fn cache_returns_shared_symbol() {
        let g = PeriodicGrid::new(32).unwrap();
        let a = mollifier_symbol(0.2, g).unwrap();
        let b = mollifier_symbol(0.2, g).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
