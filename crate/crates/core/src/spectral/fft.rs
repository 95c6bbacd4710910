use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type Plan = Arc<dyn Fft<f64>>;

fn plans() -> &'static RwLock<HashMap<(usize, bool), Plan>> {
    static PLANS: OnceLock<RwLock<HashMap<(usize, bool), Plan>>> = OnceLock::new();
    PLANS.get_or_init(|| RwLock::new(HashMap::new()))
}

fn plan(n: usize, inverse: bool) -> Plan {
    if let Some(p) = plans().read().unwrap().get(&(n, inverse)) {
        return p.clone();
    }
    let mut guard = plans().write().unwrap();
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// Real samples to normalised coefficients `c_k = (1/N) Σ f_j e^{-ik x_j}`.
pub(crate) fn forward_real(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plan(n, false).process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// Coefficients back to samples; the imaginary residue is discarded.
pub(crate) fn inverse_real(coeffs: &[Complex64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    plan(n, true).process(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}
