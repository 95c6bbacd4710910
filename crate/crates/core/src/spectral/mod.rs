//! Fourier toolkit on the periodic grid.
//!
//! Coefficients follow `F(f)(k) = (1/2π) ∫ e^{-ikx} f(x) dx`, approximated
//! by `c_k = (1/N) Σ_j f(x_j) e^{-ik x_j}`. With this convention
//! `(f, g)_{L²} = 2π Σ_k c_k(f) conj(c_k(g))` and
//! `‖f‖²_{H^s} = 2π Σ_k (1 + k²)^s |c_k|²`.

mod dealias;
mod fft;
mod field;
mod grid;
mod mollifier;
mod ops;

pub use dealias::Padded;
pub use field::Field;
pub use grid::PeriodicGrid;
pub use mollifier::{bump_normalization, mollifier_symbol, mollifier_symbol_at};
pub use ops::{
    apply_multiplier, bessel_apply, derivative, forward_spectrum, helmholtz_inverse,
    helmholtz_multiplier_dx, l2_inner, mollify, nth_derivative, product, sobolev_norm,
    spectral_inner,
};

use serde::{Deserialize, Serialize};

/// Regularity exponent of a Sobolev space `H^s`. Negative values are allowed.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub fn new(s: f64) -> crate::Result<Self> {
        if s.is_finite() {
            Ok(Self(s))
        } else {
            Err(crate::Error::InvalidParameter(format!(
                "Sobolev index must be finite, got {s}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `H^{s+delta}`.
    pub fn shift(self, delta: f64) -> Self {
        Self(self.0 + delta)
    }
}

impl From<SobolevIndex> for f64 {
    fn from(s: SobolevIndex) -> f64 {
        s.0
    }
}
