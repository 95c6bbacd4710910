//! Alias-free products through 2× zero padding.
//!
//! A [`Padded`] holds a function sampled on the `2N` grid. A product of up
//! to three band-limited factors (`|k| ≤ N/2`) has band `3N/2`; on the fine
//! grid its aliases fold onto `|k| ≥ N/2`, which truncation to the `N` band
//! discards. Cubic terms are therefore formed as one untruncated triple
//! product and projected once, which keeps them symmetric in their factors.

use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::fft;
use super::field::Field;
use super::grid::PeriodicGrid;

#[derive(Clone, Debug)]
pub struct Padded {
    grid: PeriodicGrid,
    values: Vec<f64>,
    /// Number of band-limited factors multiplied together (`0` for the
    /// zero accumulator).
    degree: u8,
}

/// Largest product degree that stays alias-free on the `2N` grid.
const MAX_DEGREE: u8 = 3;

impl Padded {
    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; 2 * grid.len()],
            degree: 0,
        }
    }

    /// Spectral interpolation of `f` onto the `2N` grid.
    pub fn lift(f: &Field) -> Self {
        let grid = f.grid();
        let n = grid.len();
        let half = n / 2;
        let spec = f.spectrum();
        let mut padded = vec![Complex64::new(0.0, 0.0); 2 * n];
        padded[..half].copy_from_slice(&spec[..half]);
        for k in 1..half {
            padded[2 * n - k] = spec[n - k];
        }
        // The Nyquist mode is read as a cosine.
        let nyq = 0.5 * spec[half];
        padded[half] = nyq;
        padded[2 * n - half] = nyq;
        Self {
            grid,
            values: fft::inverse_real(&padded),
            degree: 1,
        }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    /// Samples on the fine grid.
    pub fn fine_values(&self) -> &[f64] {
        &self.values
    }

    fn coarse_spectrum(&self) -> Vec<Complex64> {
        let n = self.grid.len();
        let half = n / 2;
        let fine = fft::forward_real(&self.values);
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        spec[..half].copy_from_slice(&fine[..half]);
        for k in 1..half {
            spec[n - k] = fine[2 * n - k];
        }
        spec[half] = fine[half] + fine[2 * n - half];
        spec
    }

    /// Truncates to the resolved band and returns the coarse field.
    pub fn project(&self) -> Field {
        Field::from_spectrum(self.grid, self.coarse_spectrum()).expect("grid sizes agree")
    }

    /// Dealiased product, truncated so it can feed another product.
    pub fn mul(&self, other: &Padded) -> Padded {
        Padded::lift(&self.mul_raw(other).project())
    }

    /// Exact product on the fine grid without truncation.
    ///
    /// # Panics
    /// If the result would have more than three band-limited factors, the
    /// point past which aliases reach the resolved band.
    pub fn mul_raw(&self, other: &Padded) -> Padded {
        assert_eq!(self.grid, other.grid, "padded grid mismatch");
        let degree = self.degree + other.degree;
        assert!(
            degree <= MAX_DEGREE,
            "product of degree {degree} would alias"
        );
        Padded {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
            degree,
        }
    }

    pub fn scale(&self, a: f64) -> Padded {
        Padded {
            grid: self.grid,
            values: self.values.iter().map(|v| a * v).collect(),
            degree: self.degree,
        }
    }

    /// In-place `self += a * other`.
    pub fn add_scaled(&mut self, a: f64, other: &Padded) {
        assert_eq!(self.grid, other.grid, "padded grid mismatch");
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            *x += a * y;
        }
        self.degree = self.degree.max(other.degree);
    }
}

impl Add for &Padded {
    type Output = Padded;
    fn add(self, rhs: &Padded) -> Padded {
        let mut out = self.clone();
        out.add_scaled(1.0, rhs);
        out
    }
}

impl Sub for &Padded {
    type Output = Padded;
    fn sub(self, rhs: &Padded) -> Padded {
        let mut out = self.clone();
        out.add_scaled(-1.0, rhs);
        out
    }
}
