use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::fft;
use super::grid::PeriodicGrid;
use crate::{Error, Result};

/// A real periodic function sampled on a [`PeriodicGrid`].
///
/// Values are immutable once built; the spectrum is computed lazily and
/// cached.
#[derive(Clone, Debug)]
pub struct Field {
    grid: PeriodicGrid,
    values: Vec<f64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl Field {
    pub fn from_values(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            spectrum: OnceLock::new(),
        })
    }

    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.node(j))).collect();
        Self {
            grid,
            values,
            spectrum: OnceLock::new(),
        }
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: PeriodicGrid, c: f64) -> Self {
        let mut spec = vec![Complex64::new(0.0, 0.0); grid.len()];
        spec[0] = Complex64::new(c, 0.0);
        let f = Self {
            grid,
            values: vec![c; grid.len()],
            spectrum: OnceLock::new(),
        };
        let _ = f.spectrum.set(spec);
        f
    }

    /// Builds a real field from coefficients in slot order. The input is
    /// projected onto Hermitian sequences first, so any imaginary part of
    /// the synthesized samples is dropped consistently.
    pub fn from_spectrum(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if coeffs.len() != n {
            return Err(Error::InvalidGrid(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        let mut sym = coeffs.clone();
        for j in 0..n {
            let mirror = (n - j) % n;
            sym[j] = 0.5 * (coeffs[j] + coeffs[mirror].conj());
        }
        let values = fft::inverse_real(&sym);
        let f = Self {
            grid,
            values,
            spectrum: OnceLock::new(),
        };
        let _ = f.spectrum.set(sym);
        Ok(f)
    }

    #[inline]
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Coefficients in slot order (see [`PeriodicGrid::wavenumber`]).
    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum
            .get_or_init(|| fft::forward_real(&self.values))
    }

    /// Coefficient of `e^{ikx}`; zero outside the resolved band.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        match self.grid.slot(k) {
            Some(j) => self.spectrum()[j],
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `x -> f(-x)`, exact on the grid.
    pub fn reflect(&self) -> Self {
        let values = (0..self.grid.len())
            .map(|j| self.values[self.grid.reflect_index(j)])
            .collect();
        Self {
            grid: self.grid,
            values,
            spectrum: OnceLock::new(),
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            spectrum: OnceLock::new(),
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map(|v| a * v)
    }

    pub fn check_grid(&self, other: &Field) -> Result<()> {
        if self.grid != other.grid {
            Err(Error::GridMismatch(self.grid.len(), other.grid.len()))
        } else {
            Ok(())
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Field) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x + a * y)
                .collect(),
            spectrum: OnceLock::new(),
        })
    }

    /// Zeroes the `k = N/2` mode.
    pub fn without_nyquist(&self) -> Self {
        let mut spec = self.spectrum().to_vec();
        spec[self.grid.nyquist_index()] = Complex64::new(0.0, 0.0);
        Self::from_spectrum(self.grid, spec).expect("same grid")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.values == other.values
    }
}

fn zip_with(a: &Field, b: &Field, f: impl Fn(f64, f64) -> f64) -> Field {
    assert_eq!(a.grid, b.grid, "field grid mismatch");
    Field {
        grid: a.grid,
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| f(x, y))
            .collect(),
        spectrum: OnceLock::new(),
    }
}

/// Panics on grid mismatch; use [`Field::axpy`] for the checked form.
impl Add for &Field {
    type Output = Field;
    fn add(self, rhs: &Field) -> Field {
        zip_with(self, rhs, |x, y| x + y)
    }
}

/// Panics on grid mismatch.
impl Sub for &Field {
    type Output = Field;
    fn sub(self, rhs: &Field) -> Field {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul<f64> for &Field {
    type Output = Field;
    fn mul(self, a: f64) -> Field {
        self.scale(a)
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.scale(-1.0)
    }
}
