use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform sampling `x_j = 2πj/N`, `j = 0..N`, of the circle.
///
/// Spectral index `j` carries wavenumber `j` for `j <= N/2` and `j - N`
/// otherwise, so the resolved band is `{-N/2+1, ..., N/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct PeriodicGrid {
    n_points: usize,
}

impl PeriodicGrid {
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < 8 || !n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_points must be even and >= 8, got {n_points}"
            )));
        }
        Ok(Self { n_points })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n_points as f64
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        self.spacing() * j as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.node(j)).collect()
    }

    #[inline]
    pub fn nyquist_index(&self) -> usize {
        self.n_points / 2
    }

    /// Wavenumber carried by spectral slot `j`.
    #[inline]
    pub fn wavenumber(&self, j: usize) -> i64 {
        let n = self.n_points as i64;
        let j = j as i64;
        if j <= n / 2 {
            j
        } else {
            j - n
        }
    }

    /// Spectral slot holding wavenumber `k`, if it is resolved.
    pub fn slot(&self, k: i64) -> Option<usize> {
        let half = (self.n_points / 2) as i64;
        if k > half || k <= -half {
            None
        } else if k >= 0 {
            Some(k as usize)
        } else {
            Some((k + self.n_points as i64) as usize)
        }
    }

    pub fn wavenumbers(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.n_points).map(|j| self.wavenumber(j))
    }

    /// Node index of `-x_j`.
    #[inline]
    pub fn reflect_index(&self, j: usize) -> usize {
        (self.n_points - j) % self.n_points
    }
}

impl TryFrom<usize> for PeriodicGrid {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<PeriodicGrid> for usize {
    fn from(g: PeriodicGrid) -> usize {
        g.n_points
    }
}
