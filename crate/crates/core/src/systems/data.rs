use serde::{Deserialize, Serialize};

use super::peakon::peakon_profile;
use crate::spectral::{Field, PeriodicGrid};
use crate::{Error, Result};

/// One Fourier mode `cos·cos(kx) + sin·sin(kx)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: u32,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

/// Declarative initial data, as read from run configurations.
///
/// `Same` and `Reflect` only make sense for the second component: they
/// copy `u₀` or take `u₀(−x)` (the PT-symmetric choice).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InitialData {
    Zero,
    Trig {
        #[serde(default)]
        constant: f64,
        terms: Vec<Mode>,
    },
    Peakon {
        c: f64,
        #[serde(default)]
        t: f64,
    },
    Same,
    Reflect,
}

impl InitialData {
    /// Convenience for `Σ cos/sin` data.
    pub fn trig(terms: &[(u32, f64, f64)]) -> Self {
        InitialData::Trig {
            constant: 0.0,
            terms: terms
                .iter()
                .map(|&(k, cos, sin)| Mode { k, cos, sin })
                .collect(),
        }
    }

    pub fn sample(&self, grid: PeriodicGrid, partner: Option<&Field>) -> Result<Field> {
        match self {
            InitialData::Zero => Ok(Field::zeros(grid)),
            InitialData::Trig { constant, terms } => Ok(Field::from_fn(grid, |x| {
                terms.iter().fold(*constant, |acc, m| {
                    let kx = m.k as f64 * x;
                    acc + m.cos * kx.cos() + m.sin * kx.sin()
                })
            })),
            InitialData::Peakon { c, t } => peakon_profile(*c, *t, grid),
            InitialData::Same | InitialData::Reflect => {
                let u0 = partner.ok_or_else(|| {
                    Error::InvalidParameter(
                        "'same'/'reflect' data needs a first component to refer to".into(),
                    )
                })?;
                if u0.grid() != grid {
                    return Err(Error::GridMismatch(u0.grid().len(), grid.len()));
                }
                Ok(match self {
                    InitialData::Same => u0.clone(),
                    _ => u0.reflect(),
                })
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            InitialData::Zero => "0".into(),
            InitialData::Trig { constant, terms } => {
                let mut parts = Vec::new();
                if *constant != 0.0 {
                    parts.push(format!("{constant}"));
                }
                for m in terms {
                    if m.cos != 0.0 {
                        parts.push(format!("{}*cos({}x)", m.cos, m.k));
                    }
                    if m.sin != 0.0 {
                        parts.push(format!("{}*sin({}x)", m.sin, m.k));
                    }
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            InitialData::Peakon { c, t } => format!("peakon(c={c}, t={t})"),
            InitialData::Same => "u0(x)".into(),
            InitialData::Reflect => "u0(-x)".into(),
        }
    }
}
