use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::spectral::{PeriodicGrid, SobolevIndex};
use crate::{Error, Result};

/// Twice the energy-ratio supremum of the standard smooth run at `s = 3`
/// (see [`super::calibrate_c_s`]).
pub const DEFAULT_C_S: f64 = 8.600505360535429e-2;

/// Fixed step or the transport CFL rule
/// `dt = cfl·Δx / (1 + max |(u − w)(v + z)|)` evaluated on the initial data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeStep {
    Auto,
    Fixed(f64),
}

impl Serialize for TimeStep {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TimeStep::Auto => ser.serialize_str("auto"),
            TimeStep::Fixed(dt) => ser.serialize_f64(*dt),
        }
    }
}

impl<'de> Deserialize<'de> for TimeStep {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct StepVisitor;

        impl Visitor<'_> for StepVisitor {
            type Value = TimeStep;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a step size or \"auto\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<TimeStep, E> {
                if v == "auto" {
                    Ok(TimeStep::Auto)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<TimeStep, E> {
                Ok(TimeStep::Fixed(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<TimeStep, E> {
                Ok(TimeStep::Fixed(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<TimeStep, E> {
                Ok(TimeStep::Fixed(v as f64))
            }
        }

        de.deserialize_any(StepVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    /// Sobolev regularity used by every norm and monitor.
    pub s: f64,
    pub delta0: f64,
    pub c_s: f64,
    /// Mollifier width; `0` evolves the unmollified system.
    pub eps: f64,
    pub dt: TimeStep,
    pub cfl: f64,
    /// Signed final time; negative integrates backward.
    pub t_final: f64,
    pub n_points: usize,
    pub record_every: usize,
    /// Allow `|t_final|` past the guaranteed lifespan.
    pub override_lifespan: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            s: 3.0,
            delta0: 0.5,
            c_s: DEFAULT_C_S,
            eps: 0.0,
            dt: TimeStep::Auto,
            cfl: 0.3,
            t_final: 0.0,
            n_points: 128,
            record_every: 1,
            override_lifespan: false,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        SobolevIndex::new(self.s)?;
        PeriodicGrid::new(self.n_points)?;
        if !(self.delta0 > 0.0 && self.delta0 < 1.0) {
            return bad(format!("delta0 must lie in (0, 1), got {}", self.delta0));
        }
        if !(self.c_s > 0.0 && self.c_s.is_finite()) {
            return bad(format!("c_s must be positive, got {}", self.c_s));
        }
        if !(self.eps >= 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be nonnegative, got {}", self.eps));
        }
        if let TimeStep::Fixed(dt) = self.dt {
            if dt == 0.0 || !dt.is_finite() {
                return bad(format!("dt must be nonzero and finite, got {dt}"));
            }
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl must be positive, got {}", self.cfl));
        }
        if !self.t_final.is_finite() {
            return bad("t_final must be finite".into());
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        Ok(())
    }

    pub fn sobolev(&self) -> SobolevIndex {
        SobolevIndex::new(self.s).expect("validated")
    }

    pub fn grid(&self) -> Result<PeriodicGrid> {
        PeriodicGrid::new(self.n_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_step_json() {
        let auto: TimeStep = serde_json::from_str("\"auto\"").unwrap();
        assert_eq!(auto, TimeStep::Auto);
        let fixed: TimeStep = serde_json::from_str("0.01").unwrap();
        assert_eq!(fixed, TimeStep::Fixed(0.01));
        assert!(serde_json::from_str::<TimeStep>("\"fast\"").is_err());
        assert_eq!(serde_json::to_string(&TimeStep::Auto).unwrap(), "\"auto\"");
    }

    #[test]
    fn defaults_fill_missing_keys() {
        let cfg: SolveConfig = serde_json::from_str(r#"{"t_final": 0.5}"#).unwrap();
        assert_eq!(cfg.t_final, 0.5);
        assert_eq!(cfg.n_points, 128);
        assert!(serde_json::from_str::<SolveConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        let ok = SolveConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            SolveConfig {
                delta0: 1.0,
                ..ok.clone()
            },
            SolveConfig {
                delta0: 0.0,
                ..ok.clone()
            },
            SolveConfig {
                c_s: 0.0,
                ..ok.clone()
            },
            SolveConfig {
                eps: -0.1,
                ..ok.clone()
            },
            SolveConfig {
                dt: TimeStep::Fixed(0.0),
                ..ok.clone()
            },
            SolveConfig {
                n_points: 10 + 1,
                ..ok.clone()
            },
            SolveConfig {
                record_every: 0,
                ..ok.clone()
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }
}
