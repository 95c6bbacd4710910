use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use peakon_core::integrator::DEFAULT_C_S;
use peakon_core::{Field, InitialData, SolveConfig, TimeStep};
use serde::{Deserialize, Serialize};

/// Flat run configuration: every [`SolveConfig`] key plus the data and
/// sweep parameters. Missing keys take their defaults, unknown keys are
/// rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub s: f64,
    pub delta0: f64,
    pub c_s: f64,
    pub eps: f64,
    pub dt: TimeStep,
    pub cfl: f64,
    pub t_final: f64,
    pub n_points: usize,
    pub record_every: usize,
    pub override_lifespan: bool,
    pub u0: InitialData,
    pub v0: InitialData,
    /// Recorded in the manifest. The bundled experiments are deterministic.
    pub seed: u64,
    /// Solution-sweep index.
    pub r: Option<f64>,
    /// Time-derivative-sweep index.
    pub p: Option<f64>,
    pub deltas: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let solve = SolveConfig::default();
        Self {
            s: solve.s,
            delta0: solve.delta0,
            c_s: DEFAULT_C_S,
            eps: solve.eps,
            dt: solve.dt,
            cfl: solve.cfl,
            t_final: solve.t_final,
            n_points: solve.n_points,
            record_every: solve.record_every,
            override_lifespan: solve.override_lifespan,
            u0: InitialData::trig(&[(1, 0.3, 0.0), (2, 0.0, 0.1)]),
            v0: InitialData::Same,
            seed: 0,
            r: None,
            p: None,
            deltas: vec![1e-4, 1e-3, 1e-2, 1e-1],
        }
    }
}

/// Which Hölder sweep a configuration asks for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepKind {
    Solution(f64),
    TimeDerivative(f64),
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("invalid config {}", path.display()))?;
        cfg.solve_config()
            .validate()
            .with_context(|| format!("invalid config {}", path.display()))?;
        Ok(cfg)
    }

    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            s: self.s,
            delta0: self.delta0,
            c_s: self.c_s,
            eps: self.eps,
            dt: self.dt,
            cfl: self.cfl,
            t_final: self.t_final,
            n_points: self.n_points,
            record_every: self.record_every,
            override_lifespan: self.override_lifespan,
        }
    }

    pub fn initial_data(&self) -> Result<(Field, Field)> {
        let grid = self.solve_config().grid()?;
        let u0 = match self.u0 {
            InitialData::Same | InitialData::Reflect => {
                bail!("u0 cannot refer to itself ('same'/'reflect' are only valid for v0)")
            }
            ref d => d.sample(grid, None)?,
        };
        let v0 = self.v0.sample(grid, Some(&u0))?;
        Ok((u0, v0))
    }

    pub fn sweep_kind(&self) -> Result<SweepKind> {
        match (self.r, self.p) {
            (Some(r), None) => Ok(SweepKind::Solution(r)),
            (None, Some(p)) => Ok(SweepKind::TimeDerivative(p)),
            (Some(_), Some(_)) => bail!("set exactly one of 'r' and 'p', not both"),
            (None, None) => bail!("a sweep needs 'r' (solution) or 'p' (time derivative)"),
        }
    }

    pub fn describe_input(&self) -> String {
        format!("u0 = {}; v0 = {}", self.u0.describe(), self.v0.describe())
    }
}

/// Written first into every output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    pub config: RunConfig,
    pub version: String,
    pub seed: u64,
    pub input: String,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            command: command.to_owned(),
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            seed: config.seed,
            input: config.describe_input(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join("manifest.json");
        fs::write(&path, self.to_json()?)
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_materializes_defaults() {
        let cfg: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.c_s, DEFAULT_C_S);
        let text = serde_json::to_string(&cfg).unwrap();
        for key in [
            "\"c_s\"",
            "\"n_points\"",
            "\"u0\"",
            "\"deltas\"",
            "\"seed\"",
        ] {
            assert!(text.contains(key), "{key} missing from {text}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"n_point": 64}"#).is_err());
    }

    #[test]
    fn manifest_round_trip_is_byte_identical() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"t_final": 0.01, "dt": 0.001, "eps": 0.1, "s": 2.8, "p": 0.1,
                "u0": {"type": "peakon", "c": 1.0}, "v0": {"type": "reflect"}}"#,
        )
        .unwrap();
        let first = RunManifest::new("sweep", &cfg).to_json().unwrap();
        let back: RunManifest = serde_json::from_str(&first).unwrap();
        assert_eq!(back.to_json().unwrap(), first);
        assert_eq!(back.config, cfg);
    }

    #[test]
    fn sweep_kind_needs_exactly_one_index() {
        let mut cfg = RunConfig::default();
        assert!(cfg.sweep_kind().is_err());
        cfg.r = Some(1.0);
        assert_eq!(cfg.sweep_kind().unwrap(), SweepKind::Solution(1.0));
        cfg.p = Some(0.5);
        assert!(cfg.sweep_kind().is_err());
    }

    #[test]
    fn u0_cannot_be_relative() {
        let cfg = RunConfig {
            u0: InitialData::Same,
            ..RunConfig::default()
        };
        assert!(cfg.initial_data().is_err());
    }
}
