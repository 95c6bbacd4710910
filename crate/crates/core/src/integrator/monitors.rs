use serde::Serialize;

use super::config::{SolveConfig, TimeStep};
use super::stepper::{solve, Trajectory};
use crate::spectral::{Field, PeriodicGrid, SobolevIndex};
use crate::systems::InitialData;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeEstimateReport {
    /// `(2/√δ₀)(‖u₀‖_{H^s} + ‖v₀‖_{H^s})`.
    pub bound: f64,
    /// Largest `(‖u(t)‖ + ‖v(t)‖) / bound` over recorded times; `0` for zero data.
    pub max_ratio: f64,
    pub worst_time: f64,
    pub pass: bool,
}

/// Checks `‖u(t)‖_{H^s} + ‖v(t)‖_{H^s} ≤ (2/√δ₀)(‖u₀‖_{H^s} + ‖v₀‖_{H^s})`
/// at every recorded time.
pub fn size_estimate_check(traj: &Trajectory, cfg: &SolveConfig) -> Result<SizeEstimateReport> {
    let first = traj
        .diagnostics
        .first()
        .ok_or_else(|| Error::InsufficientData("empty trajectory".into()))?;
    let bound = 2.0 / cfg.delta0.sqrt() * (first.norm_u_hs + first.norm_v_hs);
    let mut report = SizeEstimateReport {
        bound,
        max_ratio: 0.0,
        worst_time: traj.times[0],
        pass: true,
    };
    for (t, d) in traj.times.iter().zip(&traj.diagnostics) {
        let size = d.norm_u_hs + d.norm_v_hs;
        if size > bound {
            report.pass = false;
        }
        if bound > 0.0 && size / bound > report.max_ratio {
            report.max_ratio = size / bound;
            report.worst_time = *t;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyRatioReport {
    /// `sup |d/dt ‖U‖_{H^{s−1}}| / (‖U‖² ‖V‖)`; `None` when every
    /// denominator vanishes.
    pub sup_u: Option<f64>,
    /// `sup |d/dt ‖V‖_{H^{s−1}}| / (‖V‖² ‖U‖)`.
    pub sup_v: Option<f64>,
}

impl EnergyRatioReport {
    /// Larger of the two suprema.
    pub fn sup(&self) -> Option<f64> {
        match (self.sup_u, self.sup_v) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Three-point derivative on a possibly nonuniform time grid; one-sided at
/// the ends.
fn time_derivative(t: &[f64], y: &[f64], i: usize) -> f64 {
    let n = t.len();
    let (a, b, c) = if i == 0 {
        (0, 1, 2)
    } else if i == n - 1 {
        (n - 3, n - 2, n - 1)
    } else {
        (i - 1, i, i + 1)
    };
    let x = t[i];
    // Derivative of the Lagrange interpolant through (a, b, c) at x.
    let la = ((x - t[b]) + (x - t[c])) / ((t[a] - t[b]) * (t[a] - t[c]));
    let lb = ((x - t[a]) + (x - t[c])) / ((t[b] - t[a]) * (t[b] - t[c]));
    let lc = ((x - t[a]) + (x - t[b])) / ((t[c] - t[a]) * (t[c] - t[b]));
    la * y[a] + lb * y[b] + lc * y[c]
}

pub fn energy_ratio_monitor(traj: &Trajectory) -> Result<EnergyRatioReport> {
    if traj.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "energy-ratio monitor needs at least 3 recorded times, got {}",
            traj.len()
        )));
    }
    let s1 = traj.sobolev().shift(-1.0);
    let nu: Vec<f64> = traj.states.iter().map(|st| st.norm_u_pair(s1)).collect();
    let nv: Vec<f64> = traj.states.iter().map(|st| st.norm_v_pair(s1)).collect();
    let ratio = |own: &[f64], other: &[f64]| {
        (0..own.len())
            .filter_map(|i| {
                let denom = own[i] * own[i] * other[i];
                (denom > 0.0).then(|| time_derivative(&traj.times, own, i).abs() / denom)
            })
            .reduce(f64::max)
    };
    Ok(EnergyRatioReport {
        sup_u: ratio(&nu, &nv),
        sup_v: ratio(&nv, &nu),
    })
}

/// Data of the standard calibration run: `u₀ = v₀ = 0.3 cos x + 0.1 sin 2x`.
pub fn standard_calibration_data(grid: PeriodicGrid) -> (Field, Field) {
    let data = InitialData::trig(&[(1, 0.3, 0.0), (2, 0.0, 0.1)]);
    let u0 = data
        .sample(grid, None)
        .expect("trigonometric data samples on any grid");
    (u0.clone(), u0)
}

/// Twice the energy-ratio supremum of the standard run (128 points, unit
/// time, CFL step, unmollified) at regularity `s`.
pub fn calibrate_c_s(s: f64) -> Result<f64> {
    let cfg = SolveConfig {
        s,
        t_final: 1.0,
        dt: TimeStep::Auto,
        n_points: 128,
        override_lifespan: true,
        ..SolveConfig::default()
    };
    SobolevIndex::new(s)?;
    let (u0, v0) = standard_calibration_data(cfg.grid()?);
    let traj = solve(&u0, &v0, &cfg)?;
    let sup = energy_ratio_monitor(&traj)?
        .sup()
        .ok_or_else(|| Error::InsufficientData("degenerate calibration run".into()))?;
    Ok(2.0 * sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::DEFAULT_C_S;

    fn standard_run(dt: TimeStep) -> (Trajectory, SolveConfig) {
        let cfg = SolveConfig {
            t_final: 0.5,
            dt,
            override_lifespan: true,
            ..SolveConfig::default()
        };
        let (u0, v0) = standard_calibration_data(cfg.grid().unwrap());
        (solve(&u0, &v0, &cfg).unwrap(), cfg)
    }

    #[test]
    fn size_estimate_at_start_and_for_zero_data() {
        let cfg = SolveConfig {
            n_points: 32,
            t_final: 0.0,
            ..SolveConfig::default()
        };
        let (u0, v0) = standard_calibration_data(cfg.grid().unwrap());
        let traj = solve(&u0, &v0, &cfg).unwrap();
        let report = size_estimate_check(&traj, &cfg).unwrap();
        assert!((report.max_ratio - cfg.delta0.sqrt() / 2.0).abs() < 1e-15);
        assert!(report.pass);

        let zero = Field::zeros(cfg.grid().unwrap());
        let traj = solve(&zero, &zero, &cfg).unwrap();
        let report = size_estimate_check(&traj, &cfg).unwrap();
        assert!(report.pass && report.max_ratio == 0.0);
    }

    #[test]
    fn size_estimate_holds_on_a_smooth_run() {
        let (traj, cfg) = standard_run(TimeStep::Auto);
        assert!(size_estimate_check(&traj, &cfg).unwrap().pass);
    }

    #[test]
    fn energy_ratio_needs_data() {
        let cfg = SolveConfig {
            n_points: 32,
            t_final: 0.3,
            dt: TimeStep::Fixed(0.1),
            ..SolveConfig::default()
        };
        let zero = Field::zeros(cfg.grid().unwrap());
        let traj = solve(&zero, &zero, &cfg).unwrap();
        let report = energy_ratio_monitor(&traj).unwrap();
        assert_eq!(report.sup(), None);

        let short = SolveConfig {
            t_final: 0.1,
            ..cfg
        };
        let traj = solve(&zero, &zero, &short).unwrap();
        assert!(matches!(
            energy_ratio_monitor(&traj),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn energy_ratio_is_stable_under_refinement() {
        let (coarse, _) = standard_run(TimeStep::Fixed(0.01));
        let (fine, _) = standard_run(TimeStep::Fixed(0.005));
        let a = energy_ratio_monitor(&coarse).unwrap().sup().unwrap();
        let b = energy_ratio_monitor(&fine).unwrap().sup().unwrap();
        assert!(a > 0.0 && a.is_finite());
        assert!((a - b).abs() <= 0.05 * b, "{a} vs {b}");
    }

    #[test]
    fn frozen_constant_matches_calibration() {
        let c = calibrate_c_s(3.0).unwrap();
        assert!((c - DEFAULT_C_S).abs() <= 1e-9 * DEFAULT_C_S, "{c}");
    }

    #[test]
    fn three_point_derivative_is_exact_for_quadratics() {
        let t = [0.0, 0.1, 0.25, 0.3];
        let y: Vec<f64> = t.iter().map(|t| 1.0 + 2.0 * t - 3.0 * t * t).collect();
        for (i, ti) in t.iter().enumerate() {
            assert!((time_derivative(&t, &y, i) - (2.0 - 6.0 * ti)).abs() < 1e-12);
        }
    }
}
