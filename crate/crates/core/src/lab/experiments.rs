use rayon::prelude::*;
use serde::Serialize;

use super::regions::{ExponentMap, Region};
use crate::integrator::{auto_dt, holder_lifespan, solve, SolveConfig, TimeStep, Trajectory};
use crate::spectral::{sobolev_norm, Field, PeriodicGrid, SobolevIndex};
use crate::systems::{peakon_profile, rhs, State};
use crate::{Error, Result};

/// `cos 3x + sin 5x`, the fixed shape every perturbation is built from.
pub fn perturbation_shape(grid: PeriodicGrid) -> Field {
    Field::from_fn(grid, |x| (3.0 * x).cos() + (5.0 * x).sin())
}

/// Shape rescaled to `H^index` norm `size`.
fn scaled_shape(grid: PeriodicGrid, size: f64, index: f64) -> Result<Field> {
    let shape = perturbation_shape(grid);
    let norm = sobolev_norm(&shape, SobolevIndex::new(index)?);
    Ok(shape.scale(size / norm))
}

fn initial_state(u0: &Field, v0: &Field) -> Result<State> {
    State::from_uv(u0.clone(), v0.clone())
}

fn resolved_step(cfg: &SolveConfig, u0: &Field, v0: &Field) -> Result<f64> {
    Ok(match cfg.dt {
        TimeStep::Auto => auto_dt(&initial_state(u0, v0)?, cfg.cfl),
        TimeStep::Fixed(dt) => dt.abs(),
    })
}

/// `sup_t ‖u₁ − u₂‖_{H^k} + ‖v₁ − v₂‖_{H^k}` over shared recorded times.
fn sup_distance(a: &Trajectory, b: &Trajectory, k: SobolevIndex) -> Result<f64> {
    aligned(a, b)?;
    Ok(a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| sobolev_norm(&(x.u() - y.u()), k) + sobolev_norm(&(x.v() - y.v()), k))
        .fold(0.0, f64::max))
}

/// Same as [`sup_distance`] for the time derivatives `(u_t, v_t)`.
fn sup_rate_distance(a: &Trajectory, b: &Trajectory, k: SobolevIndex) -> Result<f64> {
    aligned(a, b)?;
    let mut sup: f64 = 0.0;
    for (x, y) in a.states.iter().zip(&b.states) {
        let (dx, dy) = (rhs(x, a.eps)?, rhs(y, b.eps)?);
        let d = sobolev_norm(&(dx.u() - dy.u()), k) + sobolev_norm(&(dx.v() - dy.v()), k);
        sup = sup.max(d);
    }
    Ok(sup)
}

/// `sup_t ‖(U₁, V₁) − (U₂, V₂)‖_{H^k}` with all four components.
fn sup_state_distance(a: &Trajectory, b: &Trajectory, k: SobolevIndex) -> Result<f64> {
    aligned(a, b)?;
    let mut sup: f64 = 0.0;
    for (x, y) in a.states.iter().zip(&b.states) {
        sup = sup.max(x.axpy(-1.0, y)?.norm(k));
    }
    Ok(sup)
}

fn aligned(a: &Trajectory, b: &Trajectory) -> Result<()> {
    let same = a.times.len() == b.times.len()
        && a.times
            .iter()
            .zip(&b.times)
            .all(|(s, t)| (s - t).abs() <= 1e-12 * (1.0 + t.abs()));
    if same {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "trajectories are recorded at different times".into(),
        ))
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need >= 3 points for a slope fit, got {}",
            x.len().min(y.len())
        )));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidParameter(
            "log-log fit needs positive finite values".into(),
        ));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub map: ExponentMap,
    pub s: f64,
    /// `r` for solution sweeps, `p` for time-derivative sweeps.
    pub index: f64,
    pub region: Region,
    pub predicted_exponent: f64,
    pub eps_param: f64,
    /// Largest `‖u‖_{H^s} + ‖v‖_{H^s}` over base and perturbed data.
    pub rho: f64,
    pub horizon: f64,
    pub deltas: Vec<f64>,
    pub distances: Vec<f64>,
    /// `None` when fewer than three positive deltas completed.
    pub slope: Option<f64>,
    /// `slope >= 0.8 * predicted_exponent`.
    pub pass: bool,
}

impl SweepResult {
    fn finish(&mut self) {
        let (x, y): (Vec<f64>, Vec<f64>) = self
            .deltas
            .iter()
            .zip(&self.distances)
            .filter(|(d, _)| **d > 0.0)
            .map(|(d, e)| (*d, *e))
            .unzip();
        self.slope = log_log_slope(&x, &y).ok();
        self.pass = self
            .slope
            .is_some_and(|m| m >= 0.8 * self.predicted_exponent);
    }
}

fn sweep(
    map: ExponentMap,
    u0: &Field,
    v0: &Field,
    index: f64,
    deltas: &[f64],
    cfg: &SolveConfig,
) -> Result<SweepResult> {
    cfg.validate()?;
    let s = cfg.s;
    let predicted = map.classify(s, index, None)?;
    let positive = deltas.iter().filter(|d| **d > 0.0).count();
    if positive < 3 {
        return Err(Error::InsufficientData("need ≥ 3 deltas for fit".into()));
    }
    if deltas.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
        return Err(Error::InvalidParameter("deltas must be nonnegative".into()));
    }
    // Sizes are measured in H^r for the solution and H^{p+1} for the rate.
    let size_index = match map {
        ExponentMap::Gamma => index,
        ExponentMap::Mu => index + 1.0,
    };
    let distance_index = SobolevIndex::new(index)?;
    let hs = cfg.sobolev();
    let grid = u0.grid();
    let perturbations = deltas
        .iter()
        .map(|&d| {
            let bump = scaled_shape(grid, 0.5 * d, size_index)?;
            Ok((u0 + &bump, v0 + &bump))
        })
        .collect::<Result<Vec<_>>>()?;
    let data_size = |u: &Field, v: &Field| sobolev_norm(u, hs) + sobolev_norm(v, hs);
    let rho = perturbations
        .iter()
        .map(|(u, v)| data_size(u, v))
        .fold(data_size(u0, v0), f64::max);
    let horizon = 0.5 * holder_lifespan(rho, cfg.c_s, cfg.delta0)?;
    if !horizon.is_finite() {
        return Err(Error::InvalidParameter(
            "zero data has an unbounded horizon; nothing to sweep".into(),
        ));
    }
    let leg_cfg = SolveConfig {
        t_final: horizon,
        dt: TimeStep::Fixed(resolved_step(cfg, u0, v0)?),
        override_lifespan: true,
        ..cfg.clone()
    };

    let mut result = SweepResult {
        map,
        s,
        index,
        region: predicted.region,
        predicted_exponent: predicted.exponent,
        eps_param: predicted.eps_param,
        rho,
        horizon,
        deltas: Vec::new(),
        distances: Vec::new(),
        slope: None,
        pass: false,
    };
    let base = solve(u0, v0, &leg_cfg)?;
    let legs: Vec<Result<f64>> = deltas
        .par_iter()
        .zip(&perturbations)
        .map(|(&d, (u, v))| {
            if d == 0.0 {
                return Ok(0.0);
            }
            let traj = solve(u, v, &leg_cfg)?;
            match map {
                ExponentMap::Gamma => sup_distance(&base, &traj, distance_index),
                ExponentMap::Mu => sup_rate_distance(&base, &traj, distance_index),
            }
        })
        .collect();
    let mut failure = None;
    for (&d, leg) in deltas.iter().zip(legs) {
        match leg {
            Ok(dist) => {
                result.deltas.push(d);
                result.distances.push(dist);
            }
            Err(e) => {
                failure.get_or_insert((d, e));
            }
        }
    }
    result.finish();
    match failure {
        None => Ok(result),
        Some((delta, source)) => Err(Error::SweepAborted {
            delta,
            reason: source.to_string(),
            partial: Box::new(result),
        }),
    }
}

/// Solution sweep at `(cfg.s, r)`: both components are shifted by the
/// fixed shape so that the two shifts together have `H^r` size `δ`, the
/// paired problems run to `T_{ρ,δ₀}/2`, and the `H^r` distance is the
/// supremum over recorded times. Legs run in parallel.
pub fn holder_sweep(
    base_u0: &Field,
    base_v0: &Field,
    r: f64,
    deltas: &[f64],
    cfg: &SolveConfig,
) -> Result<SweepResult> {
    sweep(ExponentMap::Gamma, base_u0, base_v0, r, deltas, cfg)
}

/// Time-derivative sweep at `(cfg.s, p)`: data sizes in `H^{p+1}`,
/// distances between `(u_t, v_t)` in `H^p`.
pub fn holder_sweep_time_derivative(
    base_u0: &Field,
    base_v0: &Field,
    p: f64,
    deltas: &[f64],
    cfg: &SolveConfig,
) -> Result<SweepResult> {
    sweep(ExponentMap::Mu, base_u0, base_v0, p, deltas, cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub sizes: Vec<f64>,
    /// `sup_t ‖·‖_{H^s}` distance of the solutions.
    pub solution_distances: Vec<f64>,
    /// `sup_t ‖·‖_{H^{s−1}}` distance of the time derivatives.
    pub rate_distances: Vec<f64>,
    pub monotone: bool,
}

fn monotone_with_slack(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= (1.0 + slack) * w[0])
}

/// Runs the base problem and one perturbed problem per `H^s` size and
/// checks that both distances shrink along the sequence (10% slack).
pub fn continuity_experiment(
    u0: &Field,
    v0: &Field,
    sizes: &[f64],
    cfg: &SolveConfig,
) -> Result<ContinuityReport> {
    if sizes.windows(2).any(|w| w[1] >= w[0]) || sizes.iter().any(|s| s.is_nan() || *s < 0.0) {
        return Err(Error::InvalidParameter(
            "perturbation sizes must be nonnegative and strictly decreasing".into(),
        ));
    }
    let leg_cfg = SolveConfig {
        dt: TimeStep::Fixed(resolved_step(cfg, u0, v0)?),
        ..cfg.clone()
    };
    let hs = cfg.sobolev();
    let base = solve(u0, v0, &leg_cfg)?;
    let legs = sizes
        .par_iter()
        .map(|&size| {
            let bump = scaled_shape(u0.grid(), 0.5 * size, hs.value())?;
            let traj = solve(&(u0 + &bump), &(v0 + &bump), &leg_cfg)?;
            Ok((
                sup_distance(&base, &traj, hs)?,
                sup_rate_distance(&base, &traj, hs.shift(-1.0))?,
            ))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (solution_distances, rate_distances): (Vec<f64>, Vec<f64>) = legs.into_iter().unzip();
    let monotone =
        monotone_with_slack(&solution_distances, 0.1) && monotone_with_slack(&rate_distances, 0.1);
    Ok(ContinuityReport {
        sizes: sizes.to_vec(),
        solution_distances,
        rate_distances,
        monotone,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PtReport {
    pub times: Vec<f64>,
    /// `‖v(·, t) − u(−·, −t)‖_{H^{s−1}}` for each time.
    pub residuals: Vec<f64>,
    /// `‖u₀‖_{H^s} + ‖v₀‖_{H^s}`.
    pub data_norm: f64,
}

impl PtReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Sets `v₀(x) = u₀(−x)`, integrates to `±t` for every `t` in `times` and
/// compares `v(x, t)` with `u(−x, −t)`.
pub fn pt_symmetry_check(u0: &Field, times: &[f64], cfg: &SolveConfig) -> Result<PtReport> {
    let v0 = u0.reflect();
    let hs = cfg.sobolev();
    let step = resolved_step(cfg, u0, &v0)?;
    let run = |t: f64| -> Result<State> {
        if t == 0.0 {
            return initial_state(u0, &v0);
        }
        let c = SolveConfig {
            t_final: t,
            dt: TimeStep::Fixed(step),
            ..cfg.clone()
        };
        Ok(solve(u0, &v0, &c)?.last_state().clone())
    };
    let residuals = times
        .par_iter()
        .map(|&t| {
            let (fwd, bwd) = (run(t)?, run(-t)?);
            Ok(sobolev_norm(
                &(fwd.v() - &bwd.u().reflect()),
                hs.shift(-1.0),
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PtReport {
        times: times.to_vec(),
        residuals,
        data_norm: sobolev_norm(u0, hs) + sobolev_norm(&v0, hs),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MollifierReport {
    pub eps: Vec<f64>,
    /// `sup_t ‖(U^ε, V^ε) − (U, V)‖_{H^{s−1}}` for each `ε`.
    pub gaps: Vec<f64>,
    pub monotone: bool,
}

/// Solves the mollified problem for each `ε` (strictly decreasing) and the
/// unmollified one once, on a shared step, and compares.
pub fn mollifier_convergence_study(
    u0: &Field,
    v0: &Field,
    eps_list: &[f64],
    cfg: &SolveConfig,
) -> Result<MollifierReport> {
    if eps_list.windows(2).any(|w| w[1] >= w[0]) || eps_list.iter().any(|e| e.is_nan() || *e <= 0.0)
    {
        return Err(Error::InvalidParameter(
            "eps list must be positive and strictly decreasing".into(),
        ));
    }
    let base_cfg = SolveConfig {
        eps: 0.0,
        dt: TimeStep::Fixed(resolved_step(cfg, u0, v0)?),
        ..cfg.clone()
    };
    let s1 = cfg.sobolev().shift(-1.0);
    let reference = solve(u0, v0, &base_cfg)?;
    let gaps = eps_list
        .par_iter()
        .map(|&eps| {
            let traj = solve(
                u0,
                v0,
                &SolveConfig {
                    eps,
                    ..base_cfg.clone()
                },
            )?;
            sup_state_distance(&traj, &reference, s1)
        })
        .collect::<Result<Vec<f64>>>()?;
    let monotone = monotone_with_slack(&gaps, 0.1);
    Ok(MollifierReport {
        eps: eps_list.to_vec(),
        gaps,
        monotone,
    })
}

/// Location of the maximum of `f`, refined by a parabola through the top
/// sample and its neighbours.
pub fn track_peak(f: &Field) -> f64 {
    let values = f.values();
    let n = values.len();
    let j = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(j, _)| j)
        .unwrap_or(0);
    let (l, c, r) = (values[(j + n - 1) % n], values[j], values[(j + 1) % n]);
    let curvature = l - 2.0 * c + r;
    let offset = if curvature < 0.0 {
        0.5 * (l - r) / curvature
    } else {
        0.0
    };
    f.grid().node(j) + offset * f.grid().spacing()
}

/// Axis of symmetry of `f` read off the first Fourier harmonic: for a
/// profile even about `x₀`, `f̂(1) = |f̂(1)| e^{−i x₀}`.
pub fn symmetry_axis(f: &Field) -> f64 {
    -f.coefficient(1).arg()
}

fn unwrap_positions(raw: impl Iterator<Item = f64>) -> Vec<f64> {
    let period = 2.0 * std::f64::consts::PI;
    let mut out: Vec<f64> = Vec::new();
    for mut x in raw {
        match out.last() {
            Some(prev) => x += period * ((prev - x) / period).round(),
            None => x -= period * (x / period).round(),
        }
        out.push(x);
    }
    out
}

fn fitted_speed(times: &[f64], positions: &[f64]) -> f64 {
    let n = times.len() as f64;
    let mt = times.iter().sum::<f64>() / n;
    let mx = positions.iter().sum::<f64>() / n;
    let stt: f64 = times.iter().map(|t| (t - mt).powi(2)).sum();
    let stx: f64 = times
        .iter()
        .zip(positions)
        .map(|(t, x)| (t - mt) * (x - mx))
        .sum();
    stx / stt
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeakonReport {
    pub c: f64,
    /// Least-squares speed of the symmetry axis of `u`.
    pub measured_speed: f64,
    /// Least-squares speed of the grid maximum of `u` (sub-cell refined).
    /// Under mollification the sharp crest content travels with the
    /// attenuated high modes, so this estimate is noisier.
    pub crest_speed: f64,
    pub expected_speed: f64,
    /// `|measured − expected| / |expected|`.
    pub relative_error: f64,
    pub times: Vec<f64>,
    /// Unwrapped symmetry-axis positions.
    pub positions: Vec<f64>,
    /// Unwrapped crest positions.
    pub crest_positions: Vec<f64>,
}

/// Evolves `u₀ = v₀ =` the periodized peakon of speed parameter `c`,
/// tracks `u`, and fits lines to its position; the expected slope is `−c²`.
pub fn peakon_speed_experiment(c: f64, cfg: &SolveConfig) -> Result<PeakonReport> {
    let grid = cfg.grid()?;
    let u0 = peakon_profile(c, 0.0, grid)?;
    let traj = solve(
        &u0,
        &u0,
        &SolveConfig {
            override_lifespan: true,
            ..cfg.clone()
        },
    )?;
    if traj.len() < 2 {
        return Err(Error::InsufficientData(
            "peak tracking needs two recorded times".into(),
        ));
    }
    let positions = unwrap_positions(traj.states.iter().map(|st| symmetry_axis(st.u())));
    let crest_positions = unwrap_positions(traj.states.iter().map(|st| track_peak(st.u())));
    let measured_speed = fitted_speed(&traj.times, &positions);
    let expected_speed = -c * c;
    Ok(PeakonReport {
        c,
        measured_speed,
        crest_speed: fitted_speed(&traj.times, &crest_positions),
        expected_speed,
        relative_error: ((measured_speed - expected_speed) / expected_speed).abs(),
        times: traj.times,
        positions,
        crest_positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_log_slope_recovers_power_laws() {
        let x = [1e-4, 1e-3, 1e-2, 1e-1];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(0.75)).collect();
        assert!((log_log_slope(&x, &y).unwrap() - 0.75).abs() < 1e-12);
        assert!(log_log_slope(&x[..2], &y[..2]).is_err());
    }

    #[test]
    fn shape_is_rescaled_in_the_requested_norm() {
        let grid = PeriodicGrid::new(64).unwrap();
        let f = scaled_shape(grid, 0.3, 1.75).unwrap();
        let n = sobolev_norm(&f, SobolevIndex::new(1.75).unwrap());
        assert!((n - 0.3).abs() < 1e-14);
    }

    #[test]
    fn peak_tracking_is_subgrid() {
        let grid = PeriodicGrid::new(128).unwrap();
        let f = Field::from_fn(grid, |x| (-(x - 1.234f64).powi(2) * 4.0).exp());
        assert!((track_peak(&f) - 1.234).abs() < 2e-3);
    }

    #[test]
    fn symmetry_axis_of_shifted_even_profile() {
        let grid = PeriodicGrid::new(64).unwrap();
        let smooth = Field::from_fn(grid, |x| (x + 0.3).cos().exp());
        let axis = unwrap_positions([symmetry_axis(&smooth)].into_iter())[0];
        assert!((axis + 0.3).abs() < 1e-12, "{axis}");
        // Sampling the kink off-grid breaks evenness only slightly.
        let peakon = peakon_profile(1.0, 0.3, grid).unwrap();
        assert!((symmetry_axis(&peakon) + 0.3).abs() < 1e-4);
    }

    #[test]
    fn slack_rule() {
        assert!(monotone_with_slack(&[1.0, 0.5, 0.52], 0.1));
        assert!(!monotone_with_slack(&[1.0, 0.5, 0.6], 0.1));
    }
}
