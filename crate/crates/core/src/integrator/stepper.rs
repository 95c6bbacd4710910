use serde::Serialize;

use super::config::{SolveConfig, TimeStep};
use crate::spectral::{sobolev_norm, Field, SobolevIndex};
use crate::systems::{hamiltonian_h1, hamiltonian_h2, rhs, State};
use crate::{Error, Result};

fn check_delta0(delta0: f64) -> Result<()> {
    if delta0 > 0.0 && delta0 < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "delta0 must lie in (0, 1), got {delta0}"
        )))
    }
}

fn check_c_s(c_s: f64) -> Result<()> {
    if c_s > 0.0 && c_s.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "c_s must be positive, got {c_s}"
        )))
    }
}

/// `T_{δ₀} = (1 − δ₀) / (8 C_s (‖u₀‖_{H^s} + ‖v₀‖_{H^s})²)`; infinite for
/// zero data.
pub fn lifespan(u0_norm: f64, v0_norm: f64, c_s: f64, delta0: f64) -> Result<f64> {
    check_delta0(delta0)?;
    check_c_s(c_s)?;
    if !(u0_norm >= 0.0 && v0_norm >= 0.0) {
        return Err(Error::InvalidParameter("norms must be nonnegative".into()));
    }
    let size = u0_norm + v0_norm;
    if size == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 - delta0) / (8.0 * c_s * size * size))
}

/// Hölder-estimate horizon `T_{ρ,δ₀} = (1 − δ₀) / (32 C_s ρ²)`.
pub fn holder_lifespan(rho: f64, c_s: f64, delta0: f64) -> Result<f64> {
    check_delta0(delta0)?;
    check_c_s(c_s)?;
    if rho.is_nan() || rho < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "rho must be nonnegative, got {rho}"
        )));
    }
    if rho == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 - delta0) / (32.0 * c_s * rho * rho))
}

/// `cfl·Δx / (1 + max |(u − w)(v + z)|)`.
pub fn auto_dt(st: &State, cfl: f64) -> f64 {
    let speed = st
        .u()
        .values()
        .iter()
        .zip(st.w().values())
        .zip(st.v().values().iter().zip(st.z().values()))
        .map(|((u, w), (v, z))| ((u - w) * (v + z)).abs())
        .fold(0.0, f64::max);
    cfl * st.grid().spacing() / (1.0 + speed)
}

/// One classical RK4 step (`eps = 0` selects the unmollified system).
/// Non-finite output is reported as a blow-up at time `dt`.
pub fn rk4_step(st: &State, dt: f64, eps: f64) -> Result<State> {
    rk4_step_at(st, 0.0, dt, eps)
}

pub(crate) fn rk4_step_at(st: &State, t: f64, dt: f64, eps: f64) -> Result<State> {
    if dt == 0.0 || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "dt must be nonzero, got {dt}"
        )));
    }
    let k1 = rhs(st, eps)?;
    let k2 = rhs(&st.axpy(0.5 * dt, &k1)?, eps)?;
    let k3 = rhs(&st.axpy(0.5 * dt, &k2)?, eps)?;
    let k4 = rhs(&st.axpy(dt, &k3)?, eps)?;
    let incr = k1.axpy(2.0, &k2)?.axpy(2.0, &k3)?.axpy(1.0, &k4)?;
    let next = st.axpy(dt / 6.0, &incr)?;
    if !next.is_finite() {
        return Err(Error::BlowUp {
            time: t + dt,
            reason: "non-finite values".into(),
            partial: None,
        });
    }
    Ok(next)
}

/// Per-time monitors recorded alongside each state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub norm_u_hs: f64,
    pub norm_v_hs: f64,
    /// `‖(U, V)‖_{H^{s−1}}`.
    pub norm_uv_hs1: f64,
    pub h1: f64,
    pub h2: f64,
    /// `‖w − u_x‖_{H^{s−2}} + ‖z − v_x‖_{H^{s−2}}`.
    pub consistency_residual: f64,
}

impl Diagnostics {
    pub fn compute(st: &State, s: SobolevIndex) -> Self {
        Self {
            norm_u_hs: sobolev_norm(st.u(), s),
            norm_v_hs: sobolev_norm(st.v(), s),
            norm_uv_hs1: st.norm(s.shift(-1.0)),
            h1: hamiltonian_h1(st),
            h2: hamiltonian_h2(st),
            consistency_residual: st.consistency_residual(s.shift(-2.0)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub s: f64,
    pub eps: f64,
    /// Step magnitude actually used.
    pub dt: f64,
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    fn new(s: f64, eps: f64, dt: f64) -> Self {
        Self {
            s,
            eps,
            dt,
            times: Vec::new(),
            states: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn record(&mut self, t: f64, st: State) {
        let s = SobolevIndex::new(self.s).expect("validated");
        self.diagnostics.push(Diagnostics::compute(&st, s));
        self.times.push(t);
        self.states.push(st);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn sobolev(&self) -> SobolevIndex {
        SobolevIndex::new(self.s).expect("validated")
    }

    pub fn last_state(&self) -> &State {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }

    /// Largest relative deviation of `H₁` and `H₂` from their initial values.
    pub fn hamiltonian_drift(&self) -> (f64, f64) {
        let rel = |get: fn(&Diagnostics) -> f64| {
            let h0 = get(&self.diagnostics[0]);
            let scale = if h0 == 0.0 { 1.0 } else { h0.abs() };
            self.diagnostics
                .iter()
                .map(|d| (get(d) - h0).abs() / scale)
                .fold(0.0, f64::max)
        };
        (rel(|d| d.h1), rel(|d| d.h2))
    }
}

/// Integrates from `(u₀, v₀)` with `w₀ = ∂ₓu₀`, `z₀ = ∂ₓv₀` up to
/// `cfg.t_final`, recording every `cfg.record_every` steps and the final
/// time. Blow-up aborts with the partial trajectory attached.
pub fn solve(u0: &Field, v0: &Field, cfg: &SolveConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if u0.grid().len() != cfg.n_points {
        return Err(Error::GridMismatch(u0.grid().len(), cfg.n_points));
    }
    let s = cfg.sobolev();
    let st0 = State::from_uv(u0.clone(), v0.clone())?;
    let (nu, nv) = (sobolev_norm(u0, s), sobolev_norm(v0, s));
    if !cfg.override_lifespan {
        let life = lifespan(nu, nv, cfg.c_s, cfg.delta0)?;
        if cfg.t_final.abs() > life {
            return Err(Error::BeyondLifespan {
                t_final: cfg.t_final,
                lifespan: life,
            });
        }
    }
    let step = match cfg.dt {
        TimeStep::Auto => auto_dt(&st0, cfg.cfl),
        TimeStep::Fixed(dt) => dt.abs(),
    };
    let mut traj = Trajectory::new(cfg.s, cfg.eps, step);
    traj.record(0.0, st0.clone());

    let horizon = cfg.t_final.abs();
    if horizon == 0.0 {
        return Ok(traj);
    }
    let dir = cfg.t_final.signum();
    let n_steps = ((horizon / step) - 1e-9).ceil().max(1.0) as usize;
    let threshold = 10.0 * 2.0 / cfg.delta0.sqrt() * (nu + nv);
    let s1 = s.shift(-1.0);

    let mut st = st0;
    let mut t = 0.0;
    for i in 1..=n_steps {
        let t_next = if i == n_steps {
            cfg.t_final
        } else {
            dir * step * i as f64
        };
        st = match rk4_step_at(&st, t, t_next - t, cfg.eps) {
            Ok(next) => next,
            Err(Error::BlowUp { time, reason, .. }) => {
                return Err(Error::BlowUp {
                    time,
                    reason,
                    partial: Some(Box::new(traj)),
                })
            }
            Err(e) => return Err(e),
        };
        t = t_next;
        let size = st.norm(s1);
        if size > threshold {
            return Err(Error::BlowUp {
                time: t,
                reason: format!("‖(U,V)‖_H^(s-1) = {size:.3e} exceeds 10x the size-estimate bound"),
                partial: Some(Box::new(traj)),
            });
        }
        if i % cfg.record_every == 0 || i == n_steps {
            traj.record(t, st.clone());
        }
    }
    Ok(traj)
}
