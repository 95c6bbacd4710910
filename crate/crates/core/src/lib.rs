//! Pseudo-spectral laboratory for the two-component cubic peakon system
//!
//! ```text
//! m_t = [m (u - u_x)(v + v_x)]_x,   m = u - u_xx
//! n_t = [n (u - u_x)(v + v_x)]_x,   n = v - v_xx
//! ```
//!
//! on the circle `[0, 2π)`, together with its FORQ (`v = u`) and nonlocal
//! FORQ (`v(x,t) = u(-x,-t)`) reductions.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: periodic grid, Fourier transforms, Bessel potentials,
//!   Sobolev norms, the Friedrichs mollifier and dealiased products.
//! - [`systems`]: right-hand sides of the conservative, first-order
//!   (`u, w = u_x, v, z = v_x`) and mollified systems, the Hamiltonians
//!   `H1`, `H2`, the mKdV-hierarchy pair and periodized peakons.
//! - [`integrator`]: classical RK4 method of lines, lifespan formula and
//!   on-line monitors.
//! - [`lab`]: Hölder exponent maps and region partitions, plus the
//!   data-to-solution experiments built on the integrator.
//! - [`validation`]: bundled invariant suites with pass/fail tables.

pub mod error;
pub mod integrator;
pub mod lab;
pub mod spectral;
pub mod systems;
pub mod validation;

pub use error::{Error, Result};
pub use integrator::{
    holder_lifespan, lifespan, rk4_step, solve, Diagnostics, SolveConfig, TimeStep, Trajectory,
};
pub use lab::regions::{classify_gamma, classify_mu, Region, RegionResult};
pub use spectral::{Field, PeriodicGrid, SobolevIndex};
pub use systems::{HierarchyState, InitialData, Momentum, State};
