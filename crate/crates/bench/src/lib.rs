//! Shared fixtures for the criterion benchmarks.

use peakon_core::integrator::standard_calibration_data;
use peakon_core::{PeriodicGrid, State};

/// Consistent state built from the standard smooth data on `n` points.
pub fn smooth_state(n: usize) -> State {
    let grid = PeriodicGrid::new(n).expect("benchmark sizes are valid grids");
    let (u0, v0) = standard_calibration_data(grid);
    State::from_uv(u0, v0).expect("fields share a grid")
}
