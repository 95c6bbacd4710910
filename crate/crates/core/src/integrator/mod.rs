//! Method-of-lines time integration and the on-line monitors.

mod config;
mod monitors;
mod stepper;

pub use config::{SolveConfig, TimeStep, DEFAULT_C_S};
pub use monitors::{
    calibrate_c_s, energy_ratio_monitor, size_estimate_check, standard_calibration_data,
    EnergyRatioReport, SizeEstimateReport,
};
pub use stepper::{auto_dt, holder_lifespan, lifespan, rk4_step, solve, Diagnostics, Trajectory};
