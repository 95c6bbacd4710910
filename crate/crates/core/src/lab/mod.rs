//! Exponent maps and data-to-solution experiments.

pub mod experiments;
pub mod regions;

pub use experiments::{
    continuity_experiment, holder_sweep, holder_sweep_time_derivative, log_log_slope,
    mollifier_convergence_study, peakon_speed_experiment, perturbation_shape, pt_symmetry_check,
    symmetry_axis, track_peak, ContinuityReport, MollifierReport, PeakonReport, PtReport,
    SweepResult,
};
pub use regions::{
    classification_grid, classify_gamma, classify_mu, continuity_boundaries,
    exponent_continuity_audit, AuditReport, AuditRow, Boundary, ExponentMap, GridPoint, Region,
    RegionResult,
};
