//! Power-law fits, windowed decay experiments and the verification suites.

pub mod experiment;
pub mod fit;
pub mod verify;

pub use experiment::{
    run_decay_experiment, write_fit_table, DecayReport, ExperimentSpec, ExperimentStatus, FitRow, RDependence,
};
pub use fit::{check_sigma, fit_points, fit_power_law, predicted_exponent, sigma_tilde, DecayFit, Which};
pub use verify::{verify, CheckResult, EigenFn, Suite, VerifyOptions, VerifySummary};
