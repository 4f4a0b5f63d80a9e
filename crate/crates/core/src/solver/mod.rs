//! Time integration of the nonlinear system and initial data.

pub mod config;
pub mod initial;
pub mod rhs;
pub mod smallness;
pub mod stepper;

pub use config::{Integrator, KeyValues, NormRequest, RunConfig, SolverConfig, CFL};
pub use initial::InitialData;
pub use rhs::{convective_velocity_term, nonlinear_rhs};
pub use smallness::{smallness_report, SmallnessReport};
pub use stepper::{simulate, simulate_from, step, SimulationResult, Stepper, BLOW_UP_FACTOR};
