//! Rate estimation for fault-tolerant distributed quantum computation fed by
//! satellite-distributed entangled photon pairs.
//!
//! The pipeline runs from the tolerable logical failure rate to a code
//! distance ([`code`]), through recurrence purification with multiplexing
//! ([`purify`]), down-link losses ([`link`]) and the satellite power budget
//! ([`power`]), ending in the logical Bell-pair rate, i.e. the global clock
//! speed ([`estimator`]). [`bellsim`] and [`mc`] are independent checks of the
//! analytic steps.
//!
//! ```
//! use satclock_core::{estimate, model::builtin};
//!
//! let report = estimate(&builtin("state").unwrap()).unwrap();
//! assert_eq!(report.distance, 37);
//! assert_eq!(report.factor_chi, 36);
//! assert!(report.clock_speed > 1.5e6 && report.clock_speed < 1.8e6);
//! ```

pub mod bellsim;
pub mod code;
pub mod error;
pub mod estimator;
pub mod link;
pub mod mc;
pub mod model;
pub mod power;
pub mod purify;
pub mod special;

pub use code::{DistanceSolution, DistanceSolver, SolverMode};
pub use error::{Error, Result};
pub use estimator::{estimate, estimate_with, sweep_power, EstimateOptions, PairRateMethod, SweepPoint};
pub use link::TailMethod;
pub use model::{
    Binding, CodeParams, LinkSpec, PurificationPlan, PurificationSpec, RateReport, SatelliteSpec, Scenario,
};
