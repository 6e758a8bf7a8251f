//! Entanglement detection in spin ensembles from collective measurements.
//!
//! The crate evaluates the complete set of generalized spin-squeezing
//! inequalities on first and second moments of the collective spin, checks
//! states against the PPT and realignment criteria over every bipartition,
//! and builds thermal states of small Heisenberg and XY models to find the
//! temperatures at which each test stops detecting entanglement.
//!
//! Qubit 0 is the most significant Kronecker factor and `|0⟩` is spin up.
//!
//! ```
//! use spinsq::{criteria, spin};
//!
//! let dicke = spin::reference_state(spin::ReferenceState::DickeHalf, 4).unwrap();
//! let report = criteria::eval_observation1(&spin::moments_from_state(&dicke)).unwrap();
//! assert!(report.detected);
//! ```

pub mod analysis;
pub mod criteria;
pub mod error;
pub mod io;
pub mod linalg;
pub mod models;
pub mod random;
pub mod separability;
pub mod spin;
pub mod state;

pub use analysis::{Criterion, CriticalOutcome, CriticalTemperature, SearchConfig};
pub use criteria::{CriterionReport, InequalityId};
pub use error::{Error, Result};
pub use linalg::{Bipartition, Complex64, ComplexMatrix};
pub use models::{ModelFamily, ModelSpec, ThermalModel};
pub use spin::{Axis, CollectiveMoments};
pub use state::DensityMatrix;
