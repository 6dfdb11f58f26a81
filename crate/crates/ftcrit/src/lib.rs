//! Exact fault-tree analysis: system unreliability, coherence checks,
//! minimal cut sets, and component importance measures.
//!
//! The model is a gate structure (AND/OR/NOT plus derived NAND/NOR/XOR) over
//! basic events with exponential failure rates, under mutual independence of
//! the basic events. On top of it this crate provides:
//!
//! - [`eval`] — the structure function φ, state forcing, and an exhaustive
//!   enumeration oracle that cross-checks every probability computation;
//! - [`cutset`] — OR-of-ANDs expansion and minimal cut sets;
//! - [`prob`] — exact unreliability via per-gate closed forms or
//!   inclusion-exclusion over cut sets;
//! - [`coherence`] — boundary, monotonicity, and relevance checks;
//! - [`importance`] — Birnbaum, Fussell-Vesely, risk reduction/achievement
//!   worth, pairwise relative-importance comparison, and criticality ranking;
//! - [`montecarlo`] — seeded, reproducible simulation cross-checks;
//! - [`parser`] — the FTDL text format;
//! - [`casestudy`] — a bundled 16-event railway signaling model.
//!
//! ```
//! use ftcrit::{parse_ftdl, system_unreliability, TimePoint};
//!
//! let tree = parse_ftdl(
//!     "event pump rate 1e-3 \"Pump fails\"\n\
//!      event valve rate 5e-4 \"Valve stuck\"\n\
//!      top AND(pump, valve)",
//! )?;
//! let f = system_unreliability(&tree, TimePoint::new(100.0)?)?;
//! assert!(f > 0.0 && f < 1.0);
//! # Ok::<(), ftcrit::Error>(())
//! ```

pub mod casestudy;
pub mod coherence;
pub mod cutset;
mod error;
pub mod eval;
pub mod importance;
pub mod limits;
pub mod model;
pub mod montecarlo;
mod numeric;
pub mod parser;
pub mod prob;

pub use error::{Error, Result};
pub use eval::{force, oracle_probability, phi, ForcedAssignment, ForcedView};
pub use model::{all_states, BasicEvent, ComponentState, FaultTree, Gate, StateVector};
pub use parser::{parse_ftdl, serialize_ftdl, ParseError, ParseErrorKind};
pub use prob::{system_unreliability, ProbAssignment, TimePoint};
