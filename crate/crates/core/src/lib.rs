//! Twisted partial crossed products over finite split rings.
//!
//! The crate builds `R *_w G` for `R = K^X` and a finite group `G`, decides
//! commutativity, maximal commutativity, alpha-simplicity and simplicity by
//! structural criteria, and cross-checks every structural answer against a
//! brute-force oracle on the structure-constant algebra.

pub mod algebra;
pub mod crossed;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod generate;
pub mod group;
pub mod instance;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod ring;
pub mod simplicity;
pub mod twisted;
pub mod validation;

pub use error::{Error, Result};
pub use field::{AnyField, Field, FieldDescriptor, PrimeField, Rationals};
pub use group::{FiniteGroup, GroupDescriptor, GroupElement};
pub use instance::Instance;
pub use report::{analyze, AnalysisReport};
pub use simplicity::{decide_simplicity, OracleConfig, OracleMode, SimplicityVerdict};
pub use validation::{ValidationReport, Witness};
