//! Finite-scale matching theory on windows of non-amenable graphs.

pub mod cli;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod layered;
pub mod matching;
pub mod orientation;
pub mod scalar;
mod subsets;
pub mod tutte;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Window};
pub use matching::MatchingState;
pub use scalar::Scalar;

/// Exact rational used for every threshold unless a caller opts into floats.
pub type Rational = num_rational::Ratio<i64>;

pub type TutteReport = tutte::TutteReport<Rational>;
pub type Violation = tutte::Violation<Rational>;
pub type ExpansionReport = tutte::ExpansionReport<Rational>;
pub type Schedule = layered::Schedule<Rational>;
pub type LevelCertificate = layered::LevelCertificate<Rational>;
pub type RunCertificate = layered::RunCertificate<Rational>;
pub type HallAudit = orientation::HallAudit<Rational>;
