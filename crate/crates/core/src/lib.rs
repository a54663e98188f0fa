//! Coefficient bounds for bi-univalent meromorphic functions defined by a
//! generalized starlikeness operator.
//!
//! The crate provides exact and floating-point truncated Laurent series with
//! compositional reversion, the class operator and its coefficient
//! identities, Carathéodory-function generators, the closed-form bounds, a
//! sampled membership test and a seeded randomized search that tries to
//! exceed the bounds.

pub mod bounds;
pub mod caratheodory;
pub mod error;
pub mod identities;
pub mod membership;
pub mod operator;
pub mod params;
pub mod revert;
pub mod scalar;
pub mod search;
pub mod series;

pub use bounds::{bound_pair, bound_pair_exact, BoundPair};
pub use caratheodory::{CaratheodoryAtoms, ExactAtoms, HerglotzSource};
pub use identities::{verify_coefficient_equations, Identity, VerificationSummary};
pub use membership::{membership_check, MembershipReport, SamplingGrid};
pub use operator::{operator_series, solve_candidate};
pub use params::{ClassParams, Variant};
pub use search::{search, BoundReport, SearchConfig};
pub use series::{AnalyticSeries, ExteriorSeries, MeroSeries};
