//! Entropy and solvability certificates for finitely generated subgroups of
//! braid groups.
//!
//! The crate computes the permutation image of a subgroup and its derived
//! series, estimates the topological entropy of braids through the
//! piecewise-linear action on Dynnikov coordinates, bounds it from below with
//! the reduced Burau representation, and checks the solvability / entropy
//! dichotomy on concrete subgroups.

pub mod braid;
pub mod burau;
pub mod certify;
pub mod dynnikov;
pub mod error;
pub mod perm_group;
pub mod tree;
pub mod twist;

pub use braid::{BraidWord, LinkingMatrix, Permutation};
pub use error::{Error, Result};
pub use perm_group::{DerivedLength, DerivedSeries, PermGroup};
pub use certify::{analyze, emit_report, GroupAnalysisReport, HarnessConfig, Structure, SubgroupSpec};
pub use dynnikov::{Classification, DynnikovCoords, EntropyCertificate, EntropyConfig, EntropyEstimate, Verdict};
pub use tree::{CenterPoint, Tree};
pub use twist::{Twist, TwistLattice};
