//! Finite-state machinery: explicit graph construction with caps,
//! coverability-tree boundedness, backward coverability, and the
//! reachability oracles the checking engines build on.

mod cover;
mod graph;
mod karp_miller;
mod reach;

pub use cover::coverable;
pub use graph::{explore, transitive_closure, Closure, ReachGraph};
pub use karp_miller::{is_bounded, Boundedness, Omega, OmegaMarking};
pub use reach::{hack_reduce, reach_semilinear, reachable, reachable_with_witness, MarkingSet};

use crate::net::NetError;
use crate::presburger::PresError;
use thiserror::Error;

/// Default exploration cap (nodes) when a caller does not override it.
pub const DEFAULT_CAP: usize = 100_000;

/// Why a search gave no definitive answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    CapExceeded,
    Unsupported,
}

/// Outcome of a reachability-flavoured query. `Yes`/`No` are definitive
/// claims; `Inconclusive` names the exhausted budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReachVerdict {
    Yes,
    No,
    Inconclusive(Reason),
}

impl ReachVerdict {
    pub fn is_definitive(self) -> bool {
        !matches!(self, ReachVerdict::Inconclusive(_))
    }
}

#[derive(Debug, Error)]
pub enum StateError {
    #[error("operation requires a complete reachability graph")]
    IncompleteGraph,
    #[error("semilinear target has an empty representation")]
    EmptyTarget,
    #[error("vector component does not fit a transition weight")]
    WeightOverflow,
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Pres(#[from] PresError),
}
