//! Checking engines: explicit-state oracles over finite graphs and
//! symbolic/decision procedures that work directly on the net.

mod exists_fo;
mod explicit;
mod fo_semilinear;
mod fo_ug;
mod ml_backward;
mod ml_forward;
mod one_var;
mod paml_val;
mod route;
mod ug_guarded;
mod verdict;

pub use exists_fo::mc_exists_fo;
pub use explicit::{explicit_fo, explicit_ml};
pub use fo_semilinear::mc_fo_semilinear;
pub use fo_ug::mc_fo_ug;
pub use ml_backward::mc_ml_backward;
pub use ml_forward::mc_ml_forward;
pub use one_var::mc_fo_one_var;
pub use paml_val::{paml_set, val_paml_forward};
pub use route::{check, route, EngineName, EngineRoute, Query, RunConfig, Structure};
pub use ug_guarded::ug_eval_guarded;
pub use verdict::{CheckVerdict, Three, Verdict};

use crate::logic::LogicError;
use crate::net::NetError;
use crate::presburger::PresError;
use crate::statespace::StateError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("engine requires a complete reachability graph")]
    IncompleteGraph,
    #[error("formula has free variables: {0}")]
    NotASentence(String),
    #[error("{engine} cannot handle this formula: {msg}")]
    FragmentMismatch { engine: &'static str, msg: String },
    #[error("constraint mentions unknown place {0}")]
    UnknownPlace(String),
    #[error("formula uses ->* or ->+ but no closure description was supplied")]
    MissingStarFormula,
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Pres(#[from] PresError),
    #[error(transparent)]
    State(#[from] StateError),
}

impl EngineError {
    pub(crate) fn fragment(engine: &'static str, msg: impl Into<String>) -> Self {
        EngineError::FragmentMismatch { engine, msg: msg.into() }
    }
}

/// Validates that every place named by a pure-arithmetic constraint exists
/// in the net, returning the offending name otherwise.
pub(crate) fn check_paml_places(
    net: &crate::net::PetriNet,
    f: &crate::logic::MlFormula,
) -> Result<(), EngineError> {
    for p in f.paml_places() {
        if net.place_id(&p).is_err() {
            return Err(EngineError::UnknownPlace(p));
        }
    }
    Ok(())
}
