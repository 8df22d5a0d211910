//! Net constructions paired with fixed formulas. Each builder combines or
//! extends input nets so that a property of the inputs (reach-set equality,
//! containment, marking reachability, quantified boolean truth) becomes
//! equivalent to the truth of a fixed formula on the built net. The
//! equivalences are recorded as contracts and replayed against explicit
//! oracles at small scale in the tests.

mod budget;
mod drown;
mod formulas;
mod qbf;
mod reach;
mod ug;
mod union;

pub use budget::build_budget_reduction;
pub use drown::{
    build_drown_net, build_drown_net_bounded, build_drown_net_rooted, drown_formula,
    drown_formula_rooted,
};
pub use formulas::{anchor_step_at, anchor_unique_at, fixed_formulas, FixedFormulas};
pub use qbf::{build_qbf_net, Qbf, QbfExpr};
pub use reach::{build_nonreach_gadget, build_reach_gadget};
pub use ug::{build_pileup, build_ug_gadget};
pub use union::{build_lambda_augment, build_star_union_net, build_union_net};

use crate::logic::{FoFormula, LogicError, MlFormula};
use crate::net::{NetError, PetriNet};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("input nets must have identical place lists ({0})")]
    PlaceMismatch(String),
    #[error("input net has a neutral transition `{0}`")]
    NeutralTransition(String),
    #[error("transition `{0}` consumes from no place")]
    EmptyPreset(String),
    #[error("the start marking enables no transition")]
    StartIsDeadlock,
    #[error("the start and target markings must differ")]
    StartEqualsTarget,
    #[error("need a strictly alternating quantifier prefix over an even, positive number of variables: {0}")]
    BadShape(String),
    #[error("a token count does not fit the transition weight type")]
    WeightOverflow,
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// The formula half of a gadget, in whichever language the construction
/// targets.
#[derive(Clone, Debug, PartialEq)]
pub enum GadgetFormula {
    Fo(FoFormula),
    Ml(MlFormula),
}

/// A built net, its paired formula, a human-readable statement of the
/// claimed equivalence, and the embedding of source places into the gadget.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub net: PetriNet,
    pub formula: GadgetFormula,
    pub contract: String,
    pub place_map: BTreeMap<String, String>,
}

impl GadgetInstance {
    /// Checks the structural invariants: constraint atoms resolve against
    /// the net's places and the place embedding is injective.
    pub fn validate(&self) -> Result<(), GadgetError> {
        if let GadgetFormula::Ml(f) = &self.formula {
            for p in f.paml_places() {
                self.net.place_id(&p)?;
            }
        }
        let mut seen = BTreeSet::new();
        for (src, dst) in &self.place_map {
            self.net.place_id(dst)?;
            if !seen.insert(dst.clone()) {
                return Err(GadgetError::PlaceMismatch(format!(
                    "place map sends two places to `{dst}` (last source `{src}`)"
                )));
            }
        }
        Ok(())
    }
}

/// A name not yet in `taken`, derived from `base` by appending underscores;
/// registers the result.
pub(crate) fn fresh_name(taken: &mut BTreeSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    name
}

/// The place names of a net, as a mutable pool for `fresh_name`. Transition
/// names are registered lazily as transitions are added, so copied
/// transitions keep their original names whenever possible.
pub(crate) fn taken_names(net: &PetriNet) -> BTreeSet<String> {
    net.places().iter().cloned().collect()
}

/// Copies every transition of `src` into `dst` under its own name (freshened
/// if needed), optionally adding a self-loop on `extra_loop`.
pub(crate) fn copy_transitions(
    dst: &mut PetriNet,
    src: &PetriNet,
    taken: &mut BTreeSet<String>,
    extra_loop: Option<&str>,
) -> Result<(), GadgetError> {
    for (t, tname) in src.transitions().iter().enumerate() {
        let mut ins: Vec<(&str, u64)> = Vec::new();
        let mut outs: Vec<(&str, u64)> = Vec::new();
        for (p, pname) in src.places().iter().enumerate() {
            let (fin, fout) = (src.flow_in(t, p), src.flow_out(t, p));
            if fin > 0 {
                ins.push((pname, fin));
            }
            if fout > 0 {
                outs.push((pname, fout));
            }
        }
        if let Some(l) = extra_loop {
            ins.push((l, 1));
            outs.push((l, 1));
        }
        let name = fresh_name(taken, tname);
        dst.add_transition(name, &ins, &outs)?;
    }
    Ok(())
}

/// The initial marking of `src` as `(place, weight)` production pairs.
pub(crate) fn initial_as_outputs(src: &PetriNet) -> Result<Vec<(&str, u64)>, GadgetError> {
    let counts = src.initial().as_u64s().ok_or(GadgetError::WeightOverflow)?;
    Ok(src
        .places()
        .iter()
        .zip(counts)
        .filter(|(_, c)| *c > 0)
        .map(|(p, c)| (p.as_str(), c))
        .collect())
}
