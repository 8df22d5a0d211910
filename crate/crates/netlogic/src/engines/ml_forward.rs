//! Forward modal checking directly on the net: the modal depth of the
//! formula bounds how far successors must be chased, so evaluation
//! terminates on every net, bounded or not.

use super::explicit::marking_env;
use super::{CheckVerdict, EngineError};
use crate::logic::MlFormula;
use crate::net::{Marking, PetriNet};
use std::collections::HashMap;

/// Checks a forward-only modal formula at the initial marking. Always
/// definitive: only markings within modal-degree steps matter, and each has
/// finitely many successors.
pub fn mc_ml_forward(net: &PetriNet, f: &MlFormula) -> Result<CheckVerdict, EngineError> {
    if f.has_inverse() {
        return Err(EngineError::fragment(
            "mc_ml_forward",
            "converse modalities need backward exploration",
        ));
    }
    super::check_paml_places(net, f)?;
    let mut ids = HashMap::new();
    number(f, &mut ids);
    let mut memo = HashMap::new();
    let holds = eval(net, f, net.initial(), &ids, &mut memo)?;
    Ok(CheckVerdict::from_bool("mc_ml_forward", holds))
}

fn number(f: &MlFormula, ids: &mut HashMap<*const MlFormula, usize>) {
    use MlFormula::*;
    let id = ids.len();
    ids.insert(f as *const _, id);
    match f {
        Top | Bot | Paml(_) => {}
        Not(g) | Box_(g) | Dia(g) | BoxInv(g) | DiaInv(g) => number(g, ids),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            number(a, ids);
            number(b, ids);
        }
    }
}

fn eval(
    net: &PetriNet,
    f: &MlFormula,
    m: &Marking,
    ids: &HashMap<*const MlFormula, usize>,
    memo: &mut HashMap<(Marking, usize), bool>,
) -> Result<bool, EngineError> {
    use MlFormula::*;
    let key = (m.clone(), ids[&(f as *const _)]);
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let v = match f {
        Top => true,
        Bot => false,
        Paml(c) => c.eval(&marking_env(net, m)).ok_or_else(|| {
            EngineError::fragment("mc_ml_forward", "constraint must be quantifier-free")
        })?,
        Not(g) => !eval(net, g, m, ids, memo)?,
        And(a, b) => eval(net, a, m, ids, memo)? && eval(net, b, m, ids, memo)?,
        Or(a, b) => eval(net, a, m, ids, memo)? || eval(net, b, m, ids, memo)?,
        Implies(a, b) => !eval(net, a, m, ids, memo)? || eval(net, b, m, ids, memo)?,
        Box_(g) => {
            let mut all = true;
            for next in net.successors(m) {
                if !eval(net, g, &next, ids, memo)? {
                    all = false;
                    break;
                }
            }
            all
        }
        Dia(g) => {
            let mut any = false;
            for next in net.successors(m) {
                if eval(net, g, &next, ids, memo)? {
                    any = true;
                    break;
                }
            }
            any
        }
        BoxInv(_) | DiaInv(_) => unreachable!("rejected up front"),
    };
    memo.insert(key, v);
    Ok(v)
}
