//! Modal checking with converse modalities on the net itself. Forward
//! steps stay inside the reachability set for free; each converse step
//! proposes finitely many candidate predecessors, and every candidate is
//! admitted only if it is itself reachable. Those membership checks use a
//! capped search, so the verdict can be inconclusive.

use super::explicit::marking_env;
use super::{CheckVerdict, EngineError, Three};
use crate::logic::MlFormula;
use crate::net::{Marking, PetriNet};
use crate::statespace::reachable;
use std::collections::HashMap;

/// Checks a modal formula (converse allowed) at the initial marking over
/// the graph restricted to reachable markings.
pub fn mc_ml_backward(
    net: &PetriNet,
    f: &MlFormula,
    cap: usize,
) -> Result<CheckVerdict, EngineError> {
    super::check_paml_places(net, f)?;
    let mut ids = HashMap::new();
    number(f, &mut ids);
    let mut cx = Cx { net, cap, ids, memo: HashMap::new(), truncated: false };
    let v = eval(&mut cx, f, net.initial())?;
    Ok(match v {
        Three::True => CheckVerdict::holds("mc_ml_backward"),
        Three::False => CheckVerdict::fails("mc_ml_backward"),
        Three::Unknown => CheckVerdict::inconclusive(
            "mc_ml_backward",
            "cap-exceeded: a predecessor's reachability was undecided",
        ),
    })
}

struct Cx<'a> {
    net: &'a PetriNet,
    cap: usize,
    ids: HashMap<*const MlFormula, usize>,
    memo: HashMap<(Marking, usize), Three>,
    truncated: bool,
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

fn eval(cx: &mut Cx, f: &MlFormula, m: &Marking) -> Result<Three, EngineError> {
    use MlFormula::*;
    let key = (m.clone(), cx.ids[&(f as *const _)]);
    if let Some(&v) = cx.memo.get(&key) {
        return Ok(v);
    }
    let v = match f {
        Top => Three::True,
        Bot => Three::False,
        Paml(c) => Three::from_bool(c.eval(&marking_env(cx.net, m)).ok_or_else(|| {
            EngineError::fragment("mc_ml_backward", "constraint must be quantifier-free")
        })?),
        Not(g) => eval(cx, g, m)?.not(),
        And(a, b) => {
            let x = eval(cx, a, m)?;
            if x == Three::False {
                x
            } else {
                x.and(eval(cx, b, m)?)
            }
        }
        Or(a, b) => {
            let x = eval(cx, a, m)?;
            if x == Three::True {
                x
            } else {
                x.or(eval(cx, b, m)?)
            }
        }
        Implies(a, b) => {
            let x = eval(cx, a, m)?.not();
            if x == Three::True {
                x
            } else {
                x.or(eval(cx, b, m)?)
            }
        }
        Box_(g) => {
            let mut acc = Three::True;
            for next in cx.net.successors(m) {
                acc = acc.and(eval(cx, g, &next)?);
                if acc == Three::False {
                    break;
                }
            }
            acc
        }
        Dia(g) => {
            let mut acc = Three::False;
            for next in cx.net.successors(m) {
                acc = acc.or(eval(cx, g, &next)?);
                if acc == Three::True {
                    break;
                }
            }
            acc
        }
        BoxInv(g) | DiaInv(g) => {
            let universal = matches!(f, BoxInv(_));
            let mut acc = if universal { Three::True } else { Three::False };
            for pred in cx.net.ug_predecessors(m) {
                let membership = Three::from_reach(reachable(cx.net, &pred, cx.cap));
                let contrib = match membership {
                    Three::True => eval(cx, g, &pred)?,
                    // unreachable candidates don't exist in the structure
                    Three::False => continue,
                    Three::Unknown => {
                        cx.truncated = true;
                        Three::Unknown
                    }
                };
                if universal {
                    acc = acc.and(contrib);
                    if acc == Three::False {
                        break;
                    }
                } else {
                    acc = acc.or(contrib);
                    if acc == Three::True {
                        break;
                    }
                }
            }
            acc
        }
    };
    cx.memo.insert(key, v);
    Ok(v)
}
