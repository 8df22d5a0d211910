//! Pointwise first-order evaluation on the unrestricted graph N^n, for
//! formulas whose quantifiers are guarded by the step relation. Quantified
//! values that matter are then neighbours of already-fixed points, so each
//! quantifier ranges over a finite candidate set plus one "generic" value
//! standing for everything else. Atoms touching a generic value are decided
//! only when soundness is guaranteed (a generic value is never a neighbour
//! or equal to a point fixed before it); otherwise they stay unknown, and
//! an unknown top-level result is reported as a fragment mismatch.

use super::{CheckVerdict, EngineError, Three};
use crate::logic::FoFormula;
use crate::net::{Marking, PetriNet};
use crate::statespace::reachable;

const ENGINE: &str = "ug_eval_guarded";

/// Evaluates a formula with at most one free variable at the point `m` of
/// the unrestricted graph. `cap` bounds the searches behind `->*`/`->+`
/// atoms.
pub fn ug_eval_guarded(
    net: &PetriNet,
    f: &FoFormula,
    m: &Marking,
    cap: usize,
) -> Result<CheckVerdict, EngineError> {
    let free = f.free_vars();
    if free.len() > 1 {
        return Err(EngineError::fragment(
            ENGINE,
            format!("needs at most one free variable, got {}", free.len()),
        ));
    }
    if m.len() != net.places().len() {
        return Err(EngineError::Net(crate::net::NetError::MarkingLength {
            got: m.len(),
            want: net.places().len(),
        }));
    }
    let mut cx = Cx { net, cap, counter: 1, truncated: false };
    let mut env: Vec<(String, Val)> = free
        .into_iter()
        .map(|v| (v, Val::Conc(m.clone(), 0)))
        .collect();
    let r = eval(&mut cx, f, &mut env)?;
    Ok(match r {
        Three::True => CheckVerdict::holds(ENGINE),
        Three::False => CheckVerdict::fails(ENGINE),
        Three::Unknown if cx.truncated => CheckVerdict::inconclusive(ENGINE, "cap-exceeded"),
        Three::Unknown => {
            return Err(EngineError::fragment(
                ENGINE,
                "a quantifier is not guarded by the step relation",
            ))
        }
    })
}

/// A bound value: a concrete marking, or the generic representative of all
/// markings outside the candidate set of its quantifier. Both carry the
/// binding time, which decides when generic-vs-concrete atoms are safe.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Val {
    Conc(Marking, usize),
    Fresh(usize, usize),
}

struct Cx<'a> {
    net: &'a PetriNet,
    cap: usize,
    counter: usize,
    truncated: bool,
}

fn lookup<'e>(env: &'e [(String, Val)], v: &str) -> Result<&'e Val, EngineError> {
    env.iter()
        .rev()
        .find(|(n, _)| n == v)
        .map(|(_, val)| val)
        .ok_or_else(|| EngineError::fragment(ENGINE, format!("unbound variable {v}")))
}

/// Concrete markings a quantifier must inspect: everything already fixed,
/// the initial marking, and all one-step neighbours of the fixed points.
fn candidates(cx: &Cx, env: &[(String, Val)]) -> Vec<Marking> {
    let mut out: Vec<Marking> = vec![cx.net.initial().clone()];
    let push = |m: Marking, out: &mut Vec<Marking>| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    for (_, val) in env {
        if let Val::Conc(m, _) = val {
            push(m.clone(), &mut out);
            for s in cx.net.successors(m) {
                push(s, &mut out);
            }
            for p in cx.net.ug_predecessors(m) {
                push(p, &mut out);
            }
        }
    }
    out
}

/// `a ->* b` by capped search from `a`.
fn star_conc(cx: &mut Cx, a: &Marking, b: &Marking) -> Three {
    let mut from_a = cx.net.clone();
    from_a.set_initial(a.clone()).expect("same dimension");
    let r = Three::from_reach(reachable(&from_a, b, cx.cap));
    if r == Three::Unknown {
        cx.truncated = true;
    }
    r
}

fn eval(cx: &mut Cx, f: &FoFormula, env: &mut Vec<(String, Val)>) -> Result<Three, EngineError> {
    use FoFormula::*;
    Ok(match f {
        Edge(x, y) => {
            let (a, b) = (lookup(env, x)?.clone(), lookup(env, y)?.clone());
            match (a, b) {
                (Val::Conc(a, _), Val::Conc(b, _)) => {
                    Three::from_bool(cx.net.successors(&a).contains(&b))
                }
                // a generic value is not a neighbour of anything fixed
                // before it: its quantifier's candidate set contained all
                // such neighbours
                (Val::Conc(_, ta), Val::Fresh(_, tq)) if ta < tq => Three::False,
                (Val::Fresh(_, tq), Val::Conc(_, tb)) if tb < tq => Three::False,
                _ => Three::Unknown,
            }
        }
        Star(x, y) => {
            let (a, b) = (lookup(env, x)?.clone(), lookup(env, y)?.clone());
            match (a, b) {
                (Val::Conc(a, _), Val::Conc(b, _)) => star_conc(cx, &a, &b),
                (Val::Fresh(i, _), Val::Fresh(j, _)) if i == j => Three::True,
                _ => Three::Unknown,
            }
        }
        Plus(x, y) => {
            let (a, b) = (lookup(env, x)?.clone(), lookup(env, y)?.clone());
            match (a, b) {
                (Val::Conc(a, _), Val::Conc(b, _)) => {
                    let mut acc = Three::False;
                    for w in cx.net.successors(&a) {
                        acc = acc.or(star_conc(cx, &w, &b));
                        if acc == Three::True {
                            break;
                        }
                    }
                    acc
                }
                _ => Three::Unknown,
            }
        }
        Eq(x, y) => {
            let (a, b) = (lookup(env, x)?.clone(), lookup(env, y)?.clone());
            match (a, b) {
                (Val::Conc(a, _), Val::Conc(b, _)) => Three::from_bool(a == b),
                (Val::Fresh(i, _), Val::Fresh(j, _)) if i == j => Three::True,
                // a generic value differs from everything fixed before it
                (Val::Conc(_, ta), Val::Fresh(_, tq)) if ta < tq => Three::False,
                (Val::Fresh(_, tq), Val::Conc(_, tb)) if tb < tq => Three::False,
                _ => Three::Unknown,
            }
        }
        Init(x) => match lookup(env, x)? {
            Val::Conc(m, _) => Three::from_bool(m == cx.net.initial()),
            // the initial marking is always a candidate
            Val::Fresh(_, _) => Three::False,
        },
        Not(g) => eval(cx, g, env)?.not(),
        And(a, b) => {
            let x = eval(cx, a, env)?;
            if x == Three::False {
                x
            } else {
                x.and(eval(cx, b, env)?)
            }
        }
        Or(a, b) => {
            let x = eval(cx, a, env)?;
            if x == Three::True {
                x
            } else {
                x.or(eval(cx, b, env)?)
            }
        }
        Implies(a, b) => {
            let x = eval(cx, a, env)?.not();
            if x == Three::True {
                x
            } else {
                x.or(eval(cx, b, env)?)
            }
        }
        Forall(v, g) | Exists(v, g) => {
            let universal = matches!(f, Forall(_, _));
            let cands = candidates(cx, env);
            let mut acc = if universal { Three::True } else { Three::False };
            for c in cands {
                let t = cx.counter;
                cx.counter += 1;
                env.push((v.clone(), Val::Conc(c, t)));
                let r = eval(cx, g, env)?;
                env.pop();
                if universal {
                    acc = acc.and(r);
                    if acc == Three::False {
                        return Ok(acc);
                    }
                } else {
                    acc = acc.or(r);
                    if acc == Three::True {
                        return Ok(acc);
                    }
                }
            }
            // one generic value stands for everything outside the
            // candidate set (N^n is infinite, the set is finite, so such
            // values exist)
            let t = cx.counter;
            cx.counter += 1;
            env.push((v.clone(), Val::Fresh(t, t)));
            let r = eval(cx, g, env)?;
            env.pop();
            if universal {
                acc.and(r)
            } else {
                acc.or(r)
            }
        }
    })
}
