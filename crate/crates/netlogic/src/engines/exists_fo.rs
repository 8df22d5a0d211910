//! Existential first-order sentences over the step relation and equality.
//! A block of k existentials becomes a single reachability question on the
//! k-fold disjoint union of the net with itself: each copy realises one
//! variable, and the matrix becomes arithmetic over the copies' places.
//! Boolean combinations of such sentences are dispatched clause-wise.

use super::{CheckVerdict, EngineError, Three};
use crate::logic::{classify, FoFormula, Pred};
use crate::net::{Marking, PetriNet};
use crate::presburger::{and, edge_formula, eq, not, or, LinTerm, PresFormula};
use crate::statespace::{reach_semilinear, MarkingSet};
use std::collections::HashMap;

const ENGINE: &str = "mc_exists_fo";

/// Checks a boolean combination of existential sentences over `->` and `=`.
pub fn mc_exists_fo(
    net: &PetriNet,
    f: &FoFormula,
    cap: usize,
) -> Result<CheckVerdict, EngineError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(EngineError::NotASentence(
            free.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let preds = f.predicates_used();
    if preds.iter().any(|p| !matches!(p, Pred::Edge | Pred::Eq)) {
        return Err(EngineError::fragment(
            ENGINE,
            "only -> and = atoms have a product-net translation",
        ));
    }
    let v = eval_combo(net, f, cap)?;
    Ok(match v {
        Three::True => CheckVerdict::holds(ENGINE),
        Three::False => CheckVerdict::fails(ENGINE),
        Three::Unknown => CheckVerdict::inconclusive(ENGINE, "cap-exceeded"),
    })
}

/// Splits boolean structure whose operands are themselves sentences, so
/// each clause can be decided (or negated) independently.
fn eval_combo(net: &PetriNet, f: &FoFormula, cap: usize) -> Result<Three, EngineError> {
    use FoFormula::*;
    match f {
        And(a, b) if a.is_sentence() && b.is_sentence() => {
            Ok(eval_combo(net, a, cap)?.and(eval_combo(net, b, cap)?))
        }
        Or(a, b) if a.is_sentence() && b.is_sentence() => {
            Ok(eval_combo(net, a, cap)?.or(eval_combo(net, b, cap)?))
        }
        Implies(a, b) if a.is_sentence() && b.is_sentence() => {
            Ok(eval_combo(net, a, cap)?.not().or(eval_combo(net, b, cap)?))
        }
        // a negated universal clause is itself existential: decide it whole
        Not(g) => {
            if classify(f).is_existential {
                eval_clause(net, f, cap)
            } else {
                Ok(eval_combo(net, g, cap)?.not())
            }
        }
        _ => eval_clause(net, f, cap),
    }
}

/// Decides one existential sentence via product-net reachability.
fn eval_clause(net: &PetriNet, f: &FoFormula, cap: usize) -> Result<Three, EngineError> {
    if !classify(f).is_existential {
        return Err(EngineError::fragment(
            ENGINE,
            format!("clause is not existential: {f}"),
        ));
    }
    let g = rename_apart(&f.nnf());
    let mut prefix = Vec::new();
    let matrix = strip_exists(&g, &mut prefix);
    if prefix.is_empty() {
        return Err(EngineError::fragment(ENGINE, "clause has no quantified variable"));
    }
    let copy: HashMap<String, usize> =
        prefix.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let product = product_net(net, prefix.len());
    let target = translate(net, &matrix, &copy)?;
    let verdict = reach_semilinear(&product, &MarkingSet::Formula(target), cap)?;
    Ok(Three::from_reach(verdict))
}

/// Gives every binder a globally fresh name so quantifiers can be hoisted
/// without capture. Fresh names use `~`, which no parsed identifier
/// contains.
fn rename_apart(f: &FoFormula) -> FoFormula {
    fn go(f: &FoFormula, env: &mut Vec<(String, String)>, counter: &mut usize) -> FoFormula {
        use FoFormula::*;
        let look = |v: &String, env: &Vec<(String, String)>| -> String {
            env.iter().rev().find(|(o, _)| o == v).map(|(_, n)| n.clone()).unwrap_or_else(|| v.clone())
        };
        match f {
            Edge(x, y) => Edge(look(x, env), look(y, env)),
            Star(x, y) => Star(look(x, env), look(y, env)),
            Plus(x, y) => Plus(look(x, env), look(y, env)),
            Eq(x, y) => Eq(look(x, env), look(y, env)),
            Init(x) => Init(look(x, env)),
            Not(g) => Not(Box::new(go(g, env, counter))),
            And(a, b) => And(Box::new(go(a, env, counter)), Box::new(go(b, env, counter))),
            Or(a, b) => Or(Box::new(go(a, env, counter)), Box::new(go(b, env, counter))),
            Implies(a, b) => {
                Implies(Box::new(go(a, env, counter)), Box::new(go(b, env, counter)))
            }
            Forall(v, g) | Exists(v, g) => {
                let fresh = format!("{v}~{counter}");
                *counter += 1;
                env.push((v.clone(), fresh.clone()));
                let body = go(g, env, counter);
                env.pop();
                if matches!(f, Forall(_, _)) {
                    Forall(fresh, Box::new(body))
                } else {
                    Exists(fresh, Box::new(body))
                }
            }
        }
    }
    go(f, &mut Vec::new(), &mut 0)
}

/// Hoists all (renamed-apart) existentials out of the positive boolean
/// structure; sound because variables range over the nonempty set of
/// reachable markings.
fn strip_exists(f: &FoFormula, prefix: &mut Vec<String>) -> FoFormula {
    use FoFormula::*;
    match f {
        Exists(v, g) => {
            prefix.push(v.clone());
            strip_exists(g, prefix)
        }
        And(a, b) => And(
            Box::new(strip_exists(a, prefix)),
            Box::new(strip_exists(b, prefix)),
        ),
        Or(a, b) => Or(
            Box::new(strip_exists(a, prefix)),
            Box::new(strip_exists(b, prefix)),
        ),
        _ => f.clone(),
    }
}

/// Name of the place realising `p` in copy `i`.
fn copy_place(i: usize, p: &str) -> String {
    format!("u{i}~{p}")
}

/// Disjoint union of `k` copies of the net, each with the original initial
/// marking; copies interleave independently, so a product marking is
/// reachable iff each projection is.
fn product_net(net: &PetriNet, k: usize) -> PetriNet {
    let mut places = Vec::with_capacity(k * net.places().len());
    let mut initial = Vec::with_capacity(k * net.places().len());
    for i in 0..k {
        for (p, place) in net.places().iter().enumerate() {
            places.push(copy_place(i, place));
            initial.push(net.initial().0[p].clone());
        }
    }
    let mut out =
        PetriNet::new(format!("{}~u{k}", net.name), places, Marking(initial)).expect("nonempty");
    for i in 0..k {
        for (t, tname) in net.transitions().iter().enumerate() {
            let mut ins = Vec::new();
            let mut outs = Vec::new();
            for (p, place) in net.places().iter().enumerate() {
                let w_in = net.flow_in(t, p);
                if w_in > 0 {
                    ins.push((copy_place(i, place), w_in));
                }
                let w_out = net.flow_out(t, p);
                if w_out > 0 {
                    outs.push((copy_place(i, place), w_out));
                }
            }
            let ins: Vec<(&str, u64)> = ins.iter().map(|(n, w)| (n.as_str(), *w)).collect();
            let outs: Vec<(&str, u64)> = outs.iter().map(|(n, w)| (n.as_str(), *w)).collect();
            out.add_transition(format!("u{i}~{tname}"), &ins, &outs).expect("fresh names");
        }
    }
    out
}

fn copy_vars(net: &PetriNet, i: usize) -> Vec<String> {
    net.places().iter().map(|p| copy_place(i, p)).collect()
}

/// Quantifier-free matrix over `->`/`=` atoms, as arithmetic over the
/// product net's places.
fn translate(
    net: &PetriNet,
    f: &FoFormula,
    copy: &HashMap<String, usize>,
) -> Result<PresFormula, EngineError> {
    use FoFormula::*;
    let vars_of = |v: &String| -> Result<Vec<String>, EngineError> {
        let i = copy
            .get(v)
            .ok_or_else(|| EngineError::fragment(ENGINE, format!("unbound variable {v}")))?;
        Ok(copy_vars(net, *i))
    };
    Ok(match f {
        Edge(x, y) => edge_formula(net, &vars_of(x)?, &vars_of(y)?),
        Eq(x, y) => and(vars_of(x)?
            .into_iter()
            .zip(vars_of(y)?)
            .map(|(a, b)| eq(LinTerm::var(a), LinTerm::var(b)))
            .collect()),
        Not(g) => not(translate(net, g, copy)?),
        And(a, b) => and(vec![translate(net, a, copy)?, translate(net, b, copy)?]),
        Or(a, b) => or(vec![translate(net, a, copy)?, translate(net, b, copy)?]),
        _ => {
            return Err(EngineError::fragment(
                ENGINE,
                format!("unexpected connective in matrix: {f}"),
            ))
        }
    })
}
