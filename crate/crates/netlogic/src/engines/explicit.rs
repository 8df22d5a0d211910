//! Explicit-state evaluation over a fully explored reachability graph.
//! Slow but trustworthy: the reference semantics the symbolic engines are
//! cross-checked against.

use super::{CheckVerdict, EngineError};
use crate::logic::{FoFormula, MlFormula};
use crate::net::{Marking, PetriNet};
use crate::statespace::{Closure, ReachGraph};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};

/// Evaluates a first-order sentence over the full reachability graph by
/// direct quantification over nodes. Requires a complete graph.
pub fn explicit_fo(
    g: &ReachGraph,
    closure: &Closure,
    f: &FoFormula,
) -> Result<CheckVerdict, EngineError> {
    if !g.complete {
        return Err(EngineError::IncompleteGraph);
    }
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(EngineError::NotASentence(
            free.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let mut env = HashMap::new();
    let holds = eval_fo(g, closure, f, &mut env);
    let mut out = CheckVerdict::from_bool("explicit_fo", holds);
    if let Some(w) = top_level_witness(g, closure, f, holds) {
        out = out.with_witness(w);
    }
    Ok(out)
}

fn eval_fo(
    g: &ReachGraph,
    closure: &Closure,
    f: &FoFormula,
    env: &mut HashMap<String, usize>,
) -> bool {
    use FoFormula::*;
    let node = |v: &String, env: &HashMap<String, usize>| -> usize {
        *env.get(v).expect("sentence: every variable is bound")
    };
    match f {
        Edge(x, y) => {
            let (u, v) = (node(x, env), node(y, env));
            g.edges[u].binary_search(&v).is_ok()
        }
        Star(x, y) => closure.star(node(x, env), node(y, env)),
        Plus(x, y) => closure.plus(node(x, env), node(y, env)),
        Eq(x, y) => node(x, env) == node(y, env),
        Init(x) => node(x, env) == g.initial,
        Not(f) => !eval_fo(g, closure, f, env),
        And(a, b) => eval_fo(g, closure, a, env) && eval_fo(g, closure, b, env),
        Or(a, b) => eval_fo(g, closure, a, env) || eval_fo(g, closure, b, env),
        Implies(a, b) => !eval_fo(g, closure, a, env) || eval_fo(g, closure, b, env),
        Forall(v, body) => {
            let prev = env.get(v).copied();
            let mut ok = true;
            for n in 0..g.len() {
                env.insert(v.clone(), n);
                if !eval_fo(g, closure, body, env) {
                    ok = false;
                    break;
                }
            }
            restore(env, v, prev);
            ok
        }
        Exists(v, body) => {
            let prev = env.get(v).copied();
            let mut ok = false;
            for n in 0..g.len() {
                env.insert(v.clone(), n);
                if eval_fo(g, closure, body, env) {
                    ok = true;
                    break;
                }
            }
            restore(env, v, prev);
            ok
        }
    }
}

fn restore(env: &mut HashMap<String, usize>, v: &str, prev: Option<usize>) {
    match prev {
        Some(old) => {
            env.insert(v.to_string(), old);
        }
        None => {
            env.remove(v);
        }
    }
}

/// For a sentence whose outermost connective is a quantifier, names the
/// marking that decides it: a witness for a true existential, a
/// counterexample for a false universal.
fn top_level_witness(
    g: &ReachGraph,
    closure: &Closure,
    f: &FoFormula,
    holds: bool,
) -> Option<String> {
    use FoFormula::*;
    let (v, body, want) = match f {
        Exists(v, body) if holds => (v, body, true),
        Forall(v, body) if !holds => (v, body, false),
        _ => return None,
    };
    let mut env = HashMap::new();
    for n in 0..g.len() {
        env.insert(v.clone(), n);
        if eval_fo(g, closure, body, &mut env) == want {
            return Some(format!("{v}={:?}", g.nodes[n]));
        }
    }
    None
}

/// Environment mapping each place name to its token count in `m`.
pub(crate) fn marking_env(net: &PetriNet, m: &Marking) -> BTreeMap<String, BigInt> {
    net.places()
        .iter()
        .cloned()
        .zip(m.0.iter().map(|v| BigInt::from(v.clone())))
        .collect()
}

/// Evaluates a modal formula at one node of a fully explored graph, with
/// converse modalities ranging over graph predecessors and arithmetic
/// constraints read off the node's marking.
pub fn explicit_ml(
    g: &ReachGraph,
    net: &PetriNet,
    f: &MlFormula,
    node: usize,
) -> Result<CheckVerdict, EngineError> {
    if !g.complete {
        return Err(EngineError::IncompleteGraph);
    }
    assert!(node < g.len(), "node index into the graph");
    super::check_paml_places(net, f)?;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); g.len()];
    for (u, succs) in g.edges.iter().enumerate() {
        for &v in succs {
            preds[v].push(u);
        }
    }
    let holds = eval_ml(g, net, &preds, f, node)?;
    Ok(CheckVerdict::from_bool("explicit_ml", holds))
}

fn eval_ml(
    g: &ReachGraph,
    net: &PetriNet,
    preds: &[Vec<usize>],
    f: &MlFormula,
    node: usize,
) -> Result<bool, EngineError> {
    use MlFormula::*;
    Ok(match f {
        Top => true,
        Bot => false,
        Paml(c) => {
            let env = marking_env(net, &g.nodes[node]);
            c.eval(&env).ok_or_else(|| {
                EngineError::fragment("explicit_ml", "constraint must be quantifier-free")
            })?
        }
        Not(f) => !eval_ml(g, net, preds, f, node)?,
        And(a, b) => eval_ml(g, net, preds, a, node)? && eval_ml(g, net, preds, b, node)?,
        Or(a, b) => eval_ml(g, net, preds, a, node)? || eval_ml(g, net, preds, b, node)?,
        Implies(a, b) => !eval_ml(g, net, preds, a, node)? || eval_ml(g, net, preds, b, node)?,
        Box_(f) => {
            let mut all = true;
            for &v in &g.edges[node] {
                if !eval_ml(g, net, preds, f, v)? {
                    all = false;
                    break;
                }
            }
            all
        }
        Dia(f) => {
            let mut any = false;
            for &v in &g.edges[node] {
                if eval_ml(g, net, preds, f, v)? {
                    any = true;
                    break;
                }
            }
            any
        }
        BoxInv(f) => {
            let mut all = true;
            for &u in &preds[node] {
                if !eval_ml(g, net, preds, f, u)? {
                    all = false;
                    break;
                }
            }
            all
        }
        DiaInv(f) => {
            let mut any = false;
            for &u in &preds[node] {
                if eval_ml(g, net, preds, f, u)? {
                    any = true;
                    break;
                }
            }
            any
        }
    })
}
