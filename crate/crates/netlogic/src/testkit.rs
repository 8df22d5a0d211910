//! Deterministic generators and brute-force oracles backing the integration
//! test suite. Everything is seeded, so a failing case can be replayed from
//! its seed alone. Nothing here is needed at runtime; the module exists so
//! the cross-check suites in `tests/` can share one corpus.

use crate::logic::{
    fo_and, fo_exists, fo_forall, fo_implies, fo_not, fo_or, FoFormula, MlFormula, Pred,
};
use crate::net::{Marking, PetriNet};
use crate::presburger::{
    and, congruent, eq, geq, leq, not, or, LinTerm, PresFormula,
};
use crate::statespace::explore;
use num_bigint::{BigInt, BigUint};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// One RNG per suite, seeded explicitly.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random net whose transitions never increase the total token count, so
/// the reachability set is finite by construction.
pub fn random_bounded_net(
    r: &mut ChaCha8Rng,
    name: &str,
    places: usize,
    transitions: usize,
) -> PetriNet {
    assert!(places >= 1);
    let names: Vec<String> = (0..places).map(|i| format!("s{i}")).collect();
    let init: Vec<u64> = (0..places).map(|_| r.gen_range(0..=2)).collect();
    let mut net =
        PetriNet::new(name.to_string(), names.clone(), Marking::from_u64s(&init)).unwrap();
    for t in 0..transitions {
        let total_in = r.gen_range(1..=3u64);
        let total_out = r.gen_range(0..=total_in);
        let spread = |r: &mut ChaCha8Rng, total: u64| -> BTreeMap<usize, u64> {
            let mut m = BTreeMap::new();
            for _ in 0..total {
                *m.entry(r.gen_range(0..places)).or_insert(0) += 1;
            }
            m
        };
        let ins: Vec<(&str, u64)> = spread(r, total_in)
            .into_iter()
            .map(|(p, w)| (names[p].as_str(), w))
            .collect();
        let outs: Vec<(&str, u64)> = spread(r, total_out)
            .into_iter()
            .map(|(p, w)| (names[p].as_str(), w))
            .collect();
        net.add_transition(format!("t{t}"), &ins, &outs).unwrap();
    }
    net
}

/// The exact reachability set, or `None` when `cap` truncates it.
pub fn reach_set(net: &PetriNet, cap: usize) -> Option<BTreeSet<Marking>> {
    let g = explore(net, cap);
    if !g.complete {
        return None;
    }
    Some(g.nodes.into_iter().collect())
}

/// A clone of `net` with the same reachability set: transitions shuffled
/// and one duplicated under a fresh name.
pub fn reach_preserving_clone(r: &mut ChaCha8Rng, net: &PetriNet) -> PetriNet {
    let mut order: Vec<usize> = (0..net.transitions().len()).collect();
    order.shuffle(r);
    let mut out = PetriNet::new(
        format!("{}_twin", net.name),
        net.places().to_vec(),
        net.initial().clone(),
    )
    .unwrap();
    let flows = |t: usize| -> (Vec<(&str, u64)>, Vec<(&str, u64)>) {
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (p, pname) in net.places().iter().enumerate() {
            if net.flow_in(t, p) > 0 {
                ins.push((pname.as_str(), net.flow_in(t, p)));
            }
            if net.flow_out(t, p) > 0 {
                outs.push((pname.as_str(), net.flow_out(t, p)));
            }
        }
        (ins, outs)
    };
    for &t in &order {
        let (ins, outs) = flows(t);
        out.add_transition(net.transitions()[t].clone(), &ins, &outs).unwrap();
    }
    if let Some(&t) = order.first() {
        let (ins, outs) = flows(t);
        out.add_transition(format!("{}_dup", net.transitions()[t]), &ins, &outs).unwrap();
    }
    out
}

/// Corpus of bounded net pairs over identical place lists. Each entry
/// carries the ground-truth reach-set equality flag; at least `count / 2`
/// pairs are equal by construction, the rest are verified unequal against
/// the explicit sets.
pub fn net_pair_corpus(seed: u64, count: usize) -> Vec<(PetriNet, PetriNet, bool)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let places = r.gen_range(1..=3);
        let transitions = r.gen_range(1..=3);
        let n1 = random_bounded_net(&mut r, "a", places, transitions);
        if out.len() % 2 == 0 {
            let n2 = reach_preserving_clone(&mut r, &n1);
            out.push((n1, n2, true));
            continue;
        }
        let n2 = random_bounded_net(&mut r, "b", places, transitions);
        let (s1, s2) = match (reach_set(&n1, 5_000), reach_set(&n2, 5_000)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        if s1 != s2 {
            out.push((n1, n2, false));
        }
    }
    out
}

/// Random first-order sentence: a quantifier prefix over `vars` variables
/// and a small boolean combination of atoms drawn from `preds`.
pub fn random_fo_sentence(r: &mut ChaCha8Rng, preds: &[Pred], vars: usize) -> FoFormula {
    assert!(vars >= 1 && !preds.is_empty());
    let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
    let body = random_fo_body(r, preds, &names, 2);
    let mut f = body;
    for v in names.iter().rev() {
        f = if r.gen_bool(0.5) { fo_forall(v.clone(), f) } else { fo_exists(v.clone(), f) };
    }
    f
}

/// Random existential sentence over `preds` (no universal quantifier, no
/// implication), suitable for the existential-fragment engine.
pub fn random_existential_sentence(
    r: &mut ChaCha8Rng,
    preds: &[Pred],
    vars: usize,
) -> FoFormula {
    let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
    let mut f = random_fo_body(r, preds, &names, 2);
    for v in names.iter().rev() {
        f = fo_exists(v.clone(), f);
    }
    f
}

fn random_fo_atom(r: &mut ChaCha8Rng, preds: &[Pred], names: &[String]) -> FoFormula {
    let x = names[r.gen_range(0..names.len())].clone();
    let y = names[r.gen_range(0..names.len())].clone();
    match preds[r.gen_range(0..preds.len())] {
        Pred::Edge => FoFormula::Edge(x, y),
        Pred::Star => FoFormula::Star(x, y),
        Pred::Plus => FoFormula::Plus(x, y),
        Pred::Eq => FoFormula::Eq(x, y),
        Pred::Init => FoFormula::Init(x),
    }
}

fn random_fo_body(
    r: &mut ChaCha8Rng,
    preds: &[Pred],
    names: &[String],
    depth: usize,
) -> FoFormula {
    if depth == 0 || r.gen_bool(0.3) {
        return random_fo_atom(r, preds, names);
    }
    let a = random_fo_body(r, preds, names, depth - 1);
    let b = random_fo_body(r, preds, names, depth - 1);
    match r.gen_range(0..4) {
        0 => fo_and(a, b),
        1 => fo_or(a, b),
        2 => fo_not(a),
        _ => fo_implies(a, b),
    }
}

/// Random modal formula of modal degree at most `depth`. Constraint atoms
/// (when `paml_places` is nonempty) compare one place against a small
/// constant.
pub fn random_ml(
    r: &mut ChaCha8Rng,
    depth: usize,
    allow_inverse: bool,
    paml_places: &[String],
) -> MlFormula {
    use crate::logic::{ml_and, ml_box, ml_boxinv, ml_dia, ml_diainv, ml_implies, ml_not, ml_or};
    if depth == 0 || r.gen_bool(0.25) {
        return match r.gen_range(0..3) {
            0 => MlFormula::Top,
            1 => MlFormula::Bot,
            _ => {
                if paml_places.is_empty() {
                    MlFormula::Top
                } else {
                    let p = paml_places[r.gen_range(0..paml_places.len())].clone();
                    let k = LinTerm::constant(r.gen_range(0..=3));
                    let c = if r.gen_bool(0.5) {
                        leq(LinTerm::var(p), k)
                    } else {
                        geq(LinTerm::var(p), k)
                    };
                    MlFormula::Paml(c)
                }
            }
        };
    }
    let modal = r.gen_range(0..if allow_inverse { 4 } else { 2 });
    match r.gen_range(0..4) {
        0 => {
            let g = random_ml(r, depth - 1, allow_inverse, paml_places);
            match modal {
                0 => ml_box(g),
                1 => ml_dia(g),
                2 => ml_boxinv(g),
                _ => ml_diainv(g),
            }
        }
        1 => ml_not(random_ml(r, depth - 1, allow_inverse, paml_places)),
        2 => ml_and(
            random_ml(r, depth - 1, allow_inverse, paml_places),
            random_ml(r, depth - 1, allow_inverse, paml_places),
        ),
        _ => {
            if r.gen_bool(0.5) {
                ml_or(
                    random_ml(r, depth - 1, allow_inverse, paml_places),
                    random_ml(r, depth - 1, allow_inverse, paml_places),
                )
            } else {
                ml_implies(
                    random_ml(r, depth - 1, allow_inverse, paml_places),
                    random_ml(r, depth - 1, allow_inverse, paml_places),
                )
            }
        }
    }
}

/// Pointwise evaluation of a modal formula at a marking over the full
/// transition graph on N^n (successor and predecessor sets are finite and
/// enumerated on demand). Constraint atoms must be quantifier-free.
pub fn ml_ug_eval(net: &PetriNet, f: &MlFormula, m: &Marking) -> bool {
    use MlFormula::*;
    match f {
        Top => true,
        Bot => false,
        Paml(c) => {
            let env: BTreeMap<String, BigInt> = net
                .places()
                .iter()
                .cloned()
                .zip(m.0.iter().map(|v| BigInt::from(v.clone())))
                .collect();
            c.eval(&env).expect("quantifier-free constraint over known places")
        }
        Not(g) => !ml_ug_eval(net, g, m),
        And(a, b) => ml_ug_eval(net, a, m) && ml_ug_eval(net, b, m),
        Or(a, b) => ml_ug_eval(net, a, m) || ml_ug_eval(net, b, m),
        Implies(a, b) => !ml_ug_eval(net, a, m) || ml_ug_eval(net, b, m),
        Dia(g) => net.successors(m).iter().any(|s| ml_ug_eval(net, g, s)),
        Box_(g) => net.successors(m).iter().all(|s| ml_ug_eval(net, g, s)),
        DiaInv(g) => net.ug_predecessors(m).iter().any(|s| ml_ug_eval(net, g, s)),
        BoxInv(g) => net.ug_predecessors(m).iter().all(|s| ml_ug_eval(net, g, s)),
    }
}

/// Iterator over all points of the box `[0..=max]^dim`.
pub fn grid(dim: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let side = max + 1;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut k| {
        let mut point = vec![0u64; dim];
        for slot in point.iter_mut() {
            *slot = k % side;
            k /= side;
        }
        point
    })
}

/// Bound used by the bounded-quantifier generator and its enumeration
/// oracle.
pub const QUANT_BOUND: u64 = 8;

/// Random linear-arithmetic sentence in which every quantifier is
/// explicitly restricted to `0 <= v <= QUANT_BOUND`, so exhaustive
/// enumeration over that box is an exact oracle.
pub fn random_bounded_pres_sentence(r: &mut ChaCha8Rng, quantifiers: usize) -> PresFormula {
    assert!(quantifiers >= 1);
    let names: Vec<String> = (0..quantifiers).map(|i| format!("q{i}")).collect();
    let mut f = random_pres_body(r, &names, 2);
    for v in names.iter().rev() {
        let guard = and(vec![
            geq(LinTerm::var(v.clone()), LinTerm::zero()),
            leq(LinTerm::var(v.clone()), LinTerm::constant(QUANT_BOUND)),
        ]);
        f = if r.gen_bool(0.5) {
            PresFormula::Exists(v.clone(), Box::new(and(vec![guard, f])))
        } else {
            PresFormula::Forall(v.clone(), Box::new(crate::presburger::implies(guard, f)))
        };
    }
    f
}

/// Random formula with exactly the given free variables and `quantifiers`
/// additional bound variables, each restricted to `0 <= v <= QUANT_BOUND`;
/// pointwise truth at a free-variable assignment is decidable by
/// `pres_enum_eval` with that assignment preloaded.
pub fn random_pres_formula(
    r: &mut ChaCha8Rng,
    free: &[String],
    quantifiers: usize,
) -> PresFormula {
    let bound: Vec<String> = (0..quantifiers).map(|i| format!("q{i}")).collect();
    let mut names = free.to_vec();
    names.extend(bound.iter().cloned());
    let mut f = random_pres_body(r, &names, 2);
    // force every free variable to occur, so the formula is about the point
    for v in free {
        f = and(vec![f, leq(LinTerm::var(v.clone()), LinTerm::constant(1_000_000))]);
    }
    for v in bound.iter().rev() {
        let guard = and(vec![
            geq(LinTerm::var(v.clone()), LinTerm::zero()),
            leq(LinTerm::var(v.clone()), LinTerm::constant(QUANT_BOUND)),
        ]);
        f = if r.gen_bool(0.5) {
            PresFormula::Exists(v.clone(), Box::new(and(vec![guard, f])))
        } else {
            PresFormula::Forall(v.clone(), Box::new(crate::presburger::implies(guard, f)))
        };
    }
    f
}

fn random_pres_atom(r: &mut ChaCha8Rng, names: &[String]) -> PresFormula {
    let mut t = LinTerm::constant(r.gen_range(-4i64..=4));
    for _ in 0..r.gen_range(1..=2) {
        let v = names[r.gen_range(0..names.len())].clone();
        t = t.add(&LinTerm::scaled_var(r.gen_range(-2i64..=2), v));
    }
    match r.gen_range(0..3) {
        0 => leq(t, LinTerm::zero()),
        1 => eq(t, LinTerm::zero()),
        _ => congruent(BigUint::from(r.gen_range(2u64..=3)), t, LinTerm::zero())
            .expect("divisor >= 2"),
    }
}

fn random_pres_body(r: &mut ChaCha8Rng, names: &[String], depth: usize) -> PresFormula {
    if depth == 0 || r.gen_bool(0.3) {
        return random_pres_atom(r, names);
    }
    let a = random_pres_body(r, names, depth - 1);
    let b = random_pres_body(r, names, depth - 1);
    match r.gen_range(0..3) {
        0 => and(vec![a, b]),
        1 => or(vec![a, b]),
        _ => not(a),
    }
}

/// Exhaustive evaluation of a sentence whose quantifiers are all bounded by
/// `QUANT_BOUND` (as produced by `random_bounded_pres_sentence`).
pub fn pres_enum_eval(f: &PresFormula, env: &mut BTreeMap<String, BigInt>) -> bool {
    use PresFormula::*;
    match f {
        Leq(_) | EqZ(_) | Divides(_, _) => f.eval(env).expect("all variables bound"),
        Not(g) => !pres_enum_eval(g, env),
        And(fs) => fs.iter().all(|g| pres_enum_eval(g, &mut env.clone())),
        Or(fs) => fs.iter().any(|g| pres_enum_eval(g, &mut env.clone())),
        Exists(v, g) => (0..=QUANT_BOUND).any(|k| {
            let old = env.insert(v.clone(), BigInt::from(k));
            let out = pres_enum_eval(g, env);
            match old {
                Some(o) => env.insert(v.clone(), o),
                None => env.remove(v),
            };
            out
        }),
        Forall(v, g) => (0..=QUANT_BOUND).all(|k| {
            let old = env.insert(v.clone(), BigInt::from(k));
            let out = pres_enum_eval(g, env);
            match old {
                Some(o) => env.insert(v.clone(), o),
                None => env.remove(v),
            };
            out
        }),
    }
}
