//! Full first-order checking against user-supplied arithmetic descriptions
//! of the reachability set and of the big-step relation `->*`. When those
//! descriptions are correct, every sentence — closures included — becomes a
//! pure arithmetic sentence and is decided by quantifier elimination.
//!
//! Conventions: the reachable-set formula is over the place names; the
//! star formula is over the place names (source) and the primed place
//! names `p'` (target). Both are instantiated by substitution. Every
//! quantifier is relativized to the reachable set, and star atoms are
//! defensively conjoined with reachability of both endpoints, so a star
//! formula valid on all of N^n is also accepted.

use super::{CheckVerdict, EngineError};
use crate::logic::{FoFormula, Pred};
use crate::net::PetriNet;
use crate::presburger::{
    and, decide, edge_formula, eq, exists_nat, forall_nat, not, or, LinTerm, PresError,
    PresFormula,
};
use num_bigint::BigInt;
use std::collections::BTreeMap;

const ENGINE: &str = "mc_fo_semilinear";

/// Decides a sentence over init, ->, ->*, ->+ and =, relative to the given
/// arithmetic descriptions.
pub fn mc_fo_semilinear(
    net: &PetriNet,
    f: &FoFormula,
    reach: &PresFormula,
    star: Option<&PresFormula>,
) -> Result<CheckVerdict, EngineError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(EngineError::NotASentence(
            free.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let places: Vec<String> = net.places().to_vec();
    let primed: Vec<String> = places.iter().map(|p| format!("{p}'")).collect();
    for v in reach.free_vars() {
        if !places.contains(&v) {
            return Err(EngineError::UnknownPlace(v));
        }
    }
    if let Some(s) = star {
        for v in s.free_vars() {
            if !places.contains(&v) && !primed.contains(&v) {
                return Err(EngineError::UnknownPlace(v));
            }
        }
    }
    let needs_star = f
        .predicates_used()
        .iter()
        .any(|p| matches!(p, Pred::Star | Pred::Plus));
    if needs_star && star.is_none() {
        return Err(EngineError::MissingStarFormula);
    }
    let cx = Cx { net, reach, star, places, primed };
    let mut fresh = 0usize;
    let sentence = translate(&cx, f, &mut fresh)?;
    match decide(&sentence) {
        Ok(b) => Ok(CheckVerdict::from_bool(ENGINE, b)),
        Err(PresError::ResourceExceeded(_)) => {
            Ok(CheckVerdict::inconclusive(ENGINE, "elimination budget exceeded"))
        }
        Err(e) => Err(e.into()),
    }
}

struct Cx<'a> {
    net: &'a PetriNet,
    reach: &'a PresFormula,
    star: Option<&'a PresFormula>,
    places: Vec<String>,
    primed: Vec<String>,
}

fn point_vars(cx: &Cx, v: &str) -> Vec<String> {
    (0..cx.places.len()).map(|i| format!("{v}~{i}")).collect()
}

/// `reach` with the places replaced by the vector realising `v`.
fn reach_at(cx: &Cx, vars: &[String]) -> PresFormula {
    let map: BTreeMap<String, LinTerm> = cx
        .places
        .iter()
        .zip(vars)
        .map(|(p, x)| (p.clone(), LinTerm::var(x.clone())))
        .collect();
    cx.reach.subst_all(&map)
}

/// The star formula at a pair of vectors, guarded by reachability of both
/// endpoints.
fn star_at(cx: &Cx, src: &[String], dst: &[String]) -> PresFormula {
    let s = cx.star.expect("checked before translation");
    let mut map: BTreeMap<String, LinTerm> = BTreeMap::new();
    for (p, x) in cx.places.iter().zip(src) {
        map.insert(p.clone(), LinTerm::var(x.clone()));
    }
    for (p, y) in cx.primed.iter().zip(dst) {
        map.insert(p.clone(), LinTerm::var(y.clone()));
    }
    and(vec![reach_at(cx, src), reach_at(cx, dst), s.subst_all(&map)])
}

fn eq_vec(a: &[String], b: &[String]) -> PresFormula {
    and(a.iter()
        .zip(b)
        .map(|(x, y)| eq(LinTerm::var(x.clone()), LinTerm::var(y.clone())))
        .collect())
}

fn translate(cx: &Cx, f: &FoFormula, fresh: &mut usize) -> Result<PresFormula, EngineError> {
    use FoFormula::*;
    Ok(match f {
        Edge(x, y) => edge_formula(cx.net, &point_vars(cx, x), &point_vars(cx, y)),
        Star(x, y) => star_at(cx, &point_vars(cx, x), &point_vars(cx, y)),
        Plus(x, y) => {
            // one concrete step into a fresh midpoint, then star
            let mid: Vec<String> = (0..cx.places.len())
                .map(|i| format!("~plus{}~{i}", *fresh))
                .collect();
            *fresh += 1;
            let mut body = and(vec![
                edge_formula(cx.net, &point_vars(cx, x), &mid),
                star_at(cx, &mid, &point_vars(cx, y)),
            ]);
            for m in mid.into_iter().rev() {
                body = exists_nat(m, body);
            }
            body
        }
        Eq(x, y) => eq_vec(&point_vars(cx, x), &point_vars(cx, y)),
        Init(x) => and(point_vars(cx, x)
            .into_iter()
            .zip(&cx.net.initial().0)
            .map(|(a, k)| eq(LinTerm::var(a), LinTerm::constant(BigInt::from(k.clone()))))
            .collect()),
        Not(g) => not(translate(cx, g, fresh)?),
        And(a, b) => and(vec![translate(cx, a, fresh)?, translate(cx, b, fresh)?]),
        Or(a, b) => or(vec![translate(cx, a, fresh)?, translate(cx, b, fresh)?]),
        Implies(a, b) => or(vec![not(translate(cx, a, fresh)?), translate(cx, b, fresh)?]),
        Forall(v, g) => {
            let vars = point_vars(cx, v);
            let mut body = or(vec![not(reach_at(cx, &vars)), translate(cx, g, fresh)?]);
            for name in vars.into_iter().rev() {
                body = forall_nat(name, body);
            }
            body
        }
        Exists(v, g) => {
            let vars = point_vars(cx, v);
            let mut body = and(vec![reach_at(cx, &vars), translate(cx, g, fresh)?]);
            for name in vars.into_iter().rev() {
                body = exists_nat(name, body);
            }
            body
        }
    })
}
