//! First-order sentences over the unrestricted graph: the structure whose
//! points are all of N^n with the one-step relation. Quantifying over
//! points is quantifying over place vectors, so the whole sentence
//! translates into pure arithmetic and is decided by quantifier
//! elimination. Complete for init, -> and =; the closures ->* and ->+ are
//! not arithmetic and are rejected.

use super::{CheckVerdict, EngineError};
use crate::logic::{FoFormula, Pred};
use crate::net::PetriNet;
use crate::presburger::{
    and, decide, edge_formula, eq, exists_nat, forall_nat, not, or, LinTerm, PresError,
    PresFormula,
};
use num_bigint::BigInt;

const ENGINE: &str = "mc_fo_ug";

/// Decides a sentence over init, -> and = interpreted on all of N^n.
pub fn mc_fo_ug(net: &PetriNet, f: &FoFormula) -> Result<CheckVerdict, EngineError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(EngineError::NotASentence(
            free.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    if f.predicates_used()
        .iter()
        .any(|p| matches!(p, Pred::Star | Pred::Plus))
    {
        return Err(EngineError::fragment(
            ENGINE,
            "->* and ->+ are not expressible in arithmetic",
        ));
    }
    let sentence = translate(net, f)?;
    match decide(&sentence) {
        Ok(b) => Ok(CheckVerdict::from_bool(ENGINE, b)),
        Err(PresError::ResourceExceeded(_)) => {
            Ok(CheckVerdict::inconclusive(ENGINE, "elimination budget exceeded"))
        }
        Err(e) => Err(e.into()),
    }
}

/// Arithmetic variables realising FO variable `v`: one per place.
fn point_vars(net: &PetriNet, v: &str) -> Vec<String> {
    (0..net.places().len()).map(|i| format!("{v}~{i}")).collect()
}

fn translate(net: &PetriNet, f: &FoFormula) -> Result<PresFormula, EngineError> {
    use FoFormula::*;
    Ok(match f {
        Edge(x, y) => edge_formula(net, &point_vars(net, x), &point_vars(net, y)),
        Eq(x, y) => and(point_vars(net, x)
            .into_iter()
            .zip(point_vars(net, y))
            .map(|(a, b)| eq(LinTerm::var(a), LinTerm::var(b)))
            .collect()),
        Init(x) => and(point_vars(net, x)
            .into_iter()
            .zip(&net.initial().0)
            .map(|(a, k)| eq(LinTerm::var(a), LinTerm::constant(BigInt::from(k.clone()))))
            .collect()),
        Star(_, _) | Plus(_, _) => unreachable!("rejected up front"),
        Not(g) => not(translate(net, g)?),
        And(a, b) => and(vec![translate(net, a)?, translate(net, b)?]),
        Or(a, b) => or(vec![translate(net, a)?, translate(net, b)?]),
        Implies(a, b) => or(vec![not(translate(net, a)?), translate(net, b)?]),
        Forall(v, g) => {
            let mut body = translate(net, g)?;
            for name in point_vars(net, v).into_iter().rev() {
                body = forall_nat(name, body);
            }
            body
        }
        Exists(v, g) => {
            let mut body = translate(net, g)?;
            for name in point_vars(net, v).into_iter().rev() {
                body = exists_nat(name, body);
            }
            body
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Verdict;
    use crate::logic::parse_fo_sentence;
    use crate::net::parse_net;

    fn check(net_text: &str, formula: &str) -> Verdict {
        let net = parse_net(net_text).unwrap();
        let f = parse_fo_sentence(formula).unwrap();
        mc_fo_ug(&net, &f).unwrap().verdict
    }

    #[test]
    fn totality_and_dead_points() {
        let pump = "net a\nplace p init 0\ntrans t\nout p:1";
        // every point of N can pump
        assert_eq!(check(pump, "forall x . exists y . x -> y"), Verdict::Holds);
        assert_eq!(check(pump, "exists x . forall y . !(x -> y)"), Verdict::Fails);
        // drains are stuck at zero
        let drain = "net a\nplace p init 3\ntrans t\nin p:1";
        assert_eq!(check(drain, "forall x . exists y . x -> y"), Verdict::Fails);
        assert_eq!(check(drain, "exists x . forall y . !(x -> y)"), Verdict::Holds);
    }

    #[test]
    fn quantifiers_range_over_unreachable_points_too() {
        // reachable markings of the drain are {0..3}, but the structure
        // contains every natural number
        let drain = "net a\nplace p init 3\ntrans t\nin p:1";
        assert_eq!(
            check(drain, "exists x . exists y . x -> y & !(init(x)) & !(x = y)"),
            Verdict::Holds
        );
        // no point maps to the initial one plus itself: injectivity of -1
        assert_eq!(
            check(drain, "forall x . forall y . forall z . x -> z & y -> z => x = y"),
            Verdict::Holds
        );
    }

    #[test]
    fn init_atom_is_the_initial_vector() {
        let net = "net a\nplace p1 init 2\nplace p2 init 0\ntrans t\nin p1:1\nout p2:1";
        assert_eq!(
            check(net, "forall x . forall y . init(x) & init(y) => x = y"),
            Verdict::Holds
        );
        assert_eq!(check(net, "exists x . init(x) & x -> x"), Verdict::Fails);
        assert_eq!(
            check(net, "exists x . exists y . init(x) & x -> y"),
            Verdict::Holds
        );
    }

    #[test]
    fn rejects_closure_atoms() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let f = parse_fo_sentence("forall x . x ->* x").unwrap();
        assert!(matches!(mc_fo_ug(&net, &f), Err(EngineError::FragmentMismatch { .. })));
    }

    #[test]
    fn two_place_interplay() {
        // transfer net: t moves a token p1 -> p2
        let net = "net a\nplace p1 init 1\nplace p2 init 0\ntrans t\nin p1:1\nout p2:1";
        // any point with a token in p1 can step
        assert_eq!(
            check(net, "forall x . exists y . x -> y | forall z . !(x -> z)"),
            Verdict::Holds
        );
        // some point cannot step (p1 = 0)
        assert_eq!(check(net, "exists x . forall y . !(x -> y)"), Verdict::Holds);
    }
}
