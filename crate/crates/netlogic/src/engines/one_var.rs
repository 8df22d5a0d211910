//! One-variable sentences over the step relation. The only atom a single
//! variable can form is the self-loop `x -> x`, so every clause reduces to
//! "some reachable marking loops" or "every reachable marking loops". A
//! marking loops exactly when it enables a transition with zero net effect,
//! which makes the existential question a coverability disjunction.

use super::{CheckVerdict, EngineError, Three};
use crate::logic::{FoFormula, Pred};
use crate::net::{Marking, PetriNet};
use crate::presburger::{and, leq, or, tru, LinTerm, PresFormula};
use crate::statespace::{coverable, reach_semilinear, MarkingSet, ReachVerdict};
use num_bigint::BigInt;
use num_traits::Zero;

const ENGINE: &str = "mc_fo_one_var";

/// Checks a boolean combination of one-variable sentences over `->`.
pub fn mc_fo_one_var(
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
    if f.predicates_used().iter().any(|p| !matches!(p, Pred::Edge)) {
        return Err(EngineError::fragment(
            ENGINE,
            "only -> atoms reduce to self-loop tests",
        ));
    }
    let v = eval_combo(net, f, cap)?;
    Ok(match v {
        Three::True => CheckVerdict::holds(ENGINE),
        Three::False => CheckVerdict::fails(ENGINE),
        Three::Unknown => CheckVerdict::inconclusive(ENGINE, "cap-exceeded"),
    })
}

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
        Not(g) => Ok(eval_combo(net, g, cap)?.not()),
        Forall(v, body) | Exists(v, body) => {
            // the body is a boolean function of the single bit "x -> x"
            let on_loop = body_value(body, v, true)?;
            let off_loop = body_value(body, v, false)?;
            let clause = match (on_loop, off_loop) {
                (true, true) => Three::True,
                (false, false) => Three::False,
                (true, false) => {
                    // body == (x -> x)
                    if matches!(f, Exists(_, _)) {
                        some_marking_loops(net)
                    } else {
                        every_marking_loops(net, cap)?
                    }
                }
                (false, true) => {
                    // body == !(x -> x)
                    if matches!(f, Exists(_, _)) {
                        every_marking_loops(net, cap)?.not()
                    } else {
                        some_marking_loops(net).not()
                    }
                }
            };
            Ok(clause)
        }
        _ => Err(EngineError::fragment(ENGINE, format!("not a one-variable clause: {f}"))),
    }
}

/// Evaluates the quantifier body as a boolean function of the self-loop
/// atom; rejects atoms over two distinct variables or nested quantifiers.
fn body_value(f: &FoFormula, v: &str, atom: bool) -> Result<bool, EngineError> {
    use FoFormula::*;
    Ok(match f {
        Edge(x, y) => {
            if x == v && y == v {
                atom
            } else {
                return Err(EngineError::fragment(
                    ENGINE,
                    format!("atom {x} -> {y} uses more than the quantified variable {v}"),
                ));
            }
        }
        Not(g) => !body_value(g, v, atom)?,
        And(a, b) => body_value(a, v, atom)? && body_value(b, v, atom)?,
        Or(a, b) => body_value(a, v, atom)? || body_value(b, v, atom)?,
        Implies(a, b) => !body_value(a, v, atom)? || body_value(b, v, atom)?,
        _ => {
            return Err(EngineError::fragment(
                ENGINE,
                format!("unsupported inside a one-variable clause: {f}"),
            ))
        }
    })
}

/// Does some reachable marking enable a zero-effect transition? One
/// coverability query per such transition; always definitive.
fn some_marking_loops(net: &PetriNet) -> Three {
    for t in net.neutral_transitions() {
        let guard = Marking(net.effect(t).guard.clone());
        if coverable(net, &guard) == ReachVerdict::Yes {
            return Three::True;
        }
    }
    Three::False
}

/// Does every reachable marking enable some zero-effect transition?
/// Reduces to reachability of the loop-free set, which needs a search.
fn every_marking_loops(net: &PetriNet, cap: usize) -> Result<Three, EngineError> {
    let neutral = net.neutral_transitions();
    let mut misses: Vec<PresFormula> = Vec::new();
    for t in neutral {
        let eff = net.effect(t);
        let mut short = Vec::new();
        for (p, place) in net.places().iter().enumerate() {
            if !eff.guard[p].is_zero() {
                short.push(leq(
                    LinTerm::var(place.clone()),
                    LinTerm::constant(BigInt::from(eff.guard[p].clone()) - 1),
                ));
            }
        }
        if short.is_empty() {
            // guard-free neutral transition: enabled everywhere
            return Ok(Three::True);
        }
        misses.push(or(short));
    }
    let loopless = if misses.is_empty() { tru() } else { and(misses) };
    let v = reach_semilinear(net, &MarkingSet::Formula(loopless), cap)?;
    Ok(Three::from_reach(v).not())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{explicit_fo, Verdict};
    use crate::logic::parse_fo_sentence;
    use crate::net::parse_net;
    use crate::statespace::{explore, transitive_closure};

    #[test]
    fn self_loop_detection_is_definitive_on_unbounded_nets() {
        // pump plus a gated self-loop that needs 5 tokens
        let net = parse_net(
            "net a\nplace p init 0\ntrans grow\nout p:1\ntrans idle\nin p:5\nout p:5",
        )
        .unwrap();
        let f = parse_fo_sentence("exists x . x -> x").unwrap();
        let v = mc_fo_one_var(&net, &f, 10).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        assert!(!v.truncated);
        // without the idle transition no marking loops — also definitive
        let net = parse_net("net a\nplace p init 0\ntrans grow\nout p:1").unwrap();
        assert_eq!(mc_fo_one_var(&net, &f, 10).unwrap().verdict, Verdict::Fails);
        let g = parse_fo_sentence("forall x . !(x -> x)").unwrap();
        assert_eq!(mc_fo_one_var(&net, &g, 10).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn universal_loop_needs_search() {
        // idle always enabled: every marking loops
        let net = parse_net(
            "net a\nplace p init 0\ntrans grow\nout p:1\ntrans idle\nin p:1\nout p:1",
        )
        .unwrap();
        let f = parse_fo_sentence("forall x . x -> x").unwrap();
        // the initial marking (0) enables nothing neutral
        assert_eq!(mc_fo_one_var(&net, &f, 100).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn guard_free_idle_makes_universal_definitive() {
        let net = parse_net(
            "net a\nplace p init 0\ntrans grow\nout p:1\ntrans idle",
        )
        .unwrap();
        let f = parse_fo_sentence("forall x . x -> x").unwrap();
        let v = mc_fo_one_var(&net, &f, 5).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        assert!(!v.truncated);
    }

    #[test]
    fn rejects_two_variable_atoms() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1").unwrap();
        let f = parse_fo_sentence("exists x . exists y . x -> y").unwrap();
        assert!(matches!(
            mc_fo_one_var(&net, &f, 10),
            Err(EngineError::FragmentMismatch { .. })
        ));
    }

    #[test]
    fn agrees_with_explicit_on_bounded_nets() {
        let texts = [
            "net a\nplace p init 3\ntrans t\nin p:1",
            "net b\nplace p init 2\ntrans idle\nin p:1\nout p:1\ntrans drain\nin p:1",
            "net c\nplace p init 1\ntrans idle\nin p:1\nout p:1",
        ];
        let formulas = [
            "exists x . x -> x",
            "forall x . x -> x",
            "exists x . !(x -> x)",
            "forall x . !(x -> x)",
            "(exists x . x -> x) & !(forall x . x -> x)",
            "forall x . x -> x | !(x -> x)",
        ];
        for text in texts {
            let net = parse_net(text).unwrap();
            let g = explore(&net, 1000);
            assert!(g.complete);
            let c = transitive_closure(&g).unwrap();
            for s in formulas {
                let f = parse_fo_sentence(s).unwrap();
                let fast = mc_fo_one_var(&net, &f, 100_000).unwrap().verdict;
                let slow = explicit_fo(&g, &c, &f).unwrap().verdict;
                assert_eq!(fast, slow, "net {text:?} formula {s}");
            }
        }
    }
}
