//! Validity of arithmetic-constraint modal formulas over all reachable
//! markings: the set of violating markings is computed symbolically (it
//! stays quantifier-free, since pre-image is substitution), then tested for
//! reachability.

use super::{CheckVerdict, EngineError};
use crate::logic::MlFormula;
use crate::net::PetriNet;
use crate::presburger::{box_set, fls, not, pre_image, tru, PresFormula};
use crate::statespace::{reach_semilinear, MarkingSet};

/// Does `f` hold at every reachable marking? Forward modalities only;
/// fails exactly when some reachable marking violates `f`.
pub fn val_paml_forward(
    net: &PetriNet,
    f: &MlFormula,
    cap: usize,
) -> Result<CheckVerdict, EngineError> {
    if f.has_inverse() {
        return Err(EngineError::fragment(
            "val_paml_forward",
            "converse modalities have no forward set translation",
        ));
    }
    super::check_paml_places(net, f)?;
    let satisfying = set_of(net, f)?;
    let violating = not(satisfying).simplify();
    let verdict = reach_semilinear(net, &MarkingSet::Formula(violating), cap)?;
    Ok(super::verdict::verdict_from_bad_reach("val_paml_forward", verdict))
}

/// Formula over the place names describing exactly the markings of N^n
/// satisfying `f`; forward modalities and quantifier-free constraints only.
pub fn paml_set(net: &PetriNet, f: &MlFormula) -> Result<PresFormula, EngineError> {
    if f.has_inverse() {
        return Err(EngineError::fragment(
            "val_paml_forward",
            "converse modalities have no forward set translation",
        ));
    }
    super::check_paml_places(net, f)?;
    set_of(net, f)
}

fn set_of(net: &PetriNet, f: &MlFormula) -> Result<PresFormula, EngineError> {
    use MlFormula::*;
    Ok(match f {
        Top => tru(),
        Bot => fls(),
        Paml(c) => {
            if !c.is_quantifier_free() {
                return Err(EngineError::fragment(
                    "val_paml_forward",
                    "constraint must be quantifier-free",
                ));
            }
            c.clone()
        }
        Not(g) => not(set_of(net, g)?),
        And(a, b) => crate::presburger::and(vec![set_of(net, a)?, set_of(net, b)?]),
        Or(a, b) => crate::presburger::or(vec![set_of(net, a)?, set_of(net, b)?]),
        Implies(a, b) => {
            crate::presburger::or(vec![not(set_of(net, a)?), set_of(net, b)?])
        }
        Dia(g) => pre_image(net, &set_of(net, g)?)?,
        Box_(g) => box_set(net, &set_of(net, g)?)?,
        BoxInv(_) | DiaInv(_) => unreachable!("rejected up front"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{explicit_ml, Verdict};
    use crate::logic::parse_ml;
    use crate::net::parse_net;
    use crate::statespace::explore;

    #[test]
    fn invariant_on_a_conserving_loop() {
        // tokens shuttle between p1 and p2; the sum is invariant
        let net = parse_net(
            "net a\nplace p1 init 2\nplace p2 init 0\ntrans t1\nin p1:1\nout p2:1\ntrans t2\nin p2:1\nout p1:1",
        )
        .unwrap();
        let f = parse_ml("{p1 + p2 = 2}").unwrap();
        assert_eq!(val_paml_forward(&net, &f, 1000).unwrap().verdict, Verdict::Holds);
        let f = parse_ml("{p1 >= 1}").unwrap();
        assert_eq!(val_paml_forward(&net, &f, 1000).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn modalities_translate_to_sets() {
        // drain net: every marking can step unless empty
        let net = parse_net("net a\nplace p init 3\ntrans t\nin p:1").unwrap();
        let f = parse_ml("dia top | {p = 0}").unwrap();
        assert_eq!(val_paml_forward(&net, &f, 1000).unwrap().verdict, Verdict::Holds);
        let f = parse_ml("box {p <= 2}").unwrap();
        assert_eq!(val_paml_forward(&net, &f, 1000).unwrap().verdict, Verdict::Holds);
        let f = parse_ml("dia top").unwrap();
        assert_eq!(val_paml_forward(&net, &f, 1000).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn violation_in_unbounded_net_found_or_honestly_missed() {
        // unbounded pump; {p <= 10} is violated at depth 11
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let f = parse_ml("{p <= 10}").unwrap();
        let v = val_paml_forward(&net, &f, 100).unwrap();
        assert_eq!(v.verdict, Verdict::Fails);
        // a cap too small to see the violation must not claim anything
        let v = val_paml_forward(&net, &f, 5).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(v.truncated);
    }

    #[test]
    fn rejects_converse() {
        let net = parse_net("net a\nplace p init 0").unwrap();
        let f = parse_ml("boxinv {p = 0}").unwrap();
        assert!(matches!(
            val_paml_forward(&net, &f, 10),
            Err(EngineError::FragmentMismatch { .. })
        ));
    }

    #[test]
    fn agrees_with_pointwise_explicit_evaluation() {
        let texts = [
            "net a\nplace p init 3\ntrans t\nin p:1",
            "net b\nplace p1 init 1\nplace p2 init 1\ntrans t1\nin p1:1\nout p2:2\ntrans t2\nin p2:2\nout p1:1",
        ];
        let formulas = [
            "box bot => dia top | top",
            "dia {p1 >= 1} => {p1 + p2 >= 1}",
            "box (dia top | box bot)",
            "{p1 = 0} | dia top | box bot",
        ];
        for text in texts {
            let net = parse_net(text).unwrap();
            let g = explore(&net, 10_000);
            assert!(g.complete);
            for s in formulas {
                let f = parse_ml(s).unwrap();
                if !f.paml_places().iter().all(|p| net.place_id(p).is_ok()) {
                    continue;
                }
                let want = (0..g.len())
                    .all(|n| explicit_ml(&g, &net, &f, n).unwrap().verdict == Verdict::Holds);
                let got = val_paml_forward(&net, &f, 100_000).unwrap().verdict;
                assert_eq!(got, Verdict::from_bool(want), "net {text:?} formula {s}");
            }
        }
    }
}
