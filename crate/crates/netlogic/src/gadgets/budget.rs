//! Reduction from zero-marking reachability to a one-variable sentence: a
//! budget place mirrors the total token count, and a single self-loop on it
//! makes "some reachable marking has no 1-loop" equivalent to "the budget
//! hits zero".

use super::{fresh_name, taken_names, GadgetError, GadgetFormula, GadgetInstance};
use crate::logic::parse_fo_sentence;
use crate::net::{Marking, PetriNet};

/// Stage 1 adds a budget place `b` whose count always equals the total
/// token count of the original places (`b` consumes the summed inputs and
/// produces the summed outputs of every transition). Stage 2 adds the only
/// neutral transition, a self-loop on `b`. Returns the stage-1 net and the
/// stage-2 instance with the sentence `exists x . !(x -> x)`.
///
/// Contract: the all-zero marking is reachable in `n` iff some reachable
/// marking of the stage-1 net has `b = 0` iff the sentence holds on the
/// stage-2 net's reachability graph.
pub fn build_budget_reduction(
    n: &PetriNet,
) -> Result<(PetriNet, GadgetInstance), GadgetError> {
    if let Some(&t) = n.neutral_transitions().first() {
        return Err(GadgetError::NeutralTransition(n.transitions()[t].clone()));
    }
    let mut taken = taken_names(n);
    let b = fresh_name(&mut taken, "b");
    let mut places = n.places().to_vec();
    places.push(b.clone());
    let mut init = n.initial().0.clone();
    init.push(n.initial().total());
    let mut stage1 = PetriNet::new("budget", places, Marking(init))?;

    for (t, tname) in n.transitions().iter().enumerate() {
        let mut ins: Vec<(&str, u64)> = Vec::new();
        let mut outs: Vec<(&str, u64)> = Vec::new();
        let (mut total_in, mut total_out) = (0u64, 0u64);
        for (p, pname) in n.places().iter().enumerate() {
            let (fin, fout) = (n.flow_in(t, p), n.flow_out(t, p));
            if fin > 0 {
                ins.push((pname, fin));
                total_in = total_in.checked_add(fin).ok_or(GadgetError::WeightOverflow)?;
            }
            if fout > 0 {
                outs.push((pname, fout));
                total_out = total_out.checked_add(fout).ok_or(GadgetError::WeightOverflow)?;
            }
        }
        if total_in > 0 {
            ins.push((&b, total_in));
        }
        if total_out > 0 {
            outs.push((&b, total_out));
        }
        stage1.add_transition(fresh_name(&mut taken, tname), &ins, &outs)?;
    }

    let mut stage2 = stage1.clone();
    stage2.add_transition(fresh_name(&mut taken, "idle"), &[(&b, 1)], &[(&b, 1)])?;
    let instance = GadgetInstance {
        net: stage2,
        formula: GadgetFormula::Fo(parse_fo_sentence("exists x . !(x -> x)")?),
        contract: "the all-zero marking is reachable in the source net iff the sentence holds \
                   on this net's reachability graph (the budget place mirrors the total token \
                   count, and only the budget self-loop is neutral)"
            .to_string(),
        place_map: n.places().iter().map(|p| (p.clone(), p.clone())).collect(),
    };
    Ok((stage1, instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{mc_fo_one_var, Verdict};
    use crate::logic::FoFormula;
    use crate::net::parse_net;
    use crate::statespace::explore;
    use num_traits::Zero;

    fn fo(g: &GadgetInstance) -> &FoFormula {
        match &g.formula {
            GadgetFormula::Fo(f) => f,
            GadgetFormula::Ml(_) => panic!("expected a first-order formula"),
        }
    }

    #[test]
    fn budget_mirrors_the_token_total() {
        let n = parse_net("net a\nplace s init 2\nplace q init 1\ntrans t\nin s:1\nout q:2")
            .unwrap();
        let (stage1, _) = build_budget_reduction(&n).unwrap();
        let b = stage1.place_id("b").unwrap();
        let g = explore(&stage1, 10_000);
        assert!(g.complete);
        for m in &g.nodes {
            let total: num_bigint::BigUint =
                m.0.iter().enumerate().filter(|(i, _)| *i != b).map(|(_, c)| c.clone()).sum();
            assert_eq!(m.0[b], total, "budget out of sync at {m:?}");
        }
        // the budget never blocks a firing the source net allows
        let src = explore(&n, 10_000);
        assert_eq!(src.nodes.len(), g.nodes.len());
    }

    #[test]
    fn drainable_net_satisfies_the_sentence() {
        let n = parse_net("net a\nplace s init 3\ntrans t\nin s:1").unwrap();
        let (_, inst) = build_budget_reduction(&n).unwrap();
        inst.validate().unwrap();
        assert_eq!(
            mc_fo_one_var(&inst.net, fo(&inst), 100_000).unwrap().verdict,
            Verdict::Holds
        );
    }

    #[test]
    fn token_conserving_net_falsifies_it() {
        let n = parse_net(
            "net a\nplace s init 1\nplace q init 0\ntrans t\nin s:1\nout q:1\ntrans u\nin q:1\nout s:1",
        )
        .unwrap();
        let (stage1, inst) = build_budget_reduction(&n).unwrap();
        assert_eq!(
            mc_fo_one_var(&inst.net, fo(&inst), 100_000).unwrap().verdict,
            Verdict::Fails
        );
        // cross-check stage 1: no reachable marking zeroes the budget
        let b = stage1.place_id("b").unwrap();
        let g = explore(&stage1, 10_000);
        assert!(g.complete);
        assert!(g.nodes.iter().all(|m| !m.0[b].is_zero()));
    }

    #[test]
    fn rejects_neutral_transitions() {
        let n = parse_net("net a\nplace s init 1\ntrans idle\nin s:1\nout s:1").unwrap();
        assert!(matches!(
            build_budget_reduction(&n),
            Err(GadgetError::NeutralTransition(t)) if t == "idle"
        ));
    }
}
