//! Two-branch union nets: a built net simulates one of two input nets
//! (chosen by an initial guess) and can stop the simulation into small
//! distinguishing tails, so that reach-set equality or containment of the
//! inputs becomes a fixed first-order property of the union's graph.

use super::{
    copy_transitions, fixed_formulas, fresh_name, initial_as_outputs, taken_names, GadgetError,
    GadgetFormula, GadgetInstance,
};
use crate::net::{Marking, PetriNet};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Joins `n1` and `n2` (same place lists) into one net that simulates
/// either branch and ends every run in a deadlock tail: branch 1 detours
/// through a marking with a 1-loop before its deadlock, branch 2 does not.
/// Contract: the reach sets of `n1` and `n2` are equal iff the paired
/// sentence holds on the union's graph.
pub fn build_union_net(n1: &PetriNet, n2: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    union_core(n1, n2, true)
}

/// The union net without the 1-loop detour, paired with the `->*`-only
/// equality sentence; same contract as `build_union_net`.
pub fn build_star_union_net(n1: &PetriNet, n2: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    union_core(n1, n2, false)
}

fn union_core(
    n1: &PetriNet,
    n2: &PetriNet,
    with_loop_branch: bool,
) -> Result<GadgetInstance, GadgetError> {
    if n1.places() != n2.places() {
        return Err(GadgetError::PlaceMismatch(format!(
            "`{}` has places {:?}, `{}` has {:?}",
            n1.name,
            n1.places(),
            n2.name,
            n2.places()
        )));
    }
    let a = n1.without_neutral_transitions();
    let b = n2.without_neutral_transitions();

    let mut taken = taken_names(&a);
    taken.extend(taken_names(&b));
    let p = fresh_name(&mut taken, "p");
    let p1 = fresh_name(&mut taken, "p1");
    let p2 = fresh_name(&mut taken, "p2");
    let p1e = fresh_name(&mut taken, "p1'");
    let p2e = fresh_name(&mut taken, "p2'");
    let p1l = if with_loop_branch { Some(fresh_name(&mut taken, "p1''")) } else { None };

    let mut places: Vec<String> = a.places().to_vec();
    places.extend([p.clone(), p1.clone(), p2.clone(), p1e.clone(), p2e.clone()]);
    if let Some(l) = &p1l {
        places.push(l.clone());
    }
    let mut init = vec![BigUint::zero(); places.len()];
    init[a.places().len()] = BigUint::from(1u32); // the guess token on `p`
    let name = if with_loop_branch { "union" } else { "star_union" };
    let mut net = PetriNet::new(name, places, Marking(init))?;

    // initial guess: consume `p`, mark a control place and one branch's
    // initial marking on the shared places
    for (ctl, src, t) in [(&p1, &a, "t1_c"), (&p2, &b, "t2_c")] {
        let mut outs = initial_as_outputs(src)?;
        outs.push((ctl, 1));
        net.add_transition(fresh_name(&mut taken, t), &[(&p, 1)], &outs)?;
    }
    copy_transitions(&mut net, &a, &mut taken, Some(&p1))?;
    copy_transitions(&mut net, &b, &mut taken, Some(&p2))?;
    net.add_transition(fresh_name(&mut taken, "t1_end"), &[(&p1, 1)], &[(&p1e, 1)])?;
    net.add_transition(fresh_name(&mut taken, "t2_end"), &[(&p2, 1)], &[(&p2e, 1)])?;
    if let Some(l) = &p1l {
        net.add_transition(fresh_name(&mut taken, "t1_l"), &[(&p1e, 1)], &[(l, 1)])?;
        net.add_transition(fresh_name(&mut taken, "t_sl"), &[(l, 1)], &[(l, 1)])?;
    }
    net.add_transition(fresh_name(&mut taken, "t1_dl"), &[(&p1e, 1)], &[])?;
    net.add_transition(fresh_name(&mut taken, "t2_dl"), &[(&p2e, 1)], &[])?;

    let place_map: BTreeMap<String, String> =
        a.places().iter().map(|q| (q.clone(), q.clone())).collect();
    let c = fixed_formulas();
    let (formula, contract) = if with_loop_branch {
        (
            GadgetFormula::Fo(c.reach_equality),
            "the reach sets of the two branch nets are equal iff the sentence holds on this \
             net's reachability graph"
                .to_string(),
        )
    } else {
        (
            GadgetFormula::Fo(c.reach_equality_star),
            "the reach sets of the two branch nets are equal iff the star-closure sentence \
             holds on this net's reachability graph"
                .to_string(),
        )
    };
    Ok(GadgetInstance { net, formula, contract, place_map })
}

/// Adds a 3-place token ring to `n`, so every reachable marking of the
/// result lies on an undirected 3-cycle; rejects nets with neutral
/// transitions (a 1-loop would confuse the cycle test).
pub fn build_lambda_augment(n: &PetriNet) -> Result<PetriNet, GadgetError> {
    if let Some(&t) = n.neutral_transitions().first() {
        return Err(GadgetError::NeutralTransition(n.transitions()[t].clone()));
    }
    let mut taken = taken_names(n);
    let ring: Vec<String> = (1..=3).map(|i| fresh_name(&mut taken, &format!("c{i}"))).collect();
    let mut places = n.places().to_vec();
    places.extend(ring.iter().cloned());
    let mut init = n.initial().0.clone();
    init.push(BigUint::from(1u32));
    init.extend([BigUint::zero(), BigUint::zero()]);
    let mut net = PetriNet::new(n.name.clone(), places, Marking(init))?;
    copy_transitions(&mut net, n, &mut taken, None)?;
    for i in 0..3 {
        let t = fresh_name(&mut taken, &format!("rot{}", i + 1));
        net.add_transition(t, &[(&ring[i], 1)], &[(&ring[(i + 1) % 3], 1)])?;
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{explicit_fo, Verdict};
    use crate::logic::FoFormula;
    use crate::net::parse_net;
    use crate::statespace::{explore, transitive_closure};

    fn fo(g: &GadgetInstance) -> &FoFormula {
        match &g.formula {
            GadgetFormula::Fo(f) => f,
            GadgetFormula::Ml(_) => panic!("expected a first-order formula"),
        }
    }

    fn verdict_on(g: &GadgetInstance) -> Verdict {
        let graph = explore(&g.net, 100_000);
        assert!(graph.complete, "test nets must be bounded");
        let c = transitive_closure(&graph).unwrap();
        explicit_fo(&graph, &c, fo(g)).unwrap().verdict
    }

    const DRAIN2: &str = "net a\nplace s init 2\ntrans t\nin s:1";
    const DRAIN3: &str = "net b\nplace s init 3\ntrans t\nin s:1";

    #[test]
    fn identical_inputs_satisfy_the_equality_sentence() {
        let n = parse_net(DRAIN2).unwrap();
        let g = build_union_net(&n, &n).unwrap();
        g.validate().unwrap();
        assert_eq!(verdict_on(&g), Verdict::Holds);
    }

    #[test]
    fn different_reach_sets_falsify_it() {
        let n1 = parse_net(DRAIN2).unwrap();
        let n2 = parse_net(DRAIN3).unwrap();
        let g = build_union_net(&n1, &n2).unwrap();
        assert_eq!(verdict_on(&g), Verdict::Fails);
    }

    #[test]
    fn star_variant_agrees() {
        let n1 = parse_net(DRAIN2).unwrap();
        let n2 = parse_net(DRAIN3).unwrap();
        assert_eq!(verdict_on(&build_star_union_net(&n1, &n1).unwrap()), Verdict::Holds);
        assert_eq!(verdict_on(&build_star_union_net(&n1, &n2).unwrap()), Verdict::Fails);
    }

    #[test]
    fn place_lists_must_match() {
        let n1 = parse_net(DRAIN2).unwrap();
        let n2 = parse_net("net b\nplace q init 2\ntrans t\nin q:1").unwrap();
        assert!(matches!(build_union_net(&n1, &n2), Err(GadgetError::PlaceMismatch(_))));
    }

    #[test]
    fn control_names_dodge_shared_places() {
        let n = parse_net("net a\nplace p init 1\nplace p1 init 0\ntrans t\nin p:1\nout p1:1")
            .unwrap();
        let g = build_union_net(&n, &n).unwrap();
        g.validate().unwrap();
        // shared names are preserved, controls are freshened
        assert!(g.net.place_id("p").is_ok() && g.net.place_id("p_").is_ok());
        assert_eq!(verdict_on(&g), Verdict::Holds);
    }

    #[test]
    fn neutral_transitions_are_stripped() {
        let n1 = parse_net("net a\nplace s init 2\ntrans t\nin s:1\ntrans idle\nin s:1\nout s:1")
            .unwrap();
        let n2 = parse_net(DRAIN2).unwrap();
        let g = build_union_net(&n1, &n2).unwrap();
        assert!(!g.net.transitions().iter().any(|t| t == "idle"));
        assert_eq!(verdict_on(&g), Verdict::Holds);
    }

    #[test]
    fn ring_augment_gives_every_marking_a_three_cycle() {
        let n = parse_net(DRAIN2).unwrap();
        let aug = build_lambda_augment(&n).unwrap();
        let g = explore(&aug, 10_000);
        assert!(g.complete);
        // each marking m sits on the directed ring m -> m' -> m'' -> m
        for m in &g.nodes {
            let s1 = aug.successors(m);
            let back = s1.iter().any(|m1| {
                aug.successors(m1).iter().any(|m2| aug.successors(m2).contains(m))
            });
            assert!(back, "no 3-cycle through {m:?}");
        }
        // and nothing loops in one step
        for m in &g.nodes {
            assert!(!aug.successors(m).contains(m));
        }
    }

    #[test]
    fn ring_augment_rejects_neutral_transitions() {
        let n = parse_net("net a\nplace s init 1\ntrans idle\nin s:1\nout s:1").unwrap();
        assert!(matches!(
            build_lambda_augment(&n),
            Err(GadgetError::NeutralTransition(t)) if t == "idle"
        ));
    }

    #[test]
    fn undirected_equality_on_augmented_pairs() {
        let c = fixed_formulas();
        let n1 = parse_net(DRAIN2).unwrap();
        let n2 = parse_net(DRAIN3).unwrap();
        for (a, b, want) in [(&n1, &n1, Verdict::Holds), (&n1, &n2, Verdict::Fails)] {
            let aug1 = build_lambda_augment(a).unwrap();
            let aug2 = build_lambda_augment(b).unwrap();
            let g = build_union_net(&aug1, &aug2).unwrap();
            let graph = explore(&g.net, 100_000);
            assert!(graph.complete);
            let cl = transitive_closure(&graph).unwrap();
            let got = explicit_fo(&graph, &cl, &c.reach_equality_undirected).unwrap().verdict;
            assert_eq!(got, want);
        }
    }
}
