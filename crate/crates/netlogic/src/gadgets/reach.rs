//! Reachability questions recast as local modal properties: a witness
//! marking is planted next to the initial marking, and reaching the target
//! shows up as an extra incoming path to that witness.

use super::{
    copy_transitions, fresh_name, taken_names, GadgetError, GadgetFormula, GadgetInstance,
};
use crate::logic::{ml_and, ml_box, ml_dia, ml_diainv, MlFormula};
use crate::net::{Marking, NetError, PetriNet};
use num_bigint::BigUint;
use num_traits::Zero;

fn check_presets(n: &PetriNet) -> Result<(), GadgetError> {
    for (t, name) in n.transitions().iter().enumerate() {
        if (0..n.places().len()).all(|p| n.flow_in(t, p) == 0) {
            return Err(GadgetError::EmptyPreset(name.clone()));
        }
    }
    Ok(())
}

fn marking_as_pairs<'a>(
    n: &'a PetriNet,
    m: &Marking,
) -> Result<Vec<(&'a str, u64)>, GadgetError> {
    if m.len() != n.places().len() {
        return Err(GadgetError::Net(NetError::MarkingLength {
            got: m.len(),
            want: n.places().len(),
        }));
    }
    let counts = m.as_u64s().ok_or(GadgetError::WeightOverflow)?;
    Ok(n.places()
        .iter()
        .zip(counts)
        .filter(|(_, c)| *c > 0)
        .map(|(p, c)| (p.as_str(), c))
        .collect())
}

/// Encodes "is `m2` reachable from `m1` in `n`" as a modal check at the
/// built net's initial marking: the initial marking has a deadlock
/// successor (the witness), and the witness gains an incoming path of
/// length two exactly when a simulation run reaches `m2`.
pub fn build_reach_gadget(
    n: &PetriNet,
    m1: &Marking,
    m2: &Marking,
) -> Result<GadgetInstance, GadgetError> {
    check_presets(n)?;
    let m1_pairs = marking_as_pairs(n, m1)?;
    let m2_pairs = marking_as_pairs(n, m2)?;
    if !(0..n.transitions().len()).any(|t| n.enabled(m1, t)) {
        return Err(GadgetError::StartIsDeadlock);
    }
    if m1 == m2 {
        return Err(GadgetError::StartEqualsTarget);
    }

    let mut taken = taken_names(n);
    let pi = fresh_name(&mut taken, "pi");
    let pc = fresh_name(&mut taken, "pc");
    let pw = fresh_name(&mut taken, "pw");
    let pwpre = fresh_name(&mut taken, "pw'");
    let mut places = n.places().to_vec();
    places.extend([pi.clone(), pc.clone(), pw.clone(), pwpre.clone()]);
    let mut init = vec![BigUint::zero(); places.len()];
    init[n.places().len()] = BigUint::from(1u32);
    let mut net = PetriNet::new("reach", places, Marking(init))?;

    copy_transitions(&mut net, n, &mut taken, Some(&pc))?;
    net.add_transition(fresh_name(&mut taken, "t_try"), &[(&pi, 1)], &[(&pw, 1)])?;
    let mut load = m1_pairs;
    load.push((&pc, 1));
    net.add_transition(fresh_name(&mut taken, "t0"), &[(&pi, 1)], &load)?;
    let mut stop = m2_pairs;
    stop.push((&pc, 1));
    net.add_transition(fresh_name(&mut taken, "t_stop"), &stop, &[(&pwpre, 1)])?;
    net.add_transition(fresh_name(&mut taken, "t_win"), &[(&pwpre, 1)], &[(&pw, 1)])?;

    let formula: MlFormula =
        ml_dia(ml_and(ml_box(MlFormula::Bot), ml_diainv(ml_diainv(MlFormula::Top))));
    Ok(GadgetInstance {
        net,
        formula: GadgetFormula::Ml(formula),
        contract: "the target marking is reachable from the start marking in the source net \
                   iff the modal formula holds at this net's initial marking"
            .to_string(),
        place_map: n.places().iter().map(|p| (p.clone(), p.clone())).collect(),
    })
}

/// Encodes "the all-zero marking is unreachable in `n`" as validity of
/// `dia top`: one witness self-loop per place keeps every nonzero marking
/// live, so the built net deadlocks exactly at the all-zero marking.
pub fn build_nonreach_gadget(n: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    check_presets(n)?;
    let mut taken = taken_names(n);
    let mut net = PetriNet::new("nonreach", n.places().to_vec(), n.initial().clone())?;
    copy_transitions(&mut net, n, &mut taken, None)?;
    for p in n.places() {
        let t = fresh_name(&mut taken, &format!("w_{p}"));
        net.add_transition(t, &[(p, 1)], &[(p, 1)])?;
    }
    Ok(GadgetInstance {
        net,
        formula: GadgetFormula::Ml(ml_dia(MlFormula::Top)),
        contract: "the all-zero marking is unreachable in the source net iff `dia top` holds \
                   at every reachable marking of this net"
            .to_string(),
        place_map: n.places().iter().map(|p| (p.clone(), p.clone())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{explicit_ml, val_paml_forward, Verdict};
    use crate::net::parse_net;
    use crate::statespace::explore;

    fn ml(g: &GadgetInstance) -> &MlFormula {
        match &g.formula {
            GadgetFormula::Ml(f) => f,
            GadgetFormula::Fo(_) => panic!("expected a modal formula"),
        }
    }

    fn check_at_root(g: &GadgetInstance) -> Verdict {
        let graph = explore(&g.net, 100_000);
        assert!(graph.complete);
        explicit_ml(&graph, &g.net, ml(g), graph.initial).unwrap().verdict
    }

    #[test]
    fn reachable_target_holds() {
        let n = parse_net("net a\nplace s init 0\ntrans t\nin s:1").unwrap();
        let g =
            build_reach_gadget(&n, &Marking::from_u64s(&[2]), &Marking::from_u64s(&[0])).unwrap();
        g.validate().unwrap();
        assert_eq!(check_at_root(&g), Verdict::Holds);
    }

    #[test]
    fn unreachable_target_fails() {
        let n = parse_net("net a\nplace s init 0\ntrans t\nin s:1").unwrap();
        let g =
            build_reach_gadget(&n, &Marking::from_u64s(&[2]), &Marking::from_u64s(&[3])).unwrap();
        assert_eq!(check_at_root(&g), Verdict::Fails);
    }

    #[test]
    fn reach_preconditions() {
        let n = parse_net("net a\nplace s init 0\ntrans t\nin s:1").unwrap();
        let m = |k| Marking::from_u64s(&[k]);
        assert!(matches!(
            build_reach_gadget(&n, &m(0), &m(1)),
            Err(GadgetError::StartIsDeadlock)
        ));
        assert!(matches!(
            build_reach_gadget(&n, &m(2), &m(2)),
            Err(GadgetError::StartEqualsTarget)
        ));
        let pump = parse_net("net a\nplace s init 0\ntrans t\nout s:1").unwrap();
        assert!(matches!(
            build_reach_gadget(&pump, &m(1), &m(2)),
            Err(GadgetError::EmptyPreset(t)) if t == "t"
        ));
    }

    #[test]
    fn nonreach_validity_tracks_zero_membership() {
        // drains to zero: dia top must fail somewhere
        let n = parse_net("net a\nplace s init 2\ntrans t\nin s:1").unwrap();
        let g = build_nonreach_gadget(&n).unwrap();
        g.validate().unwrap();
        assert_eq!(val_paml_forward(&g.net, ml(&g), 100_000).unwrap().verdict, Verdict::Fails);
        // conserves one token: zero is unreachable, dia top is valid
        let n = parse_net(
            "net a\nplace s init 1\nplace q init 0\ntrans t\nin s:1\nout q:1\ntrans u\nin q:1\nout s:1",
        )
        .unwrap();
        let g = build_nonreach_gadget(&n).unwrap();
        assert_eq!(val_paml_forward(&g.net, ml(&g), 100_000).unwrap().verdict, Verdict::Holds);
    }
}
