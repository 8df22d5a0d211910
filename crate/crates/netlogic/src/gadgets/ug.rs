//! Doubly-rooted embedding of a net into the unrestricted graph over all
//! markings: a fresh root holds one token on a new place `p0` and can either
//! die (making the root formula-definable as "no 1-loop, some dead-end
//! successor") or release the embedded net's initial marking together with a
//! live place `pl`. Per-place witness self-loops give every marking outside
//! the two roots a 1-loop, so the root and its looping successor are the
//! only markings satisfying the marker templates — even over the full
//! infinite grid.

use super::{
    copy_transitions, fixed_formulas, fresh_name, initial_as_outputs, taken_names, GadgetError,
    GadgetFormula, GadgetInstance,
};
use crate::logic::{fo_and, fo_exists, fo_not, relativize, FoFormula, RelGuard};
use crate::net::{Marking, PetriNet};
use num_bigint::BigUint;
use num_traits::Zero;

/// Embeds `n` into a net whose unrestricted graph has a formula-definable
/// root: place order is `[p0, places of n, pl]`, the initial marking is
/// `(1, 0, ..., 0)`, and the root's two exits are a dead end (`t_e`) and the
/// embedded initial marking with `pl` set (`t_0`). Every place except `p0`
/// carries a witness self-loop.
///
/// Contract: over all markings, the one-free-variable root template holds
/// exactly at `(1, 0, ..., 0)`, and the step template holds exactly at the
/// released marking; both are decidable pointwise by the guarded evaluator.
pub fn build_ug_gadget(n: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    let mut taken = taken_names(n);
    let p0 = fresh_name(&mut taken, "p0");
    let pl = fresh_name(&mut taken, "pl");

    let mut places = vec![p0.clone()];
    places.extend(n.places().iter().cloned());
    places.push(pl.clone());
    let mut init = vec![BigUint::zero(); places.len()];
    init[0] = BigUint::from(1u32);
    let mut net = PetriNet::new("ug", places, Marking(init))?;

    copy_transitions(&mut net, n, &mut taken, Some(&pl))?;
    for q in n.places().iter().chain([&pl]) {
        let t = fresh_name(&mut taken, &format!("w_{q}"));
        net.add_transition(t, &[(q, 1)], &[(q, 1)])?;
    }
    net.add_transition(fresh_name(&mut taken, "t_e"), &[(&p0, 1)], &[])?;
    let mut release = initial_as_outputs(n)?;
    release.push((&pl, 1));
    net.add_transition(fresh_name(&mut taken, "t_0"), &[(&p0, 1)], &release)?;

    Ok(GadgetInstance {
        net,
        formula: GadgetFormula::Fo(fixed_formulas().root_marker),
        contract: "over the unrestricted graph of all markings, the template holds exactly at \
                   the initial marking (1, 0, ..., 0); the step template holds exactly at the \
                   released copy of the source net's initial marking"
            .to_string(),
        place_map: n.places().iter().map(|q| (q.clone(), q.clone())).collect(),
    })
}

/// Stacks the constructions: the two inputs are joined into a star union,
/// flooded so the reach set is trivially semilinear, then doubly rooted.
/// The paired sentence finds the released marking by its marker template,
/// anchors the flooded net's commit step, and relativizes the star-closure
/// equality sentence to the committed cone.
///
/// Contract: the reach sets of `n1` and `n2` are equal iff the sentence
/// holds over the unrestricted graph of the built net.
pub fn build_pileup(n1: &PetriNet, n2: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    let su = super::build_star_union_net(n1, n2)?;
    let dr = super::build_drown_net(&su.net)?;
    let mut ug = build_ug_gadget(&dr.net)?;
    ug.net.name = "pileup".to_string();

    let c = fixed_formulas();
    let marker = super::anchor_step_at("x0");
    let body = relativize(&c.reach_equality_star_distinct, "x1", RelGuard::Star)?;
    let formula = fo_exists(
        "x0",
        fo_exists(
            "x1",
            fo_and(
                fo_and(
                    fo_and(marker, FoFormula::Edge("x0".to_string(), "x1".to_string())),
                    fo_not(FoFormula::Star("x1".to_string(), "x0".to_string())),
                ),
                body,
            ),
        ),
    );
    Ok(GadgetInstance {
        net: ug.net,
        formula: GadgetFormula::Fo(formula),
        contract: "the reach sets of the two input nets are equal iff the sentence holds over \
                   the unrestricted graph of all markings of this net"
            .to_string(),
        place_map: n1.places().iter().map(|q| (q.clone(), q.clone())).collect(),
    })
}
