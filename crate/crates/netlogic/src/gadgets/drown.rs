//! Flooding a net's reach set into a trivially semilinear superset while
//! keeping an identifiable isomorphic copy of its graph: a scrambler subnet
//! can rewrite the original places arbitrarily until a one-way transition
//! commits to a faithful simulation. Sentences about the original graph are
//! transported by anchoring two variables on the commit step and
//! relativizing all quantifiers to its forward cone.

use super::{
    copy_transitions, fresh_name, taken_names, GadgetError, GadgetFormula, GadgetInstance,
};
use crate::logic::{
    fo_and, fo_exists, fo_not, relativize, FoFormula, LogicError, RelGuard,
};
use crate::net::{Marking, PetriNet};
use num_bigint::BigUint;
use num_traits::Zero;

/// Marker places of a drowned net, in the order they are appended.
const MODE_SIM: &str = "p1";
const MODE_SCRAMBLE: &str = "p2";
const COMMIT: &str = "p0";

fn drown_core(
    n: &PetriNet,
    reservoir: Option<u64>,
    rooted: bool,
) -> Result<GadgetInstance, GadgetError> {
    let mut taken = taken_names(n);
    let p0 = fresh_name(&mut taken, COMMIT);
    let p1 = fresh_name(&mut taken, MODE_SIM);
    let p2 = fresh_name(&mut taken, MODE_SCRAMBLE);
    let rsv = reservoir.map(|_| fresh_name(&mut taken, "rsv"));
    let root = if rooted { Some(fresh_name(&mut taken, "r0")) } else { None };

    let mut places = n.places().to_vec();
    places.extend([p0.clone(), p1.clone(), p2.clone()]);
    if let Some(r) = &rsv {
        places.push(r.clone());
    }
    if let Some(r) = &root {
        places.push(r.clone());
    }
    let mut init = n.initial().0.clone();
    let one = BigUint::from(1u32);
    // rooted: p0 and p1 start empty, a single root token releases them
    init.extend(if rooted {
        [BigUint::zero(), BigUint::zero(), BigUint::zero()]
    } else {
        [one.clone(), one.clone(), BigUint::zero()]
    });
    if let Some(k) = reservoir {
        init.push(BigUint::from(k));
    }
    if rooted {
        init.push(one);
    }
    let mut net = PetriNet::new("drown", places, Marking(init))?;

    match &rsv {
        None => copy_transitions(&mut net, n, &mut taken, Some(&p1))?,
        // bounded variant: keep `rsv + total(shared)` invariant, so the
        // scrambler can restore any shared marking (including the initial
        // one) exactly, as the unconstrained scrambler does
        Some(r) => {
            for (t, tname) in n.transitions().iter().enumerate() {
                let mut ins: Vec<(&str, u64)> = vec![(&p1, 1)];
                let mut outs: Vec<(&str, u64)> = vec![(&p1, 1)];
                let (mut total_in, mut total_out) = (0u64, 0u64);
                for (p, pname) in n.places().iter().enumerate() {
                    let (fin, fout) = (n.flow_in(t, p), n.flow_out(t, p));
                    if fin > 0 {
                        ins.push((pname, fin));
                        total_in =
                            total_in.checked_add(fin).ok_or(GadgetError::WeightOverflow)?;
                    }
                    if fout > 0 {
                        outs.push((pname, fout));
                        total_out =
                            total_out.checked_add(fout).ok_or(GadgetError::WeightOverflow)?;
                    }
                }
                if total_out > total_in {
                    ins.push((r, total_out - total_in));
                } else if total_in > total_out {
                    outs.push((r, total_in - total_out));
                }
                let name = fresh_name(&mut taken, tname);
                net.add_transition(name, &ins, &outs)?;
            }
        }
    }
    for q in n.places() {
        let mut add_ins = vec![(p2.as_str(), 1)];
        let add_outs = vec![(p2.as_str(), 1), (q.as_str(), 1)];
        let rem_ins = vec![(p2.as_str(), 1), (q.as_str(), 1)];
        let mut rem_outs = vec![(p2.as_str(), 1)];
        if let Some(r) = &rsv {
            add_ins.push((r, 1));
            rem_outs.push((r, 1));
        }
        let ta = fresh_name(&mut taken, &format!("add_{q}"));
        net.add_transition(ta, &add_ins, &add_outs)?;
        let tr = fresh_name(&mut taken, &format!("rem_{q}"));
        net.add_transition(tr, &rem_ins, &rem_outs)?;
    }
    net.add_transition(
        fresh_name(&mut taken, "scramble_on"),
        &[(&p0, 1), (&p1, 1)],
        &[(&p0, 1), (&p2, 1)],
    )?;
    net.add_transition(fresh_name(&mut taken, "scramble_off"), &[(&p2, 1)], &[(&p1, 1)])?;
    net.add_transition(fresh_name(&mut taken, "commit"), &[(&p0, 1)], &[])?;
    if let Some(r) = &root {
        net.add_transition(fresh_name(&mut taken, "release"), &[(r, 1)], &[(&p0, 1), (&p1, 1)])?;
    }

    let formula = if rooted { rooted_anchor_sentence() } else { anchor_sentence() };
    let contract = if rooted {
        "the initial marking is the sole marking with no incoming edge and one outgoing edge; \
         after its single step the net behaves like the unrooted variant"
            .to_string()
    } else {
        "the reach set is exactly {p0 <= 1, p1 + p2 = 1} x (all scrambler-place vectors); the \
         anchored pair (x0, x1) resolves uniquely to the initial marking and its commit \
         successor, whose forward cone is isomorphic to the source net's reachability graph"
            .to_string()
    };
    Ok(GadgetInstance {
        net,
        formula: GadgetFormula::Fo(formula),
        contract,
        place_map: n.places().iter().map(|q| (q.clone(), q.clone())).collect(),
    })
}

/// `exists x0 x1 . init(x0) & x0 -> x1 & !(x1 ->* x0)`: x1 can only be the
/// commit successor, every other successor can scramble its way back.
fn anchor_sentence() -> FoFormula {
    use FoFormula::*;
    fo_exists(
        "x0",
        fo_exists(
            "x1",
            fo_and(
                fo_and(Init("x0".to_string()), Edge("x0".to_string(), "x1".to_string())),
                fo_not(Star("x1".to_string(), "x0".to_string())),
            ),
        ),
    )
}

/// Root-identified form: the root has no predecessor, its successor is x0.
fn rooted_anchor_sentence() -> FoFormula {
    use FoFormula::*;
    let no_pred = fo_not(fo_exists("y", Edge("y".to_string(), "xr".to_string())));
    fo_exists(
        "xr",
        fo_exists(
            "x0",
            fo_exists(
                "x1",
                fo_and(
                    fo_and(
                        fo_and(no_pred, Edge("xr".to_string(), "x0".to_string())),
                        Edge("x0".to_string(), "x1".to_string()),
                    ),
                    fo_not(Star("x1".to_string(), "x0".to_string())),
                ),
            ),
        ),
    )
}

/// The full construction with an unbounded scrambler.
pub fn build_drown_net(n: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    drown_core(n, None, false)
}

/// Testing variant: the scrambler draws from a finite reservoir, so bounded
/// inputs give a bounded net that explicit oracles can explore. The anchor
/// argument needs the reservoir to cover every return path; callers should
/// size it at least `max reachable token total - initial total + 1` of the
/// source net.
pub fn build_drown_net_bounded(n: &PetriNet, reservoir: u64) -> Result<GadgetInstance, GadgetError> {
    drown_core(n, Some(reservoir), false)
}

/// Variant whose initial marking is structurally identifiable (no incoming
/// edge, exactly one outgoing), for logics without an `init` predicate.
pub fn build_drown_net_rooted(n: &PetriNet) -> Result<GadgetInstance, GadgetError> {
    drown_core(n, None, true)
}

/// Transports a sentence over the source net's graph to the drowned net:
/// anchors `x0`/`x1` on the commit step and relativizes every quantifier to
/// the cone `x1 ->* _`.
pub fn drown_formula(phi: &FoFormula) -> Result<FoFormula, LogicError> {
    let body = relativize(phi, "x1", RelGuard::Star)?;
    let FoFormula::Exists(x0, rest) = anchor_sentence() else { unreachable!() };
    let FoFormula::Exists(x1, anchor) = *rest else { unreachable!() };
    Ok(fo_exists(x0, fo_exists(x1, fo_and(*anchor, body))))
}

/// As `drown_formula`, for the rooted variant.
pub fn drown_formula_rooted(phi: &FoFormula) -> Result<FoFormula, LogicError> {
    let body = relativize(phi, "x1", RelGuard::Star)?;
    let FoFormula::Exists(xr, rest) = rooted_anchor_sentence() else { unreachable!() };
    let FoFormula::Exists(x0, rest) = *rest else { unreachable!() };
    let FoFormula::Exists(x1, anchor) = *rest else { unreachable!() };
    Ok(fo_exists(xr, fo_exists(x0, fo_exists(x1, fo_and(*anchor, body)))))
}

/// Reservoir size that makes the bounded variant's return paths work for a
/// source net whose reachable token totals stay at or below `max_total`.
#[cfg(test)]
fn reservoir_for(n: &PetriNet, max_total: u64) -> u64 {
    let init: u64 = n.initial().as_u64s().map(|v| v.iter().sum()).unwrap_or(0);
    max_total.saturating_add(init).saturating_add(1)
}
