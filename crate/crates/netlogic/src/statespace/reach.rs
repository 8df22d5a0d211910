//! Desk-scale reachability oracles: exact-target search, semilinear-target
//! search, and the two-phase reduction from semilinear targets to plain
//! reachability.

use super::{coverable, explore, Reason, ReachVerdict, StateError};
use crate::net::{Marking, PetriNet};
use crate::presburger::{
    eliminate, PresError, PresFormula, SemilinearSet,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A set of markings given either symbolically or as base-plus-periods.
#[derive(Clone, Debug)]
pub enum MarkingSet {
    /// Formula over the net's place names.
    Formula(PresFormula),
    Semilinear(SemilinearSet),
}

impl From<PresFormula> for MarkingSet {
    fn from(f: PresFormula) -> Self {
        MarkingSet::Formula(f)
    }
}

impl From<SemilinearSet> for MarkingSet {
    fn from(s: SemilinearSet) -> Self {
        MarkingSet::Semilinear(s)
    }
}

/// Is the exact marking `target` reachable? Yes answers carry a replayable
/// witness; No is certified either by uncoverability or by a completed
/// exploration; otherwise the cap was exhausted.
pub fn reachable_with_witness(
    net: &PetriNet,
    target: &Marking,
    cap: usize,
) -> (ReachVerdict, Option<Vec<usize>>) {
    if target.len() != net.places().len() {
        return (ReachVerdict::Inconclusive(Reason::Unsupported), None);
    }
    if target == net.initial() {
        return (ReachVerdict::Yes, Some(Vec::new()));
    }
    if coverable(net, target) == ReachVerdict::No {
        return (ReachVerdict::No, None);
    }
    let g = explore(net, cap);
    if let Some(id) = g.node_id(target) {
        return (ReachVerdict::Yes, Some(g.witness_path(id)));
    }
    if g.complete {
        (ReachVerdict::No, None)
    } else {
        (ReachVerdict::Inconclusive(Reason::CapExceeded), None)
    }
}

pub fn reachable(net: &PetriNet, target: &Marking, cap: usize) -> ReachVerdict {
    reachable_with_witness(net, target, cap).0
}

/// Can some marking of `target` be reached? Upward-closed semilinear
/// targets (unit periods everywhere) go through the definitive coverability
/// route; everything else is explicit search under `cap`.
pub fn reach_semilinear(
    net: &PetriNet,
    target: &MarkingSet,
    cap: usize,
) -> Result<ReachVerdict, StateError> {
    let n = net.places().len();
    match target {
        MarkingSet::Semilinear(s) => {
            if s.dim != n {
                return Err(StateError::Pres(PresError::DimensionMismatch {
                    got: s.dim,
                    want: n,
                }));
            }
            if s.has_all_unit_periods() {
                // union of upward closures of the bases: coverability decides
                for c in &s.components {
                    if coverable(net, &Marking(c.base.clone())) == ReachVerdict::Yes {
                        return Ok(ReachVerdict::Yes);
                    }
                }
                return Ok(ReachVerdict::No);
            }
            search(net, cap, |m| s.membership(&m.0).expect("dimension checked"))
        }
        MarkingSet::Formula(f) => {
            let places: Vec<String> = net.places().to_vec();
            for v in f.free_vars() {
                if !places.contains(&v) {
                    return Err(StateError::Pres(PresError::FreeVarMismatch {
                        got: f.free_vars().into_iter().collect(),
                        want: places,
                    }));
                }
            }
            let qf = match eliminate(f) {
                Ok(qf) => qf,
                Err(PresError::ResourceExceeded(_)) => {
                    return Ok(ReachVerdict::Inconclusive(Reason::CapExceeded))
                }
                Err(e) => return Err(StateError::Pres(e)),
            };
            search(net, cap, |m| {
                let env: BTreeMap<String, BigInt> = net
                    .places()
                    .iter()
                    .cloned()
                    .zip(m.0.iter().map(|v| BigInt::from(v.clone())))
                    .collect();
                qf.eval(&env).expect("quantifier-free after elimination")
            })
        }
    }
}

fn search(
    net: &PetriNet,
    cap: usize,
    hit: impl Fn(&Marking) -> bool,
) -> Result<ReachVerdict, StateError> {
    let g = explore(net, cap);
    if g.nodes.iter().any(|m| hit(m)) {
        return Ok(ReachVerdict::Yes);
    }
    if g.complete {
        Ok(ReachVerdict::No)
    } else {
        Ok(ReachVerdict::Inconclusive(Reason::CapExceeded))
    }
}

fn fresh_name(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut i = 1;
    loop {
        let name = format!("{base}{i}");
        if !taken(&name) {
            return name;
        }
        i += 1;
    }
}

/// Two-phase reduction of semilinear-target reachability to plain
/// reachability: phase 1 simulates the net under a run token, a switch
/// consumes the run token while subtracting a chosen component's base, the
/// component's periods may then be subtracted arbitrarily often, and a
/// finish transition produces the done token. The returned target marking
/// (all original places empty, done = 1) is reachable iff some marking in
/// `target` is reachable in the input net.
pub fn hack_reduce(
    net: &PetriNet,
    target: &SemilinearSet,
) -> Result<(PetriNet, Marking), StateError> {
    let n = net.places().len();
    if target.dim != n {
        return Err(StateError::Pres(PresError::DimensionMismatch { got: target.dim, want: n }));
    }
    if target.components.is_empty() {
        return Err(StateError::EmptyTarget);
    }
    let place_taken = |s: &str| net.places().iter().any(|p| p == s);
    let run = fresh_name("h_run", &place_taken);
    let done = fresh_name("h_done", &place_taken);
    let sels: Vec<String> = (0..target.components.len())
        .map(|i| fresh_name(&format!("h_sel{i}"), &place_taken))
        .collect();

    let mut places: Vec<String> = net.places().to_vec();
    places.push(run.clone());
    places.push(done.clone());
    places.extend(sels.iter().cloned());
    let mut init = net.initial().0.clone();
    init.push(BigUint::from(1u8)); // run
    init.resize(places.len(), BigUint::zero());

    let mut out = PetriNet::new(format!("{}_h", net.name), places.clone(), Marking(init))?;

    let trans_taken = |net2: &PetriNet, s: &str| net2.transitions().iter().any(|t| t == s);
    // phase 1: original transitions in self-loop with the run token
    for t in 0..net.transitions().len() {
        let mut ins: Vec<(&str, u64)> = Vec::new();
        let mut outs: Vec<(&str, u64)> = Vec::new();
        for (p, place) in net.places().iter().enumerate() {
            if net.flow_in(t, p) > 0 {
                ins.push((place.as_str(), net.flow_in(t, p)));
            }
            if net.flow_out(t, p) > 0 {
                outs.push((place.as_str(), net.flow_out(t, p)));
            }
        }
        ins.push((run.as_str(), 1));
        outs.push((run.as_str(), 1));
        let name = fresh_name(&format!("h_{}", net.transitions()[t]), &|s| trans_taken(&out, s));
        out.add_transition(name, &ins, &outs)?;
    }

    let big = |v: &BigUint| -> Result<u64, StateError> {
        use num_traits::ToPrimitive;
        v.to_u64().ok_or(StateError::WeightOverflow)
    };

    for (i, c) in target.components.iter().enumerate() {
        // switch: consume run and the base, enter component i
        let mut ins: Vec<(&str, u64)> = vec![(run.as_str(), 1)];
        for (p, place) in net.places().iter().enumerate() {
            if !c.base[p].is_zero() {
                ins.push((place.as_str(), big(&c.base[p])?));
            }
        }
        let name = fresh_name(&format!("h_pick{i}"), &|s| trans_taken(&out, s));
        out.add_transition(name, &ins, &[(sels[i].as_str(), 1)])?;
        // periods: subtract arbitrarily often while selected
        for (j, period) in c.periods.iter().enumerate() {
            let mut ins: Vec<(&str, u64)> = vec![(sels[i].as_str(), 1)];
            for (p, place) in net.places().iter().enumerate() {
                if !period[p].is_zero() {
                    ins.push((place.as_str(), big(&period[p])?));
                }
            }
            let name = fresh_name(&format!("h_per{i}_{j}"), &|s| trans_taken(&out, s));
            out.add_transition(name, &ins, &[(sels[i].as_str(), 1)])?;
        }
        let name = fresh_name(&format!("h_fin{i}"), &|s| trans_taken(&out, s));
        out.add_transition(name, &[(sels[i].as_str(), 1)], &[(done.as_str(), 1)])?;
    }

    let mut tgt = vec![BigUint::zero(); places.len()];
    tgt[n + 1] = BigUint::from(1u8); // done
    Ok((out, Marking(tgt)))
}
