//! Petri net data model and firing semantics.
//!
//! A net is a bipartite structure of places and transitions with weighted
//! flow in both directions. Markings assign a natural token count to each
//! place, in the net's place declaration order. Token counts are
//! arbitrary-precision; flow weights fit in a machine word.

mod parse;

pub use parse::parse_net;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate identifier `{0}`")]
    DuplicateIdent(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("net has no places")]
    NoPlaces,
    #[error("marking has {got} entries but the net has {want} places")]
    MarkingLength { got: usize, want: usize },
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
    #[error("identifier `{0}` is used both as a place and a transition")]
    PlaceTransitionClash(String),
}

/// Token count vector, one entry per place in declaration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(pub Vec<BigUint>);

impl Marking {
    pub fn zero(n: usize) -> Self {
        Marking(vec![BigUint::zero(); n])
    }

    pub fn from_u64s(v: &[u64]) -> Self {
        Marking(v.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self >= other`.
    pub fn covers(&self, other: &Marking) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn as_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|x| x.to_u64()).collect()
    }
}

impl fmt::Debug for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Per-transition guard (required tokens) and net effect on each place.
///
/// Invariant: `guard[p] + delta[p] >= 0` for every place, so firing from any
/// marking that satisfies the guard yields a natural marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionEffect {
    pub guard: Vec<BigUint>,
    pub delta: Vec<BigInt>,
}

impl TransitionEffect {
    pub fn is_neutral(&self) -> bool {
        self.delta.iter().all(|d| d.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetriNet {
    pub name: String,
    places: Vec<String>,
    transitions: Vec<String>,
    place_index: HashMap<String, usize>,
    transition_index: HashMap<String, usize>,
    /// `flow_in[t][p]` = F(p, t), tokens consumed from p by t.
    flow_in: Vec<Vec<u64>>,
    /// `flow_out[t][p]` = F(t, p), tokens produced on p by t.
    flow_out: Vec<Vec<u64>>,
    effects: Vec<TransitionEffect>,
    initial: Marking,
}

impl PetriNet {
    pub fn new(
        name: impl Into<String>,
        places: Vec<String>,
        initial: Marking,
    ) -> Result<Self, NetError> {
        if places.is_empty() {
            return Err(NetError::NoPlaces);
        }
        if initial.len() != places.len() {
            return Err(NetError::MarkingLength { got: initial.len(), want: places.len() });
        }
        let mut place_index = HashMap::new();
        for (i, p) in places.iter().enumerate() {
            if place_index.insert(p.clone(), i).is_some() {
                return Err(NetError::DuplicateIdent(p.clone()));
            }
        }
        Ok(PetriNet {
            name: name.into(),
            places,
            transitions: Vec::new(),
            place_index,
            transition_index: HashMap::new(),
            flow_in: Vec::new(),
            flow_out: Vec::new(),
            effects: Vec::new(),
            initial,
        })
    }

    /// Adds a transition with flows given as `(place, weight)` pairs.
    pub fn add_transition(
        &mut self,
        name: impl Into<String>,
        ins: &[(&str, u64)],
        outs: &[(&str, u64)],
    ) -> Result<(), NetError> {
        let name = name.into();
        if self.transition_index.contains_key(&name) {
            return Err(NetError::DuplicateIdent(name));
        }
        if self.place_index.contains_key(&name) {
            return Err(NetError::PlaceTransitionClash(name));
        }
        let n = self.places.len();
        let mut fin = vec![0u64; n];
        let mut fout = vec![0u64; n];
        for &(p, w) in ins {
            let i = self.place_id(p)?;
            fin[i] = fin[i].saturating_add(w);
        }
        for &(p, w) in outs {
            let i = self.place_id(p)?;
            fout[i] = fout[i].saturating_add(w);
        }
        self.transition_index.insert(name.clone(), self.transitions.len());
        self.transitions.push(name);
        self.effects.push(TransitionEffect {
            guard: fin.iter().map(|&w| BigUint::from(w)).collect(),
            delta: fin
                .iter()
                .zip(&fout)
                .map(|(&i, &o)| BigInt::from(o) - BigInt::from(i))
                .collect(),
        });
        self.flow_in.push(fin);
        self.flow_out.push(fout);
        Ok(())
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[String] {
        &self.transitions
    }

    pub fn initial(&self) -> &Marking {
        &self.initial
    }

    pub fn set_initial(&mut self, m: Marking) -> Result<(), NetError> {
        if m.len() != self.places.len() {
            return Err(NetError::MarkingLength { got: m.len(), want: self.places.len() });
        }
        self.initial = m;
        Ok(())
    }

    pub fn place_id(&self, name: &str) -> Result<usize, NetError> {
        self.place_index.get(name).copied().ok_or_else(|| NetError::UnknownPlace(name.into()))
    }

    pub fn transition_id(&self, name: &str) -> Result<usize, NetError> {
        self.transition_index
            .get(name)
            .copied()
            .ok_or_else(|| NetError::UnknownTransition(name.into()))
    }

    /// F(p, t)
    pub fn flow_in(&self, t: usize, p: usize) -> u64 {
        self.flow_in[t][p]
    }

    /// F(t, p)
    pub fn flow_out(&self, t: usize, p: usize) -> u64 {
        self.flow_out[t][p]
    }

    pub fn effect(&self, t: usize) -> &TransitionEffect {
        &self.effects[t]
    }

    pub fn enabled(&self, m: &Marking, t: usize) -> bool {
        m.0.iter().zip(&self.effects[t].guard).all(|(have, need)| have >= need)
    }

    pub fn enabled_by_name(&self, m: &Marking, t: &str) -> Result<bool, NetError> {
        Ok(self.enabled(m, self.transition_id(t)?))
    }

    /// Fires `t` at `m`; errors if `t` is not enabled.
    pub fn fire(&self, m: &Marking, t: usize) -> Result<Marking, NetError> {
        if !self.enabled(m, t) {
            return Err(NetError::NotEnabled(self.transitions[t].clone()));
        }
        Ok(self.fire_unchecked(m, t))
    }

    fn fire_unchecked(&self, m: &Marking, t: usize) -> Marking {
        let eff = &self.effects[t];
        Marking(
            m.0.iter()
                .zip(&eff.delta)
                .map(|(v, d)| {
                    let r = BigInt::from(v.clone()) + d;
                    r.to_biguint().expect("guard guarantees a natural result")
                })
                .collect(),
        )
    }

    pub fn fire_by_name(&self, m: &Marking, t: &str) -> Result<Marking, NetError> {
        self.fire(m, self.transition_id(t)?)
    }

    /// One-step successor markings, deduplicated (unlabelled edge semantics).
    pub fn successors(&self, m: &Marking) -> Vec<Marking> {
        let mut seen = Vec::new();
        for t in 0..self.transitions.len() {
            if self.enabled(m, t) {
                let next = self.fire_unchecked(m, t);
                if !seen.contains(&next) {
                    seen.push(next);
                }
            }
        }
        seen
    }

    /// Successors paired with one witnessing transition each (first in
    /// declaration order).
    pub fn successors_with_witness(&self, m: &Marking) -> Vec<(Marking, usize)> {
        let mut seen: Vec<(Marking, usize)> = Vec::new();
        for t in 0..self.transitions.len() {
            if self.enabled(m, t) {
                let next = self.fire_unchecked(m, t);
                if !seen.iter().any(|(x, _)| *x == next) {
                    seen.push((next, t));
                }
            }
        }
        seen
    }

    /// One-step predecessors of `m` in the transition graph over all of N^n:
    /// markings `m'` with `m' -> m` by some transition. Finitely many, one
    /// candidate per transition.
    pub fn ug_predecessors(&self, m: &Marking) -> Vec<Marking> {
        let mut seen = Vec::new();
        for t in 0..self.transitions.len() {
            // m' = m - delta must satisfy the guard; equivalently
            // m(p) >= F(t,p) for all p.
            let eff = &self.effects[t];
            let mut pred = Vec::with_capacity(m.len());
            let mut ok = true;
            for (p, v) in m.0.iter().enumerate() {
                let back = BigInt::from(v.clone()) - &eff.delta[p];
                match back.to_biguint() {
                    Some(b) => pred.push(b),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let pred = Marking(pred);
            if self.enabled(&pred, t) && !seen.contains(&pred) {
                seen.push(pred);
            }
        }
        seen
    }

    pub fn is_deadlock(&self, m: &Marking) -> bool {
        (0..self.transitions.len()).all(|t| !self.enabled(m, t))
    }

    /// Transitions with null effect on every place.
    pub fn neutral_transitions(&self) -> Vec<usize> {
        (0..self.transitions.len()).filter(|&t| self.effects[t].is_neutral()).collect()
    }

    /// Pairs (p, t) with F(p,t) = F(t,p) > 0.
    pub fn self_loop_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.transitions.len() {
            for p in 0..self.places.len() {
                if self.flow_in[t][p] > 0 && self.flow_in[t][p] == self.flow_out[t][p] {
                    out.push((p, t));
                }
            }
        }
        out
    }

    /// Returns a copy without the neutral transitions.
    pub fn without_neutral_transitions(&self) -> PetriNet {
        let mut net = PetriNet::new(self.name.clone(), self.places.clone(), self.initial.clone())
            .expect("copy of a valid net");
        for t in 0..self.transitions.len() {
            if self.effects[t].is_neutral() {
                continue;
            }
            let ins: Vec<(&str, u64)> = self
                .places
                .iter()
                .enumerate()
                .filter(|&(p, _)| self.flow_in[t][p] > 0)
                .map(|(p, name)| (name.as_str(), self.flow_in[t][p]))
                .collect();
            let outs: Vec<(&str, u64)> = self
                .places
                .iter()
                .enumerate()
                .filter(|&(p, _)| self.flow_out[t][p] > 0)
                .map(|(p, name)| (name.as_str(), self.flow_out[t][p]))
                .collect();
            net.add_transition(self.transitions[t].clone(), &ins, &outs)
                .expect("copied transition is valid");
        }
        net
    }

    /// Deterministic textual form; `parse_net` on the output reproduces the
    /// structural content.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("net {}\n", self.name));
        for (i, p) in self.places.iter().enumerate() {
            s.push_str(&format!("place {} init {}\n", p, self.initial.0[i]));
        }
        for t in 0..self.transitions.len() {
            s.push_str(&format!("trans {}\n", self.transitions[t]));
            let ins: Vec<String> = self
                .places
                .iter()
                .enumerate()
                .filter(|&(p, _)| self.flow_in[t][p] > 0)
                .map(|(p, name)| format!("{}:{}", name, self.flow_in[t][p]))
                .collect();
            if !ins.is_empty() {
                s.push_str(&format!("in {}\n", ins.join(" ")));
            }
            let outs: Vec<String> = self
                .places
                .iter()
                .enumerate()
                .filter(|&(p, _)| self.flow_out[t][p] > 0)
                .map(|(p, name)| format!("{}:{}", name, self.flow_out[t][p]))
                .collect();
            if !outs.is_empty() {
                s.push_str(&format!("out {}\n", outs.join(" ")));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_place_net() -> PetriNet {
        let mut net =
            PetriNet::new("a", vec!["p".into()], Marking::from_u64s(&[1])).unwrap();
        net.add_transition("t", &[("p", 1)], &[("p", 2)]).unwrap();
        net
    }

    #[test]
    fn enabled_blocked_by_empty_place() {
        let net = one_place_net();
        assert!(!net.enabled(&Marking::from_u64s(&[0]), 0));
        assert!(net.enabled(&Marking::from_u64s(&[1]), 0));
    }

    #[test]
    fn unguarded_transition_always_enabled() {
        let mut net = PetriNet::new("a", vec!["p".into()], Marking::zero(1)).unwrap();
        net.add_transition("t", &[], &[("p", 1)]).unwrap();
        assert!(net.enabled(&Marking::zero(1), 0));
    }

    #[test]
    fn enabled_one_component_short() {
        let mut net =
            PetriNet::new("a", vec!["p1".into(), "p2".into()], Marking::zero(2)).unwrap();
        net.add_transition("t", &[("p1", 2), ("p2", 2)], &[]).unwrap();
        assert!(!net.enabled(&Marking::from_u64s(&[2, 1]), 0));
    }

    #[test]
    fn fire_single_add() {
        let net = one_place_net();
        let m = net.fire(&Marking::from_u64s(&[1]), 0).unwrap();
        assert_eq!(m, Marking::from_u64s(&[2]));
    }

    #[test]
    fn fire_move_token() {
        let mut net =
            PetriNet::new("a", vec!["p1".into(), "p2".into()], Marking::from_u64s(&[3, 0]))
                .unwrap();
        net.add_transition("t", &[("p1", 1)], &[("p2", 1)]).unwrap();
        let m = net.fire(&Marking::from_u64s(&[3, 0]), 0).unwrap();
        assert_eq!(m, Marking::from_u64s(&[2, 1]));
    }

    #[test]
    fn fire_disabled_errors() {
        let net = one_place_net();
        assert!(net.fire(&Marking::from_u64s(&[0]), 0).is_err());
    }

    #[test]
    fn successors_deduplicate_identical_effects() {
        let mut net =
            PetriNet::new("a", vec!["p".into()], Marking::from_u64s(&[1])).unwrap();
        net.add_transition("t1", &[], &[("p", 1)]).unwrap();
        net.add_transition("t2", &[], &[("p", 1)]).unwrap();
        assert_eq!(net.successors(&Marking::from_u64s(&[0])).len(), 1);
    }

    #[test]
    fn deadlock_has_no_successors() {
        let net = one_place_net();
        assert!(net.successors(&Marking::from_u64s(&[0])).is_empty());
        assert!(net.is_deadlock(&Marking::from_u64s(&[0])));
    }

    #[test]
    fn neutral_and_self_loops() {
        let mut net =
            PetriNet::new("a", vec!["p".into()], Marking::from_u64s(&[2])).unwrap();
        net.add_transition("loop", &[("p", 2)], &[("p", 2)]).unwrap();
        net.add_transition("grow", &[], &[("p", 1)]).unwrap();
        assert_eq!(net.neutral_transitions(), vec![0]);
        assert_eq!(net.self_loop_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn ug_predecessors_invert_successors() {
        let mut net =
            PetriNet::new("a", vec!["p1".into(), "p2".into()], Marking::from_u64s(&[2, 0]))
                .unwrap();
        net.add_transition("t", &[("p1", 1)], &[("p2", 1)]).unwrap();
        let m = Marking::from_u64s(&[1, 1]);
        let preds = net.ug_predecessors(&m);
        assert_eq!(preds, vec![Marking::from_u64s(&[2, 0])]);
        for p in preds {
            assert!(net.successors(&p).contains(&m));
        }
    }
}
