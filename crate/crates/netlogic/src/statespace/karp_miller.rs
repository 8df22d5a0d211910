//! Coverability-tree boundedness test with omega acceleration.

use crate::net::{Marking, PetriNet};
use num_bigint::{BigInt, BigUint};
use std::collections::HashMap;

/// A place value in the coverability tree: finite or pumped to omega.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega {
    Fin(BigUint),
    Omega,
}

impl Omega {
    fn ge(&self, other: &Omega) -> bool {
        match (self, other) {
            (Omega::Omega, _) => true,
            (Omega::Fin(_), Omega::Omega) => false,
            (Omega::Fin(a), Omega::Fin(b)) => a >= b,
        }
    }

    fn add(&self, d: &BigInt) -> Omega {
        match self {
            Omega::Omega => Omega::Omega,
            Omega::Fin(v) => {
                let r = BigInt::from(v.clone()) + d;
                Omega::Fin(r.to_biguint().expect("guard keeps values natural"))
            }
        }
    }
}

/// Marking extended with omega entries; ordering is componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaMarking(pub Vec<Omega>);

impl OmegaMarking {
    fn from_marking(m: &Marking) -> Self {
        OmegaMarking(m.0.iter().cloned().map(Omega::Fin).collect())
    }

    fn covers(&self, other: &OmegaMarking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.ge(b))
    }

    fn has_omega(&self) -> bool {
        self.0.iter().any(|v| matches!(v, Omega::Omega))
    }

    fn enabled(&self, net: &PetriNet, t: usize) -> bool {
        self.0
            .iter()
            .zip(&net.effect(t).guard)
            .all(|(have, need)| have.ge(&Omega::Fin(need.clone())))
    }

    fn fire(&self, net: &PetriNet, t: usize) -> OmegaMarking {
        OmegaMarking(
            self.0.iter().zip(&net.effect(t).delta).map(|(v, d)| v.add(d)).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundedness {
    /// The reachability set is finite and has exactly this many markings.
    Bounded(usize),
    Unbounded,
    /// Tree growth exceeded the node budget before settling.
    Inconclusive,
}

/// Karp–Miller construction: grows the coverability tree, accelerating any
/// branch that strictly covers one of its ancestors; an omega anywhere
/// certifies unboundedness, and a completed omega-free tree enumerates the
/// reachability set exactly.
pub fn is_bounded(net: &PetriNet, node_budget: usize) -> Boundedness {
    struct Node {
        m: OmegaMarking,
        parent: Option<usize>,
    }
    let root = OmegaMarking::from_marking(net.initial());
    let mut nodes = vec![Node { m: root.clone(), parent: None }];
    let mut seen: HashMap<OmegaMarking, usize> = HashMap::new();
    seen.insert(root, 0);
    let mut work = vec![0usize];
    while let Some(i) = work.pop() {
        for t in 0..net.transitions().len() {
            if !nodes[i].m.enabled(net, t) {
                continue;
            }
            let mut next = nodes[i].m.fire(net, t);
            // accelerate against strictly covered ancestors
            let mut anc = Some(i);
            while let Some(a) = anc {
                let am = &nodes[a].m;
                if next.covers(am) && next != *am {
                    for (p, v) in next.0.iter_mut().enumerate() {
                        if !am.0[p].ge(v) {
                            *v = Omega::Omega;
                        }
                    }
                }
                anc = nodes[a].parent;
            }
            if next.has_omega() {
                return Boundedness::Unbounded;
            }
            if seen.contains_key(&next) {
                continue;
            }
            if nodes.len() >= node_budget {
                return Boundedness::Inconclusive;
            }
            let j = nodes.len();
            seen.insert(next.clone(), j);
            nodes.push(Node { m: next, parent: Some(i) });
            work.push(j);
        }
    }
    Boundedness::Bounded(nodes.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;
    use crate::statespace::explore;

    #[test]
    fn plus_one_is_unbounded() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        assert_eq!(is_bounded(&net, 1000), Boundedness::Unbounded);
    }

    #[test]
    fn nonincreasing_net_is_bounded() {
        let net = parse_net(
            "net a\nplace p1 init 3\nplace p2 init 1\ntrans t1\nin p1:1\ntrans t2\nin p1:1 p2:1\nout p1:1",
        )
        .unwrap();
        match is_bounded(&net, 1000) {
            Boundedness::Bounded(n) => {
                assert_eq!(n, explore(&net, 10_000).len());
            }
            other => panic!("expected bounded, got {other:?}"),
        }
    }

    #[test]
    fn pumping_behind_a_guard_detected() {
        // consume p1 to enable a +p2 pump
        let net = parse_net(
            "net a\nplace p1 init 1\nplace p2 init 0\ntrans t1\nin p1:1\nout p1:1 p2:1",
        )
        .unwrap();
        assert_eq!(is_bounded(&net, 1000), Boundedness::Unbounded);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        // bounded but with a big reach set; tiny budget gives up
        let net = parse_net("net a\nplace p init 50\ntrans t\nin p:1").unwrap();
        assert_eq!(is_bounded(&net, 5), Boundedness::Inconclusive);
    }

    #[test]
    fn zero_transition_net() {
        let net = parse_net("net a\nplace p init 7").unwrap();
        assert_eq!(is_bounded(&net, 10), Boundedness::Bounded(1));
    }
}
