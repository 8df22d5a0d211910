//! Backward coverability: can some marking componentwise above the target
//! be reached? Decided by a fixpoint over minimal bases of upward-closed
//! sets; terminates on every net by the well-quasi-ordering of N^n.

use super::ReachVerdict;
use crate::net::{Marking, PetriNet};
use num_bigint::BigInt;
use num_traits::Zero;

/// Definitive yes/no — this operation never returns `Inconclusive`.
pub fn coverable(net: &PetriNet, target: &Marking) -> ReachVerdict {
    assert_eq!(target.len(), net.places().len(), "target indexed by places");
    let mut basis: Vec<Marking> = vec![target.clone()];
    loop {
        let mut grew = false;
        let mut candidates = Vec::new();
        for m in &basis {
            for t in 0..net.transitions().len() {
                candidates.push(pre_basis(net, m, t));
            }
        }
        for c in candidates {
            if basis.iter().any(|b| c.covers(b)) {
                continue; // already inside the upward-closed set
            }
            basis.retain(|b| !b.covers(&c));
            basis.push(c);
            grew = true;
        }
        if !grew {
            break;
        }
    }
    if basis.iter().any(|b| net.initial().covers(b)) {
        ReachVerdict::Yes
    } else {
        ReachVerdict::No
    }
}

/// Minimal marking from which firing `t` lands componentwise above `m`:
/// per place, need both the guard and enough tokens to exceed `m` after the
/// effect.
fn pre_basis(net: &PetriNet, m: &Marking, t: usize) -> Marking {
    let eff = net.effect(t);
    Marking(
        (0..m.len())
            .map(|p| {
                let need = BigInt::from(m.0[p].clone()) - &eff.delta[p];
                let guard = BigInt::from(eff.guard[p].clone());
                let v = if need > guard { need } else { guard };
                if v < BigInt::zero() {
                    BigInt::zero().to_biguint().unwrap()
                } else {
                    v.to_biguint().unwrap()
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;
    use crate::statespace::explore;

    #[test]
    fn initial_is_coverable() {
        let net = parse_net("net a\nplace p init 2\ntrans t\nin p:1").unwrap();
        assert_eq!(coverable(&net, net.initial()), ReachVerdict::Yes);
    }

    #[test]
    fn unbounded_pump_covers_everything() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        assert_eq!(coverable(&net, &Marking::from_u64s(&[1000])), ReachVerdict::Yes);
    }

    #[test]
    fn above_maximum_is_uncoverable() {
        let net = parse_net("net a\nplace p init 3\ntrans t\nin p:1").unwrap();
        assert_eq!(coverable(&net, &Marking::from_u64s(&[4])), ReachVerdict::No);
        assert_eq!(coverable(&net, &Marking::from_u64s(&[3])), ReachVerdict::Yes);
    }

    #[test]
    fn agrees_with_explicit_on_bounded_nets() {
        let net = parse_net(
            "net a\nplace p1 init 2\nplace p2 init 0\ntrans t\nin p1:1\nout p2:2",
        )
        .unwrap();
        let g = explore(&net, 1000);
        assert!(g.complete);
        for a in 0u64..=5 {
            for b in 0u64..=5 {
                let target = Marking::from_u64s(&[a, b]);
                let explicit = g.nodes.iter().any(|m| m.covers(&target));
                let verdict = coverable(&net, &target);
                assert_eq!(
                    verdict == ReachVerdict::Yes,
                    explicit,
                    "target ({a},{b})"
                );
            }
        }
    }
}
