//! Symbolic operators tying nets to arithmetic: the one-step edge relation
//! as a formula, pre-images of marking sets, the box (all-successors)
//! operator, and relation composition.

use super::*;
use crate::net::PetriNet;

/// Variable names used by `pre_image`/`box_set`: the places themselves.
pub fn place_vars(net: &PetriNet) -> Vec<String> {
    net.places().to_vec()
}

/// One-step relation `src -> dst` over the full space N^n:
/// a disjunct per transition asserting enabledness at `src` and the firing
/// equation at `dst`.
pub fn edge_formula(net: &PetriNet, src: &[String], dst: &[String]) -> PresFormula {
    let n = net.places().len();
    assert_eq!(src.len(), n, "source variable count");
    assert_eq!(dst.len(), n, "target variable count");
    let mut disjuncts = Vec::new();
    for t in 0..net.transitions().len() {
        let eff = net.effect(t);
        let mut conj = Vec::new();
        for p in 0..n {
            conj.push(geq(
                LinTerm::var(&src[p]),
                LinTerm::constant(BigInt::from(eff.guard[p].clone())),
            ));
        }
        for p in 0..n {
            conj.push(eq(
                LinTerm::var(&dst[p]),
                LinTerm::var(&src[p]).add_const(eff.delta[p].clone()),
            ));
        }
        disjuncts.push(and(conj));
    }
    or(disjuncts)
}

/// The identity relation `src = dst`.
pub fn identity_relation(src: &[String], dst: &[String]) -> PresFormula {
    and(src
        .iter()
        .zip(dst)
        .map(|(s, d)| eq(LinTerm::var(s.clone()), LinTerm::var(d.clone())))
        .collect())
}

fn expect_place_vars(net: &PetriNet, f: &PresFormula) -> Result<(), PresError> {
    let want: BTreeSet<String> = net.places().iter().cloned().collect();
    let got = f.free_vars();
    if got.iter().any(|v| !want.contains(v)) {
        return Err(PresError::FreeVarMismatch {
            got: got.into_iter().collect(),
            want: want.into_iter().collect(),
        });
    }
    Ok(())
}

/// `pre(X) = { m in N^n : some successor of m lies in X }`, with X given as
/// a formula over the net's place names. Quantifier-free whenever the input
/// is: firing is substitution, not quantification.
pub fn pre_image(net: &PetriNet, s_formula: &PresFormula) -> Result<PresFormula, PresError> {
    expect_place_vars(net, s_formula)?;
    let places = net.places();
    let mut disjuncts = Vec::new();
    for t in 0..net.transitions().len() {
        let eff = net.effect(t);
        let mut conj: Vec<PresFormula> = places.iter().map(|p| natural(p)).collect();
        for (p, place) in places.iter().enumerate() {
            if !eff.guard[p].is_zero() {
                conj.push(geq(
                    LinTerm::var(place.clone()),
                    LinTerm::constant(BigInt::from(eff.guard[p].clone())),
                ));
            }
        }
        let mut map = BTreeMap::new();
        for (p, place) in places.iter().enumerate() {
            if !eff.delta[p].is_zero() {
                map.insert(place.clone(), LinTerm::var(place.clone()).add_const(eff.delta[p].clone()));
            }
        }
        conj.push(s_formula.subst_all(&map));
        disjuncts.push(and(conj));
    }
    Ok(or(disjuncts).simplify())
}

/// `box(X) = N^n \ pre(N^n \ X)`: the markings whose successors all lie
/// in X (vacuously including deadlocks).
pub fn box_set(net: &PetriNet, s_formula: &PresFormula) -> Result<PresFormula, PresError> {
    let outside = not(s_formula.clone());
    Ok(not(pre_image(net, &outside)?).simplify())
}

/// Composition of two relations over the same `(src, dst)` variable split:
/// `exists mid (r1(src,mid) and r2(mid,dst))`, eliminated to
/// quantifier-free form.
pub fn compose_relations(
    r1: &PresFormula,
    r2: &PresFormula,
    src: &[String],
    dst: &[String],
) -> Result<PresFormula, PresError> {
    if src.len() != dst.len() {
        return Err(PresError::DimensionMismatch { got: dst.len(), want: src.len() });
    }
    let mid: Vec<String> = src.iter().map(|v| format!("{v}~mid")).collect();
    let mut to_mid_from_dst = BTreeMap::new();
    let mut to_mid_from_src = BTreeMap::new();
    for i in 0..src.len() {
        to_mid_from_dst.insert(dst[i].clone(), LinTerm::var(&mid[i]));
        to_mid_from_src.insert(src[i].clone(), LinTerm::var(&mid[i]));
    }
    let mut f = and(vec![r1.subst_all(&to_mid_from_dst), r2.subst_all(&to_mid_from_src)]);
    for (i, m) in mid.into_iter().enumerate().rev() {
        let _ = i;
        f = exists_nat(m, f);
    }
    eliminate(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{parse_net, Marking};

    fn eval_at(f: &PresFormula, vars: &[(&str, u64)]) -> bool {
        let env: BTreeMap<String, BigInt> =
            vars.iter().map(|&(v, k)| (v.to_string(), BigInt::from(k))).collect();
        f.eval(&env).expect("quantifier-free")
    }

    #[test]
    fn edge_formula_single_transition() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1\nout p:2").unwrap();
        let f = edge_formula(&net, &["x".to_string()], &["y".to_string()]);
        assert!(eval_at(&f, &[("x", 1), ("y", 2)]));
        assert!(!eval_at(&f, &[("x", 0), ("y", 1)]));
        assert!(!eval_at(&f, &[("x", 1), ("y", 3)]));
    }

    #[test]
    fn edge_formula_no_transitions() {
        let net = parse_net("net a\nplace p init 0").unwrap();
        let f = edge_formula(&net, &["x".to_string()], &["y".to_string()]);
        assert_eq!(f, fls());
    }

    #[test]
    fn pre_image_of_empty_place() {
        // transition consumes one token from p; pre({p=0}) includes {p=1}
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1").unwrap();
        let x = eq(LinTerm::var("p"), LinTerm::constant(0));
        let pre = pre_image(&net, &x).unwrap();
        for v in 0u64..=5 {
            assert_eq!(eval_at(&pre, &[("p", v)]), v == 1, "at p={v}");
        }
    }

    #[test]
    fn pre_of_false_is_false() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1").unwrap();
        let pre = pre_image(&net, &fls()).unwrap();
        assert_eq!(pre, fls());
    }

    #[test]
    fn pre_of_true_is_nondeadlock() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:2").unwrap();
        let pre = pre_image(&net, &tru()).unwrap();
        for v in 0u64..=5 {
            let m = Marking::from_u64s(&[v]);
            assert_eq!(eval_at(&pre, &[("p", v)]), !net.is_deadlock(&m), "at p={v}");
        }
    }

    #[test]
    fn box_of_false_is_deadlocks() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:2").unwrap();
        let b = box_set(&net, &fls()).unwrap();
        for v in 0u64..=5 {
            let m = Marking::from_u64s(&[v]);
            assert_eq!(eval_at(&b, &[("p", v)]), net.is_deadlock(&m), "at p={v}");
        }
        assert_eq!(box_set(&net, &tru()).unwrap(), tru());
    }

    #[test]
    fn compose_identity_is_identity() {
        let src = vec!["x".to_string()];
        let dst = vec!["y".to_string()];
        let id = identity_relation(&src, &dst);
        let c = compose_relations(&id, &id, &src, &dst).unwrap();
        for x in 0u64..=4 {
            for y in 0u64..=4 {
                assert_eq!(eval_at(&c, &[("x", x), ("y", y)]), x == y);
            }
        }
    }

    #[test]
    fn compose_edge_edge_plus_one_net() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let src = vec!["x".to_string()];
        let dst = vec!["y".to_string()];
        let e = edge_formula(&net, &src, &dst);
        let c = compose_relations(&e, &e, &src, &dst).unwrap();
        for x in 0u64..=10 {
            for y in 0u64..=10 {
                assert_eq!(eval_at(&c, &[("x", x), ("y", y)]), y == x + 2, "({x},{y})");
            }
        }
    }
}
