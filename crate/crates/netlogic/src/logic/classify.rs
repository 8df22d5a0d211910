//! Syntactic fragment classification of first-order sentences.

use super::fo::{FoFormula, Pred};
use std::collections::BTreeSet;

/// Which syntactic fragments a sentence falls into. The three flags are
/// independent of each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentReport {
    /// Distinct bound variable names, as written after parsing.
    pub variable_count: usize,
    pub predicates_used: BTreeSet<Pred>,
    /// No universal quantifier survives prenexing (implication rewritten
    /// as negation-disjunction first).
    pub is_existential: bool,
    /// Every atom sits under an even number of negations, after the same
    /// implication rewrite.
    pub is_positive: bool,
    /// In every edge-like atom (->, ->*, ->+) the source variable is bound
    /// strictly before the target on that branch, or the two coincide
    /// (self-edges are degenerate sequences); = and init are exempt.
    pub is_forward: bool,
    /// Present only for modal formulas surfaced through the same report.
    pub modal_degree: Option<usize>,
}

pub fn classify(f: &FoFormula) -> FragmentReport {
    FragmentReport {
        variable_count: f.bound_vars().len(),
        predicates_used: f.predicates_used(),
        is_existential: is_existential(f),
        is_positive: is_positive(f),
        is_forward: is_forward(f),
        modal_degree: None,
    }
}

fn is_existential(f: &FoFormula) -> bool {
    no_forall(&f.nnf())
}

fn no_forall(f: &FoFormula) -> bool {
    use FoFormula::*;
    match f {
        Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => true,
        Not(g) => no_forall(g),
        And(a, b) | Or(a, b) | Implies(a, b) => no_forall(a) && no_forall(b),
        Exists(_, g) => no_forall(g),
        Forall(_, _) => false,
    }
}

fn is_positive(f: &FoFormula) -> bool {
    fn even(f: &FoFormula, pos: bool) -> bool {
        use FoFormula::*;
        match f {
            Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => pos,
            Not(g) => even(g, !pos),
            And(a, b) | Or(a, b) => even(a, pos) && even(b, pos),
            Implies(_, _) => unreachable!("implies removed"),
            Forall(_, g) | Exists(_, g) => even(g, pos),
        }
    }
    even(&f.without_implies(), true)
}

fn is_forward(f: &FoFormula) -> bool {
    fn go(f: &FoFormula, order: &mut Vec<String>) -> bool {
        use FoFormula::*;
        let before = |u: &String, v: &String, order: &Vec<String>| -> bool {
            match (order.iter().position(|x| x == u), order.iter().position(|x| x == v)) {
                (Some(i), Some(j)) => i < j,
                _ => false,
            }
        };
        match f {
            Edge(u, v) | Star(u, v) | Plus(u, v) => u == v || before(u, v, order),
            Eq(_, _) | Init(_) => true,
            Not(g) => go(g, order),
            And(a, b) | Or(a, b) | Implies(a, b) => go(a, order) && go(b, order),
            Forall(v, g) | Exists(v, g) => {
                order.push(v.clone());
                let r = go(g, order);
                order.pop();
                r
            }
        }
    }
    go(f, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_fo;

    #[test]
    fn existential_with_negation() {
        let f = parse_fo("exists x . !(x -> x)").unwrap();
        let r = classify(&f);
        assert!(r.is_existential);
        assert!(!r.is_positive);
        assert_eq!(r.variable_count, 1);
        assert_eq!(r.predicates_used.into_iter().collect::<Vec<_>>(), vec![Pred::Edge]);
    }

    #[test]
    fn universal_is_not_existential() {
        let f = parse_fo("forall x . exists y . x -> y").unwrap();
        assert!(!classify(&f).is_existential);
        // negated universal prenexes to existential
        let g = parse_fo("!(forall x . x -> x)").unwrap();
        assert!(classify(&g).is_existential);
    }

    #[test]
    fn implies_hides_a_negation() {
        // a => b is !a | b: the antecedent atom is negative
        let f = parse_fo("forall x . x -> x => x ->* x").unwrap();
        assert!(!classify(&f).is_positive);
        let g = parse_fo("forall x . exists y . x -> y & x ->* y").unwrap();
        assert!(classify(&g).is_positive);
        // double negation is even
        let h = parse_fo("exists x . !!(x -> x)").unwrap();
        assert!(classify(&h).is_positive);
    }

    #[test]
    fn forwardness_per_branch() {
        let f = parse_fo("forall x . exists y . x -> y").unwrap();
        assert!(classify(&f).is_forward);
        let g = parse_fo("forall x . exists y . y -> x").unwrap();
        assert!(!classify(&g).is_forward);
        // self-edges are degenerate and count as forward
        let h = parse_fo("exists x . x -> x").unwrap();
        assert!(classify(&h).is_forward);
        // = atoms are unconstrained
        let i = parse_fo("forall x . exists y . x = y & y = x").unwrap();
        assert!(classify(&i).is_forward);
        // two branches may bind in different orders independently
        let j =
            parse_fo("(forall x . exists y . x -> y) & (forall y . exists x . y -> x)").unwrap();
        assert!(classify(&j).is_forward);
    }

    #[test]
    fn stable_under_renaming() {
        let f = parse_fo("forall x . exists y . x -> y & !(x = y)").unwrap();
        let g = parse_fo("forall a . exists b . a -> b & !(a = b)").unwrap();
        let (mut rf, mut rg) = (classify(&f), classify(&g));
        rf.variable_count = 0;
        rg.variable_count = 0; // names differ, counts match anyway
        assert_eq!(classify(&f).variable_count, classify(&g).variable_count);
        assert_eq!(rf, rg);
    }
}
