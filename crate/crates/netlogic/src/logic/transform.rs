//! Syntactic transforms: quantifier relativization and the modal-to-FO
//! standard translation.

use super::fo::*;
use super::ml::MlFormula;
use super::LogicError;

/// How relativization guards a quantified variable against the anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelGuard {
    /// `anchor ->* v`
    Star,
    /// `anchor -> v`
    EdgeFrom,
}

impl RelGuard {
    fn atom(self, anchor: &str, v: &str) -> FoFormula {
        match self {
            RelGuard::Star => FoFormula::Star(anchor.to_string(), v.to_string()),
            RelGuard::EdgeFrom => FoFormula::Edge(anchor.to_string(), v.to_string()),
        }
    }
}

/// Restricts every quantifier to values guarded against `anchor`:
/// `forall v . f` becomes `forall v . guard(anchor, v) => f` and
/// `exists v . f` becomes `exists v . guard(anchor, v) & f`.
pub fn relativize(f: &FoFormula, anchor: &str, guard: RelGuard) -> Result<FoFormula, LogicError> {
    if f.bound_vars().contains(anchor) {
        return Err(LogicError::VariableCapture(anchor.to_string()));
    }
    Ok(rel(f, anchor, guard))
}

fn rel(f: &FoFormula, anchor: &str, guard: RelGuard) -> FoFormula {
    use FoFormula::*;
    match f {
        Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => f.clone(),
        Not(g) => fo_not(rel(g, anchor, guard)),
        And(a, b) => fo_and(rel(a, anchor, guard), rel(b, anchor, guard)),
        Or(a, b) => fo_or(rel(a, anchor, guard), rel(b, anchor, guard)),
        Implies(a, b) => fo_implies(rel(a, anchor, guard), rel(b, anchor, guard)),
        Forall(v, g) => {
            fo_forall(v.clone(), fo_implies(guard.atom(anchor, v), rel(g, anchor, guard)))
        }
        Exists(v, g) => {
            fo_exists(v.clone(), fo_and(guard.atom(anchor, v), rel(g, anchor, guard)))
        }
    }
}

/// Standard translation into first-order logic over `->`, recycling the two
/// variables `cur` and `other`; the result has `cur` free, to be bound to
/// the evaluation node. Truth constants become (in)equations on `cur`.
pub fn modal_to_fo(f: &MlFormula, cur: &str, other: &str) -> Result<FoFormula, LogicError> {
    if f.has_paml() {
        return Err(LogicError::PamlPresent);
    }
    Ok(st(f, cur, other))
}

fn st(f: &MlFormula, cur: &str, other: &str) -> FoFormula {
    use MlFormula::*;
    let eq_self = || FoFormula::Eq(cur.to_string(), cur.to_string());
    match f {
        Top => eq_self(),
        Bot => fo_not(eq_self()),
        Paml(_) => unreachable!("checked by modal_to_fo"),
        Not(g) => fo_not(st(g, cur, other)),
        And(a, b) => fo_and(st(a, cur, other), st(b, cur, other)),
        Or(a, b) => fo_or(st(a, cur, other), st(b, cur, other)),
        Implies(a, b) => fo_implies(st(a, cur, other), st(b, cur, other)),
        Box_(g) => fo_forall(
            other,
            fo_implies(
                FoFormula::Edge(cur.to_string(), other.to_string()),
                st(g, other, cur),
            ),
        ),
        Dia(g) => fo_exists(
            other,
            fo_and(FoFormula::Edge(cur.to_string(), other.to_string()), st(g, other, cur)),
        ),
        BoxInv(g) => fo_forall(
            other,
            fo_implies(
                FoFormula::Edge(other.to_string(), cur.to_string()),
                st(g, other, cur),
            ),
        ),
        DiaInv(g) => fo_exists(
            other,
            fo_and(FoFormula::Edge(other.to_string(), cur.to_string()), st(g, other, cur)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_fo, parse_ml};

    #[test]
    fn relativize_deadlock_freeness() {
        let f = parse_fo("forall x . exists y . x -> y").unwrap();
        let g = relativize(&f, "x0", RelGuard::Star).unwrap();
        let want =
            parse_fo("forall x . x0 ->* x => exists y . x0 ->* y & x -> y").unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn relativize_rejects_capture() {
        let f = parse_fo("forall x . x -> x").unwrap();
        match relativize(&f, "x", RelGuard::Star) {
            Err(LogicError::VariableCapture(v)) => assert_eq!(v, "x"),
            other => panic!("expected capture error, got {other:?}"),
        }
    }

    #[test]
    fn box_bot_translation() {
        let f = parse_ml("box bot").unwrap();
        let g = modal_to_fo(&f, "x", "y").unwrap();
        let want = parse_fo("forall y . x -> y => !(y = y)").unwrap();
        assert!(g.alpha_eq(&want));
    }

    #[test]
    fn diainv_translation() {
        let f = parse_ml("diainv top").unwrap();
        let g = modal_to_fo(&f, "x", "y").unwrap();
        let want = parse_fo("exists y . y -> x & y = y").unwrap();
        assert!(g.alpha_eq(&want));
    }

    #[test]
    fn variables_are_recycled() {
        let f = parse_ml("box dia box top").unwrap();
        let g = modal_to_fo(&f, "x", "y").unwrap();
        let mut vars = g.bound_vars();
        vars.extend(g.free_vars());
        assert_eq!(vars.len(), 2, "two-variable property: {g}");
    }

    #[test]
    fn paml_atom_rejected() {
        let f = parse_ml("{p1 >= 1}").unwrap();
        assert!(matches!(modal_to_fo(&f, "x", "y"), Err(LogicError::PamlPresent)));
    }
}
