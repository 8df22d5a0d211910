//! The fixed formulas paired with the net constructions. Each is a closed
//! constant (or a one-free-variable template) built deterministically, so
//! callers can rely on byte-stable ASTs.

use crate::logic::{
    fo_and, fo_exists, fo_not, parse_fo, parse_fo_sentence, parse_ml, FoFormula, MlFormula,
};

/// The catalogue of fixed formulas, one per construction family.
#[derive(Clone, Debug)]
pub struct FixedFormulas {
    /// Reach-set equality on the two-branch union net: every deadlock has a
    /// predecessor that can still reach a self-loop and one that cannot.
    pub reach_equality: FoFormula,
    /// The same property written with only two variable names, reusing each
    /// binder; alpha-equivalent to `reach_equality`.
    pub reach_equality_two_vars: FoFormula,
    /// The equality formula over the undirected step relation, with edge
    /// direction recovered from 3-cycles; step atoms are expanded to
    /// `a -> b | b -> a`.
    pub reach_equality_undirected: FoFormula,
    /// Modal form of the equality check, valid at every reachable marking
    /// of the union net exactly when the reach sets agree.
    pub reach_equality_ml: MlFormula,
    /// Positive formula (no negations): holds on the union net iff the
    /// second branch's reach set is contained in the first's.
    pub reach_containment_positive: FoFormula,
    /// Forward formula (edges only from earlier-bound to later-bound
    /// variables): holds iff the reach sets agree.
    pub reach_equality_forward: FoFormula,
    /// One-sided variant of `reach_equality`: holds on the union net iff
    /// branch 1's reach set is contained in branch 2's.
    pub reach_containment: FoFormula,
    /// Equality over the strict-closure relation `->+` on the union net.
    pub reach_equality_plus: FoFormula,
    /// Equality over `->*` alone, for the union net without the loop
    /// branch.
    pub reach_equality_star: FoFormula,
    /// As `reach_equality_star`, with non-reachability required in both
    /// directions between the two witnesses; used by the piled-up gadget.
    pub reach_equality_star_distinct: FoFormula,
    /// Template with free variable `x`: on the doubly-rooted gadget's full
    /// grid, true exactly at the root marking (1, 0, ..., 0).
    pub root_marker: FoFormula,
    /// Template with free variable `x`: true exactly at the root's looping
    /// successor, the embedded net's initial marking.
    pub post_root_marker: FoFormula,
}

/// Builds the catalogue. All components are parsed from fixed text, except
/// the two-variable form, which is assembled directly so binder reuse
/// survives (the parser renames shadowed binders).
pub fn fixed_formulas() -> FixedFormulas {
    FixedFormulas {
        reach_equality: parse_fo_sentence(REACH_EQUALITY).expect("fixed formula"),
        reach_equality_two_vars: reach_equality_two_vars(),
        reach_equality_undirected: parse_fo_sentence(&undirected_equality())
            .expect("fixed formula"),
        reach_equality_ml: parse_ml("box bot => (diainv dia dia top & diainv box box bot)")
            .expect("fixed formula"),
        reach_containment_positive: parse_fo_sentence(POSITIVE).expect("fixed formula"),
        reach_equality_forward: parse_fo_sentence(FORWARD).expect("fixed formula"),
        reach_containment: parse_fo_sentence(CONTAINMENT).expect("fixed formula"),
        reach_equality_plus: parse_fo_sentence(&plus_equality()).expect("fixed formula"),
        reach_equality_star: parse_fo_sentence(&star_equality(false)).expect("fixed formula"),
        reach_equality_star_distinct: parse_fo_sentence(&star_equality(true))
            .expect("fixed formula"),
        root_marker: anchor_unique_at("x"),
        post_root_marker: anchor_step_at("x"),
    }
}

const REACH_EQUALITY: &str = "forall z . (!(exists w . z -> w)) => \
    ((exists z1 . (z1 -> z) & (exists y . (z1 -> y) & (y -> y))) & \
     (exists z2 . (z2 -> z) & !(exists y . (z2 -> y) & (y -> y))))";

const POSITIVE: &str = "forall z . exists z1 . exists yl . exists w . \
    (z -> w) | ((z1 -> z) & (z1 -> yl) & (yl -> yl))";

const FORWARD: &str = "forall z2 . exists z1 . forall z . exists yl . exists w . \
    (z2 -> z) => ((z -> w) | ((z1 -> z) & (yl -> yl) & \
    ((z1 -> yl) => !(z2 -> yl)) & (!(z2 -> yl) => (z1 -> yl))))";

const CONTAINMENT: &str = "forall z . (!(exists w . z -> w)) => \
    (exists z2 . (z2 -> z) & !(exists y . (z2 -> y) & (y -> y)))";

/// `reach_equality` written with the two names `z` and `w` only, reusing
/// `z` inside the witness subformulas.
fn reach_equality_two_vars() -> FoFormula {
    use FoFormula::*;
    let edge = |a: &str, b: &str| Edge(a.to_string(), b.to_string());
    // exists w . w -> z & exists z . w -> z & z -> z
    let can_loop = fo_exists(
        "w",
        fo_and(
            edge("w", "z"),
            fo_exists("z", fo_and(edge("w", "z"), edge("z", "z"))),
        ),
    );
    let cannot_loop = fo_exists(
        "w",
        fo_and(
            edge("w", "z"),
            fo_not(fo_exists("z", fo_and(edge("w", "z"), edge("z", "z")))),
        ),
    );
    FoFormula::Forall(
        "z".to_string(),
        Box::new(FoFormula::Implies(
            Box::new(fo_not(fo_exists("w", edge("z", "w")))),
            Box::new(fo_and(can_loop, cannot_loop)),
        )),
    )
}

/// The undirected step atom, expanded.
fn lam(a: &str, b: &str) -> String {
    format!("(({a} -> {b}) | ({b} -> {a}))")
}

/// `x` lies on an undirected 3-cycle none of whose corners has a 1-loop.
fn on_three_cycle(x: &str, v1: &str, v2: &str) -> String {
    format!(
        "(exists {v1} . exists {v2} . ({} & {} & {}) & !({} | {} | {}))",
        lam(x, v1),
        lam(v1, v2),
        lam(v2, x),
        lam(x, x),
        lam(v1, v1),
        lam(v2, v2)
    )
}

fn undirected_equality() -> String {
    // deadlocks: no loop, no 3-cycle, and no neighbour on a 3-cycle
    let dead = format!(
        "(!{} & !{} & (forall u . {} => !{}))",
        lam("z", "z"),
        on_three_cycle("z", "a", "b"),
        lam("z", "u"),
        on_three_cycle("u", "a", "b")
    );
    let has_loop_nbr = |v: &str| format!("(exists y . {} & {})", lam(v, "y"), lam("y", "y"));
    format!(
        "forall z . {dead} => ((exists z1 . {} & {}) & (exists z2 . {} & !{}))",
        lam("z", "z1"),
        has_loop_nbr("z1"),
        lam("z", "z2"),
        has_loop_nbr("z2")
    )
}

fn plus_equality() -> String {
    let dl = |a: &str| format!("(!(exists w . {a} ->+ w))");
    let sl = |a: &str| format!("(({a} ->+ {a}) & (forall w . ({a} ->+ w) => (w ->+ {a})))");
    let left = format!(
        "((exists y . (z1 ->+ y) & {}) & (forall u . (z1 ->+ u) => ({} | {})))",
        sl("y"),
        sl("u"),
        dl("u")
    );
    let right = format!("((exists y . z2 ->+ y) & (forall u . (z2 ->+ u) => {}))", dl("u"));
    format!(
        "forall z . {} => ((exists z1 . (z1 ->+ z) & {left}) & (exists z2 . (z2 ->+ z) & {right}))",
        dl("z")
    )
}

fn star_equality(both_directions: bool) -> String {
    // terminal: the forward cone folds back onto the point
    let dl = |a: &str| format!("(forall w . ({a} ->* w) => (w ->* {a}))");
    let predl = |a: &str| {
        format!(
            "(!{} & (forall u . (({a} ->* u) & !(u ->* {a})) => {}))",
            dl(a),
            dl("u")
        )
    };
    let distinct = if both_directions { " & !(z2 ->* z1)" } else { "" };
    format!(
        "forall z . {} => (exists z1 . exists z2 . (z1 ->* z) & {} & (z2 ->* z) & {} & !(z1 ->* z2){distinct})",
        dl("z"),
        predl("z1"),
        predl("z2")
    )
}

/// `v` has no 1-loop but some successor that is a dead end. On the
/// doubly-rooted gadget's grid this pins down the root (1, 0, ..., 0).
pub fn anchor_unique_at(v: &str) -> FoFormula {
    let y = if v == "y" { "y0" } else { "y" };
    let z = if v == "z" { "z0" } else { "z" };
    parse_fo(&format!(
        "!({v} -> {v}) & (exists {y} . forall {z} . ({v} -> {y}) & !({y} -> {z}))"
    ))
    .expect("fixed formula template")
}

/// `v` loops and is a successor of the root; pins down the embedded net's
/// initial marking.
pub fn anchor_step_at(v: &str) -> FoFormula {
    let w = if v == "w0" { "w1" } else { "w0" };
    let unique = anchor_unique_at(w);
    fo_exists(
        w,
        fo_and(
            unique,
            fo_and(
                FoFormula::Edge(w.to_string(), v.to_string()),
                FoFormula::Edge(v.to_string(), v.to_string()),
            ),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::classify;

    #[test]
    fn two_variable_form_matches_up_to_renaming() {
        let c = fixed_formulas();
        assert!(c.reach_equality.alpha_eq(&c.reach_equality_two_vars));
        let mut names = c.reach_equality_two_vars.bound_vars();
        names.extend(c.reach_equality_two_vars.free_vars());
        assert_eq!(names.len(), 2, "binder reuse must survive construction");
    }

    #[test]
    fn fragment_membership() {
        let c = fixed_formulas();
        assert!(classify(&c.reach_containment_positive).is_positive);
        assert!(classify(&c.reach_equality_forward).is_forward);
        assert!(!classify(&c.reach_equality).is_positive);
        assert!(!classify(&c.reach_equality).is_existential);
    }

    #[test]
    fn catalogue_is_closed_and_stable() {
        let a = fixed_formulas();
        let b = fixed_formulas();
        assert_eq!(a.reach_equality, b.reach_equality);
        assert_eq!(a.reach_equality_plus, b.reach_equality_plus);
        assert_eq!(a.reach_equality_star, b.reach_equality_star);
        for f in [
            &a.reach_equality,
            &a.reach_equality_undirected,
            &a.reach_containment_positive,
            &a.reach_equality_forward,
            &a.reach_containment,
            &a.reach_equality_plus,
            &a.reach_equality_star,
            &a.reach_equality_star_distinct,
        ] {
            assert!(f.is_sentence(), "{f}");
        }
    }

    #[test]
    fn templates_have_one_free_variable() {
        let c = fixed_formulas();
        assert_eq!(c.root_marker.free_vars().len(), 1);
        assert_eq!(c.post_root_marker.free_vars().len(), 1);
        // name collisions with the template variable are avoided
        assert_eq!(anchor_unique_at("y").free_vars().into_iter().next().unwrap(), "y");
        assert_eq!(anchor_step_at("w0").free_vars().into_iter().next().unwrap(), "w0");
    }
}
