//! First-order formulas over the predicates init, ->, ->*, ->+ and =.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    Edge(String, String),
    Star(String, String),
    Plus(String, String),
    Eq(String, String),
    Init(String),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

use FoFormula::*;

pub fn fo_not(f: FoFormula) -> FoFormula {
    Not(Box::new(f))
}

pub fn fo_and(a: FoFormula, b: FoFormula) -> FoFormula {
    And(Box::new(a), Box::new(b))
}

pub fn fo_or(a: FoFormula, b: FoFormula) -> FoFormula {
    Or(Box::new(a), Box::new(b))
}

pub fn fo_implies(a: FoFormula, b: FoFormula) -> FoFormula {
    Implies(Box::new(a), Box::new(b))
}

pub fn fo_forall(v: impl Into<String>, f: FoFormula) -> FoFormula {
    Forall(v.into(), Box::new(f))
}

pub fn fo_exists(v: impl Into<String>, f: FoFormula) -> FoFormula {
    Exists(v.into(), Box::new(f))
}

/// Conjunction of a list; the empty list is `x = x`-free so it is rejected.
pub fn fo_and_all(mut fs: Vec<FoFormula>) -> FoFormula {
    let mut acc = fs.pop().expect("nonempty conjunction");
    while let Some(f) = fs.pop() {
        acc = fo_and(f, acc);
    }
    acc
}

/// Which predicate an atom uses; doubles as the `predicates_used` element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Edge,
    Star,
    Plus,
    Init,
    Eq,
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pred::Edge => "->",
            Pred::Star => "->*",
            Pred::Plus => "->+",
            Pred::Init => "init",
            Pred::Eq => "=",
        };
        write!(f, "{s}")
    }
}

impl FoFormula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_free(&mut Vec::new(), &mut out);
        out
    }

    fn walk_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut var = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Edge(x, y) | Star(x, y) | Plus(x, y) | Eq(x, y) => {
                var(x, bound);
                var(y, bound);
            }
            Init(x) => var(x, bound),
            Not(f) => f.walk_free(bound, out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.walk_free(bound, out);
                b.walk_free(bound, out);
            }
            Forall(v, f) | Exists(v, f) => {
                bound.push(v.clone());
                f.walk_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_bound(&mut out);
        out
    }

    fn walk_bound(&self, out: &mut BTreeSet<String>) {
        match self {
            Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => {}
            Not(f) => f.walk_bound(out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.walk_bound(out);
                b.walk_bound(out);
            }
            Forall(v, f) | Exists(v, f) => {
                out.insert(v.clone());
                f.walk_bound(out);
            }
        }
    }

    pub fn predicates_used(&self) -> BTreeSet<Pred> {
        let mut out = BTreeSet::new();
        self.walk_preds(&mut out);
        out
    }

    fn walk_preds(&self, out: &mut BTreeSet<Pred>) {
        match self {
            Edge(_, _) => {
                out.insert(Pred::Edge);
            }
            Star(_, _) => {
                out.insert(Pred::Star);
            }
            Plus(_, _) => {
                out.insert(Pred::Plus);
            }
            Eq(_, _) => {
                out.insert(Pred::Eq);
            }
            Init(_) => {
                out.insert(Pred::Init);
            }
            Not(f) => f.walk_preds(out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.walk_preds(out);
                b.walk_preds(out);
            }
            Forall(_, f) | Exists(_, f) => f.walk_preds(out),
        }
    }

    /// Rewrites `a => b` into `!a | b` throughout.
    pub fn without_implies(&self) -> FoFormula {
        match self {
            Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => self.clone(),
            Not(f) => fo_not(f.without_implies()),
            And(a, b) => fo_and(a.without_implies(), b.without_implies()),
            Or(a, b) => fo_or(a.without_implies(), b.without_implies()),
            Implies(a, b) => fo_or(fo_not(a.without_implies()), b.without_implies()),
            Forall(v, f) => fo_forall(v.clone(), f.without_implies()),
            Exists(v, f) => fo_exists(v.clone(), f.without_implies()),
        }
    }

    /// Negation normal form (implies removed, Not pushed to atoms).
    pub fn nnf(&self) -> FoFormula {
        self.without_implies().nnf_signed(true)
    }

    fn nnf_signed(&self, pos: bool) -> FoFormula {
        match self {
            Edge(_, _) | Star(_, _) | Plus(_, _) | Eq(_, _) | Init(_) => {
                if pos {
                    self.clone()
                } else {
                    fo_not(self.clone())
                }
            }
            Not(f) => f.nnf_signed(!pos),
            And(a, b) => {
                if pos {
                    fo_and(a.nnf_signed(true), b.nnf_signed(true))
                } else {
                    fo_or(a.nnf_signed(false), b.nnf_signed(false))
                }
            }
            Or(a, b) => {
                if pos {
                    fo_or(a.nnf_signed(true), b.nnf_signed(true))
                } else {
                    fo_and(a.nnf_signed(false), b.nnf_signed(false))
                }
            }
            Implies(_, _) => unreachable!("implies removed first"),
            Forall(v, f) => {
                if pos {
                    fo_forall(v.clone(), f.nnf_signed(true))
                } else {
                    fo_exists(v.clone(), f.nnf_signed(false))
                }
            }
            Exists(v, f) => {
                if pos {
                    fo_exists(v.clone(), f.nnf_signed(true))
                } else {
                    fo_forall(v.clone(), f.nnf_signed(false))
                }
            }
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &FoFormula) -> bool {
        fn go(a: &FoFormula, b: &FoFormula, ea: &mut Vec<(String, usize)>, eb: &mut Vec<(String, usize)>, fresh: &mut usize) -> bool {
            let lookup = |v: &str, e: &Vec<(String, usize)>| -> Option<usize> {
                e.iter().rev().find(|(n, _)| n == v).map(|(_, i)| *i)
            };
            let var_eq = |x: &str, y: &str, ea: &Vec<(String, usize)>, eb: &Vec<(String, usize)>| {
                match (lookup(x, ea), lookup(y, eb)) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            };
            match (a, b) {
                (Edge(x1, y1), Edge(x2, y2))
                | (Star(x1, y1), Star(x2, y2))
                | (Plus(x1, y1), Plus(x2, y2))
                | (Eq(x1, y1), Eq(x2, y2)) => var_eq(x1, x2, ea, eb) && var_eq(y1, y2, ea, eb),
                (Init(x1), Init(x2)) => var_eq(x1, x2, ea, eb),
                (Not(f1), Not(f2)) => go(f1, f2, ea, eb, fresh),
                (And(a1, b1), And(a2, b2))
                | (Or(a1, b1), Or(a2, b2))
                | (Implies(a1, b1), Implies(a2, b2)) => {
                    go(a1, a2, ea, eb, fresh) && go(b1, b2, ea, eb, fresh)
                }
                (Forall(v1, f1), Forall(v2, f2)) | (Exists(v1, f1), Exists(v2, f2)) => {
                    let id = *fresh;
                    *fresh += 1;
                    ea.push((v1.clone(), id));
                    eb.push((v2.clone(), id));
                    let r = go(f1, f2, ea, eb, fresh);
                    ea.pop();
                    eb.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new(), &mut 0)
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fo(self, f, 0)
    }
}

// precedence levels: 0 = implies/quantifier, 1 = or, 2 = and, 3 = unary/atom
fn write_fo(x: &FoFormula, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let paren = |f: &mut fmt::Formatter<'_>, needed: bool, inner: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
        if needed {
            write!(f, "(")?;
            inner(f)?;
            write!(f, ")")
        } else {
            inner(f)
        }
    };
    match x {
        Edge(a, b) => write!(f, "{a} -> {b}"),
        Star(a, b) => write!(f, "{a} ->* {b}"),
        Plus(a, b) => write!(f, "{a} ->+ {b}"),
        Eq(a, b) => write!(f, "{a} = {b}"),
        Init(a) => write!(f, "init({a})"),
        Not(g) => {
            write!(f, "!")?;
            write_fo(g, f, 3)
        }
        And(a, b) => paren(f, level > 2, &|f| {
            write_fo(a, f, 3)?;
            write!(f, " & ")?;
            write_fo(b, f, 2)
        }),
        Or(a, b) => paren(f, level > 1, &|f| {
            write_fo(a, f, 2)?;
            write!(f, " | ")?;
            write_fo(b, f, 1)
        }),
        Implies(a, b) => paren(f, level > 0, &|f| {
            write_fo(a, f, 1)?;
            write!(f, " => ")?;
            write_fo(b, f, 0)
        }),
        Forall(v, g) => paren(f, level > 0, &|f| {
            write!(f, "forall {v} . ")?;
            write_fo(g, f, 0)
        }),
        Exists(v, g) => paren(f, level > 0, &|f| {
            write!(f, "exists {v} . ")?;
            write_fo(g, f, 0)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_and_bound_vars() {
        let f = fo_forall("x", fo_exists("y", fo_and(Edge("x".into(), "y".into()), Init("z".into()))));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["z".to_string()]);
        assert_eq!(f.bound_vars().len(), 2);
        assert!(!f.is_sentence());
    }

    #[test]
    fn nnf_pushes_negation() {
        let f = fo_not(fo_forall("x", fo_implies(Edge("x".into(), "x".into()), Init("x".into()))));
        let g = f.nnf();
        // !forall x (e => i)  ==  exists x (e & !i)
        let want = fo_exists(
            "x",
            fo_and(Edge("x".into(), "x".into()), fo_not(Init("x".into()))),
        );
        assert_eq!(g, want);
    }

    #[test]
    fn alpha_equivalence() {
        let f = fo_forall("x", fo_exists("y", Edge("x".into(), "y".into())));
        let g = fo_forall("a", fo_exists("b", Edge("a".into(), "b".into())));
        let h = fo_forall("a", fo_exists("b", Edge("b".into(), "a".into())));
        assert!(f.alpha_eq(&g));
        assert!(!f.alpha_eq(&h));
        // shadowing respected
        let p = fo_forall("x", fo_forall("x", Init("x".into())));
        let q = fo_forall("x", fo_forall("y", Init("y".into())));
        let r = fo_forall("x", fo_forall("y", Init("x".into())));
        assert!(p.alpha_eq(&q));
        assert!(!p.alpha_eq(&r));
    }

    #[test]
    fn display_round_structure() {
        let f = fo_forall("x", fo_implies(fo_and(Edge("x".into(), "x".into()), Init("x".into())), Eq("x".into(), "x".into())));
        assert_eq!(f.to_string(), "forall x . x -> x & init(x) => x = x");
    }
}
