//! Linear integer arithmetic over named variables: terms, formulas,
//! quantifier elimination, semilinear sets, and the symbolic marking-set
//! operators used by the modal validity engine.
//!
//! Quantifiers range over the integers; naturality of place variables is
//! always imposed by explicit `v >= 0` conjuncts, never implicitly.

mod netrel;
mod parse;
mod qe;
mod semilinear;

pub use netrel::{box_set, compose_relations, edge_formula, identity_relation, place_vars, pre_image};
pub use parse::{parse_presburger, parse_semilinear};
pub use qe::{decide, decide_with_budget, eliminate, eliminate_with_budget, DEFAULT_BUDGET};
pub use semilinear::{LinearSet, SemilinearSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PresError {
    #[error("formula budget exceeded ({0} nodes)")]
    ResourceExceeded(u64),
    #[error("formula is not a sentence: free variables {0:?}")]
    NotASentence(Vec<String>),
    #[error("dimension mismatch: {got} vs {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("free variables {got:?} do not match the expected {want:?}")]
    FreeVarMismatch { got: Vec<String>, want: Vec<String> },
    #[error("syntax error at offset {at}: {msg}")]
    Syntax { at: usize, msg: String },
    #[error("divisor must be at least 2, got {0}")]
    BadDivisor(BigUint),
}

/// Integer-valued linear term `sum(a_i * v_i) + constant`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinTerm {
    /// Zero coefficients are never stored.
    pub coeffs: BTreeMap<String, BigInt>,
    pub constant: BigInt,
}

impl LinTerm {
    pub fn zero() -> Self {
        LinTerm { coeffs: BTreeMap::new(), constant: BigInt::zero() }
    }

    pub fn constant(k: impl Into<BigInt>) -> Self {
        LinTerm { coeffs: BTreeMap::new(), constant: k.into() }
    }

    pub fn var(v: impl Into<String>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v.into(), BigInt::one());
        LinTerm { coeffs, constant: BigInt::zero() }
    }

    pub fn scaled_var(a: impl Into<BigInt>, v: impl Into<String>) -> Self {
        LinTerm::var(v).scale(&a.into())
    }

    pub fn coeff(&self, v: &str) -> BigInt {
        self.coeffs.get(v).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LinTerm) -> LinTerm {
        let mut out = self.clone();
        for (v, a) in &other.coeffs {
            let c = out.coeffs.entry(v.clone()).or_insert_with(BigInt::zero);
            *c += a;
            if c.is_zero() {
                out.coeffs.remove(v);
            }
        }
        out.constant += &other.constant;
        out
    }

    pub fn neg(&self) -> LinTerm {
        LinTerm {
            coeffs: self.coeffs.iter().map(|(v, a)| (v.clone(), -a)).collect(),
            constant: -&self.constant,
        }
    }

    pub fn sub(&self, other: &LinTerm) -> LinTerm {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> LinTerm {
        if k.is_zero() {
            return LinTerm::zero();
        }
        LinTerm {
            coeffs: self.coeffs.iter().map(|(v, a)| (v.clone(), a * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn add_const(&self, k: impl Into<BigInt>) -> LinTerm {
        let mut out = self.clone();
        out.constant += k.into();
        out
    }

    /// Substitutes `v := t` (every occurrence, coefficient-scaled).
    pub fn subst(&self, v: &str, t: &LinTerm) -> LinTerm {
        match self.coeffs.get(v) {
            None => self.clone(),
            Some(a) => {
                let a = a.clone();
                let mut out = self.clone();
                out.coeffs.remove(v);
                out.add(&t.scale(&a))
            }
        }
    }

    pub fn eval(&self, env: &BTreeMap<String, BigInt>) -> Option<BigInt> {
        let mut acc = self.constant.clone();
        for (v, a) in &self.coeffs {
            acc += a * env.get(v)?;
        }
        Some(acc)
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }
}

impl fmt::Debug for LinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, a) in &self.coeffs {
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let m = a.abs();
            if m.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{m}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if self.constant.is_positive() {
            write!(f, " + {}", self.constant)?;
        } else if self.constant.is_negative() {
            write!(f, " - {}", self.constant.abs())?;
        }
        Ok(())
    }
}

impl fmt::Display for LinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Presburger formula. Atoms are normalized at construction: every
/// comparison becomes `t <= 0` or `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresFormula {
    /// t <= 0
    Leq(LinTerm),
    /// t = 0
    EqZ(LinTerm),
    /// c | t, with c >= 2
    Divides(BigUint, LinTerm),
    Not(Box<PresFormula>),
    And(Vec<PresFormula>),
    Or(Vec<PresFormula>),
    Exists(String, Box<PresFormula>),
    Forall(String, Box<PresFormula>),
}

pub use PresFormula::*;

/// `t1 <= t2`
pub fn leq(t1: LinTerm, t2: LinTerm) -> PresFormula {
    Leq(t1.sub(&t2))
}

/// `t1 >= t2`
pub fn geq(t1: LinTerm, t2: LinTerm) -> PresFormula {
    Leq(t2.sub(&t1))
}

/// `t1 < t2`
pub fn lt(t1: LinTerm, t2: LinTerm) -> PresFormula {
    Leq(t1.sub(&t2).add_const(1))
}

/// `t1 = t2`
pub fn eq(t1: LinTerm, t2: LinTerm) -> PresFormula {
    EqZ(t1.sub(&t2))
}

/// `t1 = t2 (mod c)`; requires c >= 2.
pub fn congruent(c: BigUint, t1: LinTerm, t2: LinTerm) -> Result<PresFormula, PresError> {
    if c < BigUint::from(2u8) {
        return Err(PresError::BadDivisor(c));
    }
    Ok(Divides(c, t1.sub(&t2)))
}

pub fn tru() -> PresFormula {
    Leq(LinTerm::zero())
}

pub fn fls() -> PresFormula {
    Leq(LinTerm::constant(1))
}

pub fn not(f: PresFormula) -> PresFormula {
    Not(Box::new(f))
}

pub fn and(fs: Vec<PresFormula>) -> PresFormula {
    match fs.len() {
        0 => tru(),
        1 => fs.into_iter().next().unwrap(),
        _ => And(fs),
    }
}

pub fn or(fs: Vec<PresFormula>) -> PresFormula {
    match fs.len() {
        0 => fls(),
        1 => fs.into_iter().next().unwrap(),
        _ => Or(fs),
    }
}

pub fn implies(a: PresFormula, b: PresFormula) -> PresFormula {
    or(vec![not(a), b])
}

pub fn exists(v: impl Into<String>, f: PresFormula) -> PresFormula {
    Exists(v.into(), Box::new(f))
}

pub fn forall(v: impl Into<String>, f: PresFormula) -> PresFormula {
    Forall(v.into(), Box::new(f))
}

/// `v >= 0`
pub fn natural(v: &str) -> PresFormula {
    Leq(LinTerm::var(v).neg())
}

/// Existential quantification restricted to the naturals.
pub fn exists_nat(v: impl Into<String>, f: PresFormula) -> PresFormula {
    let v = v.into();
    let nat = natural(&v);
    exists(v, and(vec![nat, f]))
}

/// Universal quantification restricted to the naturals.
pub fn forall_nat(v: impl Into<String>, f: PresFormula) -> PresFormula {
    let v = v.into();
    let nat = natural(&v);
    forall(v, implies(nat, f))
}

impl PresFormula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Leq(t) | EqZ(t) | Divides(_, t) => {
                for v in t.vars() {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Not(f) => f.collect_free(bound, out),
            And(fs) | Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Exists(v, f) | Forall(v, f) => {
                let fresh = bound.insert(v.clone());
                f.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Leq(_) | EqZ(_) | Divides(_, _) => true,
            Not(f) => f.is_quantifier_free(),
            And(fs) | Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Exists(_, _) | Forall(_, _) => false,
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Leq(t) | EqZ(t) | Divides(_, t) => 1 + t.coeffs.len() as u64,
            Not(f) => 1 + f.size(),
            And(fs) | Or(fs) => 1 + fs.iter().map(|f| f.size()).sum::<u64>(),
            Exists(_, f) | Forall(_, f) => 1 + f.size(),
        }
    }

    /// Capture-avoiding only when the substituted term's variables are not
    /// bound inside; callers use fresh names for quantified variables.
    pub fn subst(&self, v: &str, t: &LinTerm) -> PresFormula {
        match self {
            Leq(u) => Leq(u.subst(v, t)),
            EqZ(u) => EqZ(u.subst(v, t)),
            Divides(c, u) => Divides(c.clone(), u.subst(v, t)),
            Not(f) => not(f.subst(v, t)),
            And(fs) => And(fs.iter().map(|f| f.subst(v, t)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.subst(v, t)).collect()),
            Exists(x, f) if x == v => Exists(x.clone(), f.clone()),
            Forall(x, f) if x == v => Forall(x.clone(), f.clone()),
            Exists(x, f) => Exists(x.clone(), Box::new(f.subst(v, t))),
            Forall(x, f) => Forall(x.clone(), Box::new(f.subst(v, t))),
        }
    }

    /// Simultaneous variable renaming (old name -> new term) on free
    /// occurrences.
    pub fn subst_all(&self, map: &BTreeMap<String, LinTerm>) -> PresFormula {
        let subst_term = |u: &LinTerm| -> LinTerm {
            let mut out = LinTerm { coeffs: BTreeMap::new(), constant: u.constant.clone() };
            for (v, a) in &u.coeffs {
                match map.get(v) {
                    Some(t) => out = out.add(&t.scale(a)),
                    None => out = out.add(&LinTerm::var(v.clone()).scale(a)),
                }
            }
            out
        };
        match self {
            Leq(u) => Leq(subst_term(u)),
            EqZ(u) => EqZ(subst_term(u)),
            Divides(c, u) => Divides(c.clone(), subst_term(u)),
            Not(f) => not(f.subst_all(map)),
            And(fs) => And(fs.iter().map(|f| f.subst_all(map)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.subst_all(map)).collect()),
            Exists(x, f) | Forall(x, f) => {
                let mut inner = map.clone();
                inner.remove(x);
                let body = Box::new(f.subst_all(&inner));
                if matches!(self, Exists(_, _)) {
                    Exists(x.clone(), body)
                } else {
                    Forall(x.clone(), body)
                }
            }
        }
    }

    /// Evaluates the formula under `env`; quantifiers are not allowed here
    /// (returns None if a quantifier or an unbound variable is hit).
    pub fn eval(&self, env: &BTreeMap<String, BigInt>) -> Option<bool> {
        match self {
            Leq(t) => Some(t.eval(env)? <= BigInt::zero()),
            EqZ(t) => Some(t.eval(env)?.is_zero()),
            Divides(c, t) => {
                Some(t.eval(env)?.mod_floor(&BigInt::from(c.clone())).is_zero())
            }
            Not(f) => Some(!f.eval(env)?),
            And(fs) => {
                for f in fs {
                    if !f.eval(env)? {
                        return Some(false);
                    }
                }
                Some(true)
            }
            Or(fs) => {
                for f in fs {
                    if f.eval(env)? {
                        return Some(true);
                    }
                }
                Some(false)
            }
            Exists(_, _) | Forall(_, _) => None,
        }
    }

    /// Constant folding and flattening; keeps the solution set intact.
    pub fn simplify(&self) -> PresFormula {
        match self {
            Leq(t) if t.is_constant() => {
                if t.constant <= BigInt::zero() {
                    tru()
                } else {
                    fls()
                }
            }
            Leq(_) => self.clone(),
            EqZ(t) if t.is_constant() => {
                if t.constant.is_zero() {
                    tru()
                } else {
                    fls()
                }
            }
            EqZ(_) => self.clone(),
            Divides(c, t) if t.is_constant() => {
                if t.constant.mod_floor(&BigInt::from(c.clone())).is_zero() {
                    tru()
                } else {
                    fls()
                }
            }
            Divides(c, t) if c.is_one() => {
                let _ = t;
                tru()
            }
            Divides(_, _) => self.clone(),
            Not(f) => match f.simplify() {
                g if g == tru() => fls(),
                g if g == fls() => tru(),
                Not(g) => *g,
                g => not(g),
            },
            And(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.simplify() {
                        g if g == tru() => {}
                        g if g == fls() => return fls(),
                        And(gs) => out.extend(gs),
                        g => {
                            if !out.contains(&g) {
                                out.push(g);
                            }
                        }
                    }
                }
                and(out)
            }
            Or(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.simplify() {
                        g if g == fls() => {}
                        g if g == tru() => return tru(),
                        Or(gs) => out.extend(gs),
                        g => {
                            if !out.contains(&g) {
                                out.push(g);
                            }
                        }
                    }
                }
                or(out)
            }
            Exists(v, f) => {
                let body = f.simplify();
                if !body.free_vars().contains(v) {
                    return body;
                }
                exists(v.clone(), body)
            }
            Forall(v, f) => {
                let body = f.simplify();
                if !body.free_vars().contains(v) {
                    return body;
                }
                forall(v.clone(), body)
            }
        }
    }
}

impl fmt::Display for PresFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leq(t) => write!(f, "{t} <= 0"),
            EqZ(t) => write!(f, "{t} = 0"),
            Divides(c, t) => write!(f, "({t}) mod {c} = 0"),
            Not(g) => write!(f, "!({g})"),
            And(fs) => {
                write!(f, "(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Or(fs) => {
                write!(f, "(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Exists(v, g) => write!(f, "exists {v} . {g}"),
            Forall(v, g) => write!(f, "forall {v} . {g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> BTreeMap<String, BigInt> {
        pairs.iter().map(|&(v, k)| (v.to_string(), BigInt::from(k))).collect()
    }

    #[test]
    fn term_arithmetic() {
        let t = LinTerm::scaled_var(2, "x").add(&LinTerm::var("y")).add_const(-3);
        assert_eq!(t.eval(&env(&[("x", 4), ("y", 1)])), Some(BigInt::from(6)));
        assert_eq!(t.sub(&t), LinTerm::zero());
        assert!(t.sub(&t).coeffs.is_empty());
    }

    #[test]
    fn subst_scales() {
        // 2x with x := y + 1 gives 2y + 2
        let t = LinTerm::scaled_var(2, "x").subst("x", &LinTerm::var("y").add_const(1));
        assert_eq!(t, LinTerm::scaled_var(2, "y").add_const(2));
    }

    #[test]
    fn eval_atoms() {
        let f = leq(LinTerm::var("x"), LinTerm::constant(3));
        assert_eq!(f.eval(&env(&[("x", 3)])), Some(true));
        assert_eq!(f.eval(&env(&[("x", 4)])), Some(false));
        let d = Divides(BigUint::from(4u8), LinTerm::var("x").add_const(-2));
        assert_eq!(d.eval(&env(&[("x", 6)])), Some(true));
        assert_eq!(d.eval(&env(&[("x", 5)])), Some(false));
        // floor semantics for negatives: -2 = 2 mod 4
        assert_eq!(d.eval(&env(&[("x", -2)])), Some(true));
    }

    #[test]
    fn simplify_constants() {
        let f = and(vec![tru(), or(vec![fls(), leq(LinTerm::var("x"), LinTerm::constant(0))])]);
        assert_eq!(f.simplify(), Leq(LinTerm::var("x")));
        assert_eq!(not(tru()).simplify(), fls());
        assert_eq!(exists("x", tru()).simplify(), tru());
    }

    #[test]
    fn free_vars_respect_binding() {
        let f = exists("x", eq(LinTerm::var("x"), LinTerm::var("y")));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
        assert!(!f.is_sentence());
    }

    #[test]
    fn subst_all_simultaneous() {
        // x := y, y := x swaps the roles in x - y
        let f = eq(LinTerm::var("x"), LinTerm::var("y"));
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), LinTerm::var("y"));
        m.insert("y".to_string(), LinTerm::var("x"));
        let g = f.subst_all(&m);
        assert_eq!(g.eval(&env(&[("x", 1), ("y", 2)])), Some(false));
        assert_eq!(g.eval(&env(&[("x", 2), ("y", 2)])), Some(true));
    }
}
