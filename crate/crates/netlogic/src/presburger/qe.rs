//! Integer quantifier elimination with divisibility atoms, plus the
//! resulting decision procedure for sentences.
//!
//! Single-variable elimination follows the classical scheme: normalize to
//! negation normal form, scale all occurrences of the bound variable to a
//! common coefficient (adding one divisibility constraint for the change of
//! variable), then replace the existential by a finite disjunction over the
//! small residues and the lower-boundary points.
//!
//! Worst-case output size is hostile (the literature puts the decision
//! problem at triple-exponential), so every call runs under a node budget
//! and fails with `ResourceExceeded` instead of diverging.

use super::*;
use num_traits::ToPrimitive;

pub const DEFAULT_BUDGET: u64 = 2_000_000;

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn charge(&mut self, n: u64) -> Result<(), PresError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(PresError::ResourceExceeded(self.used))
        } else {
            Ok(())
        }
    }
}

pub fn eliminate(f: &PresFormula) -> Result<PresFormula, PresError> {
    eliminate_with_budget(f, DEFAULT_BUDGET)
}

pub fn eliminate_with_budget(f: &PresFormula, cap: u64) -> Result<PresFormula, PresError> {
    let mut budget = Budget { used: 0, cap };
    Ok(elim(f, &mut budget)?.simplify())
}

pub fn decide(f: &PresFormula) -> Result<bool, PresError> {
    decide_with_budget(f, DEFAULT_BUDGET)
}

pub fn decide_with_budget(f: &PresFormula, cap: u64) -> Result<bool, PresError> {
    let free: Vec<String> = f.free_vars().into_iter().collect();
    if !free.is_empty() {
        return Err(PresError::NotASentence(free));
    }
    let qf = eliminate_with_budget(f, cap)?;
    Ok(qf.eval(&BTreeMap::new()).expect("quantifier-free sentence evaluates"))
}

fn elim(f: &PresFormula, budget: &mut Budget) -> Result<PresFormula, PresError> {
    match f {
        Leq(_) | EqZ(_) | Divides(_, _) => Ok(f.clone()),
        Not(g) => Ok(not(elim(g, budget)?)),
        And(fs) => Ok(And(fs.iter().map(|g| elim(g, budget)).collect::<Result<_, _>>()?)),
        Or(fs) => Ok(Or(fs.iter().map(|g| elim(g, budget)).collect::<Result<_, _>>()?)),
        Exists(v, g) => {
            let body = elim(g, budget)?.simplify();
            exists_one(v, body, budget)
        }
        Forall(v, g) => {
            let body = elim(g, budget)?.simplify();
            let negated = exists_one(v, not(body).simplify(), budget)?;
            Ok(not(negated).simplify())
        }
    }
}

/// Negation normal form specialized for elimination: `Not` survives only
/// directly above `Divides`, and `EqZ` is expanded away.
fn nnf(f: &PresFormula, pos: bool) -> PresFormula {
    match f {
        Leq(t) => {
            if pos {
                Leq(t.clone())
            } else {
                // not(t <= 0)  <=>  -t + 1 <= 0
                Leq(t.neg().add_const(1))
            }
        }
        EqZ(t) => {
            if pos {
                And(vec![Leq(t.clone()), Leq(t.neg())])
            } else {
                Or(vec![Leq(t.clone().add_const(1)), Leq(t.neg().add_const(1))])
            }
        }
        Divides(c, t) => {
            let atom = Divides(c.clone(), t.clone());
            if pos {
                atom
            } else {
                not(atom)
            }
        }
        Not(g) => nnf(g, !pos),
        And(fs) => {
            let parts = fs.iter().map(|g| nnf(g, pos)).collect();
            if pos {
                And(parts)
            } else {
                Or(parts)
            }
        }
        Or(fs) => {
            let parts = fs.iter().map(|g| nnf(g, pos)).collect();
            if pos {
                Or(parts)
            } else {
                And(parts)
            }
        }
        Exists(_, _) | Forall(_, _) => {
            unreachable!("inner quantifiers are eliminated before nnf")
        }
    }
}

fn lcm_of(a: BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Eliminates one existential integer quantifier from a quantifier-free body.
fn exists_one(v: &str, body: PresFormula, budget: &mut Budget) -> Result<PresFormula, PresError> {
    if !body.free_vars().contains(v) {
        return Ok(body);
    }
    let body = nnf(&body, true);

    // Scale every occurrence of v to coefficient ±L.
    let mut big_l = BigInt::one();
    collect_lcm(&body, v, &mut big_l);
    let u = format!("{v}~");
    let mut scaled = scale_var(&body, v, &big_l, &u);
    if big_l > BigInt::one() {
        let c = big_l.to_biguint().expect("lcm of absolute values is positive");
        scaled = and(vec![scaled, Divides(c, LinTerm::var(&u))]);
    }

    // delta = lcm of divisors on u-literals; lower bounds of u.
    let mut delta = BigInt::one();
    collect_divisor_lcm(&scaled, &u, &mut delta);
    let mut lowers: Vec<LinTerm> = Vec::new();
    collect_lower_bounds(&scaled, &u, &mut lowers);

    let delta_u64 = delta
        .to_u64()
        .ok_or(PresError::ResourceExceeded(u64::MAX))?;
    let per_branch = scaled.size();
    budget.charge(delta_u64.saturating_mul(1 + lowers.len() as u64).saturating_mul(per_branch))?;

    // With non-strict lower bounds (b <= u) the least solution, when one
    // exists and the minus-infinity limit fails, is b + j for some lower
    // bound b and residue j in [0, delta).
    let minus_inf = drop_bounds_toward_minus_infinity(&scaled, &u);
    let mut disjuncts = Vec::new();
    let mut j = BigInt::zero();
    while j < delta {
        let jt = LinTerm::constant(j.clone());
        disjuncts.push(minus_inf.subst(&u, &jt).simplify());
        for b in &lowers {
            disjuncts.push(scaled.subst(&u, &b.add_const(j.clone())).simplify());
        }
        j += 1;
    }
    Ok(or(disjuncts).simplify())
}

fn collect_lcm(f: &PresFormula, v: &str, acc: &mut BigInt) {
    match f {
        Leq(t) | Divides(_, t) => {
            let a = t.coeff(v);
            if !a.is_zero() {
                *acc = lcm_of(acc.clone(), &a.abs());
            }
        }
        Not(g) => collect_lcm(g, v, acc),
        And(fs) | Or(fs) => fs.iter().for_each(|g| collect_lcm(g, v, acc)),
        EqZ(_) | Exists(_, _) | Forall(_, _) => unreachable!("nnf leaves no EqZ/quantifiers"),
    }
}

/// Rewrites each literal so that the occurrence of `v` becomes `±u` where
/// `u` stands for `L*v`. Inequalities scale by a positive factor;
/// divisibilities scale both divisor and term.
fn scale_var(f: &PresFormula, v: &str, big_l: &BigInt, u: &str) -> PresFormula {
    let rewrite = |t: &LinTerm, c: Option<&BigUint>| -> (LinTerm, Option<BigUint>) {
        let a = t.coeff(v);
        if a.is_zero() {
            return (t.clone(), c.cloned());
        }
        let m = big_l / a.abs();
        let scaled = t.scale(&m);
        // coefficient of v in `scaled` is sign(a) * L; swap in ±u.
        let mut out = scaled.clone();
        out.coeffs.remove(v);
        let sign = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
        out = out.add(&LinTerm::var(u).scale(&sign));
        let c2 = c.map(|c| {
            (BigInt::from(c.clone()) * &m).to_biguint().expect("positive scaling")
        });
        (out, c2)
    };
    match f {
        Leq(t) => Leq(rewrite(t, None).0),
        Divides(c, t) => {
            let (t2, c2) = rewrite(t, Some(c));
            Divides(c2.expect("divisor preserved"), t2)
        }
        Not(g) => not(scale_var(g, v, big_l, u)),
        And(fs) => And(fs.iter().map(|g| scale_var(g, v, big_l, u)).collect()),
        Or(fs) => Or(fs.iter().map(|g| scale_var(g, v, big_l, u)).collect()),
        EqZ(_) | Exists(_, _) | Forall(_, _) => unreachable!("nnf leaves no EqZ/quantifiers"),
    }
}

fn collect_divisor_lcm(f: &PresFormula, u: &str, acc: &mut BigInt) {
    match f {
        Divides(c, t) => {
            if !t.coeff(u).is_zero() {
                *acc = lcm_of(acc.clone(), &BigInt::from(c.clone()));
            }
        }
        Leq(_) => {}
        Not(g) => collect_divisor_lcm(g, u, acc),
        And(fs) | Or(fs) => fs.iter().for_each(|g| collect_divisor_lcm(g, u, acc)),
        EqZ(_) | Exists(_, _) | Forall(_, _) => unreachable!(),
    }
}

/// Lower bounds: literals `-u + t <= 0`, i.e. `u >= t`; collects `t`.
fn collect_lower_bounds(f: &PresFormula, u: &str, acc: &mut Vec<LinTerm>) {
    match f {
        Leq(t) => {
            let a = t.coeff(u);
            if a == -BigInt::one() {
                let mut b = t.clone();
                b.coeffs.remove(u);
                acc.push(b);
            }
        }
        Divides(_, _) => {}
        Not(g) => collect_lower_bounds(g, u, acc),
        And(fs) | Or(fs) => fs.iter().for_each(|g| collect_lower_bounds(g, u, acc)),
        EqZ(_) | Exists(_, _) | Forall(_, _) => unreachable!(),
    }
}

/// The limit of the body as `u` goes to minus infinity: upper bounds on `u`
/// become true, lower bounds become false, divisibilities survive.
fn drop_bounds_toward_minus_infinity(f: &PresFormula, u: &str) -> PresFormula {
    match f {
        Leq(t) => {
            let a = t.coeff(u);
            if a.is_zero() {
                f.clone()
            } else if a.is_positive() {
                tru()
            } else {
                fls()
            }
        }
        Divides(_, _) => f.clone(),
        Not(g) => not(drop_bounds_toward_minus_infinity(g, u)),
        And(fs) => And(fs.iter().map(|g| drop_bounds_toward_minus_infinity(g, u)).collect()),
        Or(fs) => Or(fs.iter().map(|g| drop_bounds_toward_minus_infinity(g, u)).collect()),
        EqZ(_) | Exists(_, _) | Forall(_, _) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> LinTerm {
        LinTerm::var(s)
    }

    fn k(n: i64) -> LinTerm {
        LinTerm::constant(n)
    }

    #[test]
    fn decide_doubling() {
        // exists x (2x = 6 and x >= 0)
        let f = exists("x", and(vec![eq(v("x").scale(&BigInt::from(2)), k(6)), geq(v("x"), k(0))]));
        assert!(decide(&f).unwrap());
        let g = exists("x", eq(v("x").scale(&BigInt::from(2)), k(5)));
        assert!(!decide(&g).unwrap());
    }

    #[test]
    fn decide_successor() {
        // forall x (x >= 0 => exists y (y = x + 1 and y >= 0))
        let f = forall(
            "x",
            implies(geq(v("x"), k(0)), exists("y", and(vec![eq(v("y"), v("x").add_const(1)), geq(v("y"), k(0))]))),
        );
        assert!(decide(&f).unwrap());
    }

    #[test]
    fn eliminate_equality_projection() {
        // exists x (x = v and x <= 3)  ==  v <= 3
        let f = exists("x", and(vec![eq(v("x"), v("v")), leq(v("x"), k(3))]));
        let g = eliminate(&f).unwrap();
        assert!(g.is_quantifier_free());
        for n in -5..=8 {
            let env: BTreeMap<_, _> = [("v".to_string(), BigInt::from(n))].into();
            assert_eq!(g.eval(&env), Some(n <= 3), "at v={n}");
        }
    }

    #[test]
    fn eliminate_divisibility() {
        // exists x (2 | x and x = v)  ==  2 | v
        let f = exists(
            "x",
            and(vec![Divides(BigUint::from(2u8), v("x")), eq(v("x"), v("v"))]),
        );
        let g = eliminate(&f).unwrap();
        assert!(g.is_quantifier_free());
        for n in -6..=6 {
            let env: BTreeMap<_, _> = [("v".to_string(), BigInt::from(n))].into();
            assert_eq!(g.eval(&env), Some(n % 2 == 0), "at v={n}");
        }
    }

    #[test]
    fn decide_even_odd_split() {
        // forall x (2|x or 2|x+1)
        let f = forall(
            "x",
            or(vec![
                Divides(BigUint::from(2u8), v("x")),
                Divides(BigUint::from(2u8), v("x").add_const(1)),
            ]),
        );
        assert!(decide(&f).unwrap());
        // forall x (2|x) fails
        let g = forall("x", Divides(BigUint::from(2u8), v("x")));
        assert!(!decide(&g).unwrap());
    }

    #[test]
    fn decide_unbounded_above() {
        // forall x exists y (y >= x)
        let f = forall("x", exists("y", geq(v("y"), v("x"))));
        assert!(decide(&f).unwrap());
        // exists y forall x (y >= x)
        let g = exists("y", forall("x", geq(v("y"), v("x"))));
        assert!(!decide(&g).unwrap());
    }

    #[test]
    fn coefficient_scaling() {
        // exists x (3x >= v and 2x <= v) over v = 6: x = 2..3 works; v = 1: 3x>=1, 2x<=1 -> x>=1/3,x<=1/2 no integer
        let f = |n: i64| {
            exists(
                "x",
                and(vec![
                    geq(v("x").scale(&BigInt::from(3)), k(n)),
                    leq(v("x").scale(&BigInt::from(2)), k(n)),
                ]),
            )
        };
        assert!(decide(&f(6)).unwrap());
        assert!(!decide(&f(1)).unwrap());
        assert!(decide(&f(0)).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        // Stack enough alternations with coefficients to blow a tiny budget.
        let mut f = eq(v("x1").scale(&BigInt::from(7)), v("x2").scale(&BigInt::from(5)));
        for i in (1..=2).rev() {
            f = forall(format!("x{i}"), implies(geq(v(&format!("x{i}")), k(0)), exists(format!("y{i}"), f.clone())));
        }
        match decide_with_budget(&f, 3) {
            Err(PresError::ResourceExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
