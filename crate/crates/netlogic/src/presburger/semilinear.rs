//! Linear and semilinear subsets of N^n: base-plus-periods representation,
//! conversion to formulas, and direct membership testing.

use super::*;
use num_bigint::BigUint;
use num_traits::Zero;

/// `base + {periods}*` — all vectors `base + sum(k_i * periods[i])`, k_i >= 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSet {
    pub base: Vec<BigUint>,
    pub periods: Vec<Vec<BigUint>>,
}

impl LinearSet {
    pub fn point(base: Vec<BigUint>) -> Self {
        LinearSet { base, periods: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    fn check(&self) -> Result<(), PresError> {
        for p in &self.periods {
            if p.len() != self.base.len() {
                return Err(PresError::DimensionMismatch { got: p.len(), want: self.base.len() });
            }
        }
        Ok(())
    }
}

/// Finite union of linear sets; the empty union is the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    pub components: Vec<LinearSet>,
    pub dim: usize,
}

impl SemilinearSet {
    pub fn new(dim: usize, components: Vec<LinearSet>) -> Result<Self, PresError> {
        for c in &components {
            c.check()?;
            if c.dim() != dim {
                return Err(PresError::DimensionMismatch { got: c.dim(), want: dim });
            }
        }
        Ok(SemilinearSet { components, dim })
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet { components: Vec::new(), dim }
    }

    pub fn singleton(v: Vec<BigUint>) -> Self {
        let dim = v.len();
        SemilinearSet { components: vec![LinearSet::point(v)], dim }
    }

    /// The whole of N^n: zero base, all unit periods.
    pub fn full(dim: usize) -> Self {
        let mut periods = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut p = vec![BigUint::zero(); dim];
            p[i] = BigUint::from(1u8);
            periods.push(p);
        }
        SemilinearSet {
            components: vec![LinearSet { base: vec![BigUint::zero(); dim], periods }],
            dim,
        }
    }

    /// True when every component's period list contains all unit vectors,
    /// which makes the set upward closed (the converse need not hold).
    pub fn has_all_unit_periods(&self) -> bool {
        !self.components.is_empty()
            && self.components.iter().all(|c| {
                (0..self.dim).all(|i| {
                    c.periods.iter().any(|p| {
                        p.iter().enumerate().all(|(j, x)| {
                            if j == i {
                                *x == BigUint::from(1u8)
                            } else {
                                x.is_zero()
                            }
                        })
                    })
                })
            })
    }

    /// Formula over `vars` (one per dimension) with one existential
    /// multiplier per period.
    pub fn to_formula(&self, vars: &[String]) -> Result<PresFormula, PresError> {
        if vars.len() != self.dim {
            return Err(PresError::DimensionMismatch { got: vars.len(), want: self.dim });
        }
        let mut comps = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            let ks: Vec<String> =
                (0..c.periods.len()).map(|i| format!("k{ci}_{i}~sl")).collect();
            let mut conj = Vec::new();
            for (d, var) in vars.iter().enumerate() {
                let mut rhs = LinTerm::constant(BigInt::from(c.base[d].clone()));
                for (i, p) in c.periods.iter().enumerate() {
                    if !p[d].is_zero() {
                        rhs = rhs.add(&LinTerm::scaled_var(BigInt::from(p[d].clone()), &ks[i]));
                    }
                }
                conj.push(eq(LinTerm::var(var.clone()), rhs));
            }
            let mut f = and(conj);
            for k in ks.into_iter().rev() {
                f = exists_nat(k, f);
            }
            comps.push(f);
        }
        Ok(or(comps))
    }

    /// Exact membership by bounded search over period multipliers.
    ///
    /// Each all-zero period is ignored; every other period has some positive
    /// component, which bounds its multiplier by the target, so the search
    /// is finite.
    pub fn membership(&self, v: &[BigUint]) -> Result<bool, PresError> {
        if v.len() != self.dim {
            return Err(PresError::DimensionMismatch { got: v.len(), want: self.dim });
        }
        for c in &self.components {
            if linear_member(c, v) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn linear_member(c: &LinearSet, v: &[BigUint]) -> bool {
    // residual = v - base must be a nonnegative combination of periods
    let mut residual = Vec::with_capacity(v.len());
    for (i, x) in v.iter().enumerate() {
        if x < &c.base[i] {
            return false;
        }
        residual.push(x - &c.base[i]);
    }
    let periods: Vec<&Vec<BigUint>> =
        c.periods.iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
    search(&periods, &mut residual)
}

fn search(periods: &[&Vec<BigUint>], residual: &mut [BigUint]) -> bool {
    if residual.iter().all(|x| x.is_zero()) {
        return true;
    }
    let Some((p, rest)) = periods.split_first() else {
        return false;
    };
    // max multiplier for p: min over its positive components
    let mut bound: Option<BigUint> = None;
    for (i, x) in p.iter().enumerate() {
        if !x.is_zero() {
            let q = &residual[i] / x;
            bound = Some(match bound {
                Some(b) if b <= q => b,
                _ => q,
            });
        }
    }
    let bound = bound.expect("zero periods were filtered");
    let mut k = BigUint::zero();
    loop {
        let mut next: Vec<BigUint> = Vec::with_capacity(residual.len());
        let mut ok = true;
        for (i, x) in p.iter().enumerate() {
            let used = x * &k;
            if residual[i] < used {
                ok = false;
                break;
            }
            next.push(&residual[i] - used);
        }
        if ok && search(rest, &mut next) {
            return true;
        }
        if k >= bound {
            return false;
        }
        k += 1u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn axis_line_membership() {
        let s = SemilinearSet::new(
            2,
            vec![LinearSet { base: u(&[1, 0]), periods: vec![u(&[0, 1])] }],
        )
        .unwrap();
        assert!(s.membership(&u(&[1, 5])).unwrap());
        assert!(!s.membership(&u(&[2, 5])).unwrap());
        assert!(!s.membership(&u(&[0, 0])).unwrap());
    }

    #[test]
    fn empty_set_contains_nothing() {
        let s = SemilinearSet::empty(3);
        assert!(!s.membership(&u(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn two_period_lattice() {
        // base (0,0), periods (2,1) and (1,2): (4,5) = 1*(2,1)+... 2*(1,2)+(2,1) = (4,5) yes
        let s = SemilinearSet::new(
            2,
            vec![LinearSet { base: u(&[0, 0]), periods: vec![u(&[2, 1]), u(&[1, 2])] }],
        )
        .unwrap();
        assert!(s.membership(&u(&[4, 5])).unwrap());
        assert!(!s.membership(&u(&[1, 0])).unwrap());
    }

    #[test]
    fn formula_agrees_with_membership() {
        let s = SemilinearSet::new(
            2,
            vec![
                LinearSet { base: u(&[1, 0]), periods: vec![u(&[0, 2])] },
                LinearSet { base: u(&[0, 3]), periods: vec![] },
            ],
        )
        .unwrap();
        let vars = vec!["a".to_string(), "b".to_string()];
        let f = s.to_formula(&vars).unwrap();
        for a in 0u64..=6 {
            for b in 0u64..=6 {
                let mut g = f.clone();
                g = g.subst("a", &LinTerm::constant(BigInt::from(a)));
                g = g.subst("b", &LinTerm::constant(BigInt::from(b)));
                let by_formula = decide(&g).unwrap();
                let by_search = s.membership(&u(&[a, b])).unwrap();
                assert_eq!(by_formula, by_search, "at ({a},{b})");
            }
        }
    }

    #[test]
    fn full_set_is_upward_closed_shape() {
        assert!(SemilinearSet::full(3).has_all_unit_periods());
        assert!(!SemilinearSet::singleton(u(&[1])).has_all_unit_periods());
        assert!(!SemilinearSet::empty(2).has_all_unit_periods());
    }
}
