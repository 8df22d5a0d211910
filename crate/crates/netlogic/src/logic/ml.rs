//! Modal formulas with forward and backward step modalities, optionally
//! carrying quantifier-free arithmetic constraints on the current marking.

use crate::presburger::PresFormula;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum MlFormula {
    Top,
    Bot,
    /// Quantifier-free constraint over place names, written `{...}`.
    Paml(PresFormula),
    Not(Box<MlFormula>),
    And(Box<MlFormula>, Box<MlFormula>),
    Or(Box<MlFormula>, Box<MlFormula>),
    Implies(Box<MlFormula>, Box<MlFormula>),
    Box_(Box<MlFormula>),
    Dia(Box<MlFormula>),
    BoxInv(Box<MlFormula>),
    DiaInv(Box<MlFormula>),
}

use MlFormula::*;

pub fn ml_not(f: MlFormula) -> MlFormula {
    Not(Box::new(f))
}

pub fn ml_and(a: MlFormula, b: MlFormula) -> MlFormula {
    And(Box::new(a), Box::new(b))
}

pub fn ml_or(a: MlFormula, b: MlFormula) -> MlFormula {
    Or(Box::new(a), Box::new(b))
}

pub fn ml_implies(a: MlFormula, b: MlFormula) -> MlFormula {
    Implies(Box::new(a), Box::new(b))
}

pub fn ml_box(f: MlFormula) -> MlFormula {
    Box_(Box::new(f))
}

pub fn ml_dia(f: MlFormula) -> MlFormula {
    Dia(Box::new(f))
}

pub fn ml_boxinv(f: MlFormula) -> MlFormula {
    BoxInv(Box::new(f))
}

pub fn ml_diainv(f: MlFormula) -> MlFormula {
    DiaInv(Box::new(f))
}

impl MlFormula {
    /// Maximum nesting depth of modal operators.
    pub fn modal_degree(&self) -> usize {
        match self {
            Top | Bot | Paml(_) => 0,
            Not(f) => f.modal_degree(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.modal_degree().max(b.modal_degree()),
            Box_(f) | Dia(f) | BoxInv(f) | DiaInv(f) => 1 + f.modal_degree(),
        }
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            Top | Bot | Paml(_) => false,
            Not(f) | Box_(f) | Dia(f) => f.has_inverse(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.has_inverse() || b.has_inverse(),
            BoxInv(_) | DiaInv(_) => true,
        }
    }

    pub fn has_paml(&self) -> bool {
        match self {
            Top | Bot => false,
            Paml(_) => true,
            Not(f) | Box_(f) | Dia(f) | BoxInv(f) | DiaInv(f) => f.has_paml(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.has_paml() || b.has_paml(),
        }
    }

    /// Place names mentioned by constraint atoms.
    pub fn paml_places(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_places(&mut out);
        out
    }

    fn walk_places(&self, out: &mut BTreeSet<String>) {
        match self {
            Top | Bot => {}
            Paml(c) => out.extend(c.free_vars()),
            Not(f) | Box_(f) | Dia(f) | BoxInv(f) | DiaInv(f) => f.walk_places(out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.walk_places(out);
                b.walk_places(out);
            }
        }
    }
}

impl fmt::Display for MlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ml(self, f, 0)
    }
}

// precedence: 0 = implies, 1 = or, 2 = and, 3 = prefix operators
fn write_ml(x: &MlFormula, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
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
        Top => write!(f, "top"),
        Bot => write!(f, "bot"),
        Paml(c) => write!(f, "{{{c}}}"),
        Not(g) => {
            write!(f, "!")?;
            write_ml(g, f, 3)
        }
        Box_(g) => {
            write!(f, "box ")?;
            write_ml(g, f, 3)
        }
        Dia(g) => {
            write!(f, "dia ")?;
            write_ml(g, f, 3)
        }
        BoxInv(g) => {
            write!(f, "boxinv ")?;
            write_ml(g, f, 3)
        }
        DiaInv(g) => {
            write!(f, "diainv ")?;
            write_ml(g, f, 3)
        }
        And(a, b) => paren(f, level > 2, &|f| {
            write_ml(a, f, 3)?;
            write!(f, " & ")?;
            write_ml(b, f, 2)
        }),
        Or(a, b) => paren(f, level > 1, &|f| {
            write_ml(a, f, 2)?;
            write!(f, " | ")?;
            write_ml(b, f, 1)
        }),
        Implies(a, b) => paren(f, level > 0, &|f| {
            write_ml(a, f, 1)?;
            write!(f, " => ")?;
            write_ml(b, f, 0)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modal_degree_counts_nesting() {
        assert_eq!(ml_box(Bot).modal_degree(), 1);
        let f = ml_dia(ml_and(ml_box(Bot), ml_diainv(ml_diainv(Top))));
        assert_eq!(f.modal_degree(), 3);
        assert!(f.has_inverse());
        assert!(!ml_box(ml_box(Top)).has_inverse());
    }

    #[test]
    fn paml_detection() {
        use crate::presburger::{geq, LinTerm};
        let atom = Paml(geq(LinTerm::var("p1"), LinTerm::constant(1)));
        let f = ml_and(atom.clone(), ml_box(atom));
        assert!(f.has_paml());
        assert_eq!(f.modal_degree(), 1);
        assert_eq!(f.paml_places().into_iter().collect::<Vec<_>>(), vec!["p1".to_string()]);
    }
}
