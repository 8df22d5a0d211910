//! Parsers for the FO and ML surface syntax.
//!
//! FO: `forall v . f`, `exists v . f`, infix `& | => !`, atoms `v -> w`,
//! `v ->* w`, `v ->+ w`, `v = w`, `init(v)`. Precedence `!` > `&` > `|` >
//! `=>`; quantifier scope extends maximally to the right. Rebinding a name
//! on one branch is resolved by renaming the inner binder at parse time.
//!
//! ML: prefix `box dia boxinv diainv !`, constants `top bot`, the same
//! infix connectives, and `{...}` constraint atoms using the arithmetic
//! syntax (quantifier-free).

use super::fo::*;
use super::ml::*;
use super::LogicError;
use crate::presburger::parse_presburger;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Constraint(String),
}

fn syntax(at: usize, msg: impl Into<String>) -> LogicError {
    LogicError::Syntax { at, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let b: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < b.len() && b[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == '_' || b[i] == '\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(b[start..i].iter().collect())));
            continue;
        }
        if c == '{' {
            let start = i;
            let mut depth = 1;
            i += 1;
            let inner_start = i;
            while i < b.len() && depth > 0 {
                match b[i] {
                    '{' => depth += 1,
                    '}' => depth -= 1,
                    _ => {}
                }
                i += 1;
            }
            if depth > 0 {
                return Err(syntax(start, "unterminated `{` constraint"));
            }
            out.push((start, Tok::Constraint(b[inner_start..i - 1].iter().collect())));
            continue;
        }
        let rest: String = b[i..(i + 3).min(b.len())].iter().collect();
        let sym = if rest.starts_with("->*") {
            Some(("->*", 3))
        } else if rest.starts_with("->+") {
            Some(("->+", 3))
        } else if rest.starts_with("->") {
            Some(("->", 2))
        } else if rest.starts_with("=>") {
            Some(("=>", 2))
        } else {
            match c {
                '(' => Some(("(", 1)),
                ')' => Some((")", 1)),
                '.' => Some((".", 1)),
                '&' => Some(("&", 1)),
                '|' => Some(("|", 1)),
                '!' => Some(("!", 1)),
                '=' => Some(("=", 1)),
                _ => None,
            }
        };
        match sym {
            Some((s, n)) => {
                out.push((i, Tok::Sym(s)));
                i += n;
            }
            None => return Err(syntax(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct P {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or_else(|| self.toks.last().map(|(i, _)| i + 1).unwrap_or(0))
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        match self.peek() {
            Some(Tok::Sym(t)) if *t == s => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        match self.peek() {
            Some(Tok::Ident(t)) if t == s => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), LogicError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(syntax(self.at(), format!("expected `{s}`")))
        }
    }

    fn expect_var(&mut self) -> Result<String, LogicError> {
        match self.peek() {
            Some(Tok::Ident(v)) if !is_keyword(v) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(syntax(self.at(), "expected a variable name")),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "exists" | "init" | "box" | "dia" | "boxinv" | "diainv" | "top" | "bot")
}

pub fn parse_fo(text: &str) -> Result<FoFormula, LogicError> {
    let mut p = P { toks: lex(text)?, pos: 0 };
    let f = fo_implies_level(&mut p)?;
    if p.peek().is_some() {
        return Err(syntax(p.at(), "trailing input after formula"));
    }
    Ok(alpha_rename(&f, &mut Vec::new(), &mut HashMap::new()))
}

/// Like `parse_fo` but errors on free variables.
pub fn parse_fo_sentence(text: &str) -> Result<FoFormula, LogicError> {
    let f = parse_fo(text)?;
    match f.free_vars().into_iter().next() {
        None => Ok(f),
        Some(v) => Err(LogicError::UnboundVariable(v)),
    }
}

/// Renames inner binders that shadow an enclosing binder of the same name:
/// the second `x` on a branch becomes `x__1`, then `x__2`, and so on.
fn alpha_rename(
    f: &FoFormula,
    scope: &mut Vec<(String, String)>,
    counters: &mut HashMap<String, usize>,
) -> FoFormula {
    use FoFormula::*;
    let resolve = |v: &String, scope: &Vec<(String, String)>| -> String {
        scope.iter().rev().find(|(orig, _)| orig == v).map(|(_, r)| r.clone()).unwrap_or_else(|| v.clone())
    };
    match f {
        Edge(x, y) => Edge(resolve(x, scope), resolve(y, scope)),
        Star(x, y) => Star(resolve(x, scope), resolve(y, scope)),
        Plus(x, y) => Plus(resolve(x, scope), resolve(y, scope)),
        Eq(x, y) => Eq(resolve(x, scope), resolve(y, scope)),
        Init(x) => Init(resolve(x, scope)),
        Not(g) => fo_not(alpha_rename(g, scope, counters)),
        And(a, b) => fo_and(alpha_rename(a, scope, counters), alpha_rename(b, scope, counters)),
        Or(a, b) => fo_or(alpha_rename(a, scope, counters), alpha_rename(b, scope, counters)),
        Implies(a, b) => {
            fo_implies(alpha_rename(a, scope, counters), alpha_rename(b, scope, counters))
        }
        Forall(v, g) | Exists(v, g) => {
            let shadowed = scope.iter().any(|(orig, _)| orig == v);
            let name = if shadowed {
                let k = counters.entry(v.clone()).or_insert(0);
                *k += 1;
                format!("{v}__{k}")
            } else {
                v.clone()
            };
            scope.push((v.clone(), name.clone()));
            let body = alpha_rename(g, scope, counters);
            scope.pop();
            if matches!(f, Forall(_, _)) {
                fo_forall(name, body)
            } else {
                fo_exists(name, body)
            }
        }
    }
}

fn fo_implies_level(p: &mut P) -> Result<FoFormula, LogicError> {
    let lhs = fo_or_level(p)?;
    if p.eat_sym("=>") {
        Ok(fo_implies(lhs, fo_implies_level(p)?))
    } else {
        Ok(lhs)
    }
}

fn fo_or_level(p: &mut P) -> Result<FoFormula, LogicError> {
    let mut acc = fo_and_level(p)?;
    while p.eat_sym("|") {
        acc = fo_or(acc, fo_and_level(p)?);
    }
    Ok(acc)
}

fn fo_and_level(p: &mut P) -> Result<FoFormula, LogicError> {
    let mut acc = fo_unary(p)?;
    while p.eat_sym("&") {
        acc = fo_and(acc, fo_unary(p)?);
    }
    Ok(acc)
}

fn fo_unary(p: &mut P) -> Result<FoFormula, LogicError> {
    if p.eat_sym("!") {
        return Ok(fo_not(fo_unary(p)?));
    }
    if p.eat_ident("forall") {
        let v = p.expect_var()?;
        p.expect_sym(".")?;
        return Ok(fo_forall(v, fo_implies_level(p)?));
    }
    if p.eat_ident("exists") {
        let v = p.expect_var()?;
        p.expect_sym(".")?;
        return Ok(fo_exists(v, fo_implies_level(p)?));
    }
    if p.eat_ident("init") {
        p.expect_sym("(")?;
        let v = p.expect_var()?;
        p.expect_sym(")")?;
        return Ok(FoFormula::Init(v));
    }
    if p.eat_sym("(") {
        let f = fo_implies_level(p)?;
        p.expect_sym(")")?;
        return Ok(f);
    }
    // binary atom
    let x = p.expect_var()?;
    let at = p.at();
    if p.eat_sym("->*") {
        Ok(FoFormula::Star(x, p.expect_var()?))
    } else if p.eat_sym("->+") {
        Ok(FoFormula::Plus(x, p.expect_var()?))
    } else if p.eat_sym("->") {
        Ok(FoFormula::Edge(x, p.expect_var()?))
    } else if p.eat_sym("=") {
        Ok(FoFormula::Eq(x, p.expect_var()?))
    } else {
        Err(syntax(at, "expected `->`, `->*`, `->+` or `=`"))
    }
}

pub fn parse_ml(text: &str) -> Result<MlFormula, LogicError> {
    let mut p = P { toks: lex(text)?, pos: 0 };
    let f = ml_implies_level(&mut p)?;
    if p.peek().is_some() {
        return Err(syntax(p.at(), "trailing input after formula"));
    }
    Ok(f)
}

fn ml_implies_level(p: &mut P) -> Result<MlFormula, LogicError> {
    let lhs = ml_or_level(p)?;
    if p.eat_sym("=>") {
        Ok(ml_implies(lhs, ml_implies_level(p)?))
    } else {
        Ok(lhs)
    }
}

fn ml_or_level(p: &mut P) -> Result<MlFormula, LogicError> {
    let mut acc = ml_and_level(p)?;
    while p.eat_sym("|") {
        acc = ml_or(acc, ml_and_level(p)?);
    }
    Ok(acc)
}

fn ml_and_level(p: &mut P) -> Result<MlFormula, LogicError> {
    let mut acc = ml_unary(p)?;
    while p.eat_sym("&") {
        acc = ml_and(acc, ml_unary(p)?);
    }
    Ok(acc)
}

fn ml_unary(p: &mut P) -> Result<MlFormula, LogicError> {
    if p.eat_sym("!") {
        return Ok(ml_not(ml_unary(p)?));
    }
    if p.eat_ident("box") {
        return Ok(ml_box(ml_unary(p)?));
    }
    if p.eat_ident("dia") {
        return Ok(ml_dia(ml_unary(p)?));
    }
    if p.eat_ident("boxinv") {
        return Ok(ml_boxinv(ml_unary(p)?));
    }
    if p.eat_ident("diainv") {
        return Ok(ml_diainv(ml_unary(p)?));
    }
    if p.eat_ident("top") {
        return Ok(MlFormula::Top);
    }
    if p.eat_ident("bot") {
        return Ok(MlFormula::Bot);
    }
    if let Some(Tok::Constraint(inner)) = p.peek() {
        let inner = inner.clone();
        let at = p.at();
        p.pos += 1;
        let c = parse_presburger(&inner)
            .map_err(|e| syntax(at, format!("bad constraint: {e}")))?;
        if !c.is_quantifier_free() {
            return Err(LogicError::QuantifierInConstraint);
        }
        return Ok(MlFormula::Paml(c));
    }
    if p.eat_sym("(") {
        let f = ml_implies_level(p)?;
        p.expect_sym(")")?;
        return Ok(f);
    }
    Err(syntax(p.at(), "expected a modal formula"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use FoFormula as F;

    #[test]
    fn deadlock_freeness() {
        let f = parse_fo_sentence("forall x . exists y . x -> y").unwrap();
        let want = fo_forall("x", fo_exists("y", F::Edge("x".into(), "y".into())));
        assert_eq!(f, want);
    }

    #[test]
    fn cyclicity() {
        let f = parse_fo_sentence("forall x . forall y . (x ->* y => y ->* x)").unwrap();
        assert!(f.is_sentence());
        assert!(f.predicates_used().contains(&Pred::Star));
    }

    #[test]
    fn open_formula_rejected_as_sentence() {
        match parse_fo_sentence("x -> y") {
            Err(LogicError::UnboundVariable(_)) => {}
            other => panic!("expected unbound-variable error, got {other:?}"),
        }
        assert!(parse_fo("x -> y").is_ok());
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let f = parse_fo("forall x . x -> x & init(x)").unwrap();
        let want = fo_forall("x", fo_and(F::Edge("x".into(), "x".into()), F::Init("x".into())));
        assert_eq!(f, want);
    }

    #[test]
    fn rebinding_gets_renamed() {
        let f = parse_fo("forall x . (exists x . init(x)) & x -> x").unwrap();
        let want = fo_forall(
            "x",
            fo_and(fo_exists("x__1", F::Init("x__1".into())), F::Edge("x".into(), "x".into())),
        );
        assert_eq!(f, want);
        // disjoint branches keep their names
        let g = parse_fo("(exists x . init(x)) | (exists x . init(x))").unwrap();
        assert_eq!(g.bound_vars().len(), 1);
    }

    #[test]
    fn precedence_chain() {
        let f = parse_fo("!x = x & x = x | x = x => x = x").unwrap();
        // ((!a & a) | a) => a
        match f {
            F::Implies(lhs, _) => match *lhs {
                F::Or(l, _) => assert!(matches!(*l, F::And(_, _))),
                other => panic!("expected Or, got {other:?}"),
            },
            other => panic!("expected Implies, got {other:?}"),
        }
    }

    #[test]
    fn fo_pretty_round_trip() {
        let texts = [
            "forall x . exists y . x -> y",
            "forall x . forall y . (x ->* y => y ->* x)",
            "exists x . !(x -> x) & init(x)",
            "forall z . z ->+ z | !(z = z)",
        ];
        for t in texts {
            let f = parse_fo(t).unwrap();
            let g = parse_fo(&f.to_string()).unwrap();
            assert!(f.alpha_eq(&g), "{t}");
        }
    }

    #[test]
    fn ml_basics() {
        let f = parse_ml("box bot").unwrap();
        assert_eq!(f, ml_box(MlFormula::Bot));
        assert_eq!(f.modal_degree(), 1);
        let g = parse_ml("dia (box bot & diainv diainv top)").unwrap();
        assert_eq!(
            g,
            ml_dia(ml_and(ml_box(MlFormula::Bot), ml_diainv(ml_diainv(MlFormula::Top))))
        );
    }

    #[test]
    fn ml_paml_atoms() {
        let f = parse_ml("{p1 >= 1} & box {p1 >= 1}").unwrap();
        assert!(f.has_paml());
        assert_eq!(f.modal_degree(), 1);
        assert!(parse_ml("{exists k . p1 = k}").is_err());
    }

    #[test]
    fn ml_prefix_binds_tighter_than_and() {
        let f = parse_ml("box bot & dia top").unwrap();
        assert_eq!(f, ml_and(ml_box(MlFormula::Bot), ml_dia(MlFormula::Top)));
    }

    #[test]
    fn ml_pretty_round_trip() {
        let texts = [
            "box bot => diainv dia dia top & diainv box box bot",
            "dia (box bot & diainv diainv top)",
            "{2*p1 - p2 <= 3} | {p1 mod 4 = 2}",
        ];
        for t in texts {
            let f = parse_ml(t).unwrap();
            let g = parse_ml(&f.to_string()).unwrap();
            assert_eq!(f, g, "{t}");
        }
    }
}
