//! Textual syntax for arithmetic formulas and semilinear sets.
//!
//! Formula grammar (precedence `!` > `&` > `|` > `=>`, quantifier scope
//! maximal to the right):
//!
//! ```text
//! exists k . 2*p1 - p2 <= 3 & p1 mod 4 = 2 | !(p1 = p2)
//! ```
//!
//! Semilinear sets are `base (..) periods (..)(..)` blocks separated by `;`:
//!
//! ```text
//! base (1,0) periods (0,1)(1,1) ; base (2,2) periods
//! ```

use super::*;
use num_bigint::{BigInt, BigUint};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigUint),
    Sym(&'static str),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn syntax(at: usize, msg: impl Into<String>) -> PresError {
    PresError::Syntax { at, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PresError> {
    let b: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigUint = b[start..i].iter().collect::<String>().parse().unwrap();
            out.push((start, Tok::Num(n)));
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
        let two: String = b[i..(i + 2).min(b.len())].iter().collect();
        let sym = match two.as_str() {
            "<=" => Some("<="),
            ">=" => Some(">="),
            "=>" => Some("=>"),
            _ => None,
        };
        if let Some(sym) = sym {
            out.push((i, Tok::Sym(sym)));
            i += 2;
            continue;
        }
        let sym = match c {
            '(' => "(",
            ')' => ")",
            ',' => ",",
            ';' => ";",
            '.' => ".",
            '&' => "&",
            '|' => "|",
            '!' => "!",
            '=' => "=",
            '<' => "<",
            '>' => ">",
            '+' => "+",
            '-' => "-",
            '*' => "*",
            _ => return Err(syntax(i, format!("unexpected character `{c}`"))),
        };
        out.push((i, Tok::Sym(sym)));
        i += 1;
    }
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(i, _)| *i).unwrap_or_else(|| {
            self.toks.last().map(|(i, _)| i + 1).unwrap_or(0)
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
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

    fn expect_sym(&mut self, s: &str) -> Result<(), PresError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(syntax(self.at(), format!("expected `{s}`")))
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

    fn expect_ident(&mut self) -> Result<String, PresError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(syntax(self.at(), "expected an identifier")),
        }
    }

    fn expect_num(&mut self) -> Result<BigUint, PresError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(syntax(self.at(), "expected a number")),
        }
    }
}

pub fn parse_presburger(text: &str) -> Result<PresFormula, PresError> {
    let mut lx = Lexer { toks: lex(text)?, pos: 0 };
    let f = parse_implies(&mut lx)?;
    if lx.peek().is_some() {
        return Err(syntax(lx.at(), "trailing input after formula"));
    }
    Ok(f)
}

fn parse_implies(lx: &mut Lexer) -> Result<PresFormula, PresError> {
    let lhs = parse_or(lx)?;
    if lx.eat_sym("=>") {
        let rhs = parse_implies(lx)?;
        Ok(implies(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_or(lx: &mut Lexer) -> Result<PresFormula, PresError> {
    let mut parts = vec![parse_and(lx)?];
    while lx.eat_sym("|") {
        parts.push(parse_and(lx)?);
    }
    Ok(or(parts))
}

fn parse_and(lx: &mut Lexer) -> Result<PresFormula, PresError> {
    let mut parts = vec![parse_unary(lx)?];
    while lx.eat_sym("&") {
        parts.push(parse_unary(lx)?);
    }
    Ok(and(parts))
}

fn parse_quantifier(lx: &mut Lexer, universal: bool) -> Result<PresFormula, PresError> {
    let v = lx.expect_ident()?;
    lx.expect_sym(".")?;
    let body = parse_implies(lx)?;
    Ok(if universal { forall(v, body) } else { exists(v, body) })
}

fn parse_unary(lx: &mut Lexer) -> Result<PresFormula, PresError> {
    if lx.eat_sym("!") {
        return Ok(not(parse_unary(lx)?));
    }
    if lx.eat_ident("exists") {
        return parse_quantifier(lx, false);
    }
    if lx.eat_ident("forall") {
        return parse_quantifier(lx, true);
    }
    if lx.eat_ident("true") {
        return Ok(tru());
    }
    if lx.eat_ident("false") {
        return Ok(fls());
    }
    // Either a parenthesized formula or an atom starting with `(term ...`.
    if lx.peek() == Some(&Tok::Sym("(")) {
        let save = lx.pos;
        lx.pos += 1;
        if let Ok(f) = parse_implies(lx) {
            if lx.eat_sym(")") && !is_cmp_ahead(lx) {
                return Ok(f);
            }
        }
        lx.pos = save;
    }
    parse_atom(lx)
}

fn is_cmp_ahead(lx: &Lexer) -> bool {
    matches!(
        lx.peek(),
        Some(Tok::Sym("<=")) | Some(Tok::Sym(">=")) | Some(Tok::Sym("="))
            | Some(Tok::Sym("<")) | Some(Tok::Sym(">"))
    ) || matches!(lx.peek(), Some(Tok::Ident(s)) if s == "mod")
        || matches!(lx.peek(), Some(Tok::Sym("+")) | Some(Tok::Sym("-")) | Some(Tok::Sym("*")))
}

fn parse_atom(lx: &mut Lexer) -> Result<PresFormula, PresError> {
    let t1 = parse_term(lx)?;
    if lx.eat_ident("mod") {
        let c = lx.expect_num()?;
        lx.expect_sym("=")?;
        let k = parse_term(lx)?;
        return congruent(c, t1, k);
    }
    let at = lx.at();
    match lx.next() {
        Some(Tok::Sym("<=")) => Ok(leq(t1, parse_term(lx)?)),
        Some(Tok::Sym(">=")) => Ok(geq(t1, parse_term(lx)?)),
        Some(Tok::Sym("<")) => Ok(lt(t1, parse_term(lx)?)),
        Some(Tok::Sym(">")) => Ok(lt(parse_term(lx)?, t1)),
        Some(Tok::Sym("=")) => Ok(eq(t1, parse_term(lx)?)),
        _ => Err(syntax(at, "expected a comparison operator")),
    }
}

fn parse_term(lx: &mut Lexer) -> Result<LinTerm, PresError> {
    let mut acc = parse_summand(lx)?;
    loop {
        if lx.eat_sym("+") {
            acc = acc.add(&parse_summand(lx)?);
        } else if lx.eat_sym("-") {
            acc = acc.sub(&parse_summand(lx)?);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_summand(lx: &mut Lexer) -> Result<LinTerm, PresError> {
    if lx.eat_sym("-") {
        return Ok(parse_summand(lx)?.neg());
    }
    if lx.eat_sym("(") {
        let t = parse_term(lx)?;
        lx.expect_sym(")")?;
        return Ok(t);
    }
    match lx.next() {
        Some(Tok::Num(n)) => {
            if lx.eat_sym("*") {
                let v = lx.expect_ident()?;
                Ok(LinTerm::scaled_var(BigInt::from(n), v))
            } else {
                Ok(LinTerm::constant(BigInt::from(n)))
            }
        }
        Some(Tok::Ident(v)) => Ok(LinTerm::var(v)),
        _ => Err(syntax(lx.at(), "expected a term")),
    }
}

pub fn parse_semilinear(text: &str) -> Result<SemilinearSet, PresError> {
    let mut lx = Lexer { toks: lex(text)?, pos: 0 };
    let mut components = Vec::new();
    let mut dim: Option<usize> = None;
    loop {
        if !lx.eat_ident("base") {
            return Err(syntax(lx.at(), "expected `base`"));
        }
        let base = parse_vector(&mut lx)?;
        match dim {
            None => dim = Some(base.len()),
            Some(d) if d == base.len() => {}
            Some(d) => return Err(PresError::DimensionMismatch { got: base.len(), want: d }),
        }
        let mut periods = Vec::new();
        if lx.eat_ident("periods") {
            while lx.peek() == Some(&Tok::Sym("(")) {
                let p = parse_vector(&mut lx)?;
                if p.len() != base.len() {
                    return Err(PresError::DimensionMismatch { got: p.len(), want: base.len() });
                }
                periods.push(p);
            }
        }
        components.push(LinearSet { base, periods });
        if !lx.eat_sym(";") {
            break;
        }
    }
    if lx.peek().is_some() {
        return Err(syntax(lx.at(), "trailing input after semilinear set"));
    }
    SemilinearSet::new(dim.unwrap_or(0), components)
}

fn parse_vector(lx: &mut Lexer) -> Result<Vec<BigUint>, PresError> {
    lx.expect_sym("(")?;
    let mut out = Vec::new();
    if lx.eat_sym(")") {
        return Ok(out);
    }
    loop {
        out.push(lx.expect_num()?);
        if lx.eat_sym(")") {
            return Ok(out);
        }
        lx.expect_sym(",")?;
    }
}
