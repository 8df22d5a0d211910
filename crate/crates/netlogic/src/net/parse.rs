//! Line-oriented parser for the textual net format.
//!
//! ```text
//! net counter            # header
//! place p init 1         # one line per place, with its initial tokens
//! trans t                # transition block
//! in p:1                 # consumed tokens, space-separated place:weight
//! out p:2                # produced tokens
//! ```

use super::{Marking, NetError, PetriNet};
use num_bigint::BigUint;

struct Line<'a> {
    no: usize,
    words: Vec<(usize, &'a str)>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> NetError {
    NetError::Syntax { line, col, msg: msg.into() }
}

fn split_words(no: usize, raw: &str) -> Line<'_> {
    let body = match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    };
    let mut words = Vec::new();
    let mut col = 0;
    for w in body.split_whitespace() {
        // byte offset is fine for column reporting on ASCII-ish input
        let at = body[col..].find(w).map(|i| col + i).unwrap_or(col);
        col = at + w.len();
        words.push((at + 1, w));
    }
    Line { no, words }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().map(|c| c.is_ascii_alphabetic() || c == '_').unwrap_or(false)
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_nat(line: usize, col: usize, s: &str) -> Result<BigUint, NetError> {
    if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
        Ok(s.parse().expect("digit-only string"))
    } else {
        Err(syntax(line, col, format!("expected a natural number, found `{s}`")))
    }
}

fn parse_weight(line: usize, col: usize, s: &str) -> Result<u64, NetError> {
    s.parse().map_err(|_| syntax(line, col, format!("expected a weight, found `{s}`")))
}

pub fn parse_net(text: &str) -> Result<PetriNet, NetError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| split_words(i + 1, raw))
        .filter(|l| !l.words.is_empty())
        .collect();
    let mut it = lines.iter();

    let header = it.next().ok_or_else(|| syntax(1, 1, "empty input, expected `net <name>`"))?;
    let name = match header.words.as_slice() {
        [(_, "net"), (_, n)] if is_ident(n) => (*n).to_string(),
        [(_, "net"), (c, n)] => return Err(syntax(header.no, *c, format!("bad net name `{n}`"))),
        [(c, w), ..] => return Err(syntax(header.no, *c, format!("expected `net`, found `{w}`"))),
        [] => unreachable!(),
    };

    let mut places: Vec<String> = Vec::new();
    let mut init: Vec<BigUint> = Vec::new();
    let mut rest: Vec<&Line> = Vec::new();
    let mut in_places = true;
    for line in it {
        let first = line.words[0].1;
        if in_places && first == "place" {
            match line.words.as_slice() {
                [_, (pc, p), (_, "init"), (vc, v)] => {
                    if !is_ident(p) {
                        return Err(syntax(line.no, *pc, format!("bad place name `{p}`")));
                    }
                    if places.iter().any(|q| q == p) {
                        return Err(NetError::DuplicateIdent((*p).to_string()));
                    }
                    places.push((*p).to_string());
                    init.push(parse_nat(line.no, *vc, v)?);
                }
                _ => {
                    return Err(syntax(line.no, 1, "expected `place <name> init <nat>`"));
                }
            }
        } else {
            in_places = false;
            rest.push(line);
        }
    }

    let mut net = PetriNet::new(name, places, Marking(init))?;

    let mut i = 0;
    while i < rest.len() {
        let line = rest[i];
        let tname = match line.words.as_slice() {
            [(_, "trans"), (_, t)] if is_ident(t) => (*t).to_string(),
            [(_, "trans"), (c, t)] => {
                return Err(syntax(line.no, *c, format!("bad transition name `{t}`")));
            }
            [(c, w), ..] => {
                return Err(syntax(line.no, *c, format!("expected `trans`, found `{w}`")));
            }
            [] => unreachable!(),
        };
        i += 1;
        let mut ins: Vec<(String, u64)> = Vec::new();
        let mut outs: Vec<(String, u64)> = Vec::new();
        let mut seen_in = false;
        let mut seen_out = false;
        while i < rest.len() {
            let line = rest[i];
            let kw = line.words[0].1;
            let (dst, seen) = match kw {
                "in" if !seen_in && !seen_out => (&mut ins, &mut seen_in),
                "out" if !seen_out => (&mut outs, &mut seen_out),
                "in" | "out" => {
                    return Err(syntax(line.no, line.words[0].0, format!("misplaced `{kw}` line")));
                }
                _ => break,
            };
            *seen = true;
            for &(col, w) in &line.words[1..] {
                let (p, wt) = w
                    .split_once(':')
                    .ok_or_else(|| syntax(line.no, col, format!("expected `place:weight`, found `{w}`")))?;
                let wt = parse_weight(line.no, col, wt)?;
                dst.push((p.to_string(), wt));
            }
            i += 1;
        }
        let ins: Vec<(&str, u64)> = ins.iter().map(|(p, w)| (p.as_str(), *w)).collect();
        let outs: Vec<(&str, u64)> = outs.iter().map(|(p, w)| (p.as_str(), *w)).collect();
        net.add_transition(tname, &ins, &outs)?;
    }
    Ok(net)
}
