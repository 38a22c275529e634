//! Regular expressions over the alphabet {0, 1}, used to present regular
//! trees: `tree(R)` is the body of the prefix closure of the language of `R`.
//!
//! Syntax: `R := alt; alt := cat ('|' cat)*; cat := rep+; rep := atom '*'*;
//! atom := '0' | '1' | 'e' | '(' alt ')'`. The letter `e` is the empty word.
//! Whitespace is ignored.

use std::collections::HashMap;
use std::fmt;

use crate::budget;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    Bit(u8),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn parse(text: &str) -> Result<Regex> {
        Regex::parse_at(text, 1, 1)
    }

    /// Parses `text`, reporting error positions relative to the given
    /// starting line and column.
    pub fn parse_at(text: &str, line: usize, column: usize) -> Result<Regex> {
        let mut p = RegexParser { chars: text.chars().collect(), pos: 0, line, column };
        let re = p.alt()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected `{}` in regular expression", p.chars[p.pos])));
        }
        Ok(re)
    }
}

struct RegexParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl RegexParser {
    fn skip_ws(&mut self) {
        while let Some(c) = self.chars.get(self.pos) {
            if !c.is_whitespace() {
                break;
            }
            if *c == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
        self.column += 1;
    }

    fn error(&self, message: String) -> Error {
        Error::Parse { line: self.line, column: self.column, message }
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        loop {
            match self.cat()? {
                Regex::Alt(inner) => parts.extend(inner),
                other => parts.push(other),
            }
            if self.peek() != Some('|') {
                break;
            }
            self.bump();
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Regex::Alt(parts) })
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if !matches!(c, '0' | '1' | 'e' | '(') {
                break;
            }
            match self.rep()? {
                Regex::Concat(inner) => parts.extend(inner),
                other => parts.push(other),
            }
        }
        match parts.len() {
            0 => Err(self.error("expected a regular expression term".into())),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn rep(&mut self) -> Result<Regex> {
        let mut re = self.atom()?;
        while self.peek() == Some('*') {
            self.bump();
            re = Regex::Star(Box::new(re));
        }
        Ok(re)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some('0') => {
                self.bump();
                Ok(Regex::Bit(0))
            }
            Some('1') => {
                self.bump();
                Ok(Regex::Bit(1))
            }
            Some('e') => {
                self.bump();
                Ok(Regex::Epsilon)
            }
            Some('(') => {
                self.bump();
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)` in regular expression".into()));
                }
                self.bump();
                // grouping only; keep concatenations flat
                Ok(inner)
            }
            _ => Err(self.error("expected `0`, `1`, `e` or `(`".into())),
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Epsilon => write!(f, "e"),
            Regex::Bit(b) => write!(f, "{b}"),
            Regex::Alt(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Regex::Concat(parts) => {
                for p in parts {
                    match p {
                        Regex::Alt(_) | Regex::Concat(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Regex::Star(inner) => match **inner {
                Regex::Alt(_) | Regex::Concat(_) => write!(f, "({inner})*"),
                _ => write!(f, "{inner}*"),
            },
        }
    }
}

/// Nondeterministic automaton with epsilon moves.
#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    bit: Vec<[Vec<usize>; 2]>,
}

impl Nfa {
    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.bit.push([Vec::new(), Vec::new()]);
        self.eps.len() - 1
    }

    /// Thompson construction; returns (entry, exit).
    fn build(&mut self, re: &Regex) -> (usize, usize) {
        match re {
            Regex::Epsilon => {
                let s = self.add_state();
                (s, s)
            }
            Regex::Bit(b) => {
                let s = self.add_state();
                let t = self.add_state();
                self.bit[s][*b as usize].push(t);
                (s, t)
            }
            Regex::Concat(parts) => {
                let (entry, mut exit) = self.build(&parts[0]);
                for p in &parts[1..] {
                    let (s, t) = self.build(p);
                    self.eps[exit].push(s);
                    exit = t;
                }
                (entry, exit)
            }
            Regex::Alt(parts) => {
                let entry = self.add_state();
                let exit = self.add_state();
                for p in parts {
                    let (s, t) = self.build(p);
                    self.eps[entry].push(s);
                    self.eps[t].push(exit);
                }
                (entry, exit)
            }
            Regex::Star(inner) => {
                let hub = self.add_state();
                let (s, t) = self.build(inner);
                self.eps[hub].push(s);
                self.eps[t].push(hub);
                (hub, hub)
            }
        }
    }

    fn closure(&self, mut set: Vec<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.eps.len()];
        let mut work = set.clone();
        for &s in &set {
            seen[s] = true;
        }
        while let Some(s) = work.pop() {
            for &t in &self.eps[s] {
                if !seen[t] {
                    seen[t] = true;
                    set.push(t);
                    work.push(t);
                }
            }
        }
        set.sort_unstable();
        set
    }
}

/// Deterministic automaton for the prefix closure of `L(re)`: the initial
/// state, and a partial transition table restricted to states from which an
/// accepting state is reachable.
pub(crate) fn prefix_closure_dfa(re: &Regex) -> Result<(Option<usize>, Vec<[Option<usize>; 2]>)> {
    let mut nfa = Nfa::default();
    let (entry, exit) = nfa.build(re);

    let start = nfa.closure(vec![entry]);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    let mut trans: Vec<[Option<usize>; 2]> = Vec::new();
    index.insert(start, 0);
    let mut next = 0;
    while next < subsets.len() {
        let current = subsets[next].clone();
        let mut row = [None, None];
        for (b, slot) in row.iter_mut().enumerate() {
            let mut moved: Vec<usize> = current.iter().flat_map(|&s| nfa.bit[s][b].iter().copied()).collect();
            if moved.is_empty() {
                continue;
            }
            moved.sort_unstable();
            moved.dedup();
            let target = nfa.closure(moved);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    budget::check(id + 1, "regular tree construction")?;
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            *slot = Some(id);
        }
        trans.push(row);
        next += 1;
    }

    let accepting: Vec<bool> = subsets.iter().map(|s| s.binary_search(&exit).is_ok()).collect();
    let adj: Vec<Vec<usize>> = trans.iter().map(|row| row.iter().flatten().copied().collect()).collect();
    let productive = crate::graph::can_reach(&adj, &accepting);
    let trans = trans
        .into_iter()
        .map(|row| row.map(|t| t.filter(|&t| productive[t])))
        .collect();
    Ok((productive[0].then_some(0), trans))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let re = Regex::parse("0* | 0*10*").unwrap();
        assert_eq!(re.to_string(), "0*|0*10*");
        assert_eq!(Regex::parse(&re.to_string()).unwrap(), re);
        let re = Regex::parse("(01|1)*0").unwrap();
        assert_eq!(re.to_string(), "(01|1)*0");
        assert_eq!(Regex::parse("((0))").unwrap(), Regex::Bit(0));
    }

    #[test]
    fn malformed_regexes_are_parse_errors() {
        for bad in ["", "(", "0|", "2", "0)", "*"] {
            assert!(matches!(Regex::parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn prefix_closure_of_finite_language() {
        let (init, trans) = prefix_closure_dfa(&Regex::parse("01").unwrap()).unwrap();
        assert_eq!(init, Some(0));
        // 0 -0-> 1 -1-> 2 (accepting, no moves)
        assert_eq!(trans[0], [Some(1), None]);
        assert_eq!(trans[1], [None, Some(2)]);
        assert_eq!(trans[2], [None, None]);
    }
}
