//! Surface syntax for building sets.
//!
//! ```text
//! script := ('let' ident '=' expr ';')* expr
//! expr   := xor ('|' xor)*
//! xor    := diff ('^' diff)*
//! diff   := and ('\' and)*
//! and    := not ('&' not)*
//! not    := '!' not | atom
//! atom   := 'full' | 'empty' | 'cyl(' bits ')' | 'pt(' bits ',' bits ')'
//!         | 'nofactor(' bits ')' | 'tree(' regex ')' | ident | '(' expr ')'
//! bits   := [01]+ | 'e'
//! ```
//!
//! `|` is union, `^` symmetric difference, `\` difference, `&` intersection
//! and `!` complement. Binary operators are left-associative.

use std::collections::HashMap;
use std::fmt;

use crate::closed::{build_primitive, Primitive};
use crate::delta02::{combine, lift, BoolOp, Delta02Set};
use crate::error::{Error, Result};
use crate::point::format_bits;
use crate::regex::Regex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Full,
    Empty,
    Cyl(Vec<u8>),
    Pt(Vec<u8>, Vec<u8>),
    NoFactor(Vec<u8>),
    Tree(Regex),
    Ref(String),
    Complement(Box<SetExpr>),
    Binary(BoolOp, Box<SetExpr>, Box<SetExpr>),
}

/// A sequence of `let` bindings followed by the expression to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub bindings: Vec<(String, SetExpr)>,
    pub body: SetExpr,
}

const KEYWORDS: [&str; 7] = ["full", "empty", "let", "cyl", "pt", "nofactor", "tree"];

fn precedence(op: BoolOp) -> u8 {
    match op {
        BoolOp::Union => 1,
        BoolOp::SymDiff => 2,
        BoolOp::Difference => 3,
        BoolOp::Intersect => 4,
    }
}

fn symbol(op: BoolOp) -> char {
    match op {
        BoolOp::Union => '|',
        BoolOp::SymDiff => '^',
        BoolOp::Difference => '\\',
        BoolOp::Intersect => '&',
    }
}

const PREC_NOT: u8 = 5;
const PREC_ATOM: u8 = 6;

impl SetExpr {
    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Binary(op, ..) => precedence(*op),
            SetExpr::Complement(_) => PREC_NOT,
            _ => PREC_ATOM,
        }
    }

    pub fn binary(op: BoolOp, lhs: SetExpr, rhs: SetExpr) -> SetExpr {
        SetExpr::Binary(op, Box::new(lhs), Box::new(rhs))
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Full => write!(f, "full"),
            SetExpr::Empty => write!(f, "empty"),
            SetExpr::Cyl(w) => write!(f, "cyl({})", format_bits(w)),
            SetExpr::Pt(u, v) => write!(f, "pt({},{})", format_bits(u), format_bits(v)),
            SetExpr::NoFactor(w) => write!(f, "nofactor({})", format_bits(w)),
            SetExpr::Tree(re) => write!(f, "tree({re})"),
            SetExpr::Ref(name) => write!(f, "{name}"),
            SetExpr::Complement(inner) => {
                if inner.precedence() < PREC_NOT {
                    write!(f, "!({inner})")
                } else {
                    write!(f, "!{inner}")
                }
            }
            SetExpr::Binary(op, lhs, rhs) => {
                let p = precedence(*op);
                if lhs.precedence() < p {
                    write!(f, "({lhs})")?;
                } else {
                    write!(f, "{lhs}")?;
                }
                write!(f, " {} ", symbol(*op))?;
                if rhs.precedence() <= p {
                    write!(f, "({rhs})")
                } else {
                    write!(f, "{rhs}")
                }
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in &self.bindings {
            write!(f, "let {name} = {e}; ")?;
        }
        write!(f, "{}", self.body)
    }
}

pub fn parse(text: &str) -> Result<Script> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, line: 1, column: 1, defined: Vec::new() };
    let mut bindings = Vec::new();
    loop {
        p.skip_ws();
        let mark = p.save();
        if p.ident().as_deref() == Some("let") {
            let name = p.expect_ident()?;
            p.expect('=')?;
            let e = p.expr()?;
            p.expect(';')?;
            p.defined.push(name.clone());
            bindings.push((name, e));
        } else {
            p.restore(mark);
            break;
        }
    }
    let body = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(Script { bindings, body })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    defined: Vec<String>,
}

impl Parser {
    fn save(&self) -> (usize, usize, usize) {
        (self.pos, self.line, self.column)
    }

    fn restore(&mut self, (pos, line, column): (usize, usize, usize)) {
        self.pos = pos;
        self.line = line;
        self.column = column;
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }

    fn advance(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.advance();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        let first = *self.chars.get(start)?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.advance();
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn expect_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        match self.ident() {
            Some(name) if !KEYWORDS.contains(&name.as_str()) => Ok(name),
            Some(name) => Err(Error::Parse { line, column, message: format!("`{name}` is a reserved word") }),
            None => Err(self.error("expected an identifier")),
        }
    }

    fn bits(&mut self) -> Result<Vec<u8>> {
        match self.peek() {
            Some('e') => {
                self.advance();
                Ok(Vec::new())
            }
            Some('0' | '1') => {
                let mut out = Vec::new();
                while let Some(c @ ('0' | '1')) = self.chars.get(self.pos).copied() {
                    out.push((c == '1') as u8);
                    self.advance();
                }
                Ok(out)
            }
            _ => Err(self.error("expected a bit string (`e` for the empty word)")),
        }
    }

    fn expr(&mut self) -> Result<SetExpr> {
        self.binary_level(1)
    }

    fn binary_level(&mut self, level: u8) -> Result<SetExpr> {
        if level > 4 {
            return self.not();
        }
        let op = match level {
            1 => BoolOp::Union,
            2 => BoolOp::SymDiff,
            3 => BoolOp::Difference,
            _ => BoolOp::Intersect,
        };
        let mut lhs = self.binary_level(level + 1)?;
        while self.peek() == Some(symbol(op)) {
            self.advance();
            let rhs = self.binary_level(level + 1)?;
            lhs = SetExpr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<SetExpr> {
        if self.peek() == Some('!') {
            self.advance();
            return Ok(SetExpr::Complement(Box::new(self.not()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<SetExpr> {
        if self.peek() == Some('(') {
            self.advance();
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let Some(name) = self.ident() else {
            return Err(match self.peek() {
                Some(c) => self.error(format!("unexpected `{c}`")),
                None => self.error("unexpected end of input"),
            });
        };
        match name.as_str() {
            "full" => Ok(SetExpr::Full),
            "empty" => Ok(SetExpr::Empty),
            "cyl" => {
                self.expect('(')?;
                let w = self.bits()?;
                self.expect(')')?;
                Ok(SetExpr::Cyl(w))
            }
            "nofactor" => {
                self.expect('(')?;
                let w = self.bits()?;
                self.expect(')')?;
                Ok(SetExpr::NoFactor(w))
            }
            "pt" => {
                self.expect('(')?;
                let at_stem = self.save();
                let stem = self.bits().map_err(|_| {
                    let (_, line, column) = at_stem;
                    Error::Parse {
                        line,
                        column,
                        message: "pt requires two bit arguments (write `e` for an empty stem)".into(),
                    }
                })?;
                self.expect(',')?;
                self.skip_ws();
                let (cl, cc) = (self.line, self.column);
                let cycle = self.bits()?;
                if cycle.is_empty() {
                    return Err(Error::Parse { line: cl, column: cc, message: "the cycle of pt must be nonempty".into() });
                }
                self.expect(')')?;
                Ok(SetExpr::Pt(stem, cycle))
            }
            "tree" => {
                self.expect('(')?;
                let (line, column) = (self.line, self.column);
                let start = self.pos;
                let mut depth = 0usize;
                loop {
                    match self.chars.get(self.pos) {
                        None => return Err(self.error("unterminated `tree(`")),
                        Some(')') if depth == 0 => break,
                        Some(')') => depth -= 1,
                        Some('(') => depth += 1,
                        _ => {}
                    }
                    self.advance();
                }
                let raw: String = self.chars[start..self.pos].iter().collect();
                let re = Regex::parse_at(&raw, line, column)?;
                self.advance();
                Ok(SetExpr::Tree(re))
            }
            "let" => Err(Error::Parse { line, column, message: "`let` is only allowed before the final expression".into() }),
            _ => {
                if self.defined.contains(&name) {
                    Ok(SetExpr::Ref(name))
                } else {
                    Err(Error::UnknownIdentifier(name))
                }
            }
        }
    }
}

/// Evaluates an expression; references resolve against `env`.
pub fn compile(e: &SetExpr, env: &HashMap<String, Delta02Set>) -> Result<Delta02Set> {
    let primitive = |p: Primitive| -> Result<Delta02Set> { Ok(lift(&build_primitive(&p)?)) };
    match e {
        SetExpr::Full => Ok(Delta02Set::constant(true)),
        SetExpr::Empty => Ok(Delta02Set::constant(false)),
        SetExpr::Cyl(w) => primitive(Primitive::Cylinder(w.clone())),
        SetExpr::Pt(u, v) => primitive(Primitive::Point(u.clone(), v.clone())),
        SetExpr::NoFactor(w) => primitive(Primitive::NoFactor(w.clone())),
        SetExpr::Tree(re) => primitive(Primitive::Tree(re.clone())),
        SetExpr::Ref(name) => env.get(name).cloned().ok_or_else(|| Error::UnknownIdentifier(name.clone())),
        SetExpr::Complement(inner) => Ok(compile(inner, env)?.complement()),
        SetExpr::Binary(op, lhs, rhs) => combine(*op, &compile(lhs, env)?, &compile(rhs, env)?),
    }
}

pub fn compile_script(script: &Script) -> Result<Delta02Set> {
    let mut env = HashMap::new();
    for (name, e) in &script.bindings {
        let value = compile(e, &env)?;
        env.insert(name.clone(), value);
    }
    compile(&script.body, &env)
}

/// Parses and compiles `text`.
pub fn evaluate(text: &str) -> Result<Delta02Set> {
    compile_script(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::ClosedSet;
    use crate::point::UpPoint;

    fn body(text: &str) -> SetExpr {
        parse(text).unwrap().body
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            body("cyl(0) ^ pt(0,0)"),
            SetExpr::binary(BoolOp::SymDiff, SetExpr::Cyl(vec![0]), SetExpr::Pt(vec![0], vec![0]))
        );
        let script = parse("let P = nofactor(11); P & !cyl(1)").unwrap();
        assert_eq!(script.bindings, vec![("P".to_string(), SetExpr::NoFactor(vec![1, 1]))]);
        assert_eq!(
            script.body,
            SetExpr::binary(
                BoolOp::Intersect,
                SetExpr::Ref("P".into()),
                SetExpr::Complement(Box::new(SetExpr::Cyl(vec![1])))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        use SetExpr::*;
        let (a, b, c) = (Cyl(vec![0]), Cyl(vec![1]), Full);
        assert_eq!(
            body("cyl(0) | cyl(1) & full"),
            SetExpr::binary(BoolOp::Union, a.clone(), SetExpr::binary(BoolOp::Intersect, b.clone(), c.clone()))
        );
        assert_eq!(
            body("cyl(0) \\ cyl(1) \\ full"),
            SetExpr::binary(BoolOp::Difference, SetExpr::binary(BoolOp::Difference, a.clone(), b.clone()), c.clone())
        );
        assert_eq!(
            body("cyl(0) ^ cyl(1) \\ full"),
            SetExpr::binary(BoolOp::SymDiff, a.clone(), SetExpr::binary(BoolOp::Difference, b.clone(), c.clone()))
        );
        assert_eq!(body("!cyl(0) & cyl(1)"), SetExpr::binary(BoolOp::Intersect, Complement(Box::new(a)), b));
    }

    #[test]
    fn syntax_errors() {
        let err = parse("pt(,0)").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 4, .. }), "{err}");
        assert!(matches!(parse("pt(0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("pt(0,e)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("cyl(2)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("full |"), Err(Error::Parse { .. })));
        assert!(matches!(parse("tree(0|)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("X"), Err(Error::UnknownIdentifier(_))));
        assert!(matches!(parse("let full = empty; full"), Err(Error::Parse { .. })));
        let err = parse("full &\n  (cyl(0) |").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "cyl(0) ^ pt(0,0)",
            "let P = nofactor(11); P & !cyl(1)",
            "!(cyl(0) | cyl(1)) \\ (full ^ empty)",
            "cyl(0) \\ (cyl(1) \\ full)",
            "tree(0*|0*10*) & pt(e,01)",
            "!!cyl(e)",
        ] {
            let script = parse(text).unwrap();
            assert_eq!(parse(&script.to_string()).unwrap(), script, "{text}");
        }
    }

    #[test]
    fn compile_examples() {
        assert_eq!(evaluate("full").unwrap(), Delta02Set::constant(true));
        assert_eq!(evaluate("cyl(0) | cyl(1)").unwrap(), Delta02Set::constant(true));
        let s = evaluate("full \\ pt(0,0)").unwrap();
        let zeros = ClosedSet::point(&UpPoint::parse("e", "0").unwrap());
        assert_eq!(s.components(), &[zeros]);
        assert_eq!(s.condition(), &[true, false]);
        assert_eq!(evaluate("let P = nofactor(11); P \\ P").unwrap(), Delta02Set::constant(false));
    }
}
