//! Compiled expressions against a direct evaluator that never builds an
//! automaton: leaves are decided on the point itself, trees by Brzozowski
//! derivatives of the regular expression.

use std::collections::{BTreeSet, HashMap};

use delta02_selector::delta02::member_up;
use delta02_selector::expr::{compile_script, parse, SetExpr};
use delta02_selector::oracle::enumerate_up;
use delta02_selector::{BoolOp, Regex, UpPoint};
use proptest::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Re {
    Null,
    Eps,
    Bit(u8),
    Cat(Box<Re>, Box<Re>),
    Alt(BTreeSet<Re>),
    Star(Box<Re>),
}

fn cat(a: Re, b: Re) -> Re {
    match (a, b) {
        (Re::Null, _) | (_, Re::Null) => Re::Null,
        (Re::Eps, x) | (x, Re::Eps) => x,
        (Re::Cat(x, y), z) => cat(*x, cat(*y, z)),
        (x, y) => Re::Cat(Box::new(x), Box::new(y)),
    }
}

fn alt(a: Re, b: Re) -> Re {
    let mut set = BTreeSet::new();
    for r in [a, b] {
        match r {
            Re::Null => {}
            Re::Alt(xs) => set.extend(xs),
            x => {
                set.insert(x);
            }
        }
    }
    match set.len() {
        0 => Re::Null,
        1 => set.into_iter().next().unwrap(),
        _ => Re::Alt(set),
    }
}

fn convert(r: &Regex) -> Re {
    match r {
        Regex::Epsilon => Re::Eps,
        Regex::Bit(b) => Re::Bit(*b),
        Regex::Concat(xs) => xs.iter().rev().fold(Re::Eps, |acc, x| cat(convert(x), acc)),
        Regex::Alt(xs) => xs.iter().fold(Re::Null, |acc, x| alt(acc, convert(x))),
        Regex::Star(x) => Re::Star(Box::new(convert(x))),
    }
}

fn nullable(r: &Re) -> bool {
    match r {
        Re::Null | Re::Bit(_) => false,
        Re::Eps | Re::Star(_) => true,
        Re::Cat(a, b) => nullable(a) && nullable(b),
        Re::Alt(xs) => xs.iter().any(nullable),
    }
}

fn nonempty(r: &Re) -> bool {
    match r {
        Re::Null => false,
        Re::Eps | Re::Bit(_) | Re::Star(_) => true,
        Re::Cat(a, b) => nonempty(a) && nonempty(b),
        Re::Alt(xs) => xs.iter().any(nonempty),
    }
}

fn deriv(r: &Re, c: u8) -> Re {
    match r {
        Re::Null | Re::Eps => Re::Null,
        Re::Bit(b) => if *b == c { Re::Eps } else { Re::Null },
        Re::Cat(a, b) => {
            let left = cat(deriv(a, c), (**b).clone());
            if nullable(a) { alt(left, deriv(b, c)) } else { left }
        }
        Re::Alt(xs) => xs.iter().fold(Re::Null, |acc, x| alt(acc, deriv(x, c))),
        Re::Star(a) => cat(deriv(a, c), r.clone()),
    }
}

/// Every prefix of the point is a prefix of a word of `r`.
fn in_tree(r: &Regex, p: &UpPoint) -> bool {
    let mut cur = convert(r);
    if !nonempty(&cur) {
        return false;
    }
    for &b in p.stem() {
        cur = deriv(&cur, b);
        if !nonempty(&cur) {
            return false;
        }
    }
    let mut seen = BTreeSet::new();
    while seen.insert(cur.clone()) {
        for &b in p.cycle() {
            cur = deriv(&cur, b);
            if !nonempty(&cur) {
                return false;
            }
        }
    }
    true
}

fn has_factor(p: &UpPoint, w: &[u8]) -> bool {
    let window = p.prefix(p.stem().len() + p.cycle().len() + w.len());
    w.is_empty() || window.windows(w.len()).any(|x| x == w)
}

fn direct(e: &SetExpr, env: &HashMap<String, SetExpr>, p: &UpPoint) -> bool {
    match e {
        SetExpr::Full => true,
        SetExpr::Empty => false,
        SetExpr::Cyl(w) => p.prefix(w.len()) == *w,
        SetExpr::Pt(u, v) => UpPoint::new(u.clone(), v.clone()).unwrap() == *p,
        SetExpr::NoFactor(w) => !has_factor(p, w),
        SetExpr::Tree(r) => in_tree(r, p),
        SetExpr::Ref(name) => direct(&env[name], env, p),
        SetExpr::Complement(x) => !direct(x, env, p),
        SetExpr::Binary(op, a, b) => {
            let (x, y) = (direct(a, env, p), direct(b, env, p));
            match op {
                BoolOp::Union => x || y,
                BoolOp::Intersect => x && y,
                BoolOp::Difference => x && !y,
                BoolOp::SymDiff => x != y,
            }
        }
    }
}

fn agree(text: &str, points: &[UpPoint]) {
    let script = parse(text).unwrap();
    let set = compile_script(&script).unwrap();
    let env: HashMap<String, SetExpr> = script.bindings.iter().cloned().collect();
    for p in points {
        assert_eq!(member_up(&set, p), direct(&script.body, &env, p), "{text} at {p}");
    }
}

const CORPUS: &[&str] = &[
    "full",
    "empty",
    "cyl(e)",
    "cyl(01)",
    "pt(e,0)",
    "pt(10,011)",
    "nofactor(11)",
    "nofactor(010)",
    "tree(0*|0*10*)",
    "tree((01|1)*)",
    "tree(0(0|11)*1*)",
    "cyl(0) ^ pt(0,0)",
    "full \\ pt(0,0)",
    "!(cyl(0) | nofactor(11)) & tree((0|10)*)",
    "let G = nofactor(11); G \\ (cyl(10) ^ pt(1,01))",
    "nofactor(00) ^ nofactor(11) | pt(e,01) & !cyl(1)",
    "let A = tree(1*0*); let B = A & cyl(1); A ^ B ^ pt(11,0)",
];

#[test]
fn corpus_matches_direct_evaluation() {
    let points = enumerate_up(4, 4);
    for text in CORPUS {
        agree(text, &points);
    }
}

fn leaf() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "full", "empty", "cyl(0)", "cyl(10)", "pt(e,0)", "pt(0,1)", "pt(1,01)", "nofactor(11)",
        "nofactor(00)", "tree(0*1*)", "tree((0|11)*)",
    ])
    .prop_map(str::to_string)
}

fn expression() -> impl Strategy<Value = String> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| format!("!({e})")),
            (inner.clone(), prop::sample::select(vec!["|", "&", "\\", "^"]), inner)
                .prop_map(|(a, op, b)| format!("({a}) {op} ({b})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_expressions_match_direct_evaluation(text in expression()) {
        agree(&text, &enumerate_up(3, 3));
    }

    #[test]
    fn printing_round_trips(text in expression()) {
        let script = parse(&text).unwrap();
        prop_assert_eq!(parse(&script.to_string()).unwrap(), script);
    }
}
