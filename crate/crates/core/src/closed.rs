//! Closed subsets of Cantor space presented as pruned-tree automata.
//!
//! A [`ClosedSet`] is a partial deterministic automaton over {0, 1} in which
//! every state is reachable and lies on an infinite path. The set it denotes
//! is the set of infinite words whose run never falls off the transition
//! table (the body of the tree of finite prefixes). Values are always kept
//! minimal with breadth-first numbering, so two values denote the same set
//! iff they are structurally identical.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::graph::{can_reach, scc_shapes, SccShape};
use crate::point::UpPoint;
use crate::regex::{prefix_closure_dfa, Regex};

pub(crate) type Row = [Option<usize>; 2];

/// A closed subset of 2^ω in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ClosedSetJson", try_from = "ClosedSetJson")]
pub struct ClosedSet {
    trans: Vec<Row>,
}

/// Primitive closed sets of the expression language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive {
    Full,
    Empty,
    Cylinder(Vec<u8>),
    Point(Vec<u8>, Vec<u8>),
    NoFactor(Vec<u8>),
    Tree(Regex),
}

pub fn build_primitive(kind: &Primitive) -> Result<ClosedSet> {
    match kind {
        Primitive::Full => Ok(ClosedSet::full()),
        Primitive::Empty => Ok(ClosedSet::empty()),
        Primitive::Cylinder(w) => Ok(ClosedSet::cylinder(w)),
        Primitive::Point(u, v) => Ok(ClosedSet::point(&UpPoint::new(u.clone(), v.clone())?)),
        Primitive::NoFactor(w) => Ok(ClosedSet::no_factor(w)),
        Primitive::Tree(re) => ClosedSet::tree(re),
    }
}

impl ClosedSet {
    pub fn empty() -> Self {
        ClosedSet { trans: Vec::new() }
    }

    pub fn full() -> Self {
        ClosedSet { trans: vec![[Some(0), Some(0)]] }
    }

    /// All points extending `prefix`.
    pub fn cylinder(prefix: &[u8]) -> Self {
        let n = prefix.len();
        let mut trans: Vec<Row> = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut row = [None, None];
                row[b as usize] = Some(i + 1);
                row
            })
            .collect();
        trans.push([Some(n), Some(n)]);
        Self::from_automaton(Some(0), trans)
    }

    /// The singleton `{stem · cycle^ω}`.
    pub fn point(p: &UpPoint) -> Self {
        let word: Vec<u8> = p.stem().iter().chain(p.cycle()).copied().collect();
        let loop_back = p.stem().len();
        let trans = word
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut row = [None, None];
                row[b as usize] = Some(if i + 1 == word.len() { loop_back } else { i + 1 });
                row
            })
            .collect();
        Self::from_automaton(Some(0), trans)
    }

    /// All points that do not contain `factor` as a contiguous subword.
    pub fn no_factor(factor: &[u8]) -> Self {
        let m = factor.len();
        if m == 0 {
            return Self::empty();
        }
        // KMP failure function; state i = length of the longest prefix of
        // `factor` that is a suffix of the input read so far.
        let mut fail = vec![0usize; m];
        for i in 1..m {
            let mut k = fail[i - 1];
            while k > 0 && factor[i] != factor[k] {
                k = fail[k - 1];
            }
            if factor[i] == factor[k] {
                k += 1;
            }
            fail[i] = k;
        }
        let step = |mut state: usize, b: u8| -> usize {
            loop {
                if factor[state] == b {
                    return state + 1;
                }
                if state == 0 {
                    return 0;
                }
                state = fail[state - 1];
            }
        };
        let trans = (0..m)
            .map(|s| [0u8, 1].map(|b| Some(step(s, b)).filter(|&t| t < m)))
            .collect();
        Self::from_automaton(Some(0), trans)
    }

    /// Points all of whose finite prefixes are prefixes of words in `L(re)`.
    pub fn tree(re: &Regex) -> Result<Self> {
        let (initial, trans) = prefix_closure_dfa(re)?;
        Ok(Self::from_automaton(initial, trans))
    }

    /// Canonicalizes an arbitrary partial deterministic automaton: drops
    /// unreachable states and states without an infinite continuation, then
    /// minimizes and renumbers breadth-first (0-edge before 1-edge).
    ///
    /// Out-of-range targets are treated as absent transitions.
    pub fn from_automaton(initial: Option<usize>, trans: Vec<Row>) -> Self {
        let n = trans.len();
        let Some(init) = initial.filter(|&i| i < n) else {
            return Self::empty();
        };
        let trans: Vec<Row> = trans.into_iter().map(|row| row.map(|t| t.filter(|&t| t < n))).collect();

        let mut reachable = vec![false; n];
        reachable[init] = true;
        let mut work = vec![init];
        while let Some(s) = work.pop() {
            for t in trans[s].iter().flatten() {
                if !reachable[*t] {
                    reachable[*t] = true;
                    work.push(*t);
                }
            }
        }

        // Greatest set of reachable states in which every state keeps a
        // successor: peel off states whose successors have all been removed.
        let mut alive = reachable.clone();
        let mut preds = vec![Vec::new(); n];
        let mut out_degree = vec![0usize; n];
        for s in (0..n).filter(|&s| reachable[s]) {
            for &t in trans[s].iter().flatten() {
                preds[t].push(s);
                out_degree[s] += 1;
            }
        }
        let mut work: Vec<usize> = (0..n).filter(|&s| reachable[s] && out_degree[s] == 0).collect();
        for &s in &work {
            alive[s] = false;
        }
        while let Some(t) = work.pop() {
            for &s in &preds[t] {
                out_degree[s] -= 1;
                if out_degree[s] == 0 && alive[s] {
                    alive[s] = false;
                    work.push(s);
                }
            }
        }
        if !alive[init] {
            return Self::empty();
        }
        let trans: Vec<Row> = trans
            .iter()
            .map(|row| row.map(|t| t.filter(|&t| alive[t])))
            .collect();

        // Moore partition refinement; absent transitions are observable.
        const NONE: usize = usize::MAX;
        let live: Vec<usize> = (0..n).filter(|&s| alive[s]).collect();
        let mut class = vec![0usize; n];
        let mut class_count = 1;
        loop {
            let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let mut next = vec![0usize; n];
            for &s in &live {
                let sig = (
                    class[s],
                    trans[s][0].map_or(NONE, |t| class[t]),
                    trans[s][1].map_or(NONE, |t| class[t]),
                );
                let fresh = ids.len();
                next[s] = *ids.entry(sig).or_insert(fresh);
            }
            let refined = ids.len();
            class = next;
            if refined == class_count {
                break;
            }
            class_count = refined;
        }

        // Breadth-first renumbering of the quotient.
        let mut number = vec![NONE; class_count];
        let mut representative = Vec::with_capacity(class_count);
        let mut queue = VecDeque::new();
        number[class[init]] = 0;
        representative.push(init);
        queue.push_back(init);
        let mut out = Vec::with_capacity(class_count);
        while let Some(s) = queue.pop_front() {
            let mut row = [None, None];
            for b in 0..2 {
                if let Some(t) = trans[s][b] {
                    let c = class[t];
                    if number[c] == NONE {
                        number[c] = representative.len();
                        representative.push(t);
                        queue.push_back(t);
                    }
                    row[b] = Some(number[c]);
                }
            }
            out.push(row);
        }
        ClosedSet { trans: out }
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> Option<usize> {
        (!self.trans.is_empty()).then_some(0)
    }

    pub fn is_empty(&self) -> bool {
        self.trans.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn transition(&self, state: usize, bit: u8) -> Option<usize> {
        self.trans[state][bit as usize]
    }

    /// Transitions as sorted `(from, bit, to)` triples.
    pub fn edges(&self) -> Vec<(usize, u8, usize)> {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(s, row)| {
                row.iter().enumerate().filter_map(move |(b, t)| t.map(|t| (s, b as u8, t)))
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.trans.iter().map(|row| row.iter().flatten().copied().collect()).collect()
    }

    /// Keeps only the marked states (and the transitions between them).
    fn restrict(&self, keep: &[bool]) -> ClosedSet {
        let trans = self
            .trans
            .iter()
            .enumerate()
            .map(|(s, row)| if keep[s] { row.map(|t| t.filter(|&t| keep[t])) } else { [None, None] })
            .collect();
        Self::from_automaton(self.initial().filter(|&i| keep[i]), trans)
    }

    pub fn contains(&self, p: &UpPoint) -> bool {
        member_up_closed(self, p)
    }

    /// Writes the automaton in Graphviz DOT syntax.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph closed {\n  rankdir=LR;\n  node [shape=circle];\n");
        write_dot_body(&mut out, self, "");
        out.push_str("}\n");
        out
    }
}

pub(crate) fn write_dot_body(out: &mut String, set: &ClosedSet, prefix: &str) {
    use std::fmt::Write;
    for s in 0..set.state_count() {
        let shape = if s == 0 { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {prefix}{s} [label=\"{s}\", shape={shape}];");
    }
    for (s, b, t) in set.edges() {
        let _ = writeln!(out, "  {prefix}{s} -> {prefix}{t} [label=\"{b}\"];");
    }
}

impl Ord for ClosedSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.trans.len().cmp(&other.trans.len()).then_with(|| self.trans.cmp(&other.trans))
    }
}

impl PartialOrd for ClosedSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.initial() {
            None => write!(f, "states 0, initial none")?,
            Some(i) => write!(f, "states {}, initial {i}", self.state_count())?,
        }
        for (s, b, t) in self.edges() {
            write!(f, "\n  {s} -{b}-> {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedSet({:?})", self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct ClosedSetJson {
    states: usize,
    initial: Option<usize>,
    edges: Vec<(usize, u8, usize)>,
}

impl From<ClosedSet> for ClosedSetJson {
    fn from(c: ClosedSet) -> Self {
        ClosedSetJson { states: c.state_count(), initial: c.initial(), edges: c.edges() }
    }
}

impl TryFrom<ClosedSetJson> for ClosedSet {
    type Error = Error;

    fn try_from(j: ClosedSetJson) -> Result<Self> {
        if j.initial.is_some_and(|i| i >= j.states) {
            return Err(Error::Argument(format!("initial state {:?} out of range", j.initial)));
        }
        let mut trans = vec![[None, None]; j.states];
        for (s, b, t) in j.edges {
            if s >= j.states || t >= j.states || b > 1 {
                return Err(Error::Argument(format!("edge [{s}, {b}, {t}] out of range")));
            }
            if trans[s][b as usize].replace(t).is_some_and(|old| old != t) {
                return Err(Error::Argument(format!("state {s} has two {b}-edges")));
            }
        }
        Ok(ClosedSet::from_automaton(j.initial, trans))
    }
}

/// Product of two automata over pairs of (state or dead marker), keeping the
/// pairs accepted by `keep`.
fn product(
    c1: &ClosedSet,
    c2: &ClosedSet,
    keep: impl Fn(Option<usize>, Option<usize>) -> bool,
    what: &str,
) -> Result<ClosedSet> {
    let start = (c1.initial(), c2.initial());
    if !keep(start.0, start.1) {
        return Ok(ClosedSet::empty());
    }
    let mut index = HashMap::new();
    let mut pairs = vec![start];
    index.insert(start, 0usize);
    let mut trans: Vec<Row> = Vec::new();
    let mut next = 0;
    while next < pairs.len() {
        let (p, q) = pairs[next];
        let mut row = [None, None];
        for b in 0..2u8 {
            let succ = (p.and_then(|p| c1.transition(p, b)), q.and_then(|q| c2.transition(q, b)));
            if !keep(succ.0, succ.1) {
                continue;
            }
            let id = match index.get(&succ) {
                Some(&id) => id,
                None => {
                    let id = pairs.len();
                    budget::check(id + 1, what)?;
                    index.insert(succ, id);
                    pairs.push(succ);
                    id
                }
            };
            row[b as usize] = Some(id);
        }
        trans.push(row);
        next += 1;
    }
    Ok(ClosedSet::from_automaton(Some(0), trans))
}

pub fn union_closed(c1: &ClosedSet, c2: &ClosedSet) -> Result<ClosedSet> {
    if c1.is_empty() {
        return Ok(c2.clone());
    }
    if c2.is_empty() {
        return Ok(c1.clone());
    }
    product(c1, c2, |p, q| p.is_some() || q.is_some(), "closed-set union")
}

pub fn intersect_closed(c1: &ClosedSet, c2: &ClosedSet) -> Result<ClosedSet> {
    if c1.is_empty() || c2.is_empty() {
        return Ok(ClosedSet::empty());
    }
    product(c1, c2, |p, q| p.is_some() && q.is_some(), "closed-set intersection")
}

/// `[c1] ⊆ [c2]`: no run alive in `c1` ever escapes `c2`.
pub fn subset_closed(c1: &ClosedSet, c2: &ClosedSet) -> bool {
    let Some(i1) = c1.initial() else { return true };
    let Some(i2) = c2.initial() else { return false };
    let mut seen = vec![false; c1.state_count() * c2.state_count()];
    let key = |p: usize, q: usize| p * c2.state_count() + q;
    seen[key(i1, i2)] = true;
    let mut work = vec![(i1, i2)];
    while let Some((p, q)) = work.pop() {
        for b in 0..2u8 {
            let Some(p2) = c1.transition(p, b) else { continue };
            // every state of a trimmed automaton has an infinite continuation
            let Some(q2) = c2.transition(q, b) else { return false };
            if !seen[key(p2, q2)] {
                seen[key(p2, q2)] = true;
                work.push((p2, q2));
            }
        }
    }
    true
}

pub fn member_up_closed(c: &ClosedSet, p: &UpPoint) -> bool {
    let Some(mut s) = c.initial() else { return false };
    for &b in p.stem() {
        match c.transition(s, b) {
            Some(t) => s = t,
            None => return false,
        }
    }
    let mut seen = vec![false; c.state_count()];
    loop {
        if seen[s] {
            return true;
        }
        seen[s] = true;
        for &b in p.cycle() {
            match c.transition(s, b) {
                Some(t) => s = t,
                None => return false,
            }
        }
    }
}

/// One Cantor–Bendixson step: removes the isolated points.
///
/// A state is on a unique path when every state reachable from it has a
/// single outgoing transition; a point is isolated iff its run enters such
/// a state.
pub fn derivative(c: &ClosedSet) -> ClosedSet {
    let adj = c.adjacency();
    let branching: Vec<bool> = adj.iter().map(|succ| succ.len() == 2).collect();
    let keep = can_reach(&adj, &branching);
    c.restrict(&keep)
}

/// Perfect kernel by iterating [`derivative`] to a fixpoint.
pub fn kernel_by_derivatives(c: &ClosedSet) -> ClosedSet {
    let mut current = c.clone();
    loop {
        let next = derivative(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Perfect kernel as the states with uncountable residual set: those that
/// reach a strongly connected component carrying two distinct cycles.
pub fn kernel_by_branching_cycles(c: &ClosedSet) -> ClosedSet {
    let adj = c.adjacency();
    let rich: Vec<bool> = scc_shapes(&adj).into_iter().map(|s| s == SccShape::Branching).collect();
    let keep = can_reach(&adj, &rich);
    c.restrict(&keep)
}

/// The largest perfect subset of `c`, computed by two independent
/// algorithms that must agree.
pub fn perfect_kernel(c: &ClosedSet) -> ClosedSet {
    let by_derivatives = kernel_by_derivatives(c);
    let by_cycles = kernel_by_branching_cycles(c);
    assert_eq!(
        by_derivatives, by_cycles,
        "perfect kernel algorithms disagree on {c:?}"
    );
    by_cycles
}

/// Number of derivative steps until the fixpoint.
pub fn cb_rank(c: &ClosedSet) -> usize {
    let mut current = c.clone();
    let mut rank = 0;
    loop {
        let next = derivative(&current);
        if next == current {
            return rank;
        }
        current = next;
        rank += 1;
    }
}

/// A closed set is countable iff its perfect kernel is empty.
pub fn is_countable_closed(c: &ClosedSet) -> bool {
    perfect_kernel(c).is_empty()
}
