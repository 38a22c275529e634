//! Regular Δ⁰₂ sets as flag automata: a list of closed components and a
//! truth table over the vector of membership flags.
//!
//! A point belongs to the set iff the table holds at the vector whose bit
//! `i` records membership in component `i`. Running all component
//! automata in lockstep, each flag can only go from alive to dead, so every
//! run eventually settles in a fixed dead-set. Emptiness, closure and
//! countability are then reachability questions on the product graph,
//! stratified by dead-set.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::closed::{is_countable_closed, member_up_closed, write_dot_body, ClosedSet, Row};
use crate::error::{Error, Result};
use crate::graph::{can_reach, scc_shapes, SccShape};
use crate::point::UpPoint;

/// Largest number of components a normalized set may carry.
pub const MAX_COMPONENTS: usize = 16;
/// Largest number of distinct components allowed before normalization.
const MAX_RAW_COMPONENTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    SymDiff,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersect => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymDiff => a != b,
        }
    }
}

/// A finite Boolean combination of closed sets in normal form: components
/// are sorted, distinct, nonempty and not the full space, and every flag
/// influences the condition.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Delta02Json", try_from = "Delta02Json")]
pub struct Delta02Set {
    components: Vec<ClosedSet>,
    table: Vec<bool>,
}

impl Delta02Set {
    pub fn constant(value: bool) -> Self {
        Delta02Set { components: Vec::new(), table: vec![value] }
    }

    pub fn lift(c: &ClosedSet) -> Self {
        if c.is_empty() {
            Self::constant(false)
        } else if c.is_full() {
            Self::constant(true)
        } else {
            Delta02Set { components: vec![c.clone()], table: vec![false, true] }
        }
    }

    /// Builds a normalized set from arbitrary components and a truth table
    /// of length `2^components.len()`.
    pub fn from_parts(components: Vec<ClosedSet>, table: Vec<bool>) -> Result<Self> {
        let k = components.len();
        if k > MAX_RAW_COMPONENTS {
            return Err(Error::Resource(format!("{k} components exceed the limit of {MAX_RAW_COMPONENTS}")));
        }
        if table.len() != 1 << k {
            return Err(Error::Argument(format!(
                "condition table has {} entries, expected {}",
                table.len(),
                1usize << k
            )));
        }

        enum Flag {
            Fixed(bool),
            Var(usize),
        }
        let mut distinct: Vec<ClosedSet> =
            components.iter().filter(|c| !c.is_empty() && !c.is_full()).cloned().collect();
        distinct.sort();
        distinct.dedup();
        let flags: Vec<Flag> = components
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Flag::Fixed(false)
                } else if c.is_full() {
                    Flag::Fixed(true)
                } else {
                    Flag::Var(distinct.binary_search(c).expect("component was collected"))
                }
            })
            .collect();
        let mut table: Vec<bool> = (0..1usize << distinct.len())
            .map(|v| {
                let old = flags.iter().enumerate().fold(0usize, |acc, (i, f)| {
                    let bit = match f {
                        Flag::Fixed(b) => *b,
                        Flag::Var(j) => v >> j & 1 == 1,
                    };
                    acc | (bit as usize) << i
                });
                table[old]
            })
            .collect();

        // drop flags the table ignores, highest index first so that lower
        // indices stay valid
        for j in (0..distinct.len()).rev() {
            let relevant = (0..table.len()).any(|v| table[v] != table[v ^ (1 << j)]);
            if !relevant {
                distinct.remove(j);
                table = (0..1usize << distinct.len())
                    .map(|v| {
                        let low = v & ((1 << j) - 1);
                        let high = (v >> j) << (j + 1);
                        table[high | low]
                    })
                    .collect();
            }
        }

        if distinct.len() > MAX_COMPONENTS {
            return Err(Error::Resource(format!(
                "{} components exceed the limit of {MAX_COMPONENTS}",
                distinct.len()
            )));
        }
        Ok(Delta02Set { components: distinct, table })
    }

    pub fn components(&self) -> &[ClosedSet] {
        &self.components
    }

    /// The condition as a truth table indexed by flag vectors (bit `i` is
    /// membership in component `i`).
    pub fn condition(&self) -> &[bool] {
        &self.table
    }

    /// `Some(value)` when the set is the empty set or the whole space.
    pub fn as_constant(&self) -> Option<bool> {
        self.components.is_empty().then(|| self.table[0])
    }

    /// Satisfying flag vectors as bit strings, character `i` being flag `i`.
    pub fn satisfying_vectors(&self) -> Vec<String> {
        let k = self.components.len();
        let mut out: Vec<String> = (0..self.table.len())
            .filter(|&v| self.table[v])
            .map(|v| (0..k).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, p: &UpPoint) -> bool {
        member_up(self, p)
    }

    pub fn complement(&self) -> Self {
        Delta02Set { components: self.components.clone(), table: self.table.iter().map(|b| !b).collect() }
    }

    /// Number of reachable states of the flag automaton.
    pub fn product_state_count(&self) -> Result<usize> {
        Ok(FlagProduct::build(&self.components)?.len())
    }

    /// Graphviz rendering: one cluster per component, condition as label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph delta02 {\n  rankdir=LR;\n  node [shape=circle];\n");
        match self.as_constant() {
            Some(v) => out.push_str(&format!("  label=\"constant {v}\";\n")),
            None => out.push_str(&format!("  label=\"condition {}\";\n", self.satisfying_vectors().join(" "))),
        }
        for (i, c) in self.components.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{i} {{\n  label=\"component {i}\";\n"));
            write_dot_body(&mut out, c, &format!("c{i}_"));
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

pub fn lift(c: &ClosedSet) -> Delta02Set {
    Delta02Set::lift(c)
}

pub fn complement(s: &Delta02Set) -> Delta02Set {
    s.complement()
}

pub fn combine(op: BoolOp, s1: &Delta02Set, s2: &Delta02Set) -> Result<Delta02Set> {
    let mut merged: Vec<ClosedSet> = s1.components.iter().chain(&s2.components).cloned().collect();
    merged.sort();
    merged.dedup();
    if merged.len() > MAX_RAW_COMPONENTS {
        return Err(Error::Resource(format!(
            "{} components exceed the limit of {MAX_RAW_COMPONENTS}",
            merged.len()
        )));
    }
    let position = |c: &ClosedSet| merged.binary_search(c).expect("merged component");
    let map1: Vec<usize> = s1.components.iter().map(position).collect();
    let map2: Vec<usize> = s2.components.iter().map(position).collect();
    let project = |v: usize, map: &[usize]| {
        map.iter().enumerate().fold(0usize, |acc, (i, &j)| acc | (v >> j & 1) << i)
    };
    let table = (0..1usize << merged.len())
        .map(|v| op.apply(s1.table[project(v, &map1)], s2.table[project(v, &map2)]))
        .collect();
    collapse_constant(Delta02Set::from_parts(merged, table)?)
}

/// Replaces a set by the constant it denotes when the condition takes a
/// single value on every flag vector some point realizes.
fn collapse_constant(s: Delta02Set) -> Result<Delta02Set> {
    if s.as_constant().is_some() {
        return Ok(s);
    }
    let product = FlagProduct::build(&s.components)?;
    let adj = product.adjacency();
    let mut seen = [false; 2];
    for (shape, &dead) in scc_shapes(&adj).iter().zip(&product.dead) {
        if *shape != SccShape::Transient {
            seen[accepts_dead_set(&s, dead) as usize] = true;
        }
    }
    Ok(match seen {
        [true, true] => s,
        [false, true] => Delta02Set::constant(true),
        _ => Delta02Set::constant(false),
    })
}

pub fn member_up(s: &Delta02Set, p: &UpPoint) -> bool {
    let flags = s
        .components
        .iter()
        .enumerate()
        .fold(0usize, |acc, (i, c)| acc | (member_up_closed(c, p) as usize) << i);
    s.table[flags]
}

/// The reachable part of the lockstep product of the component automata.
/// Every state has both successors; a component that falls off its
/// transition table is recorded in the state's dead mask.
pub(crate) struct FlagProduct {
    pub dead: Vec<u32>,
    pub succ: Vec<[usize; 2]>,
}

impl FlagProduct {
    pub fn build(components: &[ClosedSet]) -> Result<Self> {
        const DEAD: u32 = u32::MAX;
        let start: Vec<u32> = components.iter().map(|c| c.initial().map_or(DEAD, |i| i as u32)).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut tuples = vec![start.clone()];
        index.insert(start, 0);
        let mut succ = Vec::new();
        let mut next = 0;
        while next < tuples.len() {
            let mut row = [0usize; 2];
            for (b, slot) in row.iter_mut().enumerate() {
                let target: Vec<u32> = tuples[next]
                    .iter()
                    .zip(components)
                    .map(|(&s, c)| {
                        if s == DEAD {
                            DEAD
                        } else {
                            c.transition(s as usize, b as u8).map_or(DEAD, |t| t as u32)
                        }
                    })
                    .collect();
                *slot = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = tuples.len();
                        budget::check(id + 1, "flag automaton")?;
                        index.insert(target.clone(), id);
                        tuples.push(target);
                        id
                    }
                };
            }
            succ.push(row);
            next += 1;
        }
        let dead = tuples
            .iter()
            .map(|t| t.iter().enumerate().fold(0u32, |acc, (i, &s)| acc | ((s == DEAD) as u32) << i))
            .collect();
        Ok(FlagProduct { dead, succ })
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.succ.iter().map(|r| r.to_vec()).collect()
    }
}

fn accepts_dead_set(s: &Delta02Set, dead: u32) -> bool {
    let all = (1usize << s.components.len()) - 1;
    s.table[all & !(dead as usize)]
}

/// States lying on a cycle whose settled dead-set satisfies the condition.
fn good_states(s: &Delta02Set, product: &FlagProduct, adj: &[Vec<usize>]) -> Vec<bool> {
    scc_shapes(adj)
        .into_iter()
        .zip(&product.dead)
        .map(|(shape, &dead)| shape != SccShape::Transient && accepts_dead_set(s, dead))
        .collect()
}

pub fn is_empty(s: &Delta02Set) -> Result<bool> {
    if let Some(v) = s.as_constant() {
        return Ok(!v);
    }
    let product = FlagProduct::build(&s.components)?;
    let adj = product.adjacency();
    Ok(!good_states(s, &product, &adj).into_iter().any(|g| g))
}

/// Topological closure: the prefixes that extend to a point of `s`.
pub fn closure(s: &Delta02Set) -> Result<ClosedSet> {
    if let Some(v) = s.as_constant() {
        return Ok(if v { ClosedSet::full() } else { ClosedSet::empty() });
    }
    let product = FlagProduct::build(&s.components)?;
    let adj = product.adjacency();
    let extendable = can_reach(&adj, &good_states(s, &product, &adj));
    let rows: Vec<Row> = product
        .succ
        .iter()
        .map(|r| r.map(|t| extendable[t].then_some(t)))
        .collect();
    Ok(ClosedSet::from_automaton(extendable[0].then_some(0), rows))
}

/// Countability of the closure. Sufficient for `s` to be countable, but not
/// necessary: a countable set of isolated points can be dense in an
/// uncountable closed set (for instance `C ∖ pk(C)` for many closed `C`).
pub fn is_countable_via_closure(s: &Delta02Set) -> Result<bool> {
    Ok(is_countable_closed(&closure(s)?))
}

/// Countability read off the flag automaton: uncountable iff some accepting
/// dead-set stratum holds a strongly connected component with two distinct
/// cycles.
pub fn is_countable_direct(s: &Delta02Set) -> Result<bool> {
    if let Some(v) = s.as_constant() {
        return Ok(!v);
    }
    let product = FlagProduct::build(&s.components)?;
    let mut strata: Vec<u32> = product.dead.clone();
    strata.sort_by_key(|d| (d.count_ones(), *d));
    strata.dedup();
    for dead in strata {
        if !accepts_dead_set(s, dead) {
            continue;
        }
        let members: Vec<usize> = (0..product.len()).filter(|&q| product.dead[q] == dead).collect();
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let adj: Vec<Vec<usize>> = members
            .iter()
            .map(|q| product.succ[*q].iter().filter_map(|t| local.get(t).copied()).collect())
            .collect();
        if scc_shapes(&adj).contains(&SccShape::Branching) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The closure route and the direct route, in that order.
pub fn is_countable_routes(s: &Delta02Set) -> Result<(bool, bool)> {
    Ok((is_countable_via_closure(s)?, is_countable_direct(s)?))
}

/// Exact countability: the direct route, checked against the chain route of
/// [`crate::hierarchy::is_countable_by_chain`].
pub fn is_countable(s: &Delta02Set) -> Result<bool> {
    let direct = is_countable_direct(s)?;
    let by_chain = crate::hierarchy::is_countable_by_chain(s)?;
    assert_eq!(direct, by_chain, "countability routes disagree on {s:?}");
    Ok(direct)
}

pub fn equals(s1: &Delta02Set, s2: &Delta02Set) -> Result<bool> {
    if s1 == s2 {
        return Ok(true);
    }
    is_empty(&combine(BoolOp::SymDiff, s1, s2)?)
}

pub fn eq_mod_countable(s1: &Delta02Set, s2: &Delta02Set) -> Result<bool> {
    is_countable(&combine(BoolOp::SymDiff, s1, s2)?)
}

/// `[s1] ⊆ [s2]`.
pub fn is_subset(s1: &Delta02Set, s2: &Delta02Set) -> Result<bool> {
    is_empty(&combine(BoolOp::Difference, s1, s2)?)
}

/// The closed set denoted by `s`, if `s` is closed.
pub fn as_closed(s: &Delta02Set) -> Result<Option<ClosedSet>> {
    let c = closure(s)?;
    Ok(equals(&Delta02Set::lift(&c), s)?.then_some(c))
}

impl fmt::Display for Delta02Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_constant() {
            return write!(f, "constant {v}");
        }
        write!(f, "components {}", self.components.len())?;
        for (i, c) in self.components.iter().enumerate() {
            write!(f, "\ncomponent {i}: {c}")?;
        }
        write!(f, "\ncondition {}", self.satisfying_vectors().join(" "))
    }
}

impl fmt::Debug for Delta02Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Delta02Set")
            .field("components", &self.components)
            .field("condition", &self.satisfying_vectors())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct Delta02Json {
    components: Vec<ClosedSet>,
    condition: Vec<String>,
}

impl From<Delta02Set> for Delta02Json {
    fn from(s: Delta02Set) -> Self {
        Delta02Json { condition: s.satisfying_vectors(), components: s.components }
    }
}

impl TryFrom<Delta02Json> for Delta02Set {
    type Error = Error;

    fn try_from(j: Delta02Json) -> Result<Self> {
        let k = j.components.len();
        if k > MAX_RAW_COMPONENTS {
            return Err(Error::Resource(format!("{k} components exceed the limit of {MAX_RAW_COMPONENTS}")));
        }
        let mut table = vec![false; 1 << k];
        for v in &j.condition {
            if v.len() != k || !v.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Argument(format!("flag vector `{v}` does not have {k} bits")));
            }
            let index = v.chars().enumerate().fold(0usize, |acc, (i, c)| acc | ((c == '1') as usize) << i);
            table[index] = true;
        }
        Delta02Set::from_parts(j.components, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::parse_bits;

    fn cyl(w: &str) -> Delta02Set {
        lift(&ClosedSet::cylinder(&parse_bits(w).unwrap()))
    }
    fn ptc(u: &str, v: &str) -> ClosedSet {
        ClosedSet::point(&UpPoint::parse(u, v).unwrap())
    }
    fn pt(u: &str, v: &str) -> Delta02Set {
        lift(&ptc(u, v))
    }
    fn up(u: &str, v: &str) -> UpPoint {
        UpPoint::parse(u, v).unwrap()
    }
    fn nofactor(w: &str) -> Delta02Set {
        lift(&ClosedSet::no_factor(&parse_bits(w).unwrap()))
    }
    fn full() -> Delta02Set {
        Delta02Set::constant(true)
    }
    fn none() -> Delta02Set {
        Delta02Set::constant(false)
    }
    fn op(o: BoolOp, a: &Delta02Set, b: &Delta02Set) -> Delta02Set {
        combine(o, a, b).unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&ClosedSet::empty()), none());
        assert_eq!(lift(&ClosedSet::full()), full());
        let c = cyl("0");
        assert_eq!(c.components().len(), 1);
        assert_eq!(c.condition(), &[false, true]);
    }

    #[test]
    fn boolean_examples() {
        let s = op(BoolOp::Union, &nofactor("11"), &pt("e", "1"));
        assert_eq!(op(BoolOp::SymDiff, &s, &s), none());
        assert_eq!(s.complement().complement(), s);
        let d = op(BoolOp::Difference, &cyl("0"), &cyl("01"));
        assert!(equals(&d, &cyl("00")).unwrap());
        for p in crate::oracle::enumerate_up(6, 2) {
            assert_eq!(d.contains(&p), p.bit(0) == 0 && p.bit(1) == 0, "{p}");
        }
    }

    #[test]
    fn normalization_folds_constants_and_duplicates() {
        let c = ClosedSet::cylinder(&[0]);
        // (c ∧ full) ∨ (c ∧ ∅), with c listed twice
        let comps = vec![c.clone(), ClosedSet::full(), c.clone(), ClosedSet::empty()];
        let table = (0..16usize).map(|v| (v & 1 == 1 && v & 2 == 2) || (v & 4 == 4 && v & 8 == 8)).collect();
        let s = Delta02Set::from_parts(comps, table).unwrap();
        assert_eq!(s, lift(&c));
        // ignored flag is dropped
        let s = Delta02Set::from_parts(vec![c.clone(), ptc("e", "1")], vec![false, true, false, true]).unwrap();
        assert_eq!(s, lift(&c));
        assert!(Delta02Set::from_parts(vec![c], vec![true]).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(full().contains(&up("01", "1")));
        let punctured = op(BoolOp::Difference, &full(), &pt("e", "0"));
        assert!(!punctured.contains(&up("e", "0")));
        assert!(punctured.contains(&up("e", "1")));
        let s = op(BoolOp::SymDiff, &cyl("0"), &pt("0", "0"));
        assert!(!s.contains(&up("0", "0")));
        assert!(s.contains(&up("0", "1")));
    }

    #[test]
    fn emptiness_examples() {
        assert!(is_empty(&op(BoolOp::Intersect, &cyl("0"), &cyl("1"))).unwrap());
        assert!(!is_empty(&full()).unwrap());
        assert!(is_empty(&op(BoolOp::Difference, &nofactor("11"), &nofactor("111"))).unwrap());
        assert!(!is_empty(&op(BoolOp::Difference, &nofactor("111"), &nofactor("11"))).unwrap());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&full()).unwrap(), ClosedSet::full());
        let punctured = op(BoolOp::Difference, &full(), &pt("e", "0"));
        assert_eq!(closure(&punctured).unwrap(), ClosedSet::full());
        let d = op(BoolOp::Difference, &cyl("0"), &cyl("01"));
        assert_eq!(closure(&d).unwrap(), ClosedSet::cylinder(&[0, 0]));
        // the closure of cyl(0) minus a point of it is still cyl(0)
        let s = op(BoolOp::Difference, &cyl("0"), &pt("0", "1"));
        assert_eq!(closure(&s).unwrap(), ClosedSet::cylinder(&[0]));
    }

    #[test]
    fn countability_examples() {
        assert!(is_countable(&none()).unwrap());
        assert!(!is_countable(&nofactor("11")).unwrap());
        assert!(is_countable(&op(BoolOp::Union, &pt("0", "1"), &pt("1", "0"))).unwrap());
        let punctured = op(BoolOp::Difference, &full(), &pt("e", "0"));
        assert_eq!(is_countable_routes(&punctured).unwrap(), (false, false));
    }

    #[test]
    fn countable_set_with_uncountable_closure() {
        // B: a perfect part P = {0 -1-> 1, 1 -0-> 1, 1 -1-> 0} from whose
        // state 0 every point can escape with 0 1^ω. The escapes are
        // isolated in B, countable, and dense in B.
        let b = ClosedSet::from_automaton(
            Some(0),
            vec![[Some(1), Some(2)], [None, Some(1)], [Some(2), Some(0)]],
        );
        let p = crate::closed::perfect_kernel(&b);
        assert_eq!(p.state_count(), 2);
        let scattered = op(BoolOp::Difference, &lift(&b), &lift(&p));
        assert!(is_countable(&scattered).unwrap());
        assert_eq!(closure(&scattered).unwrap(), b);
        assert_eq!(is_countable_routes(&scattered).unwrap(), (false, true));
    }

    #[test]
    fn equality_examples() {
        let g = nofactor("11");
        assert!(equals(&g, &g).unwrap());
        assert!(equals(&cyl("0"), &cyl("1").complement()).unwrap());
        assert!(equals(&full(), &op(BoolOp::Union, &g, &g.complement())).unwrap());
        assert!(!equals(&cyl("0"), &cyl("1")).unwrap());
    }

    #[test]
    fn modulo_countable_examples() {
        let punctured = op(BoolOp::Difference, &full(), &pt("e", "0"));
        assert!(eq_mod_countable(&full(), &punctured).unwrap());
        assert!(!eq_mod_countable(&cyl("0"), &cyl("1")).unwrap());
        assert!(eq_mod_countable(&none(), &pt("e", "1")).unwrap());
    }

    #[test]
    fn closedness_check() {
        assert_eq!(as_closed(&cyl("0")).unwrap(), Some(ClosedSet::cylinder(&[0])));
        let punctured = op(BoolOp::Difference, &full(), &pt("e", "0"));
        assert_eq!(as_closed(&punctured).unwrap(), None);
    }

    #[test]
    fn json_encoding() {
        let s = op(BoolOp::Difference, &full(), &pt("e", "0"));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"components":[{"states":1,"initial":0,"edges":[[0,0,0]]}],"condition":["0"]}"#);
        assert_eq!(serde_json::from_str::<Delta02Set>(&text).unwrap(), s);
        assert_eq!(serde_json::to_string(&full()).unwrap(), r#"{"components":[],"condition":[""]}"#);
        assert!(serde_json::from_str::<Delta02Set>(r#"{"components":[],"condition":["1"]}"#).is_err());
    }

    #[test]
    fn text_output() {
        assert_eq!(full().to_string(), "constant true");
        assert_eq!(
            cyl("0").to_string(),
            "components 1\ncomponent 0: states 2, initial 0\n  0 -0-> 1\n  1 -0-> 1\n  1 -1-> 1\ncondition 1"
        );
    }

    #[test]
    fn flag_budget_is_enforced() {
        let s = op(BoolOp::Union, &pt("e", "0001"), &pt("e", "00001"));
        crate::budget::with_state_budget(3, || {
            assert!(matches!(is_empty(&s), Err(Error::Resource(_))));
        });
    }
}
