//! Brute-force verification layer: ultimately periodic point enumeration,
//! an equality oracle that only evaluates membership of concrete points,
//! seeded instance generators, and the property suites.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::closed::{
    cb_rank, derivative, intersect_closed, is_countable_closed, kernel_by_branching_cycles, kernel_by_derivatives,
    perfect_kernel, subset_closed, union_closed, ClosedSet, Row,
};
use crate::delta02::{
    closure, combine, equals, eq_mod_countable, is_countable, is_countable_routes, is_empty, is_subset, lift,
    member_up, BoolOp, Delta02Set,
};
use crate::error::{Error, Result};
use crate::hierarchy::{chains_equiv_mod_countable, decompose, pad_chain, reconstruct};
use crate::point::UpPoint;
use crate::selector::phi;

const GENERATOR_ATTEMPTS: usize = 1000;
/// Stem and cycle length of the exhaustive layer of [`oracle_equals`].
const EXHAUSTIVE_LEN: usize = 4;

/// All canonical points with `|stem| ≤ max_stem` and `|cycle| ≤ max_cycle`,
/// deduplicated and sorted by `(stem, cycle)`.
pub fn enumerate_up(max_stem: usize, max_cycle: usize) -> Vec<UpPoint> {
    let mut out = BTreeSet::new();
    for stem_len in 0..=max_stem {
        for stem in words(stem_len) {
            for cycle_len in 1..=max_cycle {
                for cycle in words(cycle_len) {
                    out.insert(UpPoint::new(stem.clone(), cycle).expect("nonempty cycle"));
                }
            }
        }
    }
    out.into_iter().collect()
}

fn words(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u64 << len).map(move |m| (0..len).rev().map(|i| (m >> i & 1) as u8).collect())
}

/// Lockstep product of plain component automata, built independently of
/// the flag-automaton code: one stem word per reachable state (shortest,
/// breadth-first) and the successor table.
struct JointGraph {
    stems: Vec<Vec<u8>>,
    succ: Vec<[usize; 2]>,
}

impl JointGraph {
    fn build(components: &[&ClosedSet]) -> JointGraph {
        let start: Vec<Option<usize>> = components.iter().map(|c| c.initial()).collect();
        let mut index = HashMap::new();
        index.insert(start.clone(), 0);
        let mut tuples = vec![start];
        let mut stems = vec![Vec::new()];
        let mut succ = Vec::new();
        let mut next = 0;
        while next < tuples.len() {
            let mut row = [0; 2];
            for b in 0..2u8 {
                let target: Vec<Option<usize>> = tuples[next]
                    .iter()
                    .zip(components)
                    .map(|(s, c)| s.and_then(|s| c.transition(s, b)))
                    .collect();
                row[b as usize] = *index.entry(target.clone()).or_insert_with(|| {
                    let mut stem = stems[next].clone();
                    stem.push(b);
                    tuples.push(target);
                    stems.push(stem);
                    tuples.len() - 1
                });
            }
            succ.push(row);
            next += 1;
        }
        JointGraph { stems, succ }
    }

    fn len(&self) -> usize {
        self.succ.len()
    }

    /// Shortest nonempty word leading from `state` back to itself.
    fn shortest_cycle(&self, state: usize) -> Option<Vec<u8>> {
        let mut parent: Vec<Option<(usize, u8)>> = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for b in 0..2u8 {
            let t = self.succ[state][b as usize];
            if t == state {
                return Some(vec![b]);
            }
            if parent[t].is_none() {
                parent[t] = Some((state, b));
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            for b in 0..2u8 {
                let t = self.succ[s][b as usize];
                if t == state {
                    let mut word = vec![b];
                    let mut cur = s;
                    while cur != state {
                        let (p, pb) = parent[cur].expect("visited");
                        word.push(pb);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                if parent[t].is_none() && t != state {
                    parent[t] = Some((s, b));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// One lasso point `stem · cycle^ω` per state lying on a cycle.
    fn lasso_points(&self) -> Vec<UpPoint> {
        (0..self.len())
            .filter_map(|s| {
                let cycle = self.shortest_cycle(s)?;
                Some(UpPoint::new(self.stems[s].clone(), cycle).expect("nonempty cycle"))
            })
            .collect()
    }
}

/// Candidate witness points for comparing sets over the given components:
/// every point with stem and cycle of length at most 4 (or the joint state
/// count, if smaller), plus one lasso per cyclic state of the joint product.
/// Returns the points and the joint state count.
fn witness_points(sets: &[&Delta02Set]) -> (Vec<UpPoint>, usize) {
    let components: Vec<&ClosedSet> = sets.iter().flat_map(|s| s.components()).collect();
    let graph = JointGraph::build(&components);
    let bound = graph.len();
    let short = bound.min(EXHAUSTIVE_LEN);
    let mut points = enumerate_up(short, short);
    let lassos = graph.lasso_points();
    debug_assert!(lassos.iter().all(|p| p.stem().len() <= bound && p.cycle().len() <= bound));
    points.extend(lassos);
    (points, bound)
}

/// A point on which `s1` and `s2` disagree, if any exists within the
/// product-state bound.
pub fn oracle_witness(s1: &Delta02Set, s2: &Delta02Set) -> Option<UpPoint> {
    let (points, _) = witness_points(&[s1, s2]);
    points.into_iter().find(|p| member_up(s1, p) != member_up(s2, p))
}

/// Equality decided by membership of ultimately periodic points only.
///
/// Membership of a point depends only on the strongly connected component
/// of the joint product in which its run settles, so checking one lasso
/// through every cyclic joint state covers every possible difference.
pub fn oracle_equals(s1: &Delta02Set, s2: &Delta02Set) -> bool {
    oracle_witness(s1, s2).is_none()
}

/// A point of `s` found by enumeration, if any.
pub fn oracle_member(s: &Delta02Set) -> Option<UpPoint> {
    let (points, _) = witness_points(&[s]);
    points.into_iter().find(|p| member_up(s, p))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonempty closed set with at most `max_states` raw states.
pub fn random_closed(seed: u64, max_states: usize) -> Result<ClosedSet> {
    if max_states == 0 {
        return Err(Error::Argument("max_states must be positive".into()));
    }
    let mut rng = rng(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let n = rng.gen_range(1..=max_states);
        let trans: Vec<Row> = (0..n)
            .map(|_| [(); 2].map(|_| rng.gen_bool(0.75).then(|| rng.gen_range(0..n))))
            .collect();
        let c = ClosedSet::from_automaton(Some(0), trans);
        if !c.is_empty() {
            return Ok(c);
        }
    }
    Err(Error::Generator(format!("no nonempty closed set after {GENERATOR_ATTEMPTS} attempts")))
}

/// `k` random components with a random condition table.
pub fn random_delta02(seed: u64, k: usize, max_states: usize) -> Result<Delta02Set> {
    let mut rng = rng(seed);
    let components = (0..k).map(|_| random_closed(rng.gen(), max_states)).collect::<Result<Vec<_>>>()?;
    let table = (0..1usize << k).map(|_| rng.gen_bool(0.5)).collect();
    Delta02Set::from_parts(components, table)
}

fn random_word(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<u8> {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

/// A lasso with finitely many branches, each ending in its own lasso.
/// Every strongly connected component is a single cycle, so the set is
/// countable by construction.
fn branching_lasso(rng: &mut ChaCha8Rng) -> ClosedSet {
    let mut trans: Vec<Row> = Vec::new();
    let attach = |trans: &mut Vec<Row>, rng: &mut ChaCha8Rng| -> usize {
        let stem = random_word(rng, 0, 2);
        let cycle = random_word(rng, 1, 3);
        let base = trans.len();
        let word: Vec<u8> = stem.iter().chain(&cycle).copied().collect();
        for (i, &b) in word.iter().enumerate() {
            let mut row = [None, None];
            row[b as usize] = Some(if i + 1 == word.len() { base + stem.len() } else { base + i + 1 });
            trans.push(row);
        }
        base
    };
    attach(&mut trans, rng);
    for _ in 0..rng.gen_range(0..=3) {
        let open: Vec<(usize, usize)> = trans
            .iter()
            .enumerate()
            .filter_map(|(s, row)| row.iter().position(|t| t.is_none()).map(|b| (s, b)))
            .collect();
        let (s, b) = open[rng.gen_range(0..open.len())];
        let entry = attach(&mut trans, rng);
        trans[s][b] = Some(entry);
    }
    ClosedSet::from_automaton(Some(0), trans)
}

/// A countable set: the union of at most `m` pieces, each an ultimately
/// periodic singleton or a branching lasso.
pub fn random_countable(seed: u64, m: usize) -> Result<Delta02Set> {
    if m == 0 {
        return Err(Error::Argument("m must be positive".into()));
    }
    let mut rng = rng(seed);
    let mut acc = Delta02Set::constant(false);
    for _ in 0..rng.gen_range(1..=m) {
        let piece = if rng.gen_bool(0.5) {
            let p = UpPoint::new(random_word(&mut rng, 0, 3), random_word(&mut rng, 1, 3))?;
            ClosedSet::point(&p)
        } else {
            branching_lasso(&mut rng)
        };
        if !is_countable_closed(&piece) {
            return Err(Error::Generator(format!("constructed piece {piece:?} is not countable")));
        }
        acc = combine(BoolOp::Union, &acc, &lift(&piece))?;
    }
    Ok(acc)
}

/// Sizes used by the suites: up to 3 components of up to 6 states, and
/// countable perturbations made of up to 3 pieces.
pub fn random_instance(seed: u64) -> Result<Delta02Set> {
    let mut rng = rng(seed);
    let k = rng.gen_range(0..=3);
    random_delta02(rng.gen(), k, 6)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Closure,
    Lemma,
    Chain,
    Star,
    Theorem,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Algebra, Suite::Closure, Suite::Lemma, Suite::Chain, Suite::Star, Suite::Theorem, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Closure => "closure",
            Suite::Lemma => "lemma",
            Suite::Chain => "chain",
            Suite::Star => "star",
            Suite::Theorem => "theorem",
            Suite::Oracle => "oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed property together with the serialized inputs that broke it.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub seed: u64,
    pub message: String,
    pub inputs: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub type CaseResult = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Boolean-algebra laws on Δ⁰₂ sets and lattice laws on closed sets.
pub fn check_algebra(s1: &Delta02Set, s2: &Delta02Set, s3: &Delta02Set) -> CaseResult {
    use BoolOp::*;
    let c = |op, a: &Delta02Set, b: &Delta02Set| lib(combine(op, a, b));
    let eq = |a: &Delta02Set, b: &Delta02Set| lib(equals(a, b));

    ensure!(s1.complement().complement() == *s1, "complement is not an involution");
    ensure!(c(SymDiff, s1, s1)? == Delta02Set::constant(false), "S △ S is not empty");
    ensure!(
        eq(&c(Union, s1, s2)?.complement(), &c(Intersect, &s1.complement(), &s2.complement())?)?,
        "De Morgan (union) fails"
    );
    ensure!(
        eq(&c(Intersect, s1, s2)?.complement(), &c(Union, &s1.complement(), &s2.complement())?)?,
        "De Morgan (intersection) fails"
    );
    ensure!(
        eq(&c(Intersect, s1, &c(Union, s2, s3)?)?, &c(Union, &c(Intersect, s1, s2)?, &c(Intersect, s1, s3)?)?)?,
        "distributivity fails"
    );
    ensure!(eq(&c(Union, s1, &c(Intersect, s1, s2)?)?, s1)?, "absorption fails");
    ensure!(c(Union, s1, s2)? == c(Union, s2, s1)?, "union is not commutative");

    let (c1, c2, c3) = (lib(closure(s1))?, lib(closure(s2))?, lib(closure(s3))?);
    let u = |a: &ClosedSet, b: &ClosedSet| lib(union_closed(a, b));
    let i = |a: &ClosedSet, b: &ClosedSet| lib(intersect_closed(a, b));
    ensure!(u(&c1, &c2)? == u(&c2, &c1)?, "closed union is not commutative");
    ensure!(i(&c1, &c2)? == i(&c2, &c1)?, "closed intersection is not commutative");
    ensure!(u(&u(&c1, &c2)?, &c3)? == u(&c1, &u(&c2, &c3)?)?, "closed union is not associative");
    ensure!(i(&i(&c1, &c2)?, &c3)? == i(&c1, &i(&c2, &c3)?)?, "closed intersection is not associative");
    ensure!(u(&c1, &c1)? == c1 && i(&c1, &c1)? == c1, "closed operations are not idempotent");
    ensure!(u(&ClosedSet::empty(), &c1)? == c1, "∅ is not the union identity");
    ensure!(i(&ClosedSet::full(), &c1)? == c1, "2^ω is not the intersection identity");
    Ok(())
}

fn prefix_counts(c: &ClosedSet, n: usize) -> f64 {
    let Some(init) = c.initial() else { return 0.0 };
    let mut counts = vec![0.0f64; c.state_count()];
    counts[init] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0; c.state_count()];
        for (s, &k) in counts.iter().enumerate() {
            for b in 0..2u8 {
                if let Some(t) = c.transition(s, b) {
                    next[t] += k;
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

/// Cantor–Bendixson analysis of one closed set.
pub fn check_kernel(c: &ClosedSet) -> CaseResult {
    let by_derivatives = kernel_by_derivatives(c);
    let by_cycles = kernel_by_branching_cycles(c);
    ensure!(by_derivatives == by_cycles, "kernel algorithms disagree");
    let pk = by_cycles;
    let d = derivative(c);
    ensure!(subset_closed(&d, c), "derivative is not a subset");
    ensure!(subset_closed(&pk, c), "kernel is not a subset");
    ensure!(perfect_kernel(&pk) == pk, "kernel is not idempotent");
    ensure!(derivative(&pk) == pk, "kernel has isolated points");
    ensure!(cb_rank(c) <= c.state_count(), "rank exceeds the state count");
    let residue = lib(combine(BoolOp::Difference, &lift(c), &lift(&pk)))?;
    ensure!(lib(is_countable(&residue))?, "C ∖ pk(C) is uncountable");

    // growth of the prefix tree: polynomial iff countable
    let s = c.state_count();
    let n = (8 * s).min(900);
    let count = prefix_counts(c, n);
    if is_countable_closed(c) {
        ensure!(count <= ((n + 1) as f64).powi(s as i32), "countable set with exponential growth");
    } else {
        ensure!(count >= 2f64.powi((n.saturating_sub(s) / s.max(1)) as i32), "uncountable set with slow growth");
    }
    Ok(())
}

/// Closure contract on Δ⁰₂ sets, plus kernel properties of the closures.
pub fn check_closure(s1: &Delta02Set, s2: &Delta02Set) -> CaseResult {
    let cl = lib(closure(s1))?;
    ensure!(lib(is_subset(s1, &lift(&cl)))?, "S ⊄ cl(S)");
    for p in enumerate_up(3, 3) {
        ensure!(!member_up(s1, &p) || cl.contains(&p), "{p} ∈ S but ∉ cl(S)");
    }
    ensure!(lib(closure(&lift(&cl)))? == cl, "closure is not idempotent");
    let meet = lib(combine(BoolOp::Intersect, s1, s2))?;
    ensure!(subset_closed(&lib(closure(&meet))?, &cl), "closure is not monotone");

    check_kernel(&cl)?;
    let cl2 = lib(closure(s2))?;
    let both = lib(intersect_closed(&cl, &cl2))?;
    ensure!(subset_closed(&perfect_kernel(&both), &perfect_kernel(&cl)), "kernel is not monotone");
    Ok(())
}

/// Both countability routes agree.
pub fn check_lemma(s: &Delta02Set) -> CaseResult {
    let (via_closure, direct) = lib(is_countable_routes(s))?;
    ensure!(via_closure == direct, "closure route says {via_closure}, direct route says {direct}");
    Ok(())
}

/// A countable set has a countable closure.
pub fn check_countable_closure(s: &Delta02Set) -> CaseResult {
    check_lemma(s)?;
    ensure!(lib(is_countable(s))?, "constructed set is not countable");
    ensure!(is_countable_closed(&lib(closure(s))?), "closure of a countable set is uncountable");
    Ok(())
}

/// Reconstruction identity and the shape of the chain.
pub fn check_chain(a: &Delta02Set) -> CaseResult {
    let chain = lib(decompose(a))?;
    ensure!(lib(equals(&lib(reconstruct(&chain))?, a))?, "reconstruction differs from the input");
    ensure!(chain.rank() >= 1 && chain.pairs()[0].0.is_full(), "chain does not start at the full space");
    for (eta, (f, h)) in chain.pairs().iter().enumerate() {
        ensure!(subset_closed(h, f), "H_{eta} ⊄ F_{eta}");
        ensure!(!f.is_empty(), "F_{eta} is empty inside the chain");
        if let Some((next, _)) = chain.pairs().get(eta + 1) {
            ensure!(subset_closed(next, h), "F_{} ⊄ H_{eta}", eta + 1);
            ensure!(next != f, "F does not strictly decrease at {eta}");
        }
    }
    let (f, h) = chain.pairs().last().expect("rank ≥ 1");
    let inside = lib(closure(&lib(combine(BoolOp::Intersect, &lift(f), a))?))?;
    ensure!(lib(intersect_closed(h, &inside))?.is_empty(), "the chain does not end with an empty F");
    let bound = lib(a.product_state_count())?;
    ensure!(chain.rank() <= bound, "rank {} exceeds the product bound {bound}", chain.rank());
    Ok(())
}

/// Chains of `A` and `A △ C` agree modulo countable sets at every level.
pub fn check_star(a: &Delta02Set, c: &Delta02Set) -> CaseResult {
    let b = lib(combine(BoolOp::SymDiff, a, c))?;
    let (ca, cb) = (lib(decompose(a))?, lib(decompose(&b))?);
    ensure!(ca.pairs()[0].0.is_full() && cb.pairs()[0].0.is_full(), "base case F_0 = 2^ω fails");
    ensure!(lib(chains_equiv_mod_countable(&ca, &cb))?, "chains are not level-wise equivalent");
    Ok(())
}

/// The selector: invariance under countable perturbation, soundness, kernel
/// coincidence along the chains, countable collapse and closed-set
/// coherence.
pub fn check_theorem(a: &Delta02Set, c: &Delta02Set) -> CaseResult {
    let b = lib(combine(BoolOp::SymDiff, a, c))?;
    ensure!(lib(eq_mod_countable(a, &b))?, "A △ C is not equivalent to A");
    let (pa, pb) = (lib(phi(a))?, lib(phi(&b))?);
    ensure!(lib(equals(&pa, &pb))?, "Φ(A) ≠ Φ(A △ C)");
    ensure!(lib(eq_mod_countable(a, &pa))?, "A is not equivalent to Φ(A)");

    let (ca, cb) = (lib(decompose(a))?, lib(decompose(&b))?);
    let rank = ca.rank().max(cb.rank());
    let (ca, cb) = (lib(pad_chain(&ca, rank))?, lib(pad_chain(&cb, rank))?);
    for (eta, ((fa, ha), (fb, hb))) in ca.pairs().iter().zip(cb.pairs()).enumerate() {
        ensure!(perfect_kernel(fa) == perfect_kernel(fb), "pk F_{eta} differs");
        ensure!(perfect_kernel(ha) == perfect_kernel(hb), "pk H_{eta} differs");
    }

    ensure!(lib(phi(c))? == Delta02Set::constant(false), "Φ of a countable set is not empty");

    let closed = lib(closure(a))?;
    let kernel = perfect_kernel(&closed);
    ensure!(lib(eq_mod_countable(&lift(&closed), &lift(&kernel)))?, "C is not equivalent to pk(C)");
    ensure!(
        lib(equals(&lib(phi(&lift(&closed)))?, &lib(phi(&lift(&kernel)))?))?,
        "Φ(C) ≠ Φ(pk C) for a closed C"
    );
    Ok(())
}

pub fn check_idempotence(a: &Delta02Set) -> CaseResult {
    let pa = lib(phi(a))?;
    ensure!(lib(equals(&lib(phi(&pa))?, &pa))?, "Φ(Φ(A)) ≠ Φ(A)");
    Ok(())
}

/// Decision procedures against point enumeration.
pub fn check_oracle(s1: &Delta02Set, s2: &Delta02Set) -> CaseResult {
    let decided = lib(equals(s1, s2))?;
    let witness = oracle_witness(s1, s2);
    ensure!(decided == witness.is_none(), "equals says {decided}, oracle witness {witness:?}");
    for s in [s1, s2] {
        let empty = lib(is_empty(s))?;
        let member = oracle_member(s);
        ensure!(empty == member.is_none(), "is_empty says {empty}, enumeration found {member:?}");
    }
    Ok(())
}

fn inputs(sets: &[(&str, &Delta02Set)]) -> serde_json::Value {
    serde_json::Value::Object(
        sets.iter().map(|(name, s)| (name.to_string(), serde_json::to_value(s).expect("serializable"))).collect(),
    )
}

/// Generates the inputs of one case and runs the suite's checks on them.
fn run_case(suite: Suite, seed: u64) -> std::result::Result<CaseResult, (String, serde_json::Value)> {
    let mut rng = rng(seed);
    let gen_err = |e: Error| (e.to_string(), json!({ "seed": seed }));
    let mut instance = || random_instance(rng.gen()).map_err(gen_err);
    let outcome = match suite {
        Suite::Algebra => {
            let (a, b, c) = (instance()?, instance()?, instance()?);
            (check_algebra(&a, &b, &c), inputs(&[("s1", &a), ("s2", &b), ("s3", &c)]))
        }
        Suite::Closure => {
            let (a, b) = (instance()?, instance()?);
            let closed = random_closed(seed, 10).map_err(gen_err)?;
            let r = check_closure(&a, &b).and_then(|_| check_kernel(&closed));
            (r, inputs(&[("s1", &a), ("s2", &b), ("closed", &lift(&closed))]))
        }
        Suite::Lemma => {
            let a = instance()?;
            let c = random_countable(seed, 3).map_err(gen_err)?;
            (check_lemma(&a).and_then(|_| check_countable_closure(&c)), inputs(&[("s", &a), ("countable", &c)]))
        }
        Suite::Chain => {
            let a = instance()?;
            (check_chain(&a), inputs(&[("a", &a)]))
        }
        Suite::Star => {
            let a = instance()?;
            let c = random_countable(seed, 3).map_err(gen_err)?;
            (check_star(&a, &c), inputs(&[("a", &a), ("c", &c)]))
        }
        Suite::Theorem => {
            let a = instance()?;
            let c = random_countable(seed, 3).map_err(gen_err)?;
            (check_theorem(&a, &c).and_then(|_| check_idempotence(&a)), inputs(&[("a", &a), ("c", &c)]))
        }
        Suite::Oracle => {
            let a = instance()?;
            let x = instance()?;
            let c = random_countable(seed, 2).map_err(gen_err)?;
            // unrelated, rewritten-but-equal, and countably perturbed partners
            let b = match seed % 3 {
                0 => x,
                1 => combine(BoolOp::Union, &a, &x)
                    .and_then(|ax| combine(BoolOp::Difference, &ax, &combine(BoolOp::Difference, &x, &a)?))
                    .map_err(gen_err)?,
                _ => combine(BoolOp::SymDiff, &a, &c).map_err(gen_err)?,
            };
            (check_oracle(&a, &b), inputs(&[("s1", &a), ("s2", &b)]))
        }
    };
    let (result, inputs) = outcome;
    result.map_err(|message| (message, inputs)).map(Ok)
}

/// Runs `cases` seeded instances of a property suite.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> SuiteReport {
    let mut master = rng(seed);
    let mut report =
        SuiteReport { suite: suite.name().to_string(), cases, passed: 0, failed: 0, counterexample: None };
    for case in 0..cases {
        let case_seed: u64 = master.gen();
        let outcome = catch_unwind(AssertUnwindSafe(|| run_case(suite, case_seed)));
        let failure = match outcome {
            Ok(Ok(_)) => None,
            Ok(Err((message, inputs))) => Some((message, inputs)),
            Err(panic) => {
                let message = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "internal assertion failure".into());
                Some((format!("internal assertion failure: {message}"), json!({ "seed": case_seed })))
            }
        };
        match failure {
            None => report.passed += 1,
            Some((message, inputs)) => {
                report.failed += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample { case, seed: case_seed, message, inputs });
                }
            }
        }
    }
    report
}
