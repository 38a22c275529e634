//! The canonical difference-hierarchy chain of a Δ⁰₂ set.
//!
//! Starting from `F_0 = 2^ω`, each step takes `H_η = cl(F_η ∖ A)` and
//! `F_{η+1} = H_η ∩ cl(F_η ∩ A)`, stopping at the first empty `F`. The
//! result represents `A = ⋃_η (F_η ∖ H_η)`.

use serde::{Deserialize, Serialize};

use crate::closed::{intersect_closed, perfect_kernel, subset_closed, ClosedSet};
use crate::delta02::{closure, combine, eq_mod_countable, lift, BoolOp, Delta02Set};
use crate::error::{Error, Result};

/// A decreasing sequence `F_0 ⊇ H_0 ⊇ F_1 ⊇ H_1 ⊇ …` of closed sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ChainJson", try_from = "ChainJson")]
pub struct DifferenceChain {
    pairs: Vec<(ClosedSet, ClosedSet)>,
}

impl DifferenceChain {
    /// Checks that the pairs form a chain starting at the full space.
    pub fn new(pairs: Vec<(ClosedSet, ClosedSet)>) -> Result<Self> {
        if let Some((f0, _)) = pairs.first() {
            if !f0.is_full() {
                return Err(Error::Argument("a chain must start with the full space".into()));
            }
        }
        for (eta, (f, h)) in pairs.iter().enumerate() {
            if !subset_closed(h, f) {
                return Err(Error::Argument(format!("H_{eta} is not contained in F_{eta}")));
            }
            if let Some((next_f, _)) = pairs.get(eta + 1) {
                if !subset_closed(next_f, h) {
                    return Err(Error::Argument(format!("F_{} is not contained in H_{eta}", eta + 1)));
                }
            }
        }
        Ok(DifferenceChain { pairs })
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(ClosedSet, ClosedSet)] {
        &self.pairs
    }
}

pub fn decompose(a: &Delta02Set) -> Result<DifferenceChain> {
    let bound = a.product_state_count()?;
    let mut pairs = Vec::new();
    let mut f = ClosedSet::full();
    while !f.is_empty() {
        let lifted = lift(&f);
        let h = closure(&combine(BoolOp::Difference, &lifted, a)?)?;
        let inside = closure(&combine(BoolOp::Intersect, &lifted, a)?)?;
        let next = intersect_closed(&h, &inside)?;
        // a repeat would need a limit step, which cannot arise for sets
        // presented by finite automata
        assert!(next != f, "difference chain stalled at F_{} for {a:?}", pairs.len());
        pairs.push((f, h));
        assert!(
            pairs.len() <= bound,
            "difference chain of {a:?} exceeds the flag automaton size {bound}"
        );
        f = next;
    }
    Ok(DifferenceChain { pairs })
}

/// Countability through the chain: `F_η ∖ H_η` is relatively open in `F_η`,
/// so it is countable iff it misses the perfect kernel of `F_η`. The set is
/// countable iff every layer is.
pub fn is_countable_by_chain(a: &Delta02Set) -> Result<bool> {
    let chain = decompose(a)?;
    Ok(chain.pairs.iter().all(|(f, h)| subset_closed(&perfect_kernel(f), h)))
}

/// `⋃_η (F_η ∖ H_η)`.
pub fn reconstruct(chain: &DifferenceChain) -> Result<Delta02Set> {
    let mut acc = Delta02Set::constant(false);
    for (f, h) in &chain.pairs {
        let layer = combine(BoolOp::Difference, &lift(f), &lift(h))?;
        acc = combine(BoolOp::Union, &acc, &layer)?;
    }
    Ok(acc)
}

/// Extends the chain with `(∅, ∅)` pairs up to `rank`.
pub fn pad_chain(chain: &DifferenceChain, rank: usize) -> Result<DifferenceChain> {
    if rank < chain.rank() {
        return Err(Error::Argument(format!(
            "cannot pad a chain of rank {} down to {rank}",
            chain.rank()
        )));
    }
    let mut pairs = chain.pairs.clone();
    pairs.resize(rank, (ClosedSet::empty(), ClosedSet::empty()));
    Ok(DifferenceChain { pairs })
}

/// Pairwise `≈` of the padded chains, for every `F` and every `H`.
pub fn chains_equiv_mod_countable(a: &DifferenceChain, b: &DifferenceChain) -> Result<bool> {
    let rank = a.rank().max(b.rank());
    let (a, b) = (pad_chain(a, rank)?, pad_chain(b, rank)?);
    for ((fa, ha), (fb, hb)) in a.pairs.iter().zip(&b.pairs) {
        if !eq_mod_countable(&lift(fa), &lift(fb))? || !eq_mod_countable(&lift(ha), &lift(hb))? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl std::fmt::Display for DifferenceChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rank {}", self.rank())?;
        for (eta, (fs, hs)) in self.pairs.iter().enumerate() {
            write!(f, "\nF{eta}: {fs}\nH{eta}: {hs}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    rank: usize,
    pairs: Vec<(ClosedSet, ClosedSet)>,
}

impl From<DifferenceChain> for ChainJson {
    fn from(c: DifferenceChain) -> Self {
        ChainJson { rank: c.rank(), pairs: c.pairs }
    }
}

impl TryFrom<ChainJson> for DifferenceChain {
    type Error = Error;

    fn try_from(j: ChainJson) -> Result<Self> {
        if j.rank != j.pairs.len() {
            return Err(Error::Argument(format!("rank {} but {} pairs", j.rank, j.pairs.len())));
        }
        DifferenceChain::new(j.pairs)
    }
}
