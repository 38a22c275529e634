//! The selector `Φ(A) = ⋃_η (pk F_η ∖ pk H_η)` over the canonical chain.

use serde::Serialize;

use crate::closed::{perfect_kernel, ClosedSet};
use crate::delta02::{as_closed, combine, lift, BoolOp, Delta02Set};
use crate::error::Result;
use crate::hierarchy::{decompose, DifferenceChain};

/// Evidence behind one application of the selector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub chain: DifferenceChain,
    /// `(pk F_η, pk H_η)` for every `η` of the chain.
    pub kernels: Vec<(ClosedSet, ClosedSet)>,
    pub selected: Delta02Set,
}

pub fn phi_report(a: &Delta02Set) -> Result<PhiReport> {
    let chain = decompose(a)?;
    let kernels: Vec<(ClosedSet, ClosedSet)> =
        chain.pairs().iter().map(|(f, h)| (perfect_kernel(f), perfect_kernel(h))).collect();
    let mut selected = Delta02Set::constant(false);
    for (pf, ph) in &kernels {
        let layer = combine(BoolOp::Difference, &lift(pf), &lift(ph))?;
        selected = combine(BoolOp::Union, &selected, &layer)?;
    }
    // closed results are reported as a single closed component
    if let Some(c) = as_closed(&selected)? {
        selected = lift(&c);
    }
    Ok(PhiReport { chain, kernels, selected })
}

pub fn phi(a: &Delta02Set) -> Result<Delta02Set> {
    Ok(phi_report(a)?.selected)
}
