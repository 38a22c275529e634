//! Canonical representatives of regular Δ⁰₂ subsets of Cantor space modulo
//! countable sets.
//!
//! Closed sets are pruned-tree automata ([`ClosedSet`]); Δ⁰₂ sets are finite
//! Boolean combinations of them ([`Delta02Set`]). Every set admits a
//! decreasing chain of closed sets `F_0 ⊇ H_0 ⊇ F_1 ⊇ …` with
//! `A = ⋃ (F_η ∖ H_η)` ([`hierarchy`]), and replacing each closed set of
//! the chain by its perfect kernel yields a set `Φ(A)` that differs from
//! `A` by a countable set ([`selector`]). `Φ` is unchanged by countable
//! closed perturbations; a countable perturbation whose closure is
//! uncountable can change it (see `tests/scattered_perturbation.rs`).

pub mod budget;
pub mod cli;
pub mod closed;
pub mod delta02;
mod error;
pub mod expr;
mod graph;
pub mod hierarchy;
pub mod oracle;
pub mod point;
pub mod regex;
pub mod selector;

pub use closed::{ClosedSet, Primitive};
pub use delta02::{BoolOp, Delta02Set};
pub use hierarchy::DifferenceChain;
pub use error::{Error, Result};
pub use expr::{Script, SetExpr};
pub use point::UpPoint;
pub use regex::Regex;
pub use selector::PhiReport;
