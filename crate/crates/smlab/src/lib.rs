//! A workbench for the string-matching predicate `SM(x, y)`, which is 1 iff the
//! pattern `y` occurs contiguously in the text `x`, in three models of computation:
//!
//! - [`comm`]: two-party communication protocols over an adversarial bipartition of
//!   the input bits, with bit-exact transcripts and cost accounting, plus reductions
//!   from set disjointness and OR-of-greater-than, and unambiguous-randomized (UBPP)
//!   witness harnesses.
//! - [`circuits`]: exact threshold and DeMorgan circuit constructions with gate-DAG
//!   evaluation, a sparse-function dup-encoding reduction, and exhaustive equivalence
//!   checking against the oracle.
//! - [`learning`]: pattern hypothesis classes, an ERM PAC learner, shattered-set
//!   constructions, and brute-force VC computation.
//!
//! The [`core`] module houses the naive oracle, string periodicity machinery, and
//! the counted quantities that every other module is validated against. Everything
//! here is desk-scale by design: each construction is paired with an independent
//! brute-force check.

pub mod circuits;
pub mod comm;
pub mod core;
pub mod learning;
pub mod report;

mod error;

pub use error::{Error, Result};
