//! Automatic discovery of extended enumeration schemes for finitely based
//! permutation classes.
//!
//! A scheme turns the pattern-avoidance tree of `Av(B)` into a finite set of
//! expand/reduce rules over gap vectors, which evaluate to `s_n(B)` in time
//! polynomial in `n`. The [`triage`] module checks whether three other
//! systematic methods apply to the same class, and [`oracle`] provides
//! brute-force counts for cross-checking.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod reducibility;
pub mod scheme;
pub mod triage;
pub mod zset;

/// Exact counts. Scheme values grow exponentially in `n`.
pub type Count = num_bigint::BigUint;

pub use error::{Error, Result};
pub use perm::{normalize_basis, standardize, Basis, Permutation, SumMode, Symmetry};
pub use reducibility::{
    compute_j, es_plus_reducible, es_reducible, ideal_member, minimal_elements,
    reduction_gap_basis, GapIdeal, JSet,
};
pub use scheme::{
    build_scheme, build_scheme_with, eval_count, eval_sequence, scheme_depth, verify_scheme,
    BuildOptions, BuildOutcome, CountCache, Mode, NodeKind, Scheme, SchemeNode,
};
pub use zset::{zset_count, zset_members, GapVector, ZSetCounter};
