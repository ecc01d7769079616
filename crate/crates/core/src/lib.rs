//! Certificate-producing algorithms for graph bandwidth, treewidth, balanced
//! separators, and expansion, together with exact brute-force oracles that
//! cross-check every produced bound at small scale.
//!
//! The crate is organised around four graph parameters and the constructions
//! relating them:
//!
//! * [`graph`] — the immutable graph type, vertex labellings, traversal
//!   primitives, and deterministic test-instance generators.
//! * [`oracle`] — exact branch-and-bound / subset-DP solvers for bandwidth,
//!   treewidth, separation number, and boundedness on small graphs.
//! * [`separator`] — separator certificates, validators, and finders (exact,
//!   BFS-layer, spectral sweep, centroid, and the non-expanding-set loop).
//! * [`expansion`] — expansion testing and non-expanding-set search.
//! * [`ordering`] — bucket-based bandwidth orderings driven by separators,
//!   with validated recursion-tree certificates.
//! * [`treewidth`] — tree-decomposition objects, the validator, and builders
//!   from labellings and from recursive separation.
//! * [`report`] — closed-form bound calculators and per-graph reports with
//!   pass/fail inequality verdicts.
//! * [`io`] — bit-exact parsing and canonical serialization of graphs,
//!   decompositions, orderings, and reports.

pub mod expansion;
pub mod graph;
pub mod io;
mod mask;
pub mod oracle;
pub mod ordering;
pub mod report;
pub mod separator;
mod spectral;
pub mod treewidth;

/// Exact rational used wherever the underlying comparisons must not suffer
/// floating-point misclassification (balance parameters, expansion ratios,
/// recursion-tree labels).
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand constructor for a [`Rational`]; panics on a zero denominator.
pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}
