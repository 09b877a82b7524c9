//! Eigenvalue location for threshold graphs.
//!
//! Everything revolves around the cotree representation `T(a_1, ..., a_r)`
//! of a connected threshold graph and a congruence diagonalization that
//! reads eigenvalue counts off the cotree in O(n) exact rational steps —
//! no matrix is ever materialized on the fast path.
//!
//! The pieces:
//!
//! * [`cotree`] — part sequences, creation-order binary words, dense
//!   adjacency construction and the componentwise partial order.
//! * [`scalar`] — exact big-rational arithmetic with decimal parsing and
//!   integer-boundary-aware flooring.
//! * [`diagonalize`] — the congruence engine: batch leaf specialization,
//!   the spine reduction, inertia closed forms and bisection extraction of
//!   the extreme eigenvalues around the trivial band.
//! * [`generate`] — constructors of cotrees whose spectra avoid `(0, N]`
//!   (right) or `[M, -1)` (left), with per-level traces.
//! * [`verify`] — freeness predicates, interlacing-family checks and the
//!   exhaustive parallel minimality search.
//! * [`oracle`] — an independent dense eigensolver (cyclic Jacobi over
//!   double-double floats) used to cross-validate all of the above.

pub mod cotree;
pub mod diagonalize;
pub mod generate;
pub mod oracle;
pub mod scalar;
pub mod verify;

pub use cotree::{AdjacencyMatrix, BinarySequence, Cotree, NodeKind};
pub use diagonalize::{
    bisect_theta_minus, bisect_theta_plus, count_triple, count_triple_fast, diagonalize_full,
    diagonalize_traced, inertia_closed_form, left_closed_form, mult_minus_one, specialize_leaves,
    CountTriple, DiagOutcome, Subcase, TraceStep,
};
pub use generate::{lfi, rfi, ChoicePolicy, GenTrace, TraceLevel};
pub use oracle::{format_significant, oracle_spectrum, oracle_spectrum_capped, Spectrum};
pub use scalar::{FloorResult, Scalar};
pub use verify::{
    check_family_extension, is_left_free, is_right_free, minimality_search,
    minimality_search_with, FreeInterval, SearchReport,
};
