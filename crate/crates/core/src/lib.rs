//! Chain Tutte and Whitney polynomials of matroids and polymatroids, and
//! the family of invariants they determine.
//!
//! The k-th chain polynomials sum over all `(k+1)^n` weakly nested chains
//! of ground-set subsets; level one is the classical Whitney rank
//! generating function and Tutte polynomial, and the top level `k = n`
//! carries the same information as the G-invariant. On top of the chain
//! polynomials sit the Möbius polynomial, the opposite characteristic
//! polynomial, the J-Möbius polynomial, Ford's S-polynomial and expected
//! codimension, and a valuation checker for matroid polytope subdivisions.
//!
//! All arithmetic is exact: sparse Laurent polynomials over
//! arbitrary-precision integers, with rationals only at evaluation time.

pub mod chain;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod matroid;
pub mod poly;
pub mod subset;
pub mod valuation;

pub use chain::{
    chain_tutte, chain_tutte_recursive, chain_whitney, specialize_down, split_chain_tutte,
    universal_chain_tutte, universal_to_whitney_check, ChainForm, ChainTuttePoly, EnumOptions,
};
pub use error::{Error, Result};
pub use invariants::{
    characteristic_poly, classical_tutte, constant_evaluations, expected_codim,
    expected_codim_recursive, expected_codim_via_tutte, ford_a, ford_s_from_chain_tutte,
    ford_s_poly, g_from_top_tutte, g_invariant, j_mobius_poly, mobius_poly,
    mobius_poly_recursive, opposite_char_poly, opposite_char_poly_recursive, EvaluationRecord,
    GInvariant,
};
pub use lattice::FlatLattice;
pub use matroid::{families, GroundSet, Matroid, MatroidKind};
pub use poly::{Family, LaurentPoly, Monomial, Variable};
pub use valuation::{
    check_valuation, hypersimplex_split_u24, InvariantId, InvariantValue, SubdivisionNerve,
    ValuationReport,
};
