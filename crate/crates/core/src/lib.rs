//! Braid-word calculus for knot and link families.
//!
//! The crate models braid words with letter degrees, reduces them, derives
//! parameterized braid families from generating minimum words, and verifies
//! family/Conway-notation correspondences through exact invariants (reduced
//! Burau, Alexander polynomial, link determinant) and counting oracles.
//!
//! Polynomial arithmetic is generic over an exact signed-integer scalar via
//! `num-traits`; the concrete aliases below fix the defaults used across
//! the crate. Floating-point scalars are intentionally unsupported: every
//! division performed here must be exact.

pub mod braid;
pub mod burau;
pub mod conway;
pub mod enumerate;
pub mod family;
pub mod fixtures;
pub mod laurent;
pub mod verify;

pub use braid::{
    format_braid, parse_braid, BraidLetter, BraidWord, ParseError, Permutation, ReducedWord,
};
pub use burau::{alexander, burau_reduced, determinant, InvariantError};
pub use conway::{
    count_rational_brute, count_rational_kl, count_rational_knots, ConwayError, ConwayRational,
    RationalCount,
};
pub use enumerate::{
    basic_polyhedron_series, classify_generator, closure_signature,
    enumerate_alternating_reduced, enumerate_bfr_families, extend_by_addition,
    extend_by_replacement, generate_algebraic_generators, minimality_key,
    nonalternating_variants, resolve_overlaps, s_plus_one_extensions, ClosureSignature,
    ExtendError, FamilyEnumOptions, GeneratorClass, MinimalityKey, SeriesMode, WordClass,
};
pub use family::{BraidFamily, Constraint, FamilyError, Slot};
pub use laurent::{Coeff, LaurentMatrix, LaurentPoly, PolyError};

/// Default exact coefficient scalar.
pub type Int = i64;
/// Laurent polynomial over the default scalar.
pub type Poly = laurent::LaurentPoly<Int>;
/// Laurent polynomial over arbitrary-precision integers, for callers that
/// need headroom beyond `i64`.
pub type BigPoly = laurent::LaurentPoly<num_bigint::BigInt>;
/// Burau matrix over the default scalar.
pub type Matrix = laurent::LaurentMatrix<Int>;
/// Reduced fraction over the default scalar.
pub type Frac = conway::Fraction<Int>;
