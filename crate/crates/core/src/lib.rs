//! Exact-arithmetic Hall algebra toolkit.
//!
//! The crate computes structure constants of Hall algebras of small finitary
//! proto-abelian categories by two independent routes — direct categorical
//! enumeration (submodules, flags, extensions) and closed-form or statistical
//! formulas (q-binomials, Zelevinsky's statistic, {0,1}-matrix counts) — and
//! cross-checks the classical identities relating them: polynomiality of the
//! constants, Green's product/coproduct compatibility up to twist, and the
//! decategorified 2-Segal (associativity/unitality) conditions on flag
//! groupoids.
//!
//! Everything is exact: polynomial coefficients are arbitrary-precision
//! integers, groupoid cardinalities are arbitrary-precision rationals. The
//! polynomial and linear-algebra cores are generic over the scalar via
//! `num-traits` style bounds; the concrete aliases used throughout the crate
//! live at the root:
//!
//! * [`Int`] — arbitrary-precision integer ([`num_bigint::BigInt`])
//! * [`Rat`] — arbitrary-precision rational
//! * [`QPoly`] — polynomial in the formal variable `q` with [`Int`] coefficients

pub mod error;
pub mod f1;
pub mod fq;
pub mod groupoid;
pub mod hall;
pub mod partition;
pub mod poly;
pub mod qanalog;
pub mod symfunc;
pub mod zelevinsky;

pub use error::{Error, Result};
pub use partition::{Composition, Partition};
pub use poly::{Poly, QRational};

/// Exact integer scalar used for all counts and polynomial coefficients.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar used for groupoid cardinalities.
pub type Rat = num_rational::BigRational;

/// Polynomial in the formal variable `q` with exact integer coefficients.
pub type QPoly = Poly<Int>;
