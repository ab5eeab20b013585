//! Explicit finite modules over `F_q` and `R_N = F_q[t]/(t^N)`.
//!
//! Two enumeration routes live here and are cross-checked against each other:
//!
//! * [`module::FqModule`] works with explicit module elements and enumerates
//!   submodules by closing generated subsets — the simplest provably
//!   exhaustive oracle, usable at small sizes;
//! * [`census`] walks row-reduced echelon bases of t-invariant subspaces —
//!   the accelerator that powers structure-constant tables and flag counts.
//!
//! On top of these sit the Hall structure constants, their interpolated
//! polynomials in `q`, extension-groupoid cardinalities, and 3x3-square
//! frame fibers.

pub mod census;
pub mod field;
pub mod frame;
pub mod hall;
pub mod linalg;
pub mod module;

pub use census::NilModule;
pub use field::{Gf, PrimePower};
pub use frame::{frame_fiber_cardinality, Frame};
pub use hall::{
    automorphism_count, count_injections, extension_groupoid_cardinality, flag_count_direct,
    gl_order, hall_constant_direct, hall_polynomial, submodule_census,
};
pub use module::{enumerate_submodules, FqModule, Submodule};
