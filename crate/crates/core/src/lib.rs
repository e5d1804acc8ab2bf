//! Exact enumeration of transposition walks on symmetric groups.
//!
//! The crate counts monotone, strictly monotone, and unconstrained
//! walks between permutations, with optional transitivity and
//! colour-multiplicity refinements; from these it builds double
//! Hurwitz numbers, the sorting action on walks and its orbit
//! structure, the loop encoding behind the two-sided `3^c`/`4^c`
//! bounds, fixed-genus generating-function coefficients with radius
//! diagnostics, and the large-`N` expansion of unitary Weingarten
//! functions.  All counts and coefficients are exact (`BigUint` /
//! `BigRational`); floating point appears only in explicitly heuristic
//! diagnostics.
//!
//! Everything expensive sits behind [`SizeGuards`], which reject
//! oversized inputs instead of truncating them.

pub mod cayley;
pub mod count;
pub mod error;
pub mod guard;
pub mod hurwitz;
pub mod partition;
pub mod perm;
pub mod series;
pub mod sorting;
pub mod verify;
pub mod walk;
pub mod weingarten;

pub use num_bigint::BigUint;
pub use num_rational::BigRational;

pub use error::{Error, Result};
pub use guard::SizeGuards;
pub use partition::{CycleType, OrbitPartition};
pub use perm::{Permutation, Transposition};
pub use walk::{Walk, WalkMode};
