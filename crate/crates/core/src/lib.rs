//! Exact extremal counts for families of constant-weight columns over GF(q).
//!
//! The crate builds the extremal column families, evaluates the closed-form
//! counts for the weight, co-weight, labeled and affine variants, computes rank
//! and affine rank, and checks the closed forms against exhaustive oracles that
//! scan every subspace of a small ambient space.
//!
//! Counting code is generic over an exact integer scalar ([`num::ExactInt`]);
//! [`Count`] fixes it to `BigInt`.

pub mod checks;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod num;
pub mod search;
pub mod subspace;
pub mod vectors;

pub use error::{Error, Result};
pub use gf::{field, make_field, Field, FieldElement, FieldSpec};
pub use linalg::{GfMatrix, GfVector, Rref};
pub use subspace::{enumerate_subspaces, Subspace};
pub use vectors::{LabelSystem, ProfileDownSet, WeightProfile};

/// Exact count type used throughout the crate.
pub type Count = num_bigint::BigInt;

/// Closed-form extremal value with `BigInt` count.
pub type ExtremalCount = formulas::ExtremalValue<Count>;

/// Machine-width alternative for hot loops over small grids.
pub type SmallCount = i128;
