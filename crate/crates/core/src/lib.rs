//! Finite nilpotent algebras and semigroups over prime fields, their power
//! maps, and a search harness for the deficit `p dim R^(p) - dim R`.

pub mod algebras;
pub mod error;
pub mod exactlin;
pub mod explorer;
pub mod powermaps;
pub mod semigroups;

pub use error::{Error, Result};
pub use exactlin::{Matrix, PrimeField, Scalar, Subspace};
pub use semigroups::{NumericalPresentation, Relation, SemigroupWithZero};
