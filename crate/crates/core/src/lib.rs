//! Exact-arithmetic construction, verification and classification of
//! finite-dimensional triangular Hopf algebras with the Chevalley
//! property, parameterized by group-theoretical septuples.
//!
//! Everything is computed over cyclotomic fields with rational
//! coefficients; every check is an exact equality of structure tensors.

pub mod chevalley;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod hopf;
pub mod linalg;
pub mod pointed;
pub mod serialize;
pub mod supergroup;
pub mod tensor;
pub mod triangular;
pub mod twist;

pub use error::{HopfError, Result};
