//! Exact Hall algebras of finite-field and F_1 categories, integration maps,
//! Harder–Narasimhan recursions and equivariant point counts of period domains.

pub mod budget;
pub mod coeffring;
pub mod equivariant;
pub mod error;
pub mod field;
pub mod group;
pub mod hall;
pub mod linalg;
pub mod protoexact;
pub mod slope;
pub mod suites;

pub use budget::Budget;
pub use error::{Error, Result};
