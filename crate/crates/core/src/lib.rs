//! Exact-arithmetic laboratory for the Hermitian and skew-Hermitian octonion
//! matrix algebras `sym^±(M_n(O), J)`.
//!
//! The crate is `no_std` (with `alloc`); the `std` feature only adds
//! `std::error::Error` plumbing through `thiserror` and is on by default.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod deltader;
pub mod error;
pub mod exactnum;
pub mod kmat;
pub mod laws;
pub mod linmap;
pub mod linsolve;
pub mod octmat;
pub mod octonion;
pub mod sample;
pub mod structure;
pub mod forms;

pub use error::{Error, Result};
pub use exactnum::{Field, FieldKind, FieldSpec, Rational, Scalar};
pub use algebra::{AlgebraElement, Flavor, Sign, StructureAlgebra};
pub use linmap::LinearMap;
pub use octmat::OctMatrix;
pub use octonion::Octonion;
