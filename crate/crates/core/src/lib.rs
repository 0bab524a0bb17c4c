//! Adjoint polynomials and canonical forms of polytopes in exact arithmetic.

pub mod adjoint;
pub mod arrangements;
pub mod canonical;
pub mod error;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};
