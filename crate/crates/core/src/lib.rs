//! Exact vacuum modules for affine Kac-Moody, Virasoro and semidirect
//! Virasoro-Kac-Moody algebras, with the Segal-Sugawara operators, their
//! critical and infinite-level limits, and a verification harness.

pub mod error;
pub mod fock;
pub mod harness;
pub mod lie;
pub mod limits;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod sugawara;

pub use error::{Error, Result};
