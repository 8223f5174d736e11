//! Weighted operator means, Hermitian functional calculus, unitarily
//! invariant norms, and seeded verification of Ando-Hiai and
//! Golden-Thompson type matrix inequalities.
//!
//! The crate is organized around a small Hermitian-matrix kernel
//! ([`hermitian`]) on which the Kubo-Ando means ([`means`]), norms
//! ([`norms`]), scalar constants ([`constants`]), positive linear maps
//! ([`maps`]) and the named inequality checks ([`checks`]) are built. The
//! [`suite`] module runs seeded trial grids (in parallel with the
//! `parallel` feature, sequentially otherwise) and [`report`] renders the
//! results as JSON or CSV.

pub mod checks;
pub mod constants;
pub mod error;
pub mod funcs;
pub mod hermitian;
pub mod maps;
pub mod means;
pub mod norms;
pub mod report;
pub mod sampling;
pub mod suite;

pub use error::{OpIneqError, Result};
pub use hermitian::{HermitianMatrix, TolerancePolicy};
