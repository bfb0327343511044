//! Exact computations in infinitesimal Cherednik algebras of `gl_n` and in
//! their Poisson analogues for `gl_n` and `sp_2n`.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod par;
pub mod pbw;
pub mod casimir;
pub mod linalg;
pub mod poisson;
pub mod verma;
pub mod findim;
pub mod json;
pub mod sp;
