//! Exact computations with representations of the Virasoro algebra: Verma
//! modules and their quotients, the intermediate series `V'_{α,β}`, tensor
//! products `V'_{α,β} ⊗ L(c,h)`, and irreducibility verdicts for them.
//!
//! All arithmetic is over the rationals, so every answer is exact.

pub mod error;
pub mod fusion;
pub mod intermediate;
pub mod linalg;
pub mod reducibility;
pub mod replay;
pub mod scalar;
pub mod tensor;
pub mod verma;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Poly, Rational};
