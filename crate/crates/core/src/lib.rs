//! Exact twisted-conjugacy witnesses in `GL_n` over towers of transcendental
//! extensions of the algebraic numbers, with a brute-force Reidemeister oracle
//! for matrix groups over small finite fields.

pub mod algebraic;
pub mod automorphism;
pub mod certificate;
pub mod error;
pub mod expr;
pub mod factor;
pub mod field;
pub mod finite;
pub mod intpoly;
pub mod linalg;
pub mod multipoly;
pub mod par;
pub mod roots;
pub mod sample;
pub mod selftest;
pub mod tower;
pub mod twisted;

pub use algebraic::{AlgebraicNumber, Limits};
pub use error::{Error, Result};
pub use intpoly::IntPolynomial;
