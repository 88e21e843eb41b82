//! Exact cohomology of period domains over finite fields.
//!
//! The formula engine ([`rootdata`], [`weyl`], [`galois`], [`cohom`]) turns a
//! quasi-split group datum and a cocharacter into the graded table of
//! compactly supported ℓ-adic cohomology of the period domain. The verifier
//! ([`finflag`], [`semistable`], [`complex`]) recounts the same objects over
//! finite fields by brute force for `SL_n` and the quasi-split `U_3`.

pub mod cli;
pub mod cohom;
pub mod complex;
pub mod error;
pub mod finflag;
pub mod galois;
pub mod linalg;
pub mod rootdata;
pub mod semistable;
pub mod weyl;

pub use error::{Error, Result};

/// Exact rational scalar used everywhere in the formula engine.
pub type Rational = num_rational::Ratio<i64>;
