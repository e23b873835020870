//! Exact computation of triply-graded link homology from braid words.
//!
//! Soergel bimodules are stored as free left modules over the reduced
//! polynomial ring with explicit right-action matrices. Rouquier complexes
//! are built from them, Hochschild homology is taken through Koszul
//! complexes, and the iterated homology is computed degree by degree with
//! exact rational arithmetic.

#![no_std]

extern crate alloc;

pub mod bimodule;
pub mod braid;
pub mod error;
pub mod hochschild;
pub mod hecke;
pub mod homology;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod rouquier;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matrix::PolyMatrix;
pub use poly::{demazure_split, poly_mul, transposition_action, Mono, Poly};
pub use rational::Rational;
