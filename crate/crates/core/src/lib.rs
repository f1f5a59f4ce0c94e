//! Exact symbolic engine for the inverse twistor correspondence of the flat
//! twisted Dolbeault complex over `C^n`.
//!
//! The ring layer ([`ring`]) is generic over its scalar; everything above it
//! works with the aliases defined here.

pub mod correspondence;
pub mod error;
pub mod forms;
pub mod grassmann;
pub mod index;
pub mod ring;
pub mod spin;
pub mod twistor;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact rational scalar.
pub type Rational = BigRational;
/// Gaussian rational `a + b i`.
pub type GaussRat = ring::Gauss<BigRational>;
/// Sparse polynomial over the Gaussian rationals.
pub type Poly = ring::Poly<GaussRat>;
/// Rational function over the Gaussian rationals.
pub type RatFunc = ring::RationalFunction<GaussRat>;
