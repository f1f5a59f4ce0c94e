//! Exact coefficient arithmetic.

pub mod gauss;
pub mod linalg;
pub mod poly;
pub mod ratfunc;

pub use gauss::{Coeff, Gauss, ImaginaryUnit, RealScalar};
pub use linalg::{FieldElem, RingElem};
pub use poly::{gcd, Monomial, Poly};
pub use ratfunc::RationalFunction;
