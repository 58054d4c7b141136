//! Exact arithmetic: rationals, the cyclotomic field of the session level, and
//! sparse linear algebra over it.

mod cyclotomic;
mod matrix;
mod rational;
mod sparse;

pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, field_degree, imaginary_unit, root_of_unity, session_level, set_session_level,
    CycNum, Poly, DEFAULT_LEVEL,
};
pub use matrix::{rref, Echelon, ExactMatrix};
pub use rational::Rational;
pub use sparse::SparseVec;
