//! Extended affine root systems: the families as membership predicates, the
//! root support of a twisted toroidal algebra, and their comparison on a
//! finite window of exponents.
//!
//! Finite parts are compared as weights of the fixed Cartan subalgebra, with
//! short and long told apart by squared-length ratios, so no isomorphism with
//! an abstract root system is ever chosen.
mod family;
mod support;

pub use family::{EarsFamily, FamilyTag, LengthClass};
pub use support::{axiom_spotcheck, compute_support, ears_compare, window_exponents, AxiomReport, EarsDiff, Support, SupportPoint};
