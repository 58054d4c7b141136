//! The twisted toroidal algebra as finite formal sums.
//!
//! Loop terms `g (x) t^m`, central terms `t^m k_i` modulo exactness, and
//! derivations `t^m d_j`, with the bracket extended to the derivations by a
//! cocycle `mu tau_1 + nu tau_2`.
mod bracket;
mod cocycle;
mod element;
mod sampling;

pub use bracket::{Tau2Reading, TwistConfig};
pub use cocycle::{cocycle_audit, cocycle_violations, resolved_tau2, CocycleFn, CocycleVerdict};
pub use element::{canonicalize_k, Exponent, ToroidalElement};
pub use sampling::{random_homogeneous, verify_closure, verify_jacobi_toroidal, SampleReport};
