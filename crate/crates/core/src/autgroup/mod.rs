//! Finite-order automorphisms and the joint eigenspace grading they induce.
mod automorphism;
mod decomposition;
mod generators;

pub use automorphism::{check_homomorphism, Automorphism, Normalization, ORDER_BOUND};
pub use decomposition::{eigenvalue, joint_decomposition, GradedDecomposition};
pub use generators::{diagram_automorphism, from_generator_images, torus_automorphism, GeneratorImage};
