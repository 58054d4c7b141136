//! Root systems, Chevalley bases, matrix realizations, and classification of
//! reductive subalgebras by their root data.

mod chevalley;
mod classify;
mod realization;
mod rootsys;
mod split;

pub use chevalley::{BasisElement, ChevalleyAlgebra, Generator};
pub use classify::{canonical_type, classify_semisimple, Classification, RootDatum, SimpleComponent};
pub use realization::{CartanChoice, MatrixRealization, RealizationKind};
pub use rootsys::{cartan_matrix, positive_roots, symmetrizer, weyl_dimension, CartanType, RootSystem};
pub use split::SplitAlgebra;
