//! The dictionary of constructions: each entry names a root-system family, a
//! base algebra and a tuple of commuting automorphisms, with the claimed
//! decomposition. Entries are data, so user files can add more.
mod build;
mod entries;
mod report;
mod run;
mod spec;
mod user;

pub use build::{build_entry, build_sigma, matrix_from_triplets, Base, Built};
pub use entries::{catalog_entries, catalog_entry, find_entry, ht_b, ht_bc, recipes, HT_BC_PARAMS, HT_B_PARAMS};
pub use report::{grade_key, Check, DiffPoint, DiffSide, Report, Status};
pub use run::{analyze_entry, entry_support, run_all, run_entry, Analysis, RunOptions};
pub use spec::{swap_entry, BaseSpec, CatalogEntry, GradeClaim, ImageSpec, SigmaSpec, Triplet};
pub use user::{load_entries, parse_entries};
