//! Twisted toroidal Lie algebras built from pairs of commuting finite-order
//! automorphisms, with exact verification of every structural claim.

pub mod error;
pub mod exactfield;
pub mod autgroup;
pub mod catalog;
pub mod constructions;
pub mod decompanalysis;
pub mod ears;
pub mod liecore;
pub mod toroidal;

pub use error::{Error, Result};
