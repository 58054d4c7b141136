use serde::{Deserialize, Serialize};

use crate::constructions::{CartanChoice, CartanType, RealizationKind};
use crate::ears::EarsFamily;
use crate::error::{Error, Result};
use crate::exactfield::CycNum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseSpec {
    Chevalley {
        cartan_type: CartanType,
        rank: usize,
    },
    Realization {
        realization: RealizationKind,
        n: usize,
        #[serde(default)]
        cartan: CartanChoice,
    },
}

impl BaseSpec {
    pub fn dim(&self) -> usize {
        match self {
            BaseSpec::Chevalley { cartan_type, rank } => cartan_type.algebra_dim(*rank),
            BaseSpec::Realization { realization, n, .. } => match realization {
                RealizationKind::SoAntisymmetric | RealizationKind::SplitD => n * (n - 1) / 2,
                RealizationKind::SplitC => n * (n + 1) / 2,
                RealizationKind::Sl => n * n - 1,
            },
        }
    }
}

/// A one-based matrix entry `(i, j, value)`.
pub type Triplet = (usize, usize, CycNum);

/// The image of one Chevalley generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageSpec {
    /// `e3`, `f7`, one-based.
    pub generator: String,
    /// A generator (`e6`), a right-nested word (`[f2 f4 f1]`), `highest` or
    /// `lowest` for the extreme root vectors.
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<CycNum>,
    /// Index of a free scalar to be solved for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknown: Option<usize>,
}

impl ImageSpec {
    pub fn new(generator: &str, value: &str) -> Self {
        ImageSpec { generator: generator.into(), value: value.into(), scale: None, unknown: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SigmaSpec {
    Identity,
    /// `X -> M X M^-1`.
    Conjugation { matrix: Vec<Triplet> },
    /// `X -> -X^T`.
    CartanInvolution,
    /// `X -> -J X^T J^-1`.
    TwistedTranspose { matrix: Vec<Triplet> },
    /// `e_i -> e_{p(i)}`, `f_i -> f_{p(i)}`, one-based.
    Diagram { perm: Vec<usize> },
    /// `e_i -> s_i e_i`, `f_i -> s_i^-1 f_i`.
    Torus { scalars: Vec<CycNum> },
    /// Generators not listed are fixed.
    GeneratorImages {
        images: Vec<ImageSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u32>,
    },
}

/// What the construction is claimed to give in one grade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeClaim {
    pub grade: Vec<u32>,
    pub dim: usize,
    /// Dimensions of the irreducible summands, in decreasing order.
    pub modules: Vec<usize>,
    /// A known problem with the claim as stated; a mismatch is then flagged
    /// rather than failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GradeClaim {
    pub fn new(grade: Vec<u32>, mut modules: Vec<usize>) -> Self {
        modules.sort_unstable_by(|a, b| b.cmp(a));
        GradeClaim { grade, dim: modules.iter().sum(), modules, note: None }
    }

    pub fn noted(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Full name including the rank, e.g. `B2^(2,2)`.
    pub name: String,
    /// Name without the rank, shared by all ranks, e.g. `B^(2,2)`.
    #[serde(default)]
    pub recipe: String,
    pub rank: usize,
    pub family: EarsFamily,
    pub base: BaseSpec,
    pub sigmas: Vec<SigmaSpec>,
    pub expected: Vec<GradeClaim>,
    /// Remarks on how the recipe departs from the printed construction.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CatalogEntry {
    /// Recipe-level consistency: one automorphism per null direction, and
    /// unflagged claims summing to the dimension of the base.
    pub fn validate(&self) -> Result<()> {
        if self.sigmas.len() != self.family.nvars {
            return Err(Error::InvalidArgument(format!("{}: {} automorphisms for {} null directions", self.name, self.sigmas.len(), self.family.nvars)));
        }
        for c in &self.expected {
            if c.grade.len() != self.family.nvars {
                return Err(Error::InvalidArgument(format!("{}: grade {:?} has the wrong length", self.name, c.grade)));
            }
        }
        let total: usize = self.expected.iter().map(|c| c.dim).sum();
        let flagged = self.expected.iter().any(|c| c.note.is_some());
        if !flagged && total != self.base.dim() {
            return Err(Error::InvalidArgument(format!("{}: claimed dimensions sum to {total}, not {}", self.name, self.base.dim())));
        }
        Ok(())
    }
}

/// Exchanges `sigma_0` and `sigma_1`, and the grades with them. Families with
/// two null directions map to their swapped family.
pub fn swap_entry(e: &CatalogEntry) -> Result<CatalogEntry> {
    if e.sigmas.len() != 2 {
        return Err(Error::InvalidArgument(format!("{} does not have two automorphisms", e.name)));
    }
    let family = e.family.swapped().ok_or_else(|| Error::InvalidArgument(format!("{} has no swapped family", e.family)))?;
    let mut sigmas = e.sigmas.clone();
    sigmas.swap(0, 1);
    let mut expected: Vec<GradeClaim> = e
        .expected
        .iter()
        .map(|c| GradeClaim { grade: vec![c.grade[1], c.grade[0]], ..c.clone() })
        .collect();
    expected.sort_by(|a, b| a.grade.cmp(&b.grade));
    let swap_name = |s: &str| match s.find("^(") {
        Some(p) => {
            let (head, tail) = s.split_at(p);
            match tail[2..].split_once(')') {
                Some((sup, rest)) => {
                    let parts: Vec<&str> = sup.split(',').collect();
                    if parts.len() == 2 {
                        format!("{head}^({},{}){rest}", parts[1], parts[0])
                    } else {
                        s.to_string()
                    }
                }
                None => s.to_string(),
            }
        }
        None => s.to_string(),
    };
    Ok(CatalogEntry {
        name: swap_name(&e.name),
        recipe: swap_name(&e.recipe),
        rank: e.rank,
        family,
        base: e.base.clone(),
        sigmas,
        expected,
        notes: e.notes.clone(),
    })
}
