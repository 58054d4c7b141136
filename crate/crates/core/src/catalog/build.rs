use std::collections::BTreeMap;
use std::sync::Arc;

use super::spec::{BaseSpec, CatalogEntry, SigmaSpec, Triplet};
use crate::autgroup::{diagram_automorphism, from_generator_images, torus_automorphism, Automorphism, GeneratorImage};
use crate::constructions::{ChevalleyAlgebra, Generator, MatrixRealization, SplitAlgebra};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, SparseVec};
use crate::liecore::LieAlgebra;

/// The algebra an entry is built on.
#[derive(Clone, Debug)]
pub enum Base {
    Chevalley(ChevalleyAlgebra),
    Realization(MatrixRealization),
}

impl Base {
    pub fn new(spec: &BaseSpec) -> Result<Self> {
        Ok(match spec {
            BaseSpec::Chevalley { cartan_type, rank } => Base::Chevalley(ChevalleyAlgebra::new(*cartan_type, *rank)?),
            BaseSpec::Realization { realization, n, cartan } => Base::Realization(MatrixRealization::new(*realization, *n, *cartan)?),
        })
    }

    pub fn split(&self) -> &SplitAlgebra {
        match self {
            Base::Chevalley(c) => &c.split,
            Base::Realization(r) => &r.split,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.split().algebra
    }

    fn chevalley(&self, what: &str) -> Result<&ChevalleyAlgebra> {
        match self {
            Base::Chevalley(c) => Ok(c),
            Base::Realization(_) => Err(Error::InvalidArgument(format!("{what} needs a Chevalley base"))),
        }
    }

    fn realization(&self, what: &str) -> Result<&MatrixRealization> {
        match self {
            Base::Realization(r) => Ok(r),
            Base::Chevalley(_) => Err(Error::InvalidArgument(format!("{what} needs a matrix realization"))),
        }
    }
}

/// A square matrix from one-based triplets.
pub fn matrix_from_triplets(n: usize, t: &[Triplet]) -> Result<ExactMatrix> {
    if let Some((i, j, _)) = t.iter().find(|(i, j, _)| *i == 0 || *j == 0 || *i > n || *j > n) {
        return Err(Error::InvalidArgument(format!("entry ({i}, {j}) is outside a {n}x{n} matrix")));
    }
    ExactMatrix::from_triplets(n, n, t.iter().map(|(i, j, v)| (i - 1, j - 1, v.clone())))
}

fn image_vector(ch: &ChevalleyAlgebra, value: &str) -> Result<SparseVec> {
    let v = value.trim();
    Ok(match v {
        "highest" => SparseVec::unit(ch.highest_root_vector()),
        "lowest" => SparseVec::unit(ch.lowest_root_vector()),
        _ if v.starts_with('[') => ch.eval_word_standard(&Generator::parse_word(v)?),
        _ => {
            let g = Generator::parse(v)?;
            if g.node() >= ch.rank() {
                return Err(Error::UnknownGenerator(v.into()));
            }
            SparseVec::unit(ch.generator_index(g))
        }
    })
}

pub fn build_sigma(base: &Base, spec: &SigmaSpec) -> Result<Automorphism> {
    match spec {
        SigmaSpec::Identity => Ok(Automorphism::identity(base.algebra().clone())),
        SigmaSpec::Conjugation { matrix } => {
            let r = base.realization("a conjugation")?;
            Automorphism::from_conjugation(r, &matrix_from_triplets(r.n, matrix)?)
        }
        SigmaSpec::CartanInvolution => Automorphism::cartan_involution(base.realization("the Cartan involution")?),
        SigmaSpec::TwistedTranspose { matrix } => {
            let r = base.realization("a twisted transpose")?;
            Automorphism::twisted_transpose(r, &matrix_from_triplets(r.n, matrix)?)
        }
        SigmaSpec::Diagram { perm } => {
            let ch = base.chevalley("a diagram automorphism")?;
            if perm.contains(&0) {
                return Err(Error::InvalidArgument("diagram permutations are one-based".into()));
            }
            diagram_automorphism(ch, &perm.iter().map(|p| p - 1).collect::<Vec<_>>())
        }
        SigmaSpec::Torus { scalars } => torus_automorphism(base.chevalley("a torus automorphism")?, scalars),
        SigmaSpec::GeneratorImages { images, order } => {
            let ch = base.chevalley("generator images")?;
            let mut map = BTreeMap::new();
            for i in 0..ch.rank() {
                for g in [Generator::E(i), Generator::F(i)] {
                    map.insert(g, GeneratorImage::fixed(SparseVec::unit(ch.generator_index(g))));
                }
            }
            for im in images {
                let g = Generator::parse(&im.generator)?;
                if g.node() >= ch.rank() {
                    return Err(Error::UnknownGenerator(im.generator.clone()));
                }
                let mut v = image_vector(ch, &im.value)?;
                if let Some(s) = &im.scale {
                    v = v.scale(s);
                }
                map.insert(g, GeneratorImage { vector: v, unknown: im.unknown });
            }
            from_generator_images(ch, &map, *order)
        }
    }
}

/// The base algebra and the automorphisms of an entry.
#[derive(Clone, Debug)]
pub struct Built {
    pub base: Base,
    pub sigmas: Vec<Automorphism>,
}

pub fn build_entry(e: &CatalogEntry) -> Result<Built> {
    let base = Base::new(&e.base)?;
    let sigmas = e.sigmas.iter().map(|s| build_sigma(&base, s)).collect::<Result<Vec<_>>>()?;
    Ok(Built { base, sigmas })
}

