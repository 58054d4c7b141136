use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::exactfield::{root_of_unity, CycNum, SparseVec};
use crate::liecore::{LieAlgebra, Subspace};

/// Grade `k` holds the vectors on which `sigma_j` acts by `eps_j^{k_j}`,
/// `eps_j = exp(2 pi i / n_j)`.
#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    algebra: Arc<LieAlgebra>,
    pub orders: Vec<u32>,
    pub components: BTreeMap<Vec<u32>, Subspace>,
}

impl GradedDecomposition {
    /// No checks; used to build deliberately wrong gradings.
    pub fn from_components_unchecked(algebra: Arc<LieAlgebra>, orders: Vec<u32>, components: BTreeMap<Vec<u32>, Subspace>) -> Self {
        GradedDecomposition { algebra, orders, components }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn zero_grade(&self) -> Vec<u32> {
        vec![0; self.orders.len()]
    }

    pub fn add(&self, k: &[u32], l: &[u32]) -> Vec<u32> {
        k.iter().zip(l).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn neg(&self, k: &[u32]) -> Vec<u32> {
        k.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    /// Every grade in the index set, including empty ones, in lexicographic order.
    pub fn grades(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            out = out.into_iter().flat_map(|p| (0..n).map(move |k| [p.clone(), vec![k]].concat())).collect();
        }
        out
    }

    pub fn component(&self, k: &[u32]) -> Subspace {
        self.components.get(k).cloned().unwrap_or_else(|| Subspace::zero(self.algebra.ambient()))
    }

    pub fn dims(&self) -> BTreeMap<Vec<u32>, usize> {
        self.grades().into_iter().map(|k| {
            let d = self.components.get(&k).map_or(0, Subspace::dim);
            (k, d)
        }).collect()
    }

    /// Dimensions sum to `dim L`, the components are independent, and
    /// `[g_k, g_l]` lies in `g_{k+l}`.
    pub fn verify(&self) -> Result<()> {
        let d = self.algebra.dim();
        let total: usize = self.components.values().map(Subspace::dim).sum();
        if total != d {
            return Err(Error::NotGraded(format!("component dimensions sum to {total}, not {d}")));
        }
        let all: Vec<SparseVec> = self.components.values().flat_map(|s| s.basis().iter().cloned()).collect();
        if Subspace::from_vectors(self.algebra.ambient(), all).dim() != d {
            return Err(Error::NotGraded("components are not independent".into()));
        }
        let keys: Vec<&Vec<u32>> = self.components.keys().collect();
        let pairs: Vec<(usize, usize)> = (0..keys.len()).flat_map(|a| (a..keys.len()).map(move |b| (a, b))).collect();
        let bad = pairs.par_iter().find_map_any(|&(a, b)| {
            let target = self.component(&self.add(keys[a], keys[b]));
            for x in self.components[keys[a]].basis() {
                for y in self.components[keys[b]].basis() {
                    if !target.contains(&self.algebra.bracket(x, y)) {
                        return Some((keys[a].clone(), keys[b].clone()));
                    }
                }
            }
            None
        });
        match bad {
            Some((k, l)) => Err(Error::NotGraded(format!("[g{k:?}, g{l:?}] leaves g{:?}", self.add(&k, &l)))),
            None => Ok(()),
        }
    }
}

/// Simultaneous eigenspace decomposition of commuting finite-order automorphisms.
pub fn joint_decomposition(algebra: &Arc<LieAlgebra>, sigmas: &[Automorphism]) -> Result<GradedDecomposition> {
    for s in sigmas {
        if s.algebra().id() != algebra.id() {
            return Err(Error::AmbientMismatch);
        }
    }
    for a in 0..sigmas.len() {
        for b in a + 1..sigmas.len() {
            if !sigmas[a].commutes(&sigmas[b]) {
                return Err(Error::NonCommuting { first: a, second: b });
            }
        }
    }
    let orders: Vec<u32> = sigmas.iter().map(Automorphism::order).collect();
    let mut parts: Vec<(Vec<u32>, Subspace)> = vec![(Vec::new(), Subspace::full(algebra.ambient()))];
    for (j, s) in sigmas.iter().enumerate() {
        let n = orders[j];
        let eig: Vec<Subspace> = (0..n)
            .into_par_iter()
            .map(|k| s.eigenspace(&root_of_unity(n, k as i64)?))
            .collect::<Result<_>>()?;
        if eig.iter().map(Subspace::dim).sum::<usize>() != algebra.dim() {
            return Err(Error::NotDiagonalizable { index: j });
        }
        let mut next = Vec::new();
        for (key, space) in &parts {
            for (k, e) in eig.iter().enumerate() {
                let piece = space.intersection(e)?;
                if !piece.is_zero() {
                    let mut key = key.clone();
                    key.push(k as u32);
                    next.push((key, piece));
                }
            }
        }
        parts = next;
    }
    let d = GradedDecomposition { algebra: algebra.clone(), orders, components: parts.into_iter().collect() };
    d.verify()?;
    Ok(d)
}

/// `sigma_j` acts on grade `k` by `eps_j^{k_j}`.
pub fn eigenvalue(order: u32, k: u32) -> Result<CycNum> {
    root_of_unity(order, k as i64)
}
