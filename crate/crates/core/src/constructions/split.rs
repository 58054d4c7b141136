use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{CycNum, SparseVec};
use crate::liecore::{LieAlgebra, Subspace};

/// A Lie algebra whose basis is a weight basis for a distinguished abelian
/// subalgebra spanned by some of its basis vectors.
#[derive(Clone, Debug)]
pub struct SplitAlgebra {
    pub algebra: Arc<LieAlgebra>,
    /// Basis indices spanning the distinguished Cartan subalgebra.
    pub cartan: Vec<usize>,
    /// `weights[b][j]`: eigenvalue of `ad b_{cartan[j]}` on `b_b`.
    pub weights: Vec<Vec<CycNum>>,
}

impl SplitAlgebra {
    /// Derives the weights from the structure constants and verifies that every
    /// basis vector is a joint eigenvector.
    pub fn new(algebra: Arc<LieAlgebra>, cartan: Vec<usize>) -> Result<Self> {
        let d = algebra.dim();
        let mut weights = vec![Vec::with_capacity(cartan.len()); d];
        for &h in &cartan {
            for (b, w) in weights.iter_mut().enumerate() {
                let br = algebra.basis_bracket(h, b);
                let ev = match br.entries() {
                    [] => CycNum::zero(),
                    [(k, c)] if *k == b => c.clone(),
                    _ => {
                        return Err(Error::NotCartan(format!(
                            "basis vector {} is not a weight vector for {}",
                            algebra.labels()[b],
                            algebra.labels()[h]
                        )))
                    }
                };
                w.push(ev);
            }
        }
        if cartan.iter().any(|&h| weights[h].iter().any(|x| !x.is_zero())) {
            return Err(Error::NotCartan("distinguished Cartan is not abelian".into()));
        }
        Ok(SplitAlgebra { algebra, cartan, weights })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn cartan_subspace(&self) -> Subspace {
        Subspace::spanned_by_basis(self.algebra.ambient(), self.cartan.iter().copied())
    }

    /// Weights restricted to `c`, a subspace of the distinguished Cartan:
    /// `result[b][k]` is the eigenvalue of `ad c_k` on `b_b`.
    pub fn restricted_weights(&self, c: &Subspace) -> Result<Vec<Vec<CycNum>>> {
        c.check_ambient(&self.algebra.ambient())?;
        let pos: BTreeMap<usize, usize> = self.cartan.iter().enumerate().map(|(j, &h)| (h, j)).collect();
        let mut combos = Vec::with_capacity(c.dim());
        for v in c.basis() {
            let mut combo = Vec::with_capacity(v.nnz());
            for (i, x) in v.iter() {
                let j = *pos.get(i).ok_or_else(|| Error::NotCartan("subspace leaves the split Cartan".into()))?;
                combo.push((j, x.clone()));
            }
            combos.push(combo);
        }
        Ok(self
            .weights
            .iter()
            .map(|w| {
                combos
                    .iter()
                    .map(|combo| {
                        let mut acc = CycNum::zero();
                        for (j, x) in combo {
                            acc += &(x * &w[*j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect())
    }

    /// Weight spaces of `v` under `c`; `v` must be `ad c`-stable.
    pub fn weight_decomposition(&self, v: &Subspace, c: &Subspace) -> Result<BTreeMap<Vec<CycNum>, Subspace>> {
        let rw = self.restricted_weights(c)?;
        self.weight_decomposition_with(v, &rw)
    }

    pub fn weight_decomposition_with(&self, v: &Subspace, rw: &[Vec<CycNum>]) -> Result<BTreeMap<Vec<CycNum>, Subspace>> {
        let mut groups: BTreeMap<&Vec<CycNum>, Vec<usize>> = BTreeMap::new();
        let mut touched = vec![false; self.dim()];
        for b in v.basis() {
            for (i, _) in b.iter() {
                touched[*i] = true;
            }
        }
        for (i, w) in rw.iter().enumerate() {
            if touched[i] {
                groups.entry(w).or_default().push(i);
            }
        }
        let mut out = BTreeMap::new();
        let mut total = 0;
        for (w, idx) in groups {
            let mut mask = vec![false; self.dim()];
            for i in &idx {
                mask[*i] = true;
            }
            let vecs: Vec<SparseVec> = v.basis().iter().map(|b| b.filter(|i| mask[i])).filter(|b| !b.is_zero()).collect();
            let s = Subspace::from_vectors(v.ambient(), vecs);
            if s.basis().iter().any(|x| !v.contains(x)) {
                return Err(Error::NotStable("subspace is not stable under the Cartan".into()));
            }
            total += s.dim();
            if !s.is_zero() {
                out.insert(w.clone(), s);
            }
        }
        if total != v.dim() {
            return Err(Error::NotStable("weight spaces do not span the subspace".into()));
        }
        Ok(out)
    }
}
