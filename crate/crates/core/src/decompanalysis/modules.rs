use serde::{Deserialize, Serialize};

use super::FixedAlgebra;
use crate::autgroup::GradedDecomposition;
use crate::constructions::SplitAlgebra;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, ExactMatrix, SparseVec};
use crate::liecore::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    /// Dynkin labels of the highest weight, in the fixed algebra's simple-root order.
    pub highest_weight: Vec<i64>,
    /// Values of the highest weight on the centre, in the Cartan basis; empty if no centre.
    pub central_weight: Vec<String>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub grade: Vec<u32>,
    pub summands: Vec<Summand>,
    pub total_dim: usize,
}

impl ModuleReport {
    /// Summand dimensions, largest first.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.summands.iter().map(|s| s.dim).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Decomposes `g_k` into irreducibles over `g_0` by finding the vectors killed
/// by every simple raising operator and closing each under lowering. Each
/// closure's dimension is cross-checked against the Weyl dimension formula.
pub fn module_decomposition(split: &SplitAlgebra, d: &GradedDecomposition, k: &[u32], fixed: &FixedAlgebra) -> Result<ModuleReport> {
    let alg = d.algebra();
    let space = d.component(k);
    let cl = &fixed.classification;
    let weights = split.weight_decomposition(&space, &fixed.cartan0)?;
    let n = alg.dim();
    let mut summands = Vec::new();
    let mut generated = Subspace::zero(alg.ambient());
    for (w, ws) in &weights {
        // highest-weight vectors in this weight space
        let cols: Vec<SparseVec> = ws
            .basis()
            .iter()
            .map(|b| {
                let mut terms = Vec::new();
                for (i, e) in cl.e.iter().enumerate() {
                    for (j, c) in alg.bracket(e, b).iter() {
                        terms.push((i * n + j, c.clone()));
                    }
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        let kernel = ExactMatrix::from_columns(n * cl.e.len().max(1), &cols).kernel();
        for c in kernel {
            let mut v = SparseVec::zero();
            for (b, x) in c.iter() {
                v = v.add_scaled(&ws.basis()[*b], x);
            }
            let module = lowering_closure(alg, &cl.f, &v);
            let labels = cl
                .dynkin_labels(w)
                .filter(|l| l.iter().all(|x| *x >= 0))
                .ok_or_else(|| Error::DecompositionFailure(format!("highest weight {w:?} is not dominant integral")))?;
            let weyl = cl.weyl_dimension(&labels);
            if weyl != crate::exactfield::Rational::from_int(module.dim() as i64) {
                return Err(Error::DecompositionFailure(format!(
                    "lowering closure of highest weight {labels:?} has dimension {}, Weyl formula gives {weyl}",
                    module.dim()
                )));
            }
            let central = central_part(fixed, w);
            let before = generated.dim();
            generated = generated.sum(&module)?;
            if generated.dim() != before + module.dim() {
                return Err(Error::DecompositionFailure("generated submodules are not independent".into()));
            }
            summands.push(Summand { highest_weight: labels, central_weight: central, dim: module.dim() });
        }
    }
    if generated.dim() != space.dim() {
        return Err(Error::DecompositionFailure(format!(
            "irreducibles span {} of {} dimensions",
            generated.dim(),
            space.dim()
        )));
    }
    summands.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.highest_weight.cmp(&b.highest_weight)));
    Ok(ModuleReport { grade: k.to_vec(), summands, total_dim: space.dim() })
}

fn lowering_closure(alg: &crate::liecore::LieAlgebra, f: &[SparseVec], v: &SparseVec) -> Subspace {
    let mut span = Subspace::from_vectors(alg.ambient(), vec![v.clone()]);
    let mut frontier = vec![v.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for fi in f {
                let y = alg.bracket(fi, x);
                if !y.is_zero() && !span.contains(&y) {
                    span = Subspace::from_vectors(alg.ambient(), [span.basis(), std::slice::from_ref(&y)].concat());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    span
}

/// The weight restricted to the centre of `g_0`: its values on a basis of the
/// common kernel of the simple roots within the Cartan.
fn central_part(fixed: &FixedAlgebra, w: &[CycNum]) -> Vec<String> {
    let cl = &fixed.classification;
    if cl.center_dim == 0 {
        return Vec::new();
    }
    let r = fixed.cartan0.dim();
    let rows: Vec<SparseVec> = cl.simple.iter().map(|&s| SparseVec::from_dense(&cl.roots[s].weight)).collect();
    let m = ExactMatrix::from_rows(r, rows);
    m.kernel()
        .iter()
        .map(|z| {
            let mut acc = CycNum::zero();
            for (i, c) in z.iter() {
                acc += &(c * &w[*i]);
            }
            acc.to_string()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixed_algebra_analysis;
    use super::*;
    use crate::autgroup::{joint_decomposition, Automorphism};
    use crate::constructions::MatrixRealization;

    #[test]
    fn so8_grades_split_as_vector_plus_trivial() {
        let r = MatrixRealization::so_antisymmetric(8).unwrap();
        let diag = |d: &[i64]| ExactMatrix::diagonal(&d.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>());
        let s0 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, 1, 1, 1, -1, -1])).unwrap();
        let s1 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, 1, 1, -1, 1, -1])).unwrap();
        let d = joint_decomposition(r.algebra(), &[s0, s1]).unwrap();
        let fa = fixed_algebra_analysis(&r.split, &d).unwrap();
        for k in [vec![0, 1], vec![1, 0], vec![1, 1]] {
            let m = module_decomposition(&r.split, &d, &k, &fa).unwrap();
            assert_eq!(m.dims(), vec![5, 1]);
        }
        let adj = module_decomposition(&r.split, &d, &[0, 0], &fa).unwrap();
        assert_eq!(adj.dims(), vec![10]);
        assert_eq!(adj.summands[0].highest_weight, vec![0, 2]);
    }
}
