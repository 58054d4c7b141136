//! Structure of a graded algebra: Killing orthogonality of the grades, the
//! fixed algebra and its type, and each grade as a module over it.
mod modules;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autgroup::GradedDecomposition;
use crate::constructions::{classify_semisimple, Classification, SplitAlgebra};
use crate::error::{Error, Result};
use crate::exactfield::ExactMatrix;
use crate::liecore::Subspace;

pub use modules::{module_decomposition, ModuleReport, Summand};

/// A pair of grades `(k, l)` with `k + l != 0` and `kappa(g_k, g_l) != 0`.
pub type OrthogonalityViolation = (Vec<u32>, Vec<u32>);

/// Pairs of grades that should be orthogonal but are not; empty on success.
pub fn verify_orthogonality(d: &GradedDecomposition, kappa: &ExactMatrix) -> Vec<OrthogonalityViolation> {
    let keys: Vec<&Vec<u32>> = d.components.keys().collect();
    let zero = d.zero_grade();
    let pairs: Vec<(usize, usize)> = (0..keys.len()).flat_map(|a| (a..keys.len()).map(move |b| (a, b))).collect();
    let mut bad: Vec<OrthogonalityViolation> = pairs
        .par_iter()
        .filter(|&&(a, b)| d.add(keys[a], keys[b]) != zero)
        .filter(|&&(a, b)| {
            let ys: Vec<_> = d.components[keys[b]].basis().iter().map(|y| kappa.mul_vec(y)).collect();
            d.components[keys[a]].basis().iter().any(|x| ys.iter().any(|ky| !x.dot(ky).is_zero()))
        })
        .map(|&(a, b)| (keys[a].clone(), keys[b].clone()))
        .collect();
    bad.sort();
    bad
}

/// The fixed algebra `g_0`, its Cartan subalgebra, and its type.
#[derive(Clone, Debug)]
pub struct FixedAlgebra {
    pub subspace: Subspace,
    pub cartan0: Subspace,
    pub classification: Classification,
}

/// Uses `cartan0 = h ∩ g_0` for the distinguished Cartan `h` of `split`.
pub fn fixed_algebra_analysis(split: &SplitAlgebra, d: &GradedDecomposition) -> Result<FixedAlgebra> {
    let g0 = d.component(&d.zero_grade());
    let cartan0 = split.cartan_subspace().intersection(&g0)?;
    fixed_algebra_with_cartan(split, d, cartan0).map_err(|e| match e {
        Error::NotCartan(msg) => Error::NotCartan(format!(
            "{msg}; the fixed part of the standard Cartan is not maximal in g_0, supply a Cartan subalgebra explicitly"
        )),
        e => e,
    })
}

pub fn fixed_algebra_with_cartan(split: &SplitAlgebra, d: &GradedDecomposition, cartan0: Subspace) -> Result<FixedAlgebra> {
    let g0 = d.component(&d.zero_grade());
    let classification = classify_semisimple(split, &g0, &cartan0)?;
    Ok(FixedAlgebra { subspace: g0, cartan0, classification })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimDiff {
    pub grade: Vec<u32>,
    pub expected: usize,
    pub computed: usize,
}

/// Grades whose computed dimension differs from `expected`; missing
/// expectations count as zero.
pub fn dimension_audit(d: &GradedDecomposition, expected: &BTreeMap<Vec<u32>, usize>) -> Vec<DimDiff> {
    let computed = d.dims();
    let mut grades: Vec<&Vec<u32>> = computed.keys().chain(expected.keys()).collect();
    grades.sort();
    grades.dedup();
    grades
        .into_iter()
        .filter_map(|k| {
            let e = expected.get(k).copied().unwrap_or(0);
            let c = computed.get(k).copied().unwrap_or(0);
            (e != c).then(|| DimDiff { grade: k.clone(), expected: e, computed: c })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{joint_decomposition, Automorphism};
    use crate::constructions::{CartanType, MatrixRealization};
    use crate::exactfield::CycNum;

    fn diag(d: &[i64]) -> ExactMatrix {
        ExactMatrix::diagonal(&d.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>())
    }

    fn so8_pair() -> (MatrixRealization, GradedDecomposition) {
        let r = MatrixRealization::so_antisymmetric(8).unwrap();
        let s0 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, 1, 1, 1, -1, -1])).unwrap();
        let s1 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, 1, 1, -1, 1, -1])).unwrap();
        let d = joint_decomposition(r.algebra(), &[s0, s1]).unwrap();
        (r, d)
    }

    #[test]
    fn so8_pair_is_orthogonal_and_fixes_b2() {
        let (r, d) = so8_pair();
        assert!(verify_orthogonality(&d, r.algebra().killing_form()).is_empty());
        let fa = fixed_algebra_analysis(&r.split, &d).unwrap();
        assert_eq!(fa.classification.types(), vec![(CartanType::B, 2)]);
        assert_eq!(fa.classification.center_dim, 0);
        let expected: BTreeMap<Vec<u32>, usize> = [(vec![0, 0], 10), (vec![0, 1], 6), (vec![1, 0], 6), (vec![1, 1], 6)].into_iter().collect();
        assert!(dimension_audit(&d, &expected).is_empty());
        let mut wrong = expected.clone();
        wrong.insert(vec![1, 1], 5);
        assert_eq!(dimension_audit(&d, &wrong), vec![DimDiff { grade: vec![1, 1], expected: 5, computed: 6 }]);
    }

    #[test]
    fn mislabeled_grading_breaks_orthogonality() {
        let (r, d) = so8_pair();
        // move a fixed vector that pairs with the rest of g_0 into the (0,1) component
        let mut comps = d.components.clone();
        let mut g00 = comps[&vec![0, 0]].basis().to_vec();
        let g01 = comps[&vec![0, 1]].basis().to_vec();
        let kappa = r.algebra().killing_form();
        let x = (0..g00.len())
            .find(|&i| (0..g00.len()).any(|j| j != i && !g00[i].dot(&kappa.mul_vec(&g00[j])).is_zero()))
            .unwrap();
        let moved = g00.remove(x);
        let amb = r.algebra().ambient();
        comps.insert(vec![0, 0], Subspace::from_vectors(amb, g00));
        comps.insert(vec![0, 1], Subspace::from_vectors(amb, [g01, vec![moved]].concat()));
        let bad = GradedDecomposition::from_components_unchecked(r.algebra().clone(), d.orders.clone(), comps);
        assert!(!verify_orthogonality(&bad, r.algebra().killing_form()).is_empty());
    }

    #[test]
    fn trivial_grading_is_whole_algebra() {
        let r = MatrixRealization::so_antisymmetric(7).unwrap();
        let d = joint_decomposition(r.algebra(), &[Automorphism::identity(r.algebra().clone())]).unwrap();
        assert!(verify_orthogonality(&d, r.algebra().killing_form()).is_empty());
        let fa = fixed_algebra_analysis(&r.split, &d).unwrap();
        assert_eq!(fa.classification.types(), vec![(CartanType::B, 3)]);
    }
}
