use std::sync::Arc;

use rayon::prelude::*;

use crate::constructions::MatrixRealization;
use crate::error::{Error, Result};
use crate::exactfield::{rref, CycNum, ExactMatrix, SparseVec};
use crate::liecore::{LieAlgebra, Subspace};

/// Powers beyond this are treated as evidence of infinite order.
pub const ORDER_BOUND: u32 = 64;

/// How free scalars in a generator-image definition were fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub values: Vec<CycNum>,
    /// Number of admissible assignments found before picking one.
    pub solutions: usize,
}

/// A certified automorphism of finite order, stored by the images of the basis.
#[derive(Clone, Debug)]
pub struct Automorphism {
    algebra: Arc<LieAlgebra>,
    columns: Vec<SparseVec>,
    order: u32,
    pub normalization: Option<Normalization>,
}

impl Automorphism {
    /// Audits bracket preservation and invertibility, then computes the order.
    pub fn new(algebra: Arc<LieAlgebra>, columns: Vec<SparseVec>) -> Result<Self> {
        check_homomorphism(&algebra, &columns)?;
        let d = algebra.dim();
        if rref(columns.clone(), d).rank() != d {
            return Err(Error::NotInvertible);
        }
        let order = order_of(&columns)?;
        Ok(Automorphism { algebra, columns, order, normalization: None })
    }

    /// Skips every check; the order is still computed.
    pub fn new_unchecked(algebra: Arc<LieAlgebra>, columns: Vec<SparseVec>) -> Result<Self> {
        let order = order_of(&columns)?;
        Ok(Automorphism { algebra, columns, order, normalization: None })
    }

    pub fn identity(algebra: Arc<LieAlgebra>) -> Self {
        let columns = (0..algebra.dim()).map(SparseVec::unit).collect();
        Automorphism { algebra, columns, order: 1, normalization: None }
    }

    /// `X -> f(X)` on a matrix realization.
    pub fn from_matrix_map(real: &MatrixRealization, f: impl Fn(&ExactMatrix) -> Result<ExactMatrix>) -> Result<Self> {
        Self::new(real.algebra().clone(), real.map_basis(f)?)
    }

    /// `X -> M X M^-1`.
    pub fn from_conjugation(real: &MatrixRealization, m: &ExactMatrix) -> Result<Self> {
        let minv = m.inverse()?;
        Self::from_matrix_map(real, |x| m.mul(x)?.mul(&minv))
    }

    /// `X -> -X^T`.
    pub fn cartan_involution(real: &MatrixRealization) -> Result<Self> {
        Self::from_matrix_map(real, |x| Ok(x.transpose().scale(&CycNum::from_int(-1))))
    }

    /// `X -> -J X^T J^-1`.
    pub fn twisted_transpose(real: &MatrixRealization, j: &ExactMatrix) -> Result<Self> {
        let jinv = j.inverse()?;
        Self::from_matrix_map(real, |x| Ok(j.mul(&x.transpose())?.mul(&jinv)?.scale(&CycNum::from_int(-1))))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.algebra.dim(), &self.columns)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        apply_columns(&self.columns, v)
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, c)| *c == SparseVec::unit(j))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.algebra.id() != other.algebra.id() {
            return Err(Error::AmbientMismatch);
        }
        let columns: Vec<SparseVec> = other.columns.iter().map(|c| self.apply(c)).collect();
        Automorphism::new_unchecked(self.algebra.clone(), columns)
    }

    pub fn power(&self, n: u32) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(self.algebra.clone());
        for _ in 0..n % self.order {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn commutes(&self, other: &Automorphism) -> bool {
        self.algebra.id() == other.algebra.id()
            && other.columns.iter().zip(&self.columns).all(|(o, s)| self.apply(o) == other.apply(s))
    }

    pub fn eigenspace(&self, lambda: &CycNum) -> Result<Subspace> {
        let vecs = self.matrix().eigenspace(lambda)?;
        Ok(Subspace::from_vectors(self.algebra.ambient(), vecs))
    }

    pub fn fixed_subspace(&self) -> Result<Subspace> {
        self.eigenspace(&CycNum::one())
    }
}

pub(crate) fn apply_columns(columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::zero();
    for (j, c) in v.iter() {
        acc = acc.add_scaled(&columns[*j], c);
    }
    acc
}

/// `A[b_i, b_j] = [A b_i, A b_j]` on every basis pair.
pub fn check_homomorphism(algebra: &LieAlgebra, columns: &[SparseVec]) -> Result<()> {
    let d = algebra.dim();
    if columns.len() != d {
        return Err(Error::DimensionMismatch(format!("{} images for dimension {d}", columns.len())));
    }
    let bad = (0..d).into_par_iter().find_map_first(|i| {
        (i + 1..d).find(|&j| apply_columns(columns, algebra.basis_bracket(i, j)) != algebra.bracket(&columns[i], &columns[j])).map(|j| (i, j))
    });
    match bad {
        Some((i, j)) => Err(Error::NotHomomorphism(format!(
            "bracket of {} and {} is not preserved",
            algebra.labels()[i],
            algebra.labels()[j]
        ))),
        None => Ok(()),
    }
}

fn order_of(columns: &[SparseVec]) -> Result<u32> {
    let d = columns.len();
    let mut pow: Vec<SparseVec> = columns.to_vec();
    for n in 1..=ORDER_BOUND {
        if pow.iter().enumerate().all(|(j, c)| *c == SparseVec::unit(j)) {
            return Ok(n);
        }
        pow = pow.iter().map(|c| apply_columns(columns, c)).collect();
        debug_assert_eq!(pow.len(), d);
    }
    Err(Error::InfiniteOrder { bound: ORDER_BOUND as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::CartanChoice;

    fn diag(d: &[i64]) -> ExactMatrix {
        ExactMatrix::diagonal(&d.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn reflection_on_so3_has_order_two() {
        let r = MatrixRealization::so_antisymmetric(3).unwrap();
        let a = Automorphism::from_conjugation(&r, &diag(&[1, 1, -1])).unwrap();
        assert_eq!(a.order(), 2);
        assert_eq!(a.fixed_subspace().unwrap().dim(), 1);
        let id = Automorphism::from_conjugation(&r, &ExactMatrix::identity(3)).unwrap();
        assert_eq!(id.order(), 1);
        assert!(id.is_identity());
    }

    #[test]
    fn antidiagonal_square_minus_one_gives_order_two() {
        let r = MatrixRealization::split_d(8).unwrap();
        let mut t = Vec::new();
        for i in 0..8 {
            t.push((i, 7 - i, CycNum::from_int(if i % 2 == 0 { 1 } else { -1 })));
        }
        let m = ExactMatrix::from_triplets(8, 8, t).unwrap();
        assert!(m.mul(&m).unwrap().add(&ExactMatrix::identity(8)).unwrap().is_zero());
        let a = Automorphism::from_conjugation(&r, &m).unwrap();
        assert_eq!(a.order(), 2);
    }

    #[test]
    fn cartan_involution_fixed_dims() {
        let sl4 = MatrixRealization::sl(4, CartanChoice::Diagonal).unwrap();
        assert_eq!(Automorphism::cartan_involution(&sl4).unwrap().fixed_subspace().unwrap().dim(), 6);
        let sl2 = MatrixRealization::sl(2, CartanChoice::Diagonal).unwrap();
        let t = Automorphism::cartan_involution(&sl2).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.fixed_subspace().unwrap().dim(), 1);
        assert_eq!(t.eigenspace(&CycNum::from_int(-1)).unwrap().dim(), 2);
        let so5 = MatrixRealization::so_antisymmetric(5).unwrap();
        assert!(Automorphism::cartan_involution(&so5).unwrap().is_identity());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let r = MatrixRealization::sl(2, CartanChoice::Diagonal).unwrap();
        let alg = r.algebra().clone();
        let mut cols: Vec<SparseVec> = (0..3).map(SparseVec::unit).collect();
        cols[0] = cols[0].scale(&CycNum::from_int(2));
        cols[1] = cols[1].scale(&CycNum::from_int(2));
        cols[2] = cols[2].scale(&CycNum::from_int(2));
        assert!(matches!(Automorphism::new(alg, cols), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn conjugation_leaving_the_algebra_is_rejected() {
        let r = MatrixRealization::so_antisymmetric(3).unwrap();
        assert!(matches!(Automorphism::from_conjugation(&r, &diag(&[1, 2, 1])), Err(Error::NotStable(_))));
    }
}
