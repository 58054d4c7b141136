use crate::error::{Error, Result};
use crate::exactfield::{rref, CycNum, Echelon, ExactMatrix, SparseVec};

/// Identifies the algebra a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AmbientRef {
    pub id: u64,
    pub dim: usize,
}

/// A subspace held as the reduced echelon basis of its span. Coordinates of a
/// member are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: AmbientRef,
    ech: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.ech.pivots == o.ech.pivots && self.ech.rows == o.ech.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn from_vectors(ambient: AmbientRef, vectors: Vec<SparseVec>) -> Self {
        Subspace { ambient, ech: rref(vectors, ambient.dim) }
    }

    pub fn zero(ambient: AmbientRef) -> Self {
        Self::from_vectors(ambient, Vec::new())
    }

    pub fn full(ambient: AmbientRef) -> Self {
        Self::from_vectors(ambient, (0..ambient.dim).map(SparseVec::unit).collect())
    }

    pub fn spanned_by_basis(ambient: AmbientRef, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_vectors(ambient, indices.into_iter().map(SparseVec::unit).collect())
    }

    pub fn ambient(&self) -> AmbientRef {
        self.ambient
    }

    pub fn check_ambient(&self, a: &AmbientRef) -> Result<()> {
        if &self.ambient == a {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn dim(&self) -> usize {
        self.ech.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.ech.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.reduce(v).is_zero()
    }

    /// Coordinates in `basis()`, or `None` if `v` is not a member.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<CycNum>> {
        let c: Vec<CycNum> = self.ech.pivots.iter().map(|p| v.get(*p)).collect();
        self.contains(v).then_some(c)
    }

    pub fn from_coords(&self, c: &[CycNum]) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (b, x) in self.ech.rows.iter().zip(c) {
            acc = acc.add_scaled(b, x);
        }
        acc
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && o.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        o.check_ambient(&self.ambient)?;
        let v = self.basis().iter().chain(o.basis()).cloned().collect();
        Ok(Subspace::from_vectors(self.ambient, v))
    }

    pub fn intersection(&self, o: &Subspace) -> Result<Subspace> {
        o.check_ambient(&self.ambient)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // kernel of (x, y) -> sum x_i u_i - sum y_j v_j
        let cols: Vec<SparseVec> = self.basis().iter().cloned().chain(o.basis().iter().map(SparseVec::neg)).collect();
        let m = ExactMatrix::from_columns(self.ambient.dim, &cols);
        let a = self.dim();
        let vecs = m
            .kernel()
            .into_iter()
            .map(|k| self.from_coords(&k.filter(|i| i < a).to_dense(a)))
            .collect();
        Ok(Subspace::from_vectors(self.ambient, vecs))
    }

    /// Keeps only the coordinates whose index satisfies `keep`, then spans.
    pub fn project(&self, keep: impl Fn(usize) -> bool) -> Subspace {
        Subspace::from_vectors(self.ambient, self.basis().iter().map(|v| v.filter(&keep)).collect())
    }
}
