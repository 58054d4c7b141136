use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;

use super::subspace::{AmbientRef, Subspace};
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, ExactMatrix, SparseVec};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// basis. The table is antisymmetric by construction.
#[derive(Debug)]
pub struct LieAlgebra {
    id: u64,
    name: String,
    labels: Vec<String>,
    /// `table[i * dim + j] = [b_i, b_j]`.
    table: Vec<SparseVec>,
    killing: OnceLock<ExactMatrix>,
}

impl LieAlgebra {
    /// Builds from `[b_i, b_j]` for `i < j` and certifies the Jacobi identity.
    pub fn from_brackets(
        name: impl Into<String>,
        labels: Vec<String>,
        bracket: impl Fn(usize, usize) -> Result<SparseVec> + Sync,
    ) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(name, labels, bracket)?;
        alg.certify()?;
        Ok(alg)
    }

    /// As [`LieAlgebra::from_brackets`] without the Jacobi certificate.
    pub fn from_brackets_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        bracket: impl Fn(usize, usize) -> Result<SparseVec> + Sync,
    ) -> Result<Self> {
        let dim = labels.len();
        let upper: Vec<Vec<SparseVec>> = (0..dim)
            .into_par_iter()
            .map(|i| ((i + 1)..dim).map(|j| bracket(i, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut table = vec![SparseVec::zero(); dim * dim];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + 1 + off;
                if v.max_index().is_some_and(|m| m >= dim) {
                    return Err(Error::DimensionMismatch(format!("bracket [{i},{j}] has index out of range")));
                }
                table[j * dim + i] = v.neg();
                table[i * dim + j] = v;
            }
        }
        Ok(Self::from_table_unchecked(name, labels, table))
    }

    /// Raw table, not checked for antisymmetry or Jacobi.
    pub fn from_table_unchecked(name: impl Into<String>, labels: Vec<String>, table: Vec<SparseVec>) -> Self {
        assert_eq!(table.len(), labels.len() * labels.len());
        LieAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            labels,
            table,
            killing: OnceLock::new(),
        }
    }

    /// Errors with the first violating triple if Jacobi fails anywhere.
    pub fn certify(&self) -> Result<()> {
        let bad = self.verify_jacobi();
        match bad.first() {
            None => Ok(()),
            Some(&first) => Err(Error::JacobiViolation { count: bad.len(), first }),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn ambient(&self) -> AmbientRef {
        AmbientRef { id: self.id, dim: self.dim() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// A copy of the table with one structure constant replaced, skipping all
    /// checks. Used to build corrupted algebras for negative controls.
    pub fn with_corrupted_constant(&self, i: usize, j: usize, k: usize, value: CycNum) -> LieAlgebra {
        let mut table = self.table.clone();
        let d = self.dim();
        let v = &table[i * d + j];
        let delta = &value - &v.get(k);
        table[i * d + j] = v.add_scaled(&SparseVec::unit(k), &delta);
        LieAlgebra::from_table_unchecked(format!("{} (corrupted)", self.name), self.labels.clone(), table)
    }

    /// `[b_i, x]`.
    pub fn bracket_basis_vec(&self, i: usize, x: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut terms = Vec::new();
        for (m, c) in x.iter() {
            for (k, s) in self.table[i * d + m].iter() {
                terms.push((*k, c * s));
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = &self.table[i * d + j];
                if v.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, s) in v.iter() {
                    terms.push((*k, &ab * s));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    /// Matrix of `ad x`; column `j` holds `[x, b_j]`.
    pub fn ad(&self, x: &SparseVec) -> ExactMatrix {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d)
            .map(|j| {
                let mut terms = Vec::new();
                for (i, a) in x.iter() {
                    for (k, s) in self.table[i * d + j].iter() {
                        terms.push((*k, a * s));
                    }
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        ExactMatrix::from_columns(d, &cols)
    }

    /// Gram matrix of the Killing form, computed once.
    pub fn killing_form(&self) -> &ExactMatrix {
        self.killing.get_or_init(|| self.compute_killing())
    }

    fn compute_killing(&self) -> ExactMatrix {
        let d = self.dim();
        // trace(ad_i ad_j) = sum over (l, k) of (ad_i)[l][k] (ad_j)[k][l]
        let rows: Vec<SparseVec> = (0..d)
            .into_par_iter()
            .map(|i| {
                let mut terms = Vec::new();
                for j in 0..d {
                    let mut acc = CycNum::zero();
                    for k in 0..d {
                        for (l, c) in self.table[i * d + k].iter() {
                            if let Some(e) = self.table[j * d + *l].get_ref(k) {
                                acc += &(c * e);
                            }
                        }
                    }
                    if !acc.is_zero() {
                        terms.push((j, acc));
                    }
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        ExactMatrix::from_rows(d, rows)
    }

    pub fn killing(&self, x: &SparseVec, y: &SparseVec) -> CycNum {
        let k = self.killing_form();
        let mut acc = CycNum::zero();
        for (i, a) in x.iter() {
            let ki = k.row(*i).dot(y);
            if !ki.is_zero() {
                acc += &(a * &ki);
            }
        }
        acc
    }

    /// All basis triples `i < j < k` on which the Jacobi identity fails.
    pub fn verify_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let mut bad: Vec<(usize, usize, usize)> = (0..d)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut out = Vec::new();
                for j in (i + 1)..d {
                    for k in (j + 1)..d {
                        let a = self.bracket_basis_vec(i, self.basis_bracket(j, k));
                        let b = self.bracket_basis_vec(j, self.basis_bracket(k, i));
                        let c = self.bracket_basis_vec(k, self.basis_bracket(i, j));
                        if !a.add(&b).add(&c).is_zero() {
                            out.push((i, j, k));
                        }
                    }
                }
                out
            })
            .collect();
        bad.sort_unstable();
        bad
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| self.table[i * d + i].is_zero() && ((i + 1)..d).all(|j| self.table[i * d + j] == self.table[j * d + i].neg()))
    }

    /// The subalgebra spanned by `sub`, in the basis `sub.basis()`.
    pub fn restrict(&self, sub: &Subspace, name: impl Into<String>) -> Result<LieAlgebra> {
        sub.check_ambient(&self.ambient())?;
        let basis = sub.basis();
        let labels = (0..basis.len()).map(|k| format!("v{k}")).collect();
        LieAlgebra::from_brackets(name, labels, |i, j| {
            let br = self.bracket(&basis[i], &basis[j]);
            let c = sub.coords(&br).ok_or(Error::NotSubalgebra)?;
            Ok(SparseVec::from_dense(&c))
        })
    }

    /// `true` iff `[x, y]` lies in `sub` for all `x, y` in `sub`.
    pub fn is_subalgebra(&self, sub: &Subspace) -> bool {
        let b = sub.basis();
        (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| sub.contains(&self.bracket(&b[i], &b[j]))))
    }

    /// Span of all brackets `[a, b]` for `a` in `x`, `b` in `y`.
    pub fn bracket_span(&self, x: &Subspace, y: &Subspace) -> Result<Subspace> {
        x.check_ambient(&self.ambient())?;
        y.check_ambient(&self.ambient())?;
        let mut v = Vec::new();
        for a in x.basis() {
            for b in y.basis() {
                v.push(self.bracket(a, b));
            }
        }
        Ok(Subspace::from_vectors(self.ambient(), v))
    }
}
