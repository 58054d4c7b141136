//! Sparse exact matrices and Gauss-Jordan elimination.
//!
//! Elimination proceeds column by column from the left and, within a column,
//! pivots on the candidate row whose pivot entry has the smallest height. The
//! reduced echelon form is unique, so pivot choice affects cost only.

use std::fmt;

use super::cyclotomic::CycNum;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, s: &CycNum) -> Self {
        ExactMatrix::identity(n).scale(s)
    }

    pub fn diagonal(d: &[CycNum]) -> Self {
        let n = d.len();
        ExactMatrix {
            rows: n,
            cols: n,
            data: d.iter().enumerate().map(|(i, c)| SparseVec::from_terms(vec![(i, c.clone())])).collect(),
        }
    }

    /// Entries outside the shape are rejected.
    pub fn from_triplets(rows: usize, cols: usize, t: impl IntoIterator<Item = (usize, usize, CycNum)>) -> Result<Self> {
        let mut per_row: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); rows];
        for (i, j, c) in t {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            per_row[i].push((j, c));
        }
        Ok(ExactMatrix { rows, cols, data: per_row.into_iter().map(SparseVec::from_terms).collect() })
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < cols)));
        ExactMatrix { rows: rows.len(), cols, data: rows }
    }

    /// The matrix whose `k`-th column is `cols[k]`.
    pub fn from_columns(rows: usize, cols: &[SparseVec]) -> Self {
        ExactMatrix::from_rows(rows, cols.to_vec()).transpose()
    }

    pub fn transpose(&self) -> Self {
        let mut per_row: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, c) in r.iter() {
                per_row[*j].push((i, c.clone()));
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data: per_row.into_iter().map(SparseVec::from_terms).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        let cur = self.data[i].get(j);
        let delta = &v - &cur;
        self.data[i] = self.data[i].add_scaled(&SparseVec::unit(j), &delta);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(s)).collect() }
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut terms = Vec::new();
                for (k, a) in r.iter() {
                    for (j, b) in o.data[*k].iter() {
                        terms.push((*j, a * b));
                    }
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: o.cols, data })
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_terms(
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(v)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    /// `A B - B A`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.data.iter().enumerate().all(|(i, r)| r.nnz() == 1 && r.get_ref(i).is_some_and(|c| c.is_one()))
    }

    pub fn trace(&self) -> CycNum {
        let mut t = CycNum::zero();
        for (i, r) in self.data.iter().enumerate().take(self.cols) {
            t += &r.get(i);
        }
        t
    }

    pub fn rank(&self) -> usize {
        rref(self.data.clone(), self.cols).pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        rref(self.data.clone(), self.cols).null_space()
    }

    /// Basis of `{x : (A - lambda I) x = 0}`.
    pub fn eigenspace(&self, lambda: &CycNum) -> Result<Vec<SparseVec>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("eigenspace of a non-square matrix".into()));
        }
        Ok(self.sub(&ExactMatrix::scalar(self.rows, lambda))?.kernel())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug: Vec<SparseVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| SparseVec::from_terms(r.iter().cloned().chain(std::iter::once((n + i, CycNum::one()))).collect()))
            .collect();
        let e = rref(aug, 2 * n);
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let data = e.rows[..n].iter().map(|r| r.filter(|j| j >= n).reindex(|j| j - n)).collect();
        Ok(ExactMatrix { rows: n, cols: n, data })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: pivot entries are 1 and pivot columns are
/// otherwise zero. `rows[k]` has its pivot at `pivots[k]`, increasing.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.cols];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.cols)
            .filter(|f| !is_pivot[*f])
            .map(|f| {
                let mut terms = vec![(f, CycNum::one())];
                for (r, p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(c) = r.get_ref(f) {
                        terms.push((*p, -c));
                    }
                }
                SparseVec::from_terms(terms)
            })
            .collect()
    }

    /// Subtracts the pivot-row combination; zero iff `v` is in the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = r.get_ref(*p) {
                let c = -c;
                r = r.add_scaled(row, &c);
            }
        }
        r
    }
}

pub fn rref(rows: Vec<SparseVec>, cols: usize) -> Echelon {
    let mut active: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    let mut done: Vec<(usize, SparseVec)> = Vec::new();
    while !active.is_empty() {
        let col = active.iter().map(|r| r.leading().unwrap().0).min().unwrap();
        let mut best = usize::MAX;
        let mut best_key = (u64::MAX, usize::MAX);
        for (k, r) in active.iter().enumerate() {
            let (c, v) = r.leading().unwrap();
            if *c == col {
                let key = (v.height(), r.nnz());
                if key < best_key {
                    best_key = key;
                    best = k;
                }
            }
        }
        let piv_row = active.swap_remove(best);
        let inv = piv_row.leading().unwrap().1.inv().expect("nonzero pivot");
        let piv_row = piv_row.scale(&inv);
        active = active
            .into_iter()
            .filter_map(|r| {
                let r = match r.leading() {
                    Some((c, v)) if *c == col => {
                        let f = -v;
                        r.add_scaled(&piv_row, &f)
                    }
                    _ => r,
                };
                (!r.is_zero()).then_some(r)
            })
            .collect();
        for (_, r) in done.iter_mut() {
            if let Some(v) = r.get_ref(col) {
                let f = -v;
                *r = r.add_scaled(&piv_row, &f);
            }
        }
        done.push((col, piv_row));
    }
    done.sort_by_key(|d| d.0);
    let (pivots, rows) = done.into_iter().unzip();
    Echelon { cols, rows, pivots }
}
