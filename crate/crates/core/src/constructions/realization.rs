//! Classical algebras as spaces of matrices, with weight bases.
//!
//! Each realization chooses a basis of joint eigenvectors for a standard
//! Cartan subalgebra. For antisymmetric matrices and for `sl(n)` with the
//! block Cartan the eigenvectors of the rotation blocks `E_{2j-1,2j} -
//! E_{2j,2j-1}` are `e_{2j-1} +- i e_{2j}`, so those bases need `4 | L`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::split::SplitAlgebra;
use crate::error::{Error, Result};
use crate::exactfield::{imaginary_unit, rref, CycNum, ExactMatrix, Rational, SparseVec};
use crate::liecore::LieAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationKind {
    /// `{X : X^T = -X}` in `M_n`.
    SoAntisymmetric,
    /// `[[a, b], [c, -a^T]]` with `b, c` antisymmetric, in `M_{2k}`.
    SplitD,
    /// `[[a, b], [c, -a^T]]` with `b, c` symmetric, in `M_{2k}`.
    SplitC,
    /// Traceless matrices.
    Sl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CartanChoice {
    /// Diagonal matrices (rotation blocks for antisymmetric matrices).
    #[default]
    Diagonal,
    /// For `sl(n)`: the rotation blocks together with the block scalars.
    Block,
}

/// Solves for coordinates of a matrix in a fixed basis using an invertible
/// square minor on the pivot positions of the flattened basis.
#[derive(Clone, Debug)]
struct CoordSolver {
    n: usize,
    pivots: Vec<usize>,
    /// Transpose of the inverse pivot minor: `coords = inv_t * x[pivots]`.
    inv_t: ExactMatrix,
}

impl CoordSolver {
    fn new(n: usize, basis: &[ExactMatrix]) -> Result<Self> {
        let flat: Vec<SparseVec> = basis.iter().map(|m| flatten(n, m)).collect();
        let ech = rref(flat.clone(), n * n);
        if ech.rank() != basis.len() {
            return Err(Error::InvalidArgument("realization basis is linearly dependent".into()));
        }
        let rows: Vec<SparseVec> = flat.iter().map(|f| SparseVec::from_terms(ech.pivots.iter().enumerate().map(|(k, p)| (k, f.get(*p))).collect())).collect();
        let minor = ExactMatrix::from_rows(basis.len(), rows);
        Ok(CoordSolver { n, pivots: ech.pivots, inv_t: minor.inverse()?.transpose() })
    }

    fn coords(&self, x: &ExactMatrix, basis: &[ExactMatrix]) -> Option<SparseVec> {
        let f = flatten(self.n, x);
        let xp = SparseVec::from_terms(self.pivots.iter().enumerate().map(|(k, p)| (k, f.get(*p))).collect());
        let c = self.inv_t.mul_vec(&xp);
        let mut acc = ExactMatrix::zeros(self.n, self.n);
        for (k, v) in c.iter() {
            acc = acc.add(&basis[*k].scale(v)).ok()?;
        }
        (acc == *x).then_some(c)
    }
}

fn flatten(n: usize, m: &ExactMatrix) -> SparseVec {
    let mut t = Vec::with_capacity(m.nnz());
    for i in 0..n {
        for (j, c) in m.row(i).iter() {
            t.push((i * n + j, c.clone()));
        }
    }
    SparseVec::from_terms(t)
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub kind: RealizationKind,
    pub n: usize,
    pub cartan_choice: CartanChoice,
    pub matrices: Vec<ExactMatrix>,
    pub split: SplitAlgebra,
    solver: CoordSolver,
}

fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    ExactMatrix::from_triplets(n, n, [(i, j, CycNum::one())]).unwrap()
}

/// `u w^T` for column vectors given densely.
fn outer(u: &[CycNum], w: &[CycNum]) -> ExactMatrix {
    let n = u.len();
    let mut t = Vec::new();
    for (i, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in w.iter().enumerate() {
            if !b.is_zero() {
                t.push((i, j, a * b));
            }
        }
    }
    ExactMatrix::from_triplets(n, n, t).unwrap()
}

/// Eigenvectors `e_{2j-1} + i e_{2j}`, `e_{2j-1} - i e_{2j}` of the rotation
/// blocks, then `e_n` when `n` is odd.
fn rotation_eigenvectors(n: usize) -> Result<Vec<Vec<CycNum>>> {
    let i = imaginary_unit()?;
    let mut out = Vec::with_capacity(n);
    for j in 0..n / 2 {
        for s in [i.clone(), -&i] {
            let mut v = vec![CycNum::zero(); n];
            v[2 * j] = CycNum::one();
            v[2 * j + 1] = s;
            out.push(v);
        }
    }
    if n % 2 == 1 {
        let mut v = vec![CycNum::zero(); n];
        v[n - 1] = CycNum::one();
        out.push(v);
    }
    Ok(out)
}

fn rotation(n: usize, j: usize) -> ExactMatrix {
    ExactMatrix::from_triplets(n, n, [(2 * j, 2 * j + 1, CycNum::one()), (2 * j + 1, 2 * j, CycNum::from_int(-1))]).unwrap()
}

impl MatrixRealization {
    pub fn new(kind: RealizationKind, n: usize, cartan_choice: CartanChoice) -> Result<Self> {
        let (labels, matrices, cartan) = match (kind, cartan_choice) {
            (RealizationKind::SoAntisymmetric, CartanChoice::Diagonal) => so_basis(n)?,
            (RealizationKind::SplitD, CartanChoice::Diagonal) => split_basis(n, false)?,
            (RealizationKind::SplitC, CartanChoice::Diagonal) => split_basis(n, true)?,
            (RealizationKind::Sl, CartanChoice::Diagonal) => sl_basis(n)?,
            (RealizationKind::Sl, CartanChoice::Block) => sl_block_basis(n)?,
            _ => return Err(Error::InvalidArgument(format!("{kind:?} has no {cartan_choice:?} Cartan"))),
        };
        let solver = CoordSolver::new(n, &matrices)?;
        let name = match kind {
            RealizationKind::SoAntisymmetric => format!("so({n})"),
            RealizationKind::SplitD => format!("so({n}) split"),
            RealizationKind::SplitC => format!("sp({n})"),
            RealizationKind::Sl => format!("sl({n})"),
        };
        let algebra = LieAlgebra::from_brackets(name, labels, |i, j| {
            let c = matrices[i].commutator(&matrices[j])?;
            solver.coords(&c, &matrices).ok_or(Error::NotSubalgebra)
        })?;
        let split = SplitAlgebra::new(Arc::new(algebra), cartan)?;
        Ok(MatrixRealization { kind, n, cartan_choice, matrices, split, solver })
    }

    pub fn so_antisymmetric(n: usize) -> Result<Self> {
        Self::new(RealizationKind::SoAntisymmetric, n, CartanChoice::Diagonal)
    }

    pub fn split_d(n: usize) -> Result<Self> {
        Self::new(RealizationKind::SplitD, n, CartanChoice::Diagonal)
    }

    pub fn split_c(n: usize) -> Result<Self> {
        Self::new(RealizationKind::SplitC, n, CartanChoice::Diagonal)
    }

    pub fn sl(n: usize, cartan: CartanChoice) -> Result<Self> {
        Self::new(RealizationKind::Sl, n, cartan)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.split.algebra
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Coordinates of a matrix, or `None` if it is not in the realization.
    pub fn coords(&self, x: &ExactMatrix) -> Option<SparseVec> {
        if x.nrows() != self.n || x.ncols() != self.n {
            return None;
        }
        self.solver.coords(x, &self.matrices)
    }

    pub fn to_matrix(&self, v: &SparseVec) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.n, self.n);
        for (k, c) in v.iter() {
            acc = acc.add(&self.matrices[*k].scale(c)).unwrap();
        }
        acc
    }

    /// Coordinates of `f(B_k)` for every basis matrix.
    pub fn map_basis(&self, f: impl Fn(&ExactMatrix) -> Result<ExactMatrix>) -> Result<Vec<SparseVec>> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let img = f(b)?;
                self.coords(&img).ok_or_else(|| Error::NotStable(format!("image of basis matrix {k} leaves the realization")))
            })
            .collect()
    }
}

type Basis = (Vec<String>, Vec<ExactMatrix>, Vec<usize>);

fn so_basis(n: usize) -> Result<Basis> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("so({n}) is not semisimple")));
    }
    let vs = rotation_eigenvectors(n)?;
    let sign = |a: usize| if a % 2 == 0 { "+" } else { "-" };
    let name = |a: usize| if a == 2 * (n / 2) { "e".to_string() } else { format!("v{}{}", a / 2 + 1, sign(a)) };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut cartan = Vec::new();
    for j in 0..n / 2 {
        cartan.push(mats.len());
        labels.push(format!("H{}", j + 1));
        mats.push(rotation(n, j));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if a % 2 == 0 && b == a + 1 && b < 2 * (n / 2) {
                continue;
            }
            labels.push(format!("X[{},{}]", name(a), name(b)));
            mats.push(outer(&vs[a], &vs[b]).sub(&outer(&vs[b], &vs[a]))?);
        }
    }
    Ok((labels, mats, cartan))
}

fn split_basis(n: usize, symplectic: bool) -> Result<Basis> {
    if n % 2 == 1 || n < 2 || (!symplectic && n < 6) {
        return Err(Error::InvalidArgument(format!("no split realization of size {n}")));
    }
    let k = n / 2;
    let sgn = if symplectic { CycNum::one() } else { CycNum::from_int(-1) };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut cartan = Vec::new();
    for i in 0..k {
        cartan.push(mats.len());
        labels.push(format!("H{}", i + 1));
        mats.push(unit(n, i, i).sub(&unit(n, k + i, k + i))?);
    }
    for i in 0..k {
        for j in 0..k {
            if i != j {
                labels.push(format!("A{}{}", i + 1, j + 1));
                mats.push(unit(n, i, j).sub(&unit(n, k + j, k + i))?);
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            if i == j && !symplectic {
                continue;
            }
            labels.push(format!("B{}{}", i + 1, j + 1));
            mats.push(if i == j { unit(n, i, k + i) } else { unit(n, i, k + j).add(&unit(n, j, k + i).scale(&sgn))? });
            labels.push(format!("C{}{}", i + 1, j + 1));
            mats.push(if i == j { unit(n, k + i, i) } else { unit(n, k + i, j).add(&unit(n, k + j, i).scale(&sgn))? });
        }
    }
    Ok((labels, mats, cartan))
}

fn sl_from_frame(n: usize, cols: &[Vec<CycNum>], duals: &[Vec<CycNum>]) -> Result<Basis> {
    if n < 2 {
        return Err(Error::InvalidArgument("sl(1) is zero".into()));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut cartan = Vec::new();
    for a in 0..n - 1 {
        cartan.push(mats.len());
        labels.push(format!("H{}", a + 1));
        mats.push(outer(&cols[a], &duals[a]).sub(&outer(&cols[a + 1], &duals[a + 1]))?);
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                labels.push(format!("E{},{}", a + 1, b + 1));
                mats.push(outer(&cols[a], &duals[b]));
            }
        }
    }
    Ok((labels, mats, cartan))
}

fn sl_basis(n: usize) -> Result<Basis> {
    let e: Vec<Vec<CycNum>> = (0..n).map(|a| (0..n).map(|b| CycNum::from_int((a == b) as i64)).collect()).collect();
    sl_from_frame(n, &e, &e)
}

/// Frame of rotation eigenvectors with dual rows `u_a^* u_b = delta_ab`.
fn sl_block_basis(n: usize) -> Result<Basis> {
    let cols = rotation_eigenvectors(n)?;
    let half = CycNum::from_rational(Rational::new(1, 2)?);
    let duals: Vec<Vec<CycNum>> = (0..n)
        .map(|a| {
            if a == 2 * (n / 2) {
                cols[a].clone()
            } else {
                // the dual of v+ is (v-)^T / 2 and vice versa
                cols[a ^ 1].iter().map(|x| x * &half).collect()
            }
        })
        .collect();
    sl_from_frame(n, &cols, &duals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_cartan_ranks() {
        for (r, dim, rank) in [
            (MatrixRealization::so_antisymmetric(5).unwrap(), 10, 2),
            (MatrixRealization::so_antisymmetric(6).unwrap(), 15, 3),
            (MatrixRealization::split_d(8).unwrap(), 28, 4),
            (MatrixRealization::split_c(8).unwrap(), 36, 4),
            (MatrixRealization::sl(4, CartanChoice::Diagonal).unwrap(), 15, 3),
            (MatrixRealization::sl(4, CartanChoice::Block).unwrap(), 15, 3),
            (MatrixRealization::sl(5, CartanChoice::Block).unwrap(), 24, 4),
        ] {
            assert_eq!(r.dim(), dim);
            assert_eq!(r.split.cartan.len(), rank);
        }
    }

    #[test]
    fn block_sl_contains_standard_matrices() {
        let r = MatrixRealization::sl(4, CartanChoice::Block).unwrap();
        let x = unit(4, 0, 3);
        let c = r.coords(&x).unwrap();
        assert_eq!(r.to_matrix(&c), x);
        assert!(r.coords(&unit(4, 0, 0)).is_none());
    }

    #[test]
    fn antisymmetric_basis_is_antisymmetric() {
        let r = MatrixRealization::so_antisymmetric(7).unwrap();
        for m in &r.matrices {
            assert_eq!(m.transpose(), m.scale(&CycNum::from_int(-1)));
        }
    }
}
