//! Identification of a reductive subalgebra from its roots relative to a
//! split Cartan subalgebra.
//!
//! Positivity comes from a rational functional that is nonzero on every root;
//! the Cartan matrix comes from `alpha_j(h_i)` with `h_i = [e_i, f_i]`
//! normalised to `alpha_i(h_i) = 2`; each Dynkin component is matched against
//! the Bourbaki Cartan matrices up to relabelling. Coinciding types are
//! reported as `B2` (not `C2`) and `A3` (not `D3`).

use std::collections::{BTreeMap, HashSet};

use super::rootsys::{cartan_matrix, weyl_dimension, CartanType};
use super::split::SplitAlgebra;
use crate::error::{Error, Result};
use crate::exactfield::{rref, CycNum, ExactMatrix, Rational, SparseVec};
use crate::liecore::Subspace;

#[derive(Clone, Debug)]
pub struct RootDatum {
    /// Values on the basis of the Cartan subspace.
    pub weight: Vec<CycNum>,
    /// A root vector, in ambient coordinates.
    pub vector: SparseVec,
    /// Coordinates in the simple roots, in `Classification::simple` order.
    pub simple_coords: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleComponent {
    pub kind: CartanType,
    pub rank: usize,
    /// Positions in `Classification::simple`, in Bourbaki order.
    pub simple: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub cartan: Subspace,
    pub center_dim: usize,
    /// Positive roots, then their negatives in the same order.
    pub roots: Vec<RootDatum>,
    /// Indices into `roots` of the simple roots, components in Bourbaki order.
    pub simple: Vec<usize>,
    /// `cartan_matrix[i][j] = alpha_j(h_i)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    pub e: Vec<SparseVec>,
    pub f: Vec<SparseVec>,
    /// Simple coroots `h_i = [e_i, f_i]` with `alpha_i(h_i) = 2`.
    pub coroots: Vec<SparseVec>,
    /// `coroot_coords[i]`: coordinates of `h_i` in the Cartan basis.
    pub coroot_coords: Vec<Vec<CycNum>>,
    pub components: Vec<SimpleComponent>,
}

pub fn canonical_type(kind: CartanType, rank: usize) -> (CartanType, usize) {
    match (kind, rank) {
        (CartanType::C, 2) => (CartanType::B, 2),
        (CartanType::D, 3) => (CartanType::A, 3),
        (CartanType::B, 1) | (CartanType::C, 1) => (CartanType::A, 1),
        other => other,
    }
}

impl Classification {
    pub fn types(&self) -> Vec<(CartanType, usize)> {
        let mut t: Vec<_> = self.components.iter().map(|c| (c.kind, c.rank)).collect();
        t.sort();
        t
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.cartan.dim()
    }

    /// `lambda(h_i)` for a weight given by its values on the Cartan basis.
    pub fn pairing(&self, weight: &[CycNum], i: usize) -> CycNum {
        let mut acc = CycNum::zero();
        for (c, w) in self.coroot_coords[i].iter().zip(weight) {
            acc += &(c * w);
        }
        acc
    }

    /// Dynkin labels of a weight; `None` unless all are integers.
    pub fn dynkin_labels(&self, weight: &[CycNum]) -> Option<Vec<i64>> {
        (0..self.simple.len()).map(|i| self.pairing(weight, i).to_i64()).collect()
    }

    pub fn positive_simple_coords(&self) -> Vec<Vec<i64>> {
        self.roots[..self.num_positive()].iter().map(|r| r.simple_coords.clone()).collect()
    }

    pub fn weyl_dimension(&self, labels: &[i64]) -> Rational {
        weyl_dimension(&self.cartan_matrix, &self.positive_simple_coords(), labels)
    }
}

/// Coordinates of `targets` in the span of `basis` (all vectors in `K^r`),
/// using an invertible minor. `None` for a target outside the span.
fn solve_in_span(basis: &[Vec<CycNum>], targets: &[Vec<CycNum>]) -> Result<Vec<Option<Vec<CycNum>>>> {
    let s = basis.len();
    let rows: Vec<SparseVec> = basis.iter().map(|b| SparseVec::from_dense(b)).collect();
    let r = basis.first().map_or(0, Vec::len);
    let ech = rref(rows.clone(), r);
    if ech.rank() != s {
        return Err(Error::ClassificationFailure("dependent basis".into()));
    }
    let minor = ExactMatrix::from_rows(s, rows.iter().map(|b| SparseVec::from_terms(ech.pivots.iter().enumerate().map(|(k, p)| (k, b.get(*p))).collect())).collect());
    let inv_t = minor.inverse()?.transpose();
    Ok(targets
        .iter()
        .map(|t| {
            let tp = SparseVec::from_terms(ech.pivots.iter().enumerate().map(|(k, p)| (k, t[*p].clone())).collect());
            let c = inv_t.mul_vec(&tp).to_dense(s);
            let mut back = vec![CycNum::zero(); r];
            for (ck, b) in c.iter().zip(basis) {
                for (x, y) in back.iter_mut().zip(b) {
                    *x += &(ck * y);
                }
            }
            (back == *t).then_some(c)
        })
        .collect())
}

fn add_w(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Classifies the reductive algebra `sub` (a subspace of `split`) relative to
/// the abelian subspace `cartan` of the split Cartan.
pub fn classify_semisimple(split: &SplitAlgebra, sub: &Subspace, cartan: &Subspace) -> Result<Classification> {
    let alg = &split.algebra;
    sub.check_ambient(&alg.ambient())?;
    if !sub.contains_subspace(cartan) {
        return Err(Error::NotCartan("Cartan is not contained in the algebra".into()));
    }
    let r = cartan.dim();
    let rw = split.restricted_weights(cartan)?;
    for c in cartan.basis() {
        for v in sub.basis() {
            if !sub.contains(&alg.bracket(c, v)) {
                return Err(Error::NotSubalgebra);
            }
        }
    }
    let spaces = split.weight_decomposition_with(sub, &rw)?;
    let zero = vec![CycNum::zero(); r];
    let zdim = spaces.get(&zero).map_or(0, Subspace::dim);
    if zdim != r {
        return Err(Error::NotCartan(format!("zero weight space has dimension {zdim}, Cartan has {r}")));
    }
    let mut weights: Vec<Vec<CycNum>> = Vec::new();
    let mut vectors: Vec<SparseVec> = Vec::new();
    for (w, s) in &spaces {
        if *w == zero {
            continue;
        }
        if s.dim() != 1 {
            return Err(Error::ClassificationFailure(format!("root space of dimension {}", s.dim())));
        }
        weights.push(w.clone());
        vectors.push(s.basis()[0].clone());
    }
    if weights.is_empty() {
        return Ok(Classification {
            cartan: cartan.clone(),
            center_dim: r,
            roots: Vec::new(),
            simple: Vec::new(),
            cartan_matrix: Vec::new(),
            e: Vec::new(),
            f: Vec::new(),
            coroots: Vec::new(),
            coroot_coords: Vec::new(),
            components: Vec::new(),
        });
    }

    // a basis of the root span taken among the roots, and rational coordinates
    let mut span_basis: Vec<Vec<CycNum>> = Vec::new();
    for w in &weights {
        let mut cand = span_basis.clone();
        cand.push(w.clone());
        let rows = cand.iter().map(|b| SparseVec::from_dense(b)).collect();
        if rref(rows, r).rank() == cand.len() {
            span_basis = cand;
        }
    }
    let coords = solve_in_span(&span_basis, &weights)?;
    let mut qcoords: Vec<Vec<Rational>> = Vec::with_capacity(weights.len());
    for c in coords {
        let c = c.ok_or_else(|| Error::ClassificationFailure("root outside its own span".into()))?;
        let q: Option<Vec<Rational>> = c.iter().map(CycNum::to_rational).collect();
        qcoords.push(q.ok_or_else(|| Error::ClassificationFailure("roots are not rationally related".into()))?);
    }
    // phi = sum a_k t^k with t beyond twice the largest |a_k|: nonzero on every root
    let den = qcoords.iter().flatten().fold(num_bigint::BigInt::from(1), |acc, q| num_integer::Integer::lcm(&acc, &q.denom()));
    let den = Rational::from_big(num_rational::BigRational::from_integer(den));
    let bound = qcoords.iter().flatten().map(|q| (q * &den).abs()).max().unwrap_or_else(Rational::one);
    let t = &(&bound * &Rational::from_int(2)) + &Rational::one();
    let phi = |q: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        let mut p = Rational::one();
        for x in q {
            acc += &(x * &p);
            p = &p * &t;
        }
        acc
    };
    let positive: Vec<usize> = (0..weights.len()).filter(|&k| phi(&qcoords[k]) > Rational::zero()).collect();
    if positive.len() * 2 != weights.len() {
        return Err(Error::ClassificationFailure("roots are not symmetric".into()));
    }
    let weight_set: HashSet<&Vec<CycNum>> = weights.iter().collect();
    let mut decomposable = vec![false; weights.len()];
    for (x, &a) in positive.iter().enumerate() {
        for &b in &positive[x..] {
            let s = add_w(&weights[a], &weights[b]);
            if weight_set.contains(&s) {
                let k = weights.iter().position(|w| *w == s).unwrap();
                decomposable[k] = true;
            }
        }
    }
    let simple_idx: Vec<usize> = positive.iter().copied().filter(|&k| !decomposable[k]).collect();
    if simple_idx.len() != span_basis.len() {
        return Err(Error::ClassificationFailure(format!(
            "{} indecomposable roots for a root span of rank {}",
            simple_idx.len(),
            span_basis.len()
        )));
    }
    let simple_w: Vec<Vec<CycNum>> = simple_idx.iter().map(|&k| weights[k].clone()).collect();
    let sc = solve_in_span(&simple_w, &weights)?;
    let mut simple_coords: Vec<Vec<i64>> = Vec::with_capacity(weights.len());
    for c in sc {
        let c = c.ok_or_else(|| Error::ClassificationFailure("root outside simple span".into()))?;
        let ints: Option<Vec<i64>> = c.iter().map(CycNum::to_i64).collect();
        let ints = ints.ok_or_else(|| Error::ClassificationFailure("non-integral simple coordinates".into()))?;
        if !(ints.iter().all(|x| *x >= 0) || ints.iter().all(|x| *x <= 0)) {
            return Err(Error::ClassificationFailure("mixed-sign simple coordinates".into()));
        }
        simple_coords.push(ints);
    }

    let n = simple_idx.len();
    let index_of = |w: &Vec<CycNum>| weights.iter().position(|x| x == w);
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    let mut coroots = Vec::with_capacity(n);
    let mut coroot_coords = Vec::with_capacity(n);
    for &k in &simple_idx {
        let neg: Vec<CycNum> = weights[k].iter().map(|x| -x).collect();
        let kn = index_of(&neg).ok_or_else(|| Error::ClassificationFailure("negative of a root is missing".into()))?;
        let (ev, fv) = (vectors[k].clone(), vectors[kn].clone());
        let h = alg.bracket(&ev, &fv);
        let hc = cartan.coords(&h).ok_or_else(|| Error::ClassificationFailure("[e, f] outside the Cartan".into()))?;
        let mut ah = CycNum::zero();
        for (c, w) in hc.iter().zip(&weights[k]) {
            ah += &(c * w);
        }
        if ah.is_zero() {
            return Err(Error::ClassificationFailure("root vanishes on its coroot".into()));
        }
        let s = &CycNum::from_int(2) / &ah;
        e.push(ev);
        f.push(fv.scale(&s));
        coroots.push(h.scale(&s));
        coroot_coords.push(hc.iter().map(|c| c * &s).collect::<Vec<_>>());
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut v = CycNum::zero();
            for (c, w) in coroot_coords[i].iter().zip(&weights[simple_idx[j]]) {
                v += &(c * w);
            }
            a[i][j] = v.to_i64().ok_or_else(|| Error::ClassificationFailure("non-integral Cartan entry".into()))?;
        }
    }

    // Dynkin components, matched to Bourbaki labelling
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp_of[s] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..n {
                if a[x][y] != 0 && comp_of[y] == usize::MAX {
                    comp_of[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut matched: Vec<(CartanType, usize, Vec<usize>)> = Vec::new();
    for members in &comps {
        let m = members.len();
        let sub_a: Vec<Vec<i64>> = members.iter().map(|&i| members.iter().map(|&j| a[i][j]).collect()).collect();
        let mut found = None;
        for kind in CartanType::ALL {
            if !kind.is_valid_rank(m) && !(kind == CartanType::D && m == 3) {
                continue;
            }
            let target = cartan_matrix(kind, m)?;
            if let Some(perm) = match_cartan(&target, &sub_a) {
                found = Some((kind, perm));
                break;
            }
        }
        let (kind, perm) = found.ok_or_else(|| Error::ClassificationFailure("Dynkin component of unknown type".into()))?;
        let (kind, rank) = canonical_type(kind, m);
        matched.push((kind, rank, perm.iter().map(|&p| members[p]).collect()));
    }
    matched.sort_by(|x, y| (x.0, x.1, x.2[0]).cmp(&(y.0, y.1, y.2[0])));

    // relabel simple roots so components are contiguous and in Bourbaki order
    let order: Vec<usize> = matched.iter().flat_map(|m| m.2.iter().copied()).collect();
    let mut components = Vec::new();
    let mut pos = 0;
    for (kind, rank, _) in &matched {
        components.push(SimpleComponent { kind: *kind, rank: *rank, simple: (pos..pos + rank).collect() });
        pos += rank;
    }
    let a2: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| a[i][j]).collect()).collect();
    let e: Vec<SparseVec> = order.iter().map(|&i| e[i].clone()).collect();
    let f: Vec<SparseVec> = order.iter().map(|&i| f[i].clone()).collect();
    let coroots: Vec<SparseVec> = order.iter().map(|&i| coroots[i].clone()).collect();
    let coroot_coords: Vec<Vec<CycNum>> = order.iter().map(|&i| coroot_coords[i].clone()).collect();
    let simple_coords: Vec<Vec<i64>> = simple_coords.iter().map(|c| order.iter().map(|&i| c[i]).collect()).collect();

    let mut pos_roots: Vec<usize> = positive.clone();
    pos_roots.sort_by(|&x, &y| {
        let hx: i64 = simple_coords[x].iter().sum();
        let hy: i64 = simple_coords[y].iter().sum();
        (hx, &simple_coords[x]).cmp(&(hy, &simple_coords[y]))
    });
    let mut roots: Vec<RootDatum> = Vec::with_capacity(weights.len());
    let mut slot: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &pos_roots {
        slot.insert(k, roots.len());
        roots.push(RootDatum { weight: weights[k].clone(), vector: vectors[k].clone(), simple_coords: simple_coords[k].clone() });
    }
    for &k in &pos_roots {
        let neg: Vec<CycNum> = weights[k].iter().map(|x| -x).collect();
        let kn = index_of(&neg).unwrap();
        roots.push(RootDatum { weight: neg, vector: vectors[kn].clone(), simple_coords: simple_coords[kn].clone() });
    }
    let simple: Vec<usize> = order.iter().map(|&i| slot[&simple_idx[i]]).collect();
    Ok(Classification {
        cartan: cartan.clone(),
        center_dim: r - n,
        roots,
        simple,
        cartan_matrix: a2,
        e,
        f,
        coroots,
        coroot_coords,
        components,
    })
}

/// A permutation `p` with `sub[p[i]][p[j]] == target[i][j]`.
fn match_cartan(target: &[Vec<i64>], sub: &[Vec<i64>]) -> Option<Vec<usize>> {
    let m = target.len();
    if sub.len() != m {
        return None;
    }
    fn go(target: &[Vec<i64>], sub: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = perm.len();
        if i == target.len() {
            return true;
        }
        for c in 0..sub.len() {
            if used[c] {
                continue;
            }
            let ok = (0..i).all(|j| sub[c][perm[j]] == target[i][j] && sub[perm[j]][c] == target[j][i]);
            if ok {
                perm.push(c);
                used[c] = true;
                if go(target, sub, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(m);
    let mut used = vec![false; m];
    go(target, sub, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ChevalleyAlgebra, MatrixRealization};
    use crate::liecore::Subspace;

    fn classify_whole(split: &SplitAlgebra) -> Classification {
        let all = Subspace::full(split.algebra.ambient());
        classify_semisimple(split, &all, &split.cartan_subspace()).unwrap()
    }

    #[test]
    fn chevalley_algebras_classify_as_themselves() {
        for (k, l) in [(CartanType::G, 2), (CartanType::B, 3), (CartanType::C, 3), (CartanType::F, 4), (CartanType::D, 4)] {
            let c = ChevalleyAlgebra::new(k, l).unwrap();
            let cl = classify_whole(&c.split);
            assert_eq!(cl.types(), vec![(k, l)]);
            assert_eq!(cl.center_dim, 0);
            assert_eq!(cl.cartan_matrix, cartan_matrix(k, l).unwrap());
        }
    }

    #[test]
    fn realizations_classify() {
        assert_eq!(classify_whole(&MatrixRealization::so_antisymmetric(5).unwrap().split).types(), vec![(CartanType::B, 2)]);
        assert_eq!(classify_whole(&MatrixRealization::split_c(4).unwrap().split).types(), vec![(CartanType::B, 2)]);
        assert_eq!(classify_whole(&MatrixRealization::split_d(6).unwrap().split).types(), vec![(CartanType::A, 3)]);
        assert_eq!(classify_whole(&MatrixRealization::so_antisymmetric(4).unwrap().split).types(), vec![(CartanType::A, 1), (CartanType::A, 1)]);
    }

    #[test]
    fn abelian_algebra_is_all_center() {
        let c = ChevalleyAlgebra::new(CartanType::A, 2).unwrap();
        let h = c.split.cartan_subspace();
        let cl = classify_semisimple(&c.split, &h, &h).unwrap();
        assert!(cl.types().is_empty());
        assert_eq!(cl.center_dim, 2);
    }

    #[test]
    fn non_maximal_torus_is_rejected() {
        let c = ChevalleyAlgebra::new(CartanType::A, 2).unwrap();
        let all = Subspace::full(c.algebra().ambient());
        let h1 = Subspace::spanned_by_basis(c.algebra().ambient(), [c.h(0)]);
        assert!(classify_semisimple(&c.split, &all, &h1).is_err());
    }
}
