//! Chevalley bases from Cartan matrices.
//!
//! Structure constants `N_{a,b}` follow Carter's construction: the signs on
//! extraspecial pairs are fixed to `+(p+1)` and all other constants are
//! forced by the Jacobi identity. Every basis vector is also recorded as a
//! scalar multiple of a right-nested bracket of Chevalley generators, which is
//! how automorphisms given on generators are extended.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::rootsys::{CartanType, RootSystem};
use super::split::SplitAlgebra;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Rational, SparseVec};
use crate::liecore::LieAlgebra;

/// A Chevalley generator, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
}

impl Generator {
    /// Parses `e3` or `f7` with one-based Bourbaki labels.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let (head, tail) = s.split_at(1.min(s.len()));
        let i: usize = tail.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match head {
            "e" | "E" => Ok(Generator::E(i - 1)),
            "f" | "F" => Ok(Generator::F(i - 1)),
            _ => Err(bad()),
        }
    }

    /// Parses a right-nested word `[f1 f3 f4 ... f7]`.
    pub fn parse_word(s: &str) -> Result<Vec<Self>> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let w: Vec<Self> = inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(Self::parse).collect::<Result<_>>()?;
        if w.is_empty() {
            return Err(Error::UnknownGenerator(s.to_string()));
        }
        Ok(w)
    }

    pub fn node(self) -> usize {
        match self {
            Generator::E(i) | Generator::F(i) => i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{}", i + 1),
            Generator::F(i) => write!(f, "f{}", i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElement {
    /// Index into `RootSystem::roots`.
    Root(usize),
    /// Simple coroot `h_i`.
    Coroot(usize),
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub roots: RootSystem,
    pub split: SplitAlgebra,
    kinds: Vec<BasisElement>,
    root_basis: Vec<usize>,
    /// `b_k = words[k].0 * [g_1, [g_2, ..., g_r]]`.
    words: Vec<(Rational, Vec<Generator>)>,
}

struct Constants<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> Constants<'a> {
    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.rs.roots[a].iter().zip(&self.rs.roots[b]).map(|(x, y)| x + y).collect();
        self.rs.index_of(&s)
    }

    fn neg(&self, a: usize) -> usize {
        let n = self.rs.num_positive();
        if a < n {
            a + n
        } else {
            a - n
        }
    }

    fn positive(&self, a: usize) -> bool {
        a < self.rs.num_positive()
    }

    fn len2(&self, a: usize) -> Rational {
        self.rs.inner(&self.rs.roots[a], &self.rs.roots[a])
    }

    /// Largest `p` with `b - p a` a root.
    fn p(&self, a: usize, b: usize) -> i64 {
        let (ra, rb) = (&self.rs.roots[a], &self.rs.roots[b]);
        let mut p = 0;
        loop {
            let c: Vec<i64> = rb.iter().zip(ra).map(|(y, x)| y - (p + 1) * x).collect();
            if self.rs.is_root(&c) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// `(alpha_i, xi - alpha_i)` for the first simple root that works.
    fn extraspecial(&self, xi: usize) -> (usize, usize) {
        let r = &self.rs.roots[xi];
        for i in 0..self.rs.rank {
            let mut b = r.clone();
            b[i] -= 1;
            if let Some(bi) = self.rs.index_of(&b) {
                let mut a = vec![0; self.rs.rank];
                a[i] = 1;
                return (self.rs.index_of(&a).unwrap(), bi);
            }
        }
        unreachable!("positive non-simple root has an extraspecial pair")
    }

    fn n(&mut self, a: usize, b: usize) -> i64 {
        if let Some(v) = self.memo.get(&(a, b)) {
            return *v;
        }
        let v = match self.sum(a, b) {
            None => 0,
            Some(c) => {
                let (pa, pb) = (self.positive(a), self.positive(b));
                if !pa && !pb {
                    let (na, nb) = (self.neg(a), self.neg(b));
                    -self.n(na, nb)
                } else if pa && pb {
                    let (e1, e2) = self.extraspecial(c);
                    if a == e1 {
                        self.p(a, b) + 1
                    } else if b == e1 {
                        -(self.p(b, a) + 1)
                    } else {
                        let (g, dd) = (self.neg(e1), self.neg(e2));
                        let ngd = Rational::from_int(-(self.p(e1, e2) + 1));
                        let mut tot = Rational::zero();
                        if let Some(bg) = self.sum(b, g) {
                            let t = Rational::from_int(self.n(b, g) * self.n(a, dd));
                            tot += &(&t / &self.len2(bg));
                        }
                        if let Some(ga) = self.sum(g, a) {
                            let t = Rational::from_int(self.n(g, a) * self.n(b, dd));
                            tot += &(&t / &self.len2(ga));
                        }
                        let v = &(&(-tot) * &self.len2(c)) / &ngd;
                        v.to_i64().expect("integral structure constant")
                    }
                } else {
                    let g = self.neg(c);
                    let v = if self.positive(g) == pa {
                        &(&Rational::from_int(self.n(g, a)) * &self.len2(g)) / &self.len2(b)
                    } else {
                        &(&Rational::from_int(self.n(b, g)) * &self.len2(g)) / &self.len2(a)
                    };
                    v.to_i64().expect("integral structure constant")
                }
            }
        };
        self.memo.insert((a, b), v);
        v
    }
}

impl ChevalleyAlgebra {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let rs = RootSystem::new(kind, rank)?;
        let npos = rs.num_positive();
        let l = rank;
        let dim = rs.roots.len() + l;
        let mut kinds = Vec::with_capacity(dim);
        kinds.extend((0..npos).map(BasisElement::Root));
        kinds.extend((0..l).map(BasisElement::Coroot));
        kinds.extend((npos..2 * npos).map(BasisElement::Root));
        let mut root_basis = vec![0; rs.roots.len()];
        for (b, k) in kinds.iter().enumerate() {
            if let BasisElement::Root(r) = k {
                root_basis[*r] = b;
            }
        }
        let mut consts = Constants { rs: &rs, memo: HashMap::new() };
        for a in 0..rs.roots.len() {
            for b in 0..rs.roots.len() {
                consts.n(a, b);
            }
        }
        let n_table = consts.memo;
        let labels: Vec<String> = kinds
            .iter()
            .map(|k| match k {
                BasisElement::Root(r) => {
                    let v = &rs.roots[*r];
                    let s: Vec<String> = v.iter().map(|x| x.abs().to_string()).collect();
                    format!("{}({})", if *r < npos { 'e' } else { 'f' }, s.join(","))
                }
                BasisElement::Coroot(i) => format!("h{}", i + 1),
            })
            .collect();
        let coroot = |r: usize| -> SparseVec {
            let root = &rs.roots[r];
            let rr = rs.inner(root, root);
            SparseVec::from_terms(
                (0..l)
                    .filter(|&j| root[j] != 0)
                    .map(|j| {
                        let c = &(&Rational::from_int(root[j]) * &rs.simple_lengths[j]) / &rr;
                        (npos + j, CycNum::from_rational(c))
                    })
                    .collect(),
            )
        };
        let pairing = |r: usize, i: usize| -> i64 { (0..l).map(|k| rs.roots[r][k] * rs.cartan[i][k]).sum() };
        let bracket = |x: usize, y: usize| -> Result<SparseVec> {
            Ok(match (kinds[x], kinds[y]) {
                (BasisElement::Coroot(_), BasisElement::Coroot(_)) => SparseVec::zero(),
                (BasisElement::Coroot(i), BasisElement::Root(r)) => {
                    SparseVec::from_terms(vec![(y, CycNum::from_int(pairing(r, i)))])
                }
                (BasisElement::Root(r), BasisElement::Coroot(i)) => {
                    SparseVec::from_terms(vec![(x, CycNum::from_int(-pairing(r, i)))])
                }
                (BasisElement::Root(a), BasisElement::Root(b)) => {
                    let s: Vec<i64> = rs.roots[a].iter().zip(&rs.roots[b]).map(|(p, q)| p + q).collect();
                    if s.iter().all(|v| *v == 0) {
                        coroot(a)
                    } else {
                        match (rs.index_of(&s), n_table.get(&(a, b))) {
                            (Some(c), Some(&n)) if n != 0 => SparseVec::from_terms(vec![(root_basis[c], CycNum::from_int(n))]),
                            _ => SparseVec::zero(),
                        }
                    }
                }
            })
        };
        let name = format!("{}{}", kind, rank);
        let algebra = Arc::new(LieAlgebra::from_brackets(name, labels, bracket)?);
        let split = SplitAlgebra::new(algebra, (npos..npos + l).collect())?;

        let mut words: Vec<Option<(Rational, Vec<Generator>)>> = vec![None; dim];
        let consts = Constants { rs: &rs, memo: n_table };
        for r in 0..npos {
            let root = &rs.roots[r];
            let nr = consts.neg(r);
            if RootSystem::height(root) == 1 {
                let i = root.iter().position(|x| *x == 1).unwrap();
                words[root_basis[r]] = Some((Rational::one(), vec![Generator::E(i)]));
                words[root_basis[nr]] = Some((Rational::one(), vec![Generator::F(i)]));
            } else {
                let (a, b) = consts.extraspecial(r);
                let i = rs.roots[a].iter().position(|x| *x == 1).unwrap();
                let (co, w) = words[root_basis[b]].clone().unwrap();
                let n = Rational::from_int(consts.memo[&(a, b)]);
                words[root_basis[r]] = Some((&co / &n, std::iter::once(Generator::E(i)).chain(w).collect()));
                let (na, nb) = (consts.neg(a), consts.neg(b));
                let (co, w) = words[root_basis[nb]].clone().unwrap();
                let n = Rational::from_int(consts.memo[&(na, nb)]);
                words[root_basis[nr]] = Some((&co / &n, std::iter::once(Generator::F(i)).chain(w).collect()));
            }
        }
        for i in 0..l {
            words[npos + i] = Some((Rational::one(), vec![Generator::E(i), Generator::F(i)]));
        }
        let words = words.into_iter().map(Option::unwrap).collect();
        Ok(ChevalleyAlgebra { roots: rs, split, kinds, root_basis, words })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.split.algebra
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind_of(&self, b: usize) -> BasisElement {
        self.kinds[b]
    }

    pub fn e(&self, i: usize) -> usize {
        self.root_basis[self.simple_root_index(i)]
    }

    pub fn f(&self, i: usize) -> usize {
        self.root_basis[self.simple_root_index(i) + self.roots.num_positive()]
    }

    pub fn h(&self, i: usize) -> usize {
        self.roots.num_positive() + i
    }

    fn simple_root_index(&self, i: usize) -> usize {
        let mut a = vec![0; self.rank()];
        a[i] = 1;
        self.roots.index_of(&a).unwrap()
    }

    pub fn generator_index(&self, g: Generator) -> usize {
        match g {
            Generator::E(i) => self.e(i),
            Generator::F(i) => self.f(i),
        }
    }

    pub fn root_vector(&self, root: &[i64]) -> Option<usize> {
        self.roots.index_of(root).map(|r| self.root_basis[r])
    }

    pub fn highest_root_vector(&self) -> usize {
        self.root_vector(self.roots.highest_root()).unwrap()
    }

    pub fn lowest_root_vector(&self) -> usize {
        let low: Vec<i64> = self.roots.highest_root().iter().map(|x| -x).collect();
        self.root_vector(&low).unwrap()
    }

    pub fn word(&self, b: usize) -> &(Rational, Vec<Generator>) {
        &self.words[b]
    }

    /// `[x_1, [x_2, ..., x_r]]` with `x_k = image(g_k)`.
    pub fn eval_word(&self, word: &[Generator], image: &dyn Fn(Generator) -> SparseVec) -> SparseVec {
        let alg = self.algebra();
        let mut v = image(*word.last().expect("nonempty word"));
        for g in word[..word.len() - 1].iter().rev() {
            v = alg.bracket(&image(*g), &v);
        }
        v
    }

    /// The word evaluated on the generators themselves.
    pub fn eval_word_standard(&self, word: &[Generator]) -> SparseVec {
        self.eval_word(word, &|g| SparseVec::unit(self.generator_index(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types_are_lie_algebras() {
        for (k, l) in [(CartanType::A, 1), (CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3), (CartanType::G, 2), (CartanType::D, 4)] {
            let c = ChevalleyAlgebra::new(k, l).unwrap();
            assert_eq!(c.dim(), k.algebra_dim(l));
            assert!(c.algebra().verify_jacobi().is_empty());
        }
    }

    #[test]
    fn words_reproduce_basis() {
        let c = ChevalleyAlgebra::new(CartanType::G, 2).unwrap();
        for b in 0..c.dim() {
            let (co, w) = c.word(b);
            let v = c.eval_word_standard(w).scale(&CycNum::from_rational(co.clone()));
            assert_eq!(v, SparseVec::unit(b), "basis {b}");
        }
    }

    #[test]
    fn e6_lowest_root_word() {
        let c = ChevalleyAlgebra::new(CartanType::E, 6).unwrap();
        let w = Generator::parse_word("[f2 f4 f5 f3 f4 f2 f6 f5 f4 f3 f1]").unwrap();
        assert_eq!(c.eval_word_standard(&w), SparseVec::unit(c.lowest_root_vector()));
    }

    #[test]
    fn structure_constants_are_integers() {
        let c = ChevalleyAlgebra::new(CartanType::F, 4).unwrap();
        let a = c.algebra();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert!(a.basis_bracket(i, j).iter().all(|(_, x)| x.to_i64().is_some()));
            }
        }
    }
}
