use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub const ALL: [CartanType; 7] = [
        CartanType::A,
        CartanType::B,
        CartanType::C,
        CartanType::D,
        CartanType::E,
        CartanType::F,
        CartanType::G,
    ];

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        CartanType::ALL.into_iter().find(|t| t.letter() == c.to_ascii_uppercase())
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    /// Dimension of the simple algebra of this type.
    pub fn algebra_dim(self, l: usize) -> usize {
        match self {
            CartanType::A => l * (l + 2),
            CartanType::B | CartanType::C => l * (2 * l + 1),
            CartanType::D => l * (2 * l - 1),
            CartanType::E => [78, 133, 248][l - 6],
            CartanType::F => 52,
            CartanType::G => 14,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Cartan matrix in the convention `A[i][j] = alpha_j(h_i)`, Bourbaki labels.
pub fn cartan_matrix(kind: CartanType, l: usize) -> Result<Vec<Vec<i64>>> {
    if !kind.is_valid_rank(l) {
        return Err(Error::InvalidType { kind: kind.letter(), rank: l });
    }
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match kind {
        CartanType::A => (0..l - 1).for_each(|i| link(i, i + 1, -1, -1)),
        CartanType::B => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -1, -2);
        }
        CartanType::C => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -2, -1);
        }
        CartanType::D => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 3, l - 1, -1, -1);
        }
        CartanType::E => {
            link(0, 2, -1, -1);
            link(2, 3, -1, -1);
            link(3, 1, -1, -1);
            (3..l - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        CartanType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        CartanType::G => link(0, 1, -3, -1),
    }
    Ok(a)
}

/// Squared lengths `d_i` of the simple roots making `d_i A[i][j]` symmetric,
/// normalised so the shortest root in each component has length 1.
pub fn symmetrizer(a: &[Vec<i64>]) -> Vec<Rational> {
    let l = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; l];
    let mut comps = Vec::new();
    for start in 0..l {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..l {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    // a[i][j] d_i = a[j][i] d_j
                    let dj = &(d[i].as_ref().unwrap() * &Rational::from_int(a[i][j])) / &Rational::from_int(a[j][i]);
                    d[j] = Some(dj);
                    comp.push(j);
                }
            }
            k += 1;
        }
        comps.push(comp);
    }
    let mut d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();
    for comp in comps {
        let m = comp.iter().map(|&i| d[i].clone()).min().unwrap();
        for i in comp {
            d[i] = &d[i] / &m;
        }
    }
    d
}

/// Positive roots in simple-root coordinates by root strings, sorted by
/// height then lexicographically.
pub fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = a.len();
    let simple: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|k| i64::from(k == i)).collect()).collect();
    let mut all: std::collections::HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut pos = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..l {
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if all.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| b[j] * a[i][j]).sum();
                if p - pairing > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if all.insert(c.clone()) {
                        next.push(c.clone());
                        pos.push(c);
                    }
                }
            }
        }
        layer = next;
    }
    pos.sort_by(|x, y| (x.iter().sum::<i64>(), x).cmp(&(y.iter().sum::<i64>(), y)));
    pos
}

/// Weyl's dimension formula. `lambda` holds the values `lambda(h_i)` on the
/// simple coroots; `positive` lists positive roots in simple coordinates.
pub fn weyl_dimension(a: &[Vec<i64>], positive: &[Vec<i64>], lambda: &[i64]) -> Rational {
    let d = symmetrizer(a);
    let mut num = Rational::one();
    let mut den = Rational::one();
    for r in positive {
        let mut s = Rational::zero();
        let mut t = Rational::zero();
        for j in 0..a.len() {
            let cd = &Rational::from_int(r[j]) * &d[j];
            s += &(&cd * &Rational::from_int(lambda[j] + 1));
            t += &cd;
        }
        num *= &s;
        den *= &t;
    }
    &num / &den
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots, shortest 1.
    pub simple_lengths: Vec<Rational>,
    /// Positive roots followed by their negatives, in the same order.
    pub roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(kind, rank)?;
        let simple_lengths = symmetrizer(&cartan);
        let pos = positive_roots(&cartan);
        let neg: Vec<Vec<i64>> = pos.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let roots: Vec<Vec<i64>> = pos.into_iter().chain(neg).collect();
        let index = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        Ok(RootSystem { kind, rank, cartan, simple_lengths, roots, index })
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive()]
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.roots[self.num_positive() - 1]
    }

    /// `(a, b)` for the invariant form with shortest roots of length 1.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 && self.cartan[i][j] != 0 {
                    let t = Rational::from_int(a[i] * self.cartan[i][j] * b[j]);
                    s += &(&t * &self.simple_lengths[i]);
                }
            }
        }
        &s / &Rational::from_int(2)
    }

    /// `<b, a^vee> = 2 (b, a) / (a, a)`.
    pub fn pairing(&self, b: &[i64], a: &[i64]) -> i64 {
        let v = &(&self.inner(b, a) * &Rational::from_int(2)) / &self.inner(a, a);
        v.to_i64().expect("integral pairing")
    }

    pub fn reflect(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let c = self.pairing(b, a);
        b.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }

    pub fn weyl_dimension(&self, lambda: &[i64]) -> Rational {
        weyl_dimension(&self.cartan, self.positive(), lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (k, l, n) in [
            (CartanType::A, 3, 12),
            (CartanType::B, 2, 8),
            (CartanType::C, 3, 18),
            (CartanType::D, 4, 24),
            (CartanType::G, 2, 12),
            (CartanType::F, 4, 48),
            (CartanType::E, 6, 72),
            (CartanType::E, 7, 126),
            (CartanType::E, 8, 240),
        ] {
            let r = RootSystem::new(k, l).unwrap();
            assert_eq!(r.roots.len(), n, "{k}{l}");
            assert_eq!(r.roots.len() + l, k.algebra_dim(l));
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(CartanType::G, 3).is_err());
        assert!(RootSystem::new(CartanType::E, 5).is_err());
        assert!(RootSystem::new(CartanType::B, 1).is_err());
    }

    #[test]
    fn highest_roots() {
        assert_eq!(RootSystem::new(CartanType::G, 2).unwrap().highest_root(), &[3, 2]);
        assert_eq!(RootSystem::new(CartanType::F, 4).unwrap().highest_root(), &[2, 3, 4, 2]);
        assert_eq!(RootSystem::new(CartanType::E, 6).unwrap().highest_root(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(RootSystem::new(CartanType::E, 7).unwrap().highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn short_simple_roots_follow_bourbaki() {
        let b = RootSystem::new(CartanType::B, 3).unwrap();
        assert_eq!(b.simple_lengths.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![2, 2, 1]);
        let c = RootSystem::new(CartanType::C, 3).unwrap();
        assert_eq!(c.simple_lengths.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, 1, 2]);
        let g = RootSystem::new(CartanType::G, 2).unwrap();
        assert_eq!(g.simple_lengths.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn weyl_dimensions_of_fundamental_modules() {
        let g2 = RootSystem::new(CartanType::G, 2).unwrap();
        assert_eq!(g2.weyl_dimension(&[1, 0]), Rational::from_int(7));
        assert_eq!(g2.weyl_dimension(&[0, 1]), Rational::from_int(14));
        let f4 = RootSystem::new(CartanType::F, 4).unwrap();
        assert_eq!(f4.weyl_dimension(&[0, 0, 0, 1]), Rational::from_int(26));
        assert_eq!(f4.weyl_dimension(&[1, 0, 0, 0]), Rational::from_int(52));
        let b2 = RootSystem::new(CartanType::B, 2).unwrap();
        assert_eq!(b2.weyl_dimension(&[1, 0]), Rational::from_int(5));
        assert_eq!(b2.weyl_dimension(&[2, 0]), Rational::from_int(14));
    }
}
