use std::fmt;

use super::cyclotomic::CycNum;

/// A sparse vector: entries sorted by index, no explicit zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, CycNum)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, CycNum::one())] }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_terms(mut terms: Vec<(usize, CycNum)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut entries: Vec<(usize, CycNum)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[CycNum]) -> Self {
        SparseVec { entries: v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, CycNum)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, CycNum)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> CycNum {
        self.get_ref(i).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, i: usize) -> Option<&CycNum> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, CycNum)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return SparseVec::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, c * s)).collect() }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SparseVec, s: &CycNum) -> Self {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * s));
                        b.next();
                    } else {
                        let v = x + &(y * s);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * s));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &CycNum::one())
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &CycNum::from_int(-1))
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycNum::from_int(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> CycNum {
        let mut acc = CycNum::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Renumbers indices through a monotone or arbitrary map.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_terms(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

impl FromIterator<(usize, CycNum)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, CycNum)>>(iter: T) -> Self {
        SparseVec::from_terms(iter.into_iter().collect())
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        f.write_str("]")
    }
}
