use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::{CycNum, SparseVec};

pub type Exponent = Vec<i64>;

/// A finite sum of `g (x) t^m`, `t^m k_i` and `t^m d_j`.
///
/// Central coefficients are kept in canonical form: at each `m != 0` the tuple
/// over `k_0..k_N` is reduced modulo `m` by eliminating the entry at the last
/// nonzero `m_p`. Zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ToroidalElement {
    nvars: usize,
    g: BTreeMap<Exponent, SparseVec>,
    k: BTreeMap<Exponent, Vec<CycNum>>,
    d: BTreeMap<Exponent, Vec<CycNum>>,
}

/// Reduces central coefficients at exponent `m` modulo `sum_p m_p t^m k_p = 0`.
pub fn canonicalize_k(coeffs: &[CycNum], m: &[i64]) -> Vec<CycNum> {
    let mut c = coeffs.to_vec();
    if let Some(p) = m.iter().rposition(|x| *x != 0) {
        if !c[p].is_zero() {
            let f = &c[p] / &CycNum::from_int(m[p]);
            for (ci, mi) in c.iter_mut().zip(m) {
                *ci -= &(&f * &CycNum::from_int(*mi));
            }
        }
    }
    c
}

fn add_into<V>(map: &mut BTreeMap<Exponent, V>, m: Exponent, v: V, add: impl Fn(&V, &V) -> V, is_zero: impl Fn(&V) -> bool) {
    let merged = match map.remove(&m) {
        Some(old) => add(&old, &v),
        None => v,
    };
    if !is_zero(&merged) {
        map.insert(m, merged);
    }
}

fn add_tuple(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn tuple_is_zero(a: &[CycNum]) -> bool {
    a.iter().all(CycNum::is_zero)
}

impl ToroidalElement {
    /// The zero element in `nvars = N + 1` loop variables.
    pub fn zero(nvars: usize) -> Self {
        ToroidalElement { nvars, ..Default::default() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn g(x: SparseVec, m: Exponent) -> Self {
        let mut e = Self::zero(m.len());
        e.add_g(m, x);
        e
    }

    pub fn k(i: usize, m: Exponent, c: CycNum) -> Self {
        let mut e = Self::zero(m.len());
        let mut v = vec![CycNum::zero(); m.len()];
        v[i] = c;
        e.add_k(m, v);
        e
    }

    pub fn d(j: usize, m: Exponent, c: CycNum) -> Self {
        let mut e = Self::zero(m.len());
        let mut v = vec![CycNum::zero(); m.len()];
        v[j] = c;
        e.add_d(m, v);
        e
    }

    pub fn g_terms(&self) -> &BTreeMap<Exponent, SparseVec> {
        &self.g
    }

    /// Canonical central coefficients `(c_0, ..., c_N)` per exponent.
    pub fn k_terms(&self) -> &BTreeMap<Exponent, Vec<CycNum>> {
        &self.k
    }

    pub fn d_terms(&self) -> &BTreeMap<Exponent, Vec<CycNum>> {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_empty() && self.k.is_empty() && self.d.is_empty()
    }

    pub(crate) fn add_g(&mut self, m: Exponent, x: SparseVec) {
        debug_assert_eq!(m.len(), self.nvars);
        add_into(&mut self.g, m, x, SparseVec::add, SparseVec::is_zero);
    }

    pub(crate) fn add_k(&mut self, m: Exponent, c: Vec<CycNum>) {
        debug_assert_eq!(m.len(), self.nvars);
        let c = canonicalize_k(&c, &m);
        let merged = match self.k.remove(&m) {
            Some(old) => canonicalize_k(&add_tuple(&old, &c), &m),
            None => c,
        };
        if !tuple_is_zero(&merged) {
            self.k.insert(m, merged);
        }
    }

    pub(crate) fn add_d(&mut self, m: Exponent, c: Vec<CycNum>) {
        debug_assert_eq!(m.len(), self.nvars);
        add_into(&mut self.d, m, c, |a, b| add_tuple(a, b), |a| tuple_is_zero(a));
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.nvars = self.nvars.max(o.nvars);
        for (m, x) in &o.g {
            r.add_g(m.clone(), x.clone());
        }
        for (m, c) in &o.k {
            r.add_k(m.clone(), c.clone());
        }
        for (m, c) in &o.d {
            r.add_d(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        let sc = |c: &Vec<CycNum>| c.iter().map(|x| x * s).collect::<Vec<_>>();
        ToroidalElement {
            nvars: self.nvars,
            g: self.g.iter().map(|(m, x)| (m.clone(), x.scale(s))).collect(),
            k: self.k.iter().map(|(m, c)| (m.clone(), sc(c))).collect(),
            d: self.d.iter().map(|(m, c)| (m.clone(), sc(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycNum::from_int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Re-applies the central reduction; the identity on stored elements.
    pub fn canonicalize_k(&self) -> Self {
        let mut r = Self { k: BTreeMap::new(), ..self.clone() };
        for (m, c) in &self.k {
            r.add_k(m.clone(), c.clone());
        }
        r
    }
}

impl fmt::Debug for ToroidalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, x) in &self.g {
            parts.push(format!("{x:?}⊗t^{m:?}"));
        }
        for (m, c) in &self.k {
            for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                parts.push(format!("({x})t^{m:?}k{i}"));
            }
        }
        for (m, c) in &self.d {
            for (j, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                parts.push(format!("({x})t^{m:?}d{j}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    #[test]
    fn exactness_relation_kills_the_canonical_combination() {
        let a = ToroidalElement::k(0, vec![1, 1], c(1)).add(&ToroidalElement::k(1, vec![1, 1], c(1)));
        assert!(a.is_zero());
        let b = ToroidalElement::k(0, vec![2, 3], c(2)).add(&ToroidalElement::k(1, vec![2, 3], c(3)));
        assert!(b.is_zero());
    }

    #[test]
    fn zero_exponent_is_untouched() {
        let a = ToroidalElement::k(0, vec![0, 0], c(1));
        assert_eq!(a.k_terms()[&vec![0, 0]], vec![c(1), c(0)]);
    }

    #[test]
    fn pivot_is_last_nonzero_exponent() {
        assert_eq!(canonicalize_k(&[c(0), c(3)], &[2, 3]), vec![c(-2), c(0)]);
        assert_eq!(canonicalize_k(&[c(1), c(5)], &[2, 0]), vec![c(0), c(5)]);
    }
}
