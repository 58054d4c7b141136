use serde::{Deserialize, Serialize};

use super::element::{Exponent, ToroidalElement};
use crate::autgroup::GradedDecomposition;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, ExactMatrix, SparseVec};

/// The two readings of the second derivation cocycle
/// `tau_2(t^m d_i, t^r d_j) = m_i r_j sum_p c_p t^{m+r} k_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tau2Reading {
    /// `c_p = m_0` for every `p`.
    MZero,
    /// `c_p = m_p`.
    MP,
}

/// The twisted toroidal algebra with cocycle `mu tau_1 + nu tau_2` on the derivations.
#[derive(Clone, Debug)]
pub struct TwistConfig {
    pub decomposition: GradedDecomposition,
    pub mu: CycNum,
    pub nu: CycNum,
    pub tau2: Tau2Reading,
    kappa: ExactMatrix,
}

fn add_exp(m: &[i64], r: &[i64]) -> Exponent {
    m.iter().zip(r).map(|(a, b)| a + b).collect()
}

fn ints(v: &[i64]) -> Vec<CycNum> {
    v.iter().map(|&x| CycNum::from_int(x)).collect()
}

impl TwistConfig {
    /// `mu = nu = 0`, with the second cocycle read as settled by the cocycle audit.
    pub fn new(decomposition: GradedDecomposition) -> Result<Self> {
        let tau2 = super::cocycle::resolved_tau2()?;
        let kappa = decomposition.algebra().killing_form().clone();
        Ok(TwistConfig { decomposition, mu: CycNum::zero(), nu: CycNum::zero(), tau2, kappa })
    }

    pub fn with_cocycle(mut self, mu: CycNum, nu: CycNum) -> Self {
        self.mu = mu;
        self.nu = nu;
        self
    }

    pub fn nvars(&self) -> usize {
        self.decomposition.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.decomposition.orders
    }

    pub fn residue(&self, m: &[i64]) -> Vec<u32> {
        m.iter().zip(self.orders()).map(|(x, n)| x.rem_euclid(*n as i64) as u32).collect()
    }

    fn check(&self, e: &ToroidalElement) -> Result<()> {
        if e.nvars() != self.nvars() && !e.is_zero() {
            return Err(Error::ExponentLength { got: e.nvars(), expected: self.nvars() });
        }
        Ok(())
    }

    /// `tau(t^m d_i, t^r d_j)` as central coefficients at `m + r`.
    pub fn tau(&self, m: &[i64], i: usize, r: &[i64], j: usize) -> Vec<CycNum> {
        tau_value(&self.mu, &self.nu, self.tau2, m, i, r, j)
    }

    pub fn bracket(&self, a: &ToroidalElement, b: &ToroidalElement) -> Result<ToroidalElement> {
        self.check(a)?;
        self.check(b)?;
        let alg = self.decomposition.algebra();
        let n = self.nvars();
        let mut out = ToroidalElement::zero(n);
        for (m, x) in a.g_terms() {
            for (r, y) in b.g_terms() {
                let s = add_exp(m, r);
                out.add_g(s.clone(), alg.bracket(x, y));
                let kxy = x.dot(&self.kappa.mul_vec(y));
                if !kxy.is_zero() {
                    out.add_k(s, ints(m).iter().map(|mp| mp * &kxy).collect());
                }
            }
            for (r, c) in b.d_terms() {
                for (j, cj) in c.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    // [x t^m, t^r d_j] = -m_j x t^{m+r}
                    out.add_g(add_exp(m, r), x.scale(&(cj * &CycNum::from_int(-m[j]))));
                }
            }
        }
        for (m, c) in a.d_terms() {
            for (j, cj) in c.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (r, y) in b.g_terms() {
                    out.add_g(add_exp(m, r), y.scale(&(cj * &CycNum::from_int(r[j]))));
                }
                for (r, kc) in b.k_terms() {
                    out.add_k(add_exp(m, r), d_on_k(j, m, r, kc).iter().map(|v| v * cj).collect());
                }
                for (r, c2) in b.d_terms() {
                    for (i2, ci2) in c2.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let s = add_exp(m, r);
                        let coef = cj * ci2;
                        let mut dv = vec![CycNum::zero(); n];
                        dv[i2] += &(&coef * &CycNum::from_int(r[j]));
                        dv[j] -= &(&coef * &CycNum::from_int(m[i2]));
                        out.add_d(s.clone(), dv);
                        out.add_k(s, self.tau(m, j, r, i2).iter().map(|v| v * &coef).collect());
                    }
                }
            }
        }
        for (m, kc) in a.k_terms() {
            for (r, c) in b.d_terms() {
                for (j, cj) in c.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let neg = -cj;
                    out.add_k(add_exp(r, m), d_on_k(j, r, m, kc).iter().map(|v| v * &neg).collect());
                }
            }
        }
        Ok(out)
    }

    /// `None` if `e` lies in the twisted algebra, else the first offending term.
    pub fn twisted_violation(&self, e: &ToroidalElement) -> Option<String> {
        let divisible = |m: &[i64]| self.residue(m).iter().all(|x| *x == 0);
        for (m, x) in e.g_terms() {
            let k = self.residue(m);
            if !self.decomposition.component(&k).contains(x) {
                return Some(format!("g-term at t^{m:?} is not in the grade {k:?} component"));
            }
        }
        for m in e.k_terms().keys() {
            if !divisible(m) {
                return Some(format!("central term at t^{m:?} has exponent not divisible by the orders"));
            }
        }
        for m in e.d_terms().keys() {
            if !divisible(m) {
                return Some(format!("derivation at t^{m:?} has exponent not divisible by the orders"));
            }
        }
        None
    }

    pub fn is_in_twisted(&self, e: &ToroidalElement) -> bool {
        self.twisted_violation(e).is_none()
    }

    pub fn g_term(&self, x: SparseVec, m: Exponent) -> ToroidalElement {
        ToroidalElement::g(x, m)
    }
}

/// `[t^m d_j, t^r (sum_i c_i k_i)] = r_j t^{m+r} sum_i c_i k_i + c_j sum_p m_p t^{m+r} k_p`.
pub(crate) fn d_on_k(j: usize, m: &[i64], r: &[i64], c: &[CycNum]) -> Vec<CycNum> {
    let rj = CycNum::from_int(r[j]);
    c.iter().zip(m).map(|(ci, mp)| &(ci * &rj) + &(&c[j] * &CycNum::from_int(*mp))).collect()
}

pub(crate) fn tau_value(mu: &CycNum, nu: &CycNum, reading: Tau2Reading, m: &[i64], i: usize, r: &[i64], j: usize) -> Vec<CycNum> {
    let n = m.len();
    let mut out = vec![CycNum::zero(); n];
    if !mu.is_zero() {
        let f = mu * &CycNum::from_int(m[j] * r[i]);
        for p in 0..n {
            out[p] += &(&f * &CycNum::from_int(r[p]));
        }
    }
    if !nu.is_zero() {
        let f = nu * &CycNum::from_int(m[i] * r[j]);
        for p in 0..n {
            let c = match reading {
                Tau2Reading::MZero => m[0],
                Tau2Reading::MP => m[p],
            };
            out[p] += &(&f * &CycNum::from_int(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{joint_decomposition, Automorphism};
    use crate::constructions::{CartanChoice, MatrixRealization};

    fn sl2_config(nvars: usize) -> (MatrixRealization, TwistConfig) {
        let r = MatrixRealization::sl(2, CartanChoice::Diagonal).unwrap();
        let ids = vec![Automorphism::identity(r.algebra().clone()); nvars];
        let d = joint_decomposition(r.algebra(), &ids).unwrap();
        let cfg = TwistConfig::new(d).unwrap();
        (r, cfg)
    }

    fn basis_named(r: &MatrixRealization, pred: impl Fn(&ExactMatrix) -> bool) -> SparseVec {
        (0..r.dim()).map(SparseVec::unit).find(|v| pred(&r.to_matrix(v))).unwrap()
    }

    #[test]
    fn loop_bracket_with_central_term() {
        let (r, cfg) = sl2_config(1);
        let one = CycNum::one();
        let e = basis_named(&r, |m| m.get(0, 1) == one);
        let f = basis_named(&r, |m| m.get(1, 0) == one);
        let h = r.algebra().bracket(&e, &f);
        let kef = r.algebra().killing(&e, &f);
        assert_eq!(kef, CycNum::from_int(4));
        let out = cfg.bracket(&ToroidalElement::g(e, vec![1]), &ToroidalElement::g(f, vec![-1])).unwrap();
        let want = ToroidalElement::g(h, vec![0]).add(&ToroidalElement::k(0, vec![0], CycNum::from_int(4)));
        assert_eq!(out, want);
    }

    #[test]
    fn derivation_acts_by_degree() {
        let (r, cfg) = sl2_config(2);
        let x = SparseVec::unit(r.dim() - 1);
        let out = cfg.bracket(&ToroidalElement::d(0, vec![0, 0], CycNum::one()), &ToroidalElement::g(x.clone(), vec![3, 1])).unwrap();
        assert_eq!(out, ToroidalElement::g(x.scale(&CycNum::from_int(3)), vec![3, 1]));
    }

    #[test]
    fn self_bracket_vanishes() {
        let (r, cfg) = sl2_config(2);
        let cfg = cfg.with_cocycle(CycNum::from_int(2), CycNum::from_int(3));
        let x = ToroidalElement::g(SparseVec::unit(0), vec![1, -2])
            .add(&ToroidalElement::d(1, vec![2, 1], CycNum::from_int(5)))
            .add(&ToroidalElement::k(0, vec![1, 1], CycNum::one()))
            .add(&ToroidalElement::g(SparseVec::unit(r.dim() - 1), vec![0, 3]));
        assert!(cfg.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn membership_follows_grades() {
        let r = MatrixRealization::so_antisymmetric(5).unwrap();
        let diag = |d: &[i64]| ExactMatrix::diagonal(&d.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>());
        let s0 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, 1, -1])).unwrap();
        let s1 = Automorphism::from_conjugation(&r, &diag(&[1, 1, 1, -1, 1])).unwrap();
        let d = joint_decomposition(r.algebra(), &[s0, s1]).unwrap();
        let x = d.component(&[1, 0]).basis()[0].clone();
        let cfg = TwistConfig::new(d).unwrap();
        assert!(cfg.is_in_twisted(&ToroidalElement::g(x.clone(), vec![3, 2])));
        assert!(!cfg.is_in_twisted(&ToroidalElement::g(x, vec![2, 2])));
        assert!(cfg.is_in_twisted(&ToroidalElement::k(1, vec![2, 0], CycNum::one())));
        assert!(!cfg.is_in_twisted(&ToroidalElement::k(1, vec![1, 0], CycNum::one())));
        assert!(cfg.is_in_twisted(&ToroidalElement::d(0, vec![0, 0], CycNum::one())));
    }
}
