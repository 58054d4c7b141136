use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::family::{EarsFamily, LengthClass};
use crate::autgroup::GradedDecomposition;
use crate::constructions::SplitAlgebra;
use crate::decompanalysis::FixedAlgebra;
use crate::error::{Error, Result};
use crate::exactfield::{rref, CycNum, ExactMatrix, Rational, SparseVec};
use crate::toroidal::Exponent;

/// One non-isotropic root `alpha + sum_i m_i delta_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportPoint {
    /// Values of `alpha` on the basis of `cartan0`.
    pub finite_part: Vec<CycNum>,
    pub length_class: LengthClass,
    pub exponents: Exponent,
}

/// The root support of a twisted toroidal algebra on the box `[-window, window]^nvars`.
///
/// Finite parts are indexed in `weights`; the index `0..n_roots` range holds
/// the roots of `g_0` in classification order.
#[derive(Clone, Debug)]
pub struct Support {
    pub nvars: usize,
    pub window: i64,
    pub orders: Vec<u32>,
    pub weights: Vec<Vec<CycNum>>,
    /// Squared length of each finite part over the shortest root of `g_0`.
    pub lengths: Vec<Rational>,
    /// `pairing[a][b] = 2 (w_a, w_b) / (w_b, w_b)`.
    pub pairing: Vec<Vec<Rational>>,
    pub points: BTreeSet<(usize, Exponent)>,
    pub isotropic: BTreeSet<Exponent>,
    /// Number of leading entries of `weights` that are roots of `g_0`.
    pub n_fixed_roots: usize,
}

fn box_exponents(orders: &[u32], residue: &[u32], window: i64) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = vec![Vec::new()];
    for (&n, &r) in orders.iter().zip(residue) {
        let axis: Vec<i64> = (-window..=window).filter(|x| x.rem_euclid(n as i64) == r as i64).collect();
        out = out.into_iter().flat_map(|p| axis.iter().map(move |x| [p.clone(), vec![*x]].concat())).collect();
    }
    out
}

/// All exponents in `[-window, window]^nvars`.
pub fn window_exponents(nvars: usize, window: i64) -> Vec<Exponent> {
    box_exponents(&vec![1; nvars], &vec![0; nvars], window)
}

fn scale_weight(w: &[CycNum], s: &CycNum) -> Vec<CycNum> {
    w.iter().map(|x| x * s).collect()
}

/// Killing-induced form on weights of `cartan0`: `(l, m) = l^T G^{-1} m`.
struct WeightForm {
    gram_inv: ExactMatrix,
}

impl WeightForm {
    fn new(d: &GradedDecomposition, fixed: &FixedAlgebra) -> Result<Self> {
        let kappa = d.algebra().killing_form();
        let basis = fixed.cartan0.basis();
        let kb: Vec<SparseVec> = basis.iter().map(|b| kappa.mul_vec(b)).collect();
        let rows = basis.iter().map(|a| SparseVec::from_dense(&kb.iter().map(|k| a.dot(k)).collect::<Vec<_>>())).collect();
        let gram = ExactMatrix::from_rows(basis.len(), rows);
        Ok(WeightForm { gram_inv: gram.inverse()? })
    }

    fn inner(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        SparseVec::from_dense(a).dot(&self.gram_inv.mul_vec(&SparseVec::from_dense(b)))
    }
}

fn rational(x: CycNum, what: &str) -> Result<Rational> {
    x.to_rational().ok_or_else(|| Error::InvalidArgument(format!("{what} is not rational")))
}

/// Non-isotropic and isotropic root support of the twisted algebra on the window.
pub fn compute_support(split: &SplitAlgebra, d: &GradedDecomposition, fixed: &FixedAlgebra, window: i64) -> Result<Support> {
    let form = WeightForm::new(d, fixed)?;
    let mut index: BTreeMap<Vec<CycNum>, usize> = BTreeMap::new();
    let mut weights = Vec::new();
    for r in &fixed.classification.roots {
        index.insert(r.weight.clone(), weights.len());
        weights.push(r.weight.clone());
    }
    let n_fixed_roots = weights.len();
    let zero = vec![CycNum::zero(); fixed.cartan0.dim()];
    let mut points = BTreeSet::new();
    let mut isotropic = BTreeSet::new();
    for (k, comp) in &d.components {
        if comp.is_zero() {
            continue;
        }
        let exps = box_exponents(&d.orders, k, window);
        for (w, space) in split.weight_decomposition(comp, &fixed.cartan0)? {
            if w == zero {
                let only_cartan = *k == d.zero_grade() && space.dim() == fixed.cartan0.dim();
                for m in &exps {
                    if !(only_cartan && m.iter().all(|x| *x == 0)) {
                        isotropic.insert(m.clone());
                    }
                }
                continue;
            }
            let a = *index.entry(w.clone()).or_insert_with(|| {
                weights.push(w);
                weights.len() - 1
            });
            for m in &exps {
                points.insert((a, m.clone()));
            }
        }
    }
    let norms: Vec<Rational> = weights.iter().map(|w| rational(form.inner(w, w), "squared length")).collect::<Result<_>>()?;
    let unit = norms[..n_fixed_roots].iter().min().cloned().unwrap_or_else(Rational::one);
    if unit.is_zero() || unit.is_negative() {
        return Err(Error::InvalidArgument("Killing form is not positive on the roots of g_0".into()));
    }
    let lengths = norms.iter().map(|n| n / &unit).collect();
    let two = Rational::from_int(2);
    let pairing = weights
        .iter()
        .map(|a| {
            weights
                .iter()
                .zip(&norms)
                .map(|(b, nb)| Ok(&(&two * &rational(form.inner(a, b), "inner product")?) / nb))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Support { nvars: d.orders.len(), window, orders: d.orders.clone(), weights, lengths, pairing, points, isotropic, n_fixed_roots })
}

impl Support {
    /// The integral length class of finite part `a`, if it is one.
    pub fn class(&self, a: usize) -> Option<LengthClass> {
        self.lengths[a].to_i64().and_then(|x| u32::try_from(x).ok())
    }

    fn point(&self, a: usize, m: &Exponent) -> SupportPoint {
        SupportPoint { finite_part: self.weights[a].clone(), length_class: self.class(a).unwrap_or(0), exponents: m.clone() }
    }

    pub fn to_points(&self) -> Vec<SupportPoint> {
        self.points.iter().map(|(a, m)| self.point(*a, m)).collect()
    }

    /// Distinct length classes of the finite parts present in the support.
    pub fn classes(&self) -> BTreeSet<LengthClass> {
        self.points.iter().map(|(a, _)| self.class(*a).unwrap_or(0)).collect()
    }

    fn index_of(&self, w: &[CycNum]) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarsDiff {
    pub family: String,
    pub expected: usize,
    pub computed: usize,
    /// Predicted by the family but absent from the support.
    pub missing: Vec<SupportPoint>,
    /// In the support but not predicted by the family.
    pub extra: Vec<SupportPoint>,
}

impl EarsDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Symmetric difference between the support and the family on the window.
///
/// The family's finite root system is read off `g_0`: its roots, plus twice
/// its short roots for the BC families, each matched by length class.
pub fn ears_compare(support: &Support, f: &EarsFamily) -> Result<EarsDiff> {
    if f.nvars != support.nvars {
        return Err(Error::ExponentLength { got: support.nvars, expected: f.nvars });
    }
    let mut finite: Vec<(Vec<CycNum>, LengthClass)> = Vec::new();
    for a in 0..support.n_fixed_roots {
        let c = support.class(a).unwrap_or(0);
        finite.push((support.weights[a].clone(), c));
        if f.is_bc() && c == 1 {
            finite.push((scale_weight(&support.weights[a], &CycNum::from_int(2)), 4));
        }
    }
    let exps = window_exponents(support.nvars, support.window);
    let mut expected: BTreeSet<SupportPoint> = BTreeSet::new();
    for (w, c) in &finite {
        for m in exps.iter().filter(|m| f.member(*c, m)) {
            expected.insert(SupportPoint { finite_part: w.clone(), length_class: *c, exponents: m.clone() });
        }
    }
    let computed: BTreeSet<SupportPoint> = support.to_points().into_iter().collect();
    Ok(EarsDiff {
        family: f.to_string(),
        expected: expected.len(),
        computed: computed.len(),
        missing: expected.difference(&computed).cloned().collect(),
        extra: computed.difference(&expected).cloned().collect(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub points: usize,
    pub non_integral_pairs: usize,
    /// Reflections landing inside the window but outside the support.
    pub reflection_failures: usize,
    pub reflections_checked: usize,
    pub doubled_roots: usize,
    /// Rank of the support as vectors `(alpha, m)`, against `rank(alpha) + nvars`.
    pub lattice_rank: usize,
    pub expected_rank: usize,
    /// Connected components of the finite parts under non-orthogonality.
    pub components: usize,
    pub examples: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.non_integral_pairs == 0 && self.reflection_failures == 0 && self.doubled_roots == 0 && self.lattice_rank == self.expected_rank && self.components == 1
    }
}

/// Windowed checks of the reflection, integrality, reducedness, fullness and
/// irreducibility axioms. Reflections use every root with exponents in
/// `[-1, 1]^nvars`; each reflection of the window back into it is checked.
pub fn axiom_spotcheck(support: &Support) -> AxiomReport {
    let mut rep = AxiomReport { points: support.points.len(), ..Default::default() };
    let used: BTreeSet<usize> = support.points.iter().map(|(a, _)| *a).collect();
    let used: Vec<usize> = used.into_iter().collect();
    let mut ints: HashMap<(usize, usize), i64> = HashMap::new();
    for &a in &used {
        for &b in &used {
            match support.pairing[a][b].to_i64() {
                Some(c) => {
                    ints.insert((a, b), c);
                }
                None => {
                    rep.non_integral_pairs += 1;
                    if rep.examples.len() < 5 {
                        rep.examples.push(format!("2(b,a)/(a,a) = {} for finite parts {a}, {b}", support.pairing[a][b]));
                    }
                }
            }
        }
    }
    let mut refl: HashMap<(usize, usize), Option<usize>> = HashMap::new();
    for &a in &used {
        for &b in &used {
            if let Some(c) = ints.get(&(b, a)) {
                let w: Vec<CycNum> = support.weights[b].iter().zip(&support.weights[a]).map(|(x, y)| x - &(y * &CycNum::from_int(*c))).collect();
                refl.insert((a, b), support.index_of(&w));
            }
        }
    }
    let set: HashSet<(usize, &Exponent)> = support.points.iter().map(|(a, m)| (*a, m)).collect();
    let within = |m: &[i64]| m.iter().all(|x| x.abs() <= support.window);
    for (a, ma) in support.points.iter().filter(|(_, m)| m.iter().all(|x| x.abs() <= 1)) {
        for (b, mb) in &support.points {
            let Some(c) = ints.get(&(*b, *a)) else { continue };
            let m: Exponent = mb.iter().zip(ma).map(|(x, y)| x - c * y).collect();
            if !within(&m) {
                continue;
            }
            rep.reflections_checked += 1;
            let ok = matches!(refl.get(&(*a, *b)), Some(Some(w)) if set.contains(&(*w, &m)));
            if !ok {
                rep.reflection_failures += 1;
                if rep.examples.len() < 5 {
                    rep.examples.push(format!("reflection of ({b}, {mb:?}) in ({a}, {ma:?}) leaves the support"));
                }
            }
        }
    }
    let two = CycNum::from_int(2);
    for (a, m) in &support.points {
        let w2 = scale_weight(&support.weights[*a], &two);
        let m2: Exponent = m.iter().map(|x| 2 * x).collect();
        if let Some(i) = support.index_of(&w2) {
            if set.contains(&(i, &m2)) {
                rep.doubled_roots += 1;
                if rep.examples.len() < 5 {
                    rep.examples.push(format!("({a}, {m:?}) and its double are both roots"));
                }
            }
        }
    }
    let r = support.weights.first().map_or(0, Vec::len);
    let vectors: Vec<SparseVec> = support
        .points
        .iter()
        .map(|(a, m)| SparseVec::from_dense(&support.weights[*a].iter().cloned().chain(m.iter().map(|x| CycNum::from_int(*x))).collect::<Vec<_>>()))
        .collect();
    rep.expected_rank = r + support.nvars;
    rep.lattice_rank = rref(vectors, rep.expected_rank).rank();
    // union-find over finite parts joined by non-orthogonality
    let mut parent: Vec<usize> = (0..used.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..used.len() {
        for j in 0..i {
            if !support.pairing[used[i]][used[j]].is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    rep.components = (0..used.len()).filter(|&i| find(&mut parent, i) == i).count();
    rep
}
