use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toroidal_core::catalog::{analyze_entry, catalog_entry, entry_support, Analysis};
use toroidal_core::constructions::{CartanType, ChevalleyAlgebra};
use toroidal_core::ears::Support;
use toroidal_core::exactfield::{root_of_unity, CycNum, Rational, SparseVec};
use toroidal_core::liecore::LieAlgebra;
use toroidal_core::toroidal::{canonicalize_k, random_homogeneous, ToroidalElement, TwistConfig};

const CASES: u32 = 128;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

/// Elements of the level-12 field as rational combinations of powers of `zeta_12`.
fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((rational(), 0i64..12), 0..4).prop_map(|terms| {
        terms.into_iter().fold(CycNum::zero(), |acc, (c, k)| acc + root_of_unity(12, k).unwrap().scale(&c))
    })
}

fn nonzero_cyc() -> impl Strategy<Value = CycNum> {
    cyc().prop_filter("nonzero", |x| !x.is_zero())
}

fn chevalley(kind: CartanType, rank: usize) -> Arc<LieAlgebra> {
    static CACHE: OnceLock<Vec<(CartanType, usize, Arc<LieAlgebra>)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        [(CartanType::A, 2), (CartanType::B, 2), (CartanType::C, 3), (CartanType::G, 2), (CartanType::D, 4)]
            .into_iter()
            .map(|(k, r)| (k, r, ChevalleyAlgebra::new(k, r).unwrap().algebra().clone()))
            .collect()
    });
    all.iter().find(|(k, r, _)| *k == kind && *r == rank).map(|(_, _, a)| a.clone()).unwrap()
}

fn algebra_choice() -> impl Strategy<Value = Arc<LieAlgebra>> {
    prop::sample::select(vec![(CartanType::A, 2), (CartanType::B, 2), (CartanType::C, 3), (CartanType::G, 2), (CartanType::D, 4)])
        .prop_map(|(k, r)| chevalley(k, r))
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..dim, -3i64..=3), 1..5)
        .prop_map(|t| t.into_iter().fold(SparseVec::zero(), |acc, (i, c)| acc.add_scaled(&SparseVec::unit(i), &CycNum::from_int(c))))
}

fn algebra_and_elements(n: usize) -> impl Strategy<Value = (Arc<LieAlgebra>, Vec<SparseVec>)> {
    algebra_choice().prop_flat_map(move |g| {
        let d = g.dim();
        (Just(g), prop::collection::vec(element(d), n))
    })
}

const ENTRIES: [(&str, usize); 6] = [("B^(2,2)", 2), ("C^(1,2)", 2), ("BC^(2,4)", 1), ("G^(1,3)", 2), ("BC^(2,2)(2)", 2), ("HT-B[m=0,N=2]", 1)];

fn analyses() -> &'static Vec<Analysis> {
    static CACHE: OnceLock<Vec<Analysis>> = OnceLock::new();
    CACHE.get_or_init(|| ENTRIES.iter().map(|(r, l)| analyze_entry(&catalog_entry(r, *l).unwrap()).unwrap()).collect())
}

fn supports() -> &'static Vec<Support> {
    static CACHE: OnceLock<Vec<Support>> = OnceLock::new();
    CACHE.get_or_init(|| analyses().iter().map(|a| entry_support(a, 3).unwrap()).collect())
}

fn config(i: usize, mu: i64, nu: i64) -> TwistConfig {
    TwistConfig::new(analyses()[i].decomposition.clone()).unwrap().with_cocycle(CycNum::from_int(mu), CycNum::from_int(nu))
}

fn combine(a: &ToroidalElement, s: &CycNum, b: &ToroidalElement, t: &CycNum) -> ToroidalElement {
    a.scale(s).add(&b.scale(t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn field_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycNum::zero(), a.clone());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn field_inverses(a in nonzero_cyc(), b in cyc()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(&(&b / &a) * &a, b);
    }

    #[test]
    fn text_round_trip(a in cyc()) {
        prop_assert_eq!(a.to_string().parse::<CycNum>().unwrap(), a);
    }

    #[test]
    fn killing_form_is_invariant((g, v) in algebra_and_elements(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(g.killing(&g.bracket(x, y), z), g.killing(x, &g.bracket(y, z)));
        prop_assert_eq!(g.killing(x, y), g.killing(y, x));
    }

    #[test]
    fn automorphisms_preserve_killing(i in 0..ENTRIES.len(), x in element(64), y in element(64)) {
        let a = &analyses()[i];
        let g = a.built.base.algebra();
        let (x, y) = (x.filter(|j| j < g.dim()), y.filter(|j| j < g.dim()));
        for s in &a.built.sigmas {
            prop_assert_eq!(g.killing(&s.apply(&x), &s.apply(&y)), g.killing(&x, &y));
            prop_assert_eq!(s.apply(&g.bracket(&x, &y)), g.bracket(&s.apply(&x), &s.apply(&y)));
        }
    }

    #[test]
    fn jacobi_on_random_elements((g, v) in algebra_and_elements(3)) {
        prop_assert!(g.certify().is_ok());
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let cyc_sum = g.bracket(&g.bracket(x, y), z).add(&g.bracket(&g.bracket(y, z), x)).add(&g.bracket(&g.bracket(z, x), y));
        prop_assert!(cyc_sum.is_zero());
        prop_assert!(g.bracket(x, y).add(&g.bracket(y, x)).is_zero());
    }

    #[test]
    fn grading_is_additive(i in 0..ENTRIES.len(), s in any::<u64>()) {
        let d = &analyses()[i].decomposition;
        let g = d.algebra();
        let grades = d.grades();
        let k = &grades[(s % grades.len() as u64) as usize];
        let l = &grades[((s >> 16) % grades.len() as u64) as usize];
        let (bk, bl) = (d.component(k), d.component(l));
        let x = &bk.basis()[((s >> 32) % bk.dim() as u64) as usize];
        let y = &bl.basis()[((s >> 48) % bl.dim() as u64) as usize];
        prop_assert!(d.component(&d.add(k, l)).contains(&g.bracket(x, y)));
    }

    #[test]
    fn toroidal_grading_is_additive(i in 0..ENTRIES.len(), seed in any::<u64>()) {
        let cfg = config(i, 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_homogeneous(&cfg, &mut rng, 3);
        let b = random_homogeneous(&cfg, &mut rng, 3);
        let ab = cfg.bracket(&a, &b).unwrap();
        prop_assert!(cfg.is_in_twisted(&ab));
        let degree = |e: &ToroidalElement| e.g_terms().keys().chain(e.k_terms().keys()).chain(e.d_terms().keys()).next().cloned();
        if let (Some(m), Some(r), Some(s)) = (degree(&a), degree(&b), degree(&ab)) {
            prop_assert_eq!(s, m.iter().zip(&r).map(|(x, y)| x + y).collect::<Vec<_>>());
        }
    }

    #[test]
    fn canonicalize_k_is_idempotent_and_linear(
        m in prop::collection::vec(-3i64..=3, 3),
        a in prop::collection::vec(-5i64..=5, 3),
        b in prop::collection::vec(-5i64..=5, 3),
        s in -4i64..=4,
    ) {
        let v = |x: &[i64]| x.iter().map(|&c| CycNum::from_int(c)).collect::<Vec<_>>();
        let (a, b) = (v(&a), v(&b));
        let ca = canonicalize_k(&a, &m);
        prop_assert_eq!(canonicalize_k(&ca, &m), ca.clone());
        let sc = CycNum::from_int(s);
        let lin: Vec<CycNum> = a.iter().zip(&b).map(|(x, y)| &(&sc * x) + y).collect();
        let cb = canonicalize_k(&b, &m);
        let expect: Vec<CycNum> = ca.iter().zip(&cb).map(|(x, y)| &(&sc * x) + y).collect();
        prop_assert_eq!(canonicalize_k(&lin, &m), expect);
        prop_assert!(canonicalize_k(&v(&m), &m).iter().all(CycNum::is_zero));
    }

    #[test]
    fn toroidal_bracket_is_bilinear_and_antisymmetric(i in 0..ENTRIES.len(), seed in any::<u64>(), mu in -2i64..=2, nu in -2i64..=2, s in -3i64..=3) {
        let cfg = config(i, mu, nu);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0; 3].map(|_| random_homogeneous(&cfg, &mut rng, 3));
        let (s, one) = (CycNum::from_int(s), CycNum::one());
        let lhs = cfg.bracket(&combine(&a, &s, &b, &one), &c).unwrap();
        let rhs = combine(&cfg.bracket(&a, &c).unwrap(), &s, &cfg.bracket(&b, &c).unwrap(), &one);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(cfg.bracket(&a, &b).unwrap().add(&cfg.bracket(&b, &a).unwrap()).is_zero());
    }

    #[test]
    fn central_terms_commute_with_loops(i in 0..ENTRIES.len(), seed in any::<u64>()) {
        let cfg = config(i, 2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_homogeneous(&cfg, &mut rng, 3);
        let k = ToroidalElement::k(0, vec![0; cfg.nvars()], CycNum::one());
        if a.d_terms().is_empty() {
            prop_assert!(cfg.bracket(&a, &k).unwrap().is_zero());
        }
    }

    #[test]
    fn support_is_periodic_and_symmetric(i in 0..ENTRIES.len(), pick in any::<prop::sample::Index>()) {
        let sup = &supports()[i];
        let points: Vec<_> = sup.points.iter().collect();
        let (a, m) = points[pick.index(points.len())];
        let neg_w: Vec<CycNum> = sup.weights[*a].iter().map(|x| -x).collect();
        let na = sup.weights.iter().position(|w| *w == neg_w);
        prop_assert!(na.is_some());
        let neg_m: Vec<i64> = m.iter().map(|x| -x).collect();
        prop_assert!(sup.points.contains(&(na.unwrap(), neg_m)));
        for (p, n) in sup.orders.iter().enumerate() {
            let mut shifted = m.clone();
            shifted[p] += *n as i64;
            if shifted[p].abs() <= sup.window {
                prop_assert!(sup.points.contains(&(*a, shifted)));
            }
        }
    }
}
