use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bracket::TwistConfig;
use super::element::{Exponent, ToroidalElement};
use crate::error::Result;
use crate::exactfield::{CycNum, SparseVec};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub samples: usize,
    pub failures: usize,
    /// Descriptions of the first few failures.
    pub examples: Vec<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> CycNum {
    let x: i64 = rng.gen_range(1..=3);
    CycNum::from_int(if rng.gen_bool(0.5) { x } else { -x })
}

/// An exponent congruent to `base` modulo `orders`, inside `[-window, window]`.
fn exponent_in_class(rng: &mut ChaCha8Rng, base: &[u32], orders: &[u32], window: i64) -> Exponent {
    base.iter()
        .zip(orders)
        .map(|(&b, &n)| {
            let n = n as i64;
            let choices: Vec<i64> = (-window..=window).filter(|x| x.rem_euclid(n) == b as i64).collect();
            *choices.choose(rng).unwrap_or(&(b as i64))
        })
        .collect()
}

/// A random homogeneous element of the twisted algebra: a single graded loop
/// term, a central term, or a derivation.
pub fn random_homogeneous(cfg: &TwistConfig, rng: &mut ChaCha8Rng, window: i64) -> ToroidalElement {
    let orders = cfg.orders().to_vec();
    let n = orders.len();
    let zero = vec![0u32; n];
    let roll: f64 = rng.gen();
    if roll < 0.6 {
        let grades: Vec<&Vec<u32>> = cfg.decomposition.components.keys().collect();
        let k = (*grades.choose(rng).unwrap()).clone();
        let basis = cfg.decomposition.components[&k].basis();
        let mut x = SparseVec::zero();
        for _ in 0..rng.gen_range(1..=2) {
            x = x.add_scaled(basis.choose(rng).unwrap(), &nonzero_coeff(rng));
        }
        if x.is_zero() {
            x = basis[0].clone();
        }
        ToroidalElement::g(x, exponent_in_class(rng, &k, &orders, window))
    } else if roll < 0.75 {
        let m = exponent_in_class(rng, &zero, &orders, window);
        ToroidalElement::k(rng.gen_range(0..n), m, nonzero_coeff(rng))
    } else {
        let m = exponent_in_class(rng, &zero, &orders, window);
        ToroidalElement::d(rng.gen_range(0..n), m, nonzero_coeff(rng))
    }
}

fn summarize(results: Vec<Result<Option<String>>>) -> Result<SampleReport> {
    let mut report = SampleReport { samples: results.len(), ..Default::default() };
    for r in results {
        if let Some(msg) = r? {
            report.failures += 1;
            if report.examples.len() < 5 {
                report.examples.push(msg);
            }
        }
    }
    Ok(report)
}

/// Brackets of random pairs of twisted elements stay in the twisted algebra.
pub fn verify_closure(cfg: &TwistConfig, samples: usize, window: i64, seed: u64) -> Result<SampleReport> {
    let results = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
            let a = random_homogeneous(cfg, &mut rng, window);
            let b = random_homogeneous(cfg, &mut rng, window);
            let c = cfg.bracket(&a, &b)?;
            Ok(cfg.twisted_violation(&c).map(|w| format!("[{a:?}, {b:?}]: {w}")))
        })
        .collect();
    summarize(results)
}

/// `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0` on random homogeneous triples.
pub fn verify_jacobi_toroidal(cfg: &TwistConfig, samples: usize, window: i64, seed: u64) -> Result<SampleReport> {
    let results = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
            let a = random_homogeneous(cfg, &mut rng, window);
            let b = random_homogeneous(cfg, &mut rng, window);
            let c = random_homogeneous(cfg, &mut rng, window);
            let j = cfg
                .bracket(&cfg.bracket(&a, &b)?, &c)?
                .add(&cfg.bracket(&cfg.bracket(&b, &c)?, &a)?)
                .add(&cfg.bracket(&cfg.bracket(&c, &a)?, &b)?);
            Ok((!j.is_zero()).then(|| format!("a = {a:?}, b = {b:?}, c = {c:?}: cyclic sum {j:?}")))
        })
        .collect();
    summarize(results)
}
