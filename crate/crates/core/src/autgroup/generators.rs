//! Automorphisms of a Chevalley algebra given by the images of `e_i, f_i`.
//!
//! An image may carry a free scalar `c_u`. For each node the relation
//! `[[s e_i, s f_i], s e_i] = 2 s e_i` pins the product of the scalars on
//! `e_i` and `f_i`; remaining freedom is enumerated over the roots of unity of
//! the session field. Every admissible assignment is extended along the
//! generator words and audited on all basis pairs.

use std::collections::BTreeMap;

use super::automorphism::{Automorphism, Normalization};
use crate::constructions::{ChevalleyAlgebra, Generator};
use crate::error::{Error, Result};
use crate::exactfield::{root_of_unity, session_level, CycNum, SparseVec};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorImage {
    pub vector: SparseVec,
    /// Index of a free scalar multiplying `vector`.
    pub unknown: Option<usize>,
}

impl GeneratorImage {
    pub fn fixed(vector: SparseVec) -> Self {
        GeneratorImage { vector, unknown: None }
    }

    pub fn scaled(vector: SparseVec, unknown: usize) -> Self {
        GeneratorImage { vector, unknown: Some(unknown) }
    }
}

/// `c_{u_1} * c_{u_2} = value`, with `None` for a fixed factor.
struct ProductEq {
    node: usize,
    factors: [Option<usize>; 2],
    value: CycNum,
}

pub fn from_generator_images(
    ch: &ChevalleyAlgebra,
    images: &BTreeMap<Generator, GeneratorImage>,
    declared_order: Option<u32>,
) -> Result<Automorphism> {
    let l = ch.rank();
    for i in 0..l {
        for g in [Generator::E(i), Generator::F(i)] {
            if !images.contains_key(&g) {
                return Err(Error::UnknownGenerator(format!("no image given for {g}")));
            }
        }
    }
    if let Some(g) = images.keys().find(|g| g.node() >= l) {
        return Err(Error::UnknownGenerator(format!("{g} is not a generator of a rank {l} algebra")));
    }
    let num_unknowns = images.values().filter_map(|im| im.unknown).max().map_or(0, |u| u + 1);
    let alg = ch.algebra();
    let mut eqs = Vec::with_capacity(l);
    for i in 0..l {
        let (e, f) = (&images[&Generator::E(i)], &images[&Generator::F(i)]);
        let h = alg.bracket(&e.vector, &f.vector);
        let z = alg.bracket(&h, &e.vector);
        let lambda = proportionality(&z, &e.vector)
            .filter(|x| !x.is_zero())
            .ok_or_else(|| Error::InconsistentImages(format!("[[e{n}, f{n}], e{n}] is not a nonzero multiple of e{n}", n = i + 1)))?;
        let value = &CycNum::from_int(2) / &lambda;
        match (e.unknown, f.unknown) {
            (None, None) if !value.is_one() => {
                return Err(Error::InconsistentImages(format!("[h{n}, e{n}] = {lambda} e{n}, not 2 e{n}", n = i + 1)));
            }
            (None, None) => {}
            (a, b) => eqs.push(ProductEq { node: i, factors: [a, b], value }),
        }
    }

    let mut solutions = Vec::new();
    let mut partial = vec![None; num_unknowns];
    assign(&eqs, &mut partial, &mut solutions)?;
    let mut admissible: Vec<(Automorphism, usize)> = Vec::new();
    let mut last_err = None;
    for values in &solutions {
        let scaled = |g: Generator| {
            let im = &images[&g];
            match im.unknown {
                Some(u) => im.vector.scale(&values[u]),
                None => im.vector.clone(),
            }
        };
        let columns: Vec<SparseVec> = (0..ch.dim())
            .map(|b| {
                let (coef, word) = ch.word(b);
                ch.eval_word(word, &scaled).scale(&CycNum::from_rational(coef.clone()))
            })
            .collect();
        match Automorphism::new(alg.clone(), columns) {
            Ok(mut a) if declared_order.is_none_or(|n| n == a.order()) => {
                let fixed = a.fixed_subspace()?.dim();
                a.normalization = (num_unknowns > 0).then(|| Normalization { values: values.clone(), solutions: 0 });
                admissible.push((a, fixed));
            }
            Ok(a) => last_err = Some(Error::NoNormalization(format!("order {} instead of {}", a.order(), declared_order.unwrap()))),
            Err(e) => last_err = Some(e),
        }
    }
    let count = admissible.len();
    let best = admissible.into_iter().enumerate().max_by_key(|(k, (_, fixed))| (*fixed, std::cmp::Reverse(*k))).map(|(_, (a, _))| a);
    match best {
        Some(mut a) => {
            if let Some(n) = a.normalization.as_mut() {
                n.solutions = count;
            }
            Ok(a)
        }
        None if num_unknowns == 0 => Err(last_err.unwrap_or(Error::NoNormalization("no extension".into()))),
        None => Err(Error::NoNormalization(format!(
            "none of {} scalar assignments gives an automorphism{}: {}",
            solutions.len(),
            declared_order.map(|n| format!(" of order {n}")).unwrap_or_default(),
            last_err.map(|e| e.to_string()).unwrap_or_default()
        ))),
    }
}

/// `x = c y` for a scalar `c`, if one exists.
fn proportionality(x: &SparseVec, y: &SparseVec) -> Option<CycNum> {
    let (i, yi) = y.leading()?;
    let c = &x.get(*i) / yi;
    (y.scale(&c) == *x).then_some(c)
}

fn assign(eqs: &[ProductEq], partial: &mut Vec<Option<CycNum>>, out: &mut Vec<Vec<CycNum>>) -> Result<()> {
    // an equation with exactly one unassigned unknown, counted with multiplicity
    for eq in eqs {
        let open: Vec<usize> = eq.factors.iter().flatten().copied().filter(|u| partial[*u].is_none()).collect();
        if open.is_empty() {
            let prod = eq.factors.iter().flatten().fold(CycNum::one(), |acc, u| &acc * partial[*u].as_ref().unwrap());
            if prod != eq.value {
                return Ok(());
            }
            continue;
        }
        let known = eq.factors.iter().flatten().filter_map(|u| partial[*u].as_ref()).fold(CycNum::one(), |acc, x| &acc * x);
        let rhs = &eq.value / &known;
        let candidates = match open.as_slice() {
            [u] => vec![(*u, rhs)],
            [u, v] if u == v => {
                let r = rhs.sqrt().ok_or_else(|| {
                    Error::NoNormalization(format!("normalization of node {} needs a square root of {rhs} outside the field", eq.node + 1))
                })?;
                vec![(*u, r.clone()), (*u, -r)]
            }
            _ => continue,
        };
        for (u, c) in candidates {
            partial[u] = Some(c);
            assign(eqs, partial, out)?;
            partial[u] = None;
        }
        return Ok(());
    }
    // no determined unknown remains: branch a free one over the roots of unity
    if let Some(u) = partial.iter().position(Option::is_none) {
        let level = session_level();
        for k in 0..level as i64 {
            partial[u] = Some(root_of_unity(level, k)?);
            assign(eqs, partial, out)?;
        }
        partial[u] = None;
        return Ok(());
    }
    out.push(partial.iter().map(|x| x.clone().unwrap()).collect());
    Ok(())
}

/// `e_i -> e_{p(i)}`, `f_i -> f_{p(i)}` for a permutation `p` of the nodes.
pub fn diagram_automorphism(ch: &ChevalleyAlgebra, perm: &[usize]) -> Result<Automorphism> {
    let l = ch.rank();
    let mut seen = vec![false; l];
    if perm.len() != l || perm.iter().any(|&p| p >= l || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of {l} nodes")));
    }
    let mut images = BTreeMap::new();
    for (i, &p) in perm.iter().enumerate() {
        images.insert(Generator::E(i), GeneratorImage::fixed(SparseVec::unit(ch.e(p))));
        images.insert(Generator::F(i), GeneratorImage::fixed(SparseVec::unit(ch.f(p))));
    }
    from_generator_images(ch, &images, None)
}

/// `e_i -> s_i e_i`, `f_i -> s_i^-1 f_i`.
pub fn torus_automorphism(ch: &ChevalleyAlgebra, scalars: &[CycNum]) -> Result<Automorphism> {
    if scalars.len() != ch.rank() {
        return Err(Error::DimensionMismatch(format!("{} scalars for rank {}", scalars.len(), ch.rank())));
    }
    let mut images = BTreeMap::new();
    for (i, s) in scalars.iter().enumerate() {
        images.insert(Generator::E(i), GeneratorImage::fixed(SparseVec::unit(ch.e(i)).scale(s)));
        images.insert(Generator::F(i), GeneratorImage::fixed(SparseVec::unit(ch.f(i)).scale(&s.inv()?)));
    }
    from_generator_images(ch, &images, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::CartanType;

    #[test]
    fn identity_images_give_identity() {
        let ch = ChevalleyAlgebra::new(CartanType::B, 3).unwrap();
        let a = diagram_automorphism(&ch, &[0, 1, 2]).unwrap();
        assert!(a.is_identity());
        assert_eq!(a.order(), 1);
    }

    #[test]
    fn d4_triality_has_order_three() {
        let ch = ChevalleyAlgebra::new(CartanType::D, 4).unwrap();
        let a = diagram_automorphism(&ch, &[2, 1, 3, 0]).unwrap();
        assert_eq!(a.order(), 3);
        assert_eq!(a.fixed_subspace().unwrap().dim(), 14);
    }

    #[test]
    fn non_diagram_permutation_is_rejected() {
        let ch = ChevalleyAlgebra::new(CartanType::B, 2).unwrap();
        assert!(diagram_automorphism(&ch, &[1, 0]).is_err());
    }

    #[test]
    fn chevalley_involution_normalizes_uniquely() {
        // e_i -> -c f_i, f_i -> -c' e_i with c, c' free: the product is pinned to 1
        let ch = ChevalleyAlgebra::new(CartanType::A, 2).unwrap();
        let mut images = BTreeMap::new();
        for i in 0..2 {
            images.insert(Generator::E(i), GeneratorImage::scaled(SparseVec::unit(ch.f(i)), 2 * i));
            images.insert(Generator::F(i), GeneratorImage::scaled(SparseVec::unit(ch.e(i)), 2 * i + 1));
        }
        let a = from_generator_images(&ch, &images, Some(2)).unwrap();
        assert_eq!(a.order(), 2);
        let n = a.normalization.as_ref().unwrap();
        for i in 0..2 {
            assert_eq!(&n.values[2 * i] * &n.values[2 * i + 1], CycNum::one());
        }
        assert!(n.solutions >= 1);
    }

    #[test]
    fn wrong_scale_is_inconsistent() {
        let ch = ChevalleyAlgebra::new(CartanType::A, 1).unwrap();
        let mut images = BTreeMap::new();
        images.insert(Generator::E(0), GeneratorImage::fixed(SparseVec::unit(ch.e(0)).scale(&CycNum::from_int(2))));
        images.insert(Generator::F(0), GeneratorImage::fixed(SparseVec::unit(ch.f(0))));
        assert!(matches!(from_generator_images(&ch, &images, None), Err(Error::InconsistentImages(_))));
    }
}
