use super::spec::{swap_entry, BaseSpec, CatalogEntry, GradeClaim, ImageSpec, SigmaSpec, Triplet};
use crate::constructions::{CartanChoice, CartanType, RealizationKind};
use crate::ears::{EarsFamily, FamilyTag};
use crate::error::{Error, Result};
use crate::exactfield::{imaginary_unit, root_of_unity, CycNum};

fn diag(signs: &[i64]) -> Vec<Triplet> {
    signs.iter().enumerate().map(|(i, s)| (i + 1, i + 1, CycNum::from_int(*s))).collect()
}

fn signs(parts: &[(i64, usize)]) -> Vec<i64> {
    parts.iter().flat_map(|&(s, n)| std::iter::repeat(s).take(n)).collect()
}

fn alt(i: usize) -> CycNum {
    CycNum::from_int(if i % 2 == 0 { 1 } else { -1 })
}

fn realization(realization: RealizationKind, n: usize) -> BaseSpec {
    BaseSpec::Realization { realization, n, cartan: CartanChoice::Diagonal }
}

fn chevalley(cartan_type: CartanType, rank: usize) -> BaseSpec {
    BaseSpec::Chevalley { cartan_type, rank }
}

fn conj(matrix: Vec<Triplet>) -> SigmaSpec {
    SigmaSpec::Conjugation { matrix }
}

fn adjoint_b(l: usize) -> usize {
    2 * l * l + l
}

/// Every grade for the given orders, lexicographically.
fn grades(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &n in orders {
        out = out.into_iter().flat_map(|p| (0..n).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

fn claims(orders: &[u32], f: impl Fn(&[u32]) -> Option<GradeClaim>) -> Vec<GradeClaim> {
    grades(orders).iter().filter_map(|g| f(g)).collect()
}

fn family(tag: FamilyTag, kind: CartanType, rank: usize, nvars: usize) -> Result<EarsFamily> {
    EarsFamily::new(tag, kind, rank, nvars)
}

fn entry(recipe: &str, rank: usize, family: EarsFamily, base: BaseSpec, sigmas: Vec<SigmaSpec>, expected: Vec<GradeClaim>) -> CatalogEntry {
    CatalogEntry { name: family.to_string(), recipe: recipe.into(), rank, family, base, sigmas, expected, notes: Vec::new() }
}

/// `sum_{i=1}^{4l} (-1)^i E_{i, 4l+1-i}`.
fn p0_type_d(l: usize) -> Vec<Triplet> {
    let n = 4 * l;
    (1..=n).map(|i| (i, n + 1 - i, alt(i))).collect()
}

/// `sum_{i=1}^{2l} (-1)^i (E_{i, 4l+1-i} - E_{2l+i, 2l+1-i})`.
fn p1_type_d(l: usize) -> Vec<Triplet> {
    let n = 4 * l;
    (1..=2 * l).flat_map(|i| [(i, n + 1 - i, alt(i)), (2 * l + i, 2 * l + 1 - i, -&alt(i))]).collect()
}

/// `J_k` on `2l + 2^{m+1}` coordinates: ones, then blocks of `2^k` equal signs
/// alternating `+, -`.
fn j_matrix(l: usize, m: usize, k: usize) -> Vec<Triplet> {
    let tail = 1usize << (m + 1);
    let mut s = vec![1; 2 * l];
    s.extend((0..tail).map(|p| if (p >> k) % 2 == 0 { 1 } else { -1 }));
    diag(&s)
}

fn untwisted(kind: CartanType, rank: usize) -> Result<CatalogEntry> {
    let recipe = format!("{kind}^(1,1)");
    let fam = family(FamilyTag::X11, kind, rank, 2)?;
    let dim = kind.algebra_dim(rank);
    Ok(entry(&recipe, rank, fam, chevalley(kind, rank), vec![SigmaSpec::Identity, SigmaSpec::Identity], vec![GradeClaim::new(vec![0, 0], vec![dim])]))
}

/// `X^(1,t)` from a diagram automorphism of a simply laced algebra.
fn diagram_entry(kind: CartanType, rank: usize) -> Result<CatalogEntry> {
    let l = rank;
    let (base_kind, base_rank, perm, fixed, rest): (CartanType, usize, Vec<usize>, usize, Vec<Vec<usize>>) = match kind {
        CartanType::B => {
            let mut p: Vec<usize> = (1..=l + 1).collect();
            p.swap(l - 1, l);
            (CartanType::D, l + 1, p, adjoint_b(l), vec![vec![2 * l + 1]])
        }
        CartanType::C => ((CartanType::A), 2 * l - 1, (1..=2 * l - 1).rev().collect(), adjoint_b(l), vec![vec![2 * l * l - l - 1]]),
        CartanType::F => (CartanType::E, 6, vec![6, 2, 5, 4, 3, 1], 52, vec![vec![26]]),
        CartanType::G => (CartanType::D, 4, vec![3, 2, 4, 1], 14, vec![vec![7], vec![7]]),
        _ => return Err(Error::InvalidArgument(format!("no diagram construction for {kind}"))),
    };
    let fam = family(FamilyTag::X1t, kind, rank, 2)?;
    let mut expected = vec![GradeClaim::new(vec![0, 0], vec![fixed])];
    for (j, m) in rest.into_iter().enumerate() {
        expected.push(GradeClaim::new(vec![0, j as u32 + 1], m));
    }
    let t = fam.t();
    Ok(entry(&format!("{kind}^(1,{t})"), rank, fam, chevalley(base_kind, base_rank), vec![SigmaSpec::Identity, SigmaSpec::Diagram { perm }], expected))
}

fn b22(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Xtt, CartanType::B, l, 2)?;
    let s0 = diag(&signs(&[(1, 2 * l + 2), (-1, 2)]));
    let s1 = diag(&signs(&[(1, 2 * l + 1), (-1, 1), (1, 1), (-1, 1)]));
    let exp = claims(&[2, 2], |g| Some(if g == [0, 0] { GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]) } else { GradeClaim::new(g.to_vec(), vec![2 * l + 1, 1]) }));
    let mut e = entry("B^(2,2)", l, fam, realization(RealizationKind::SoAntisymmetric, 2 * l + 4), vec![conj(s0), conj(s1)], exp);
    e.notes.push("sigma_0 uses diag(1,...,1,-1,-1) with the two minus signs in the last two coordinates".into());
    Ok(e)
}

fn c22(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Xtt, CartanType::C, l, 2)?;
    let exp = claims(&[2, 2], |g| {
        Some(if g == [0, 0] { GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]) } else { GradeClaim::new(g.to_vec(), vec![2 * l * l - l - 1, 1]) })
    });
    let mut e = entry("C^(2,2)", l, fam, realization(RealizationKind::SplitD, 4 * l), vec![conj(p0_type_d(l)), conj(p1_type_d(l))], exp);
    e.notes.push("the non-trivial grades are modules for the fixed algebra of type C, not B".into());
    Ok(e)
}

fn f22() -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Xtt, CartanType::F, 4, 2)?;
    let swaps = [(1, 6), (2, 2), (3, 5), (4, 4), (5, 3), (6, 1)];
    let mut images = Vec::new();
    for (a, b) in swaps {
        images.push(ImageSpec::new(&format!("e{a}"), &format!("e{b}")));
        images.push(ImageSpec::new(&format!("f{a}"), &format!("f{b}")));
    }
    images.push(ImageSpec::new("e7", "[f1 f3 f4 f2 f5 f4 f6 f5 f3 f4 f2 f1 f3 f4 f5 f6 f7]"));
    images.push(ImageSpec { unknown: Some(0), ..ImageSpec::new("f7", "highest") });
    let s0 = SigmaSpec::GeneratorImages { images, order: Some(2) };
    let mut t = vec![CycNum::one(); 7];
    t[6] = CycNum::from_int(-1);
    let s1 = SigmaSpec::Torus { scalars: t };
    let exp = claims(&[2, 2], |g| Some(if g == [0, 0] { GradeClaim::new(g.to_vec(), vec![52]) } else { GradeClaim::new(g.to_vec(), vec![26, 1]) }));
    let mut e = entry("F^(2,2)", 4, fam, chevalley(CartanType::E, 7), vec![s0, s1], exp);
    e.notes.push("the scalar on the image of f7 is solved for so that sigma_0 is an automorphism of order 2".into());
    Ok(e)
}

fn g33() -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Xtt, CartanType::G, 2, 2)?;
    let perm = [(1, 6), (2, 3), (3, 5), (4, 4), (5, 2)];
    let mut images = Vec::new();
    for (a, b) in perm {
        images.push(ImageSpec::new(&format!("e{a}"), &format!("e{b}")));
        images.push(ImageSpec::new(&format!("f{a}"), &format!("f{b}")));
    }
    images.push(ImageSpec::new("e6", "[f2 f4 f5 f3 f4 f2 f6 f5 f4 f3 f1]"));
    images.push(ImageSpec { unknown: Some(0), ..ImageSpec::new("f6", "highest") });
    let s0 = SigmaSpec::GeneratorImages { images, order: Some(3) };
    let w = root_of_unity(3, 1)?;
    let mut t = vec![CycNum::one(); 6];
    t[0] = w.clone();
    t[5] = w;
    let exp = claims(&[3, 3], |g| Some(if g == [0, 0] { GradeClaim::new(g.to_vec(), vec![14]) } else { GradeClaim::new(g.to_vec(), vec![7, 1]) }));
    let mut e = entry("G^(3,3)", 2, fam, chevalley(CartanType::E, 6), vec![s0, SigmaSpec::Torus { scalars: t }], exp);
    e.notes.push("the highest root vector is the image of f6 (E6 has no f7), scaled so that sigma_0 has order 3".into());
    Ok(e)
}

/// `so(2l+3)` with two reflections; `l = 1` gives `A1^(1,1)*`.
fn b_star(l: usize) -> Result<CatalogEntry> {
    let (fam, recipe) = if l == 1 {
        (family(FamilyTag::A1Star, CartanType::A, 1, 2)?, "A1^(1,1)*")
    } else {
        (family(FamilyTag::BStar, CartanType::B, l, 2)?, "B^(2,2)*")
    };
    let s0 = diag(&signs(&[(1, 2 * l + 2), (-1, 1)]));
    let s1 = diag(&signs(&[(1, 2 * l + 1), (-1, 1), (1, 1)]));
    let exp = claims(&[2, 2], |g| {
        Some(match g {
            [0, 0] => GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]),
            [1, 1] => GradeClaim::new(g.to_vec(), vec![1]),
            _ => GradeClaim::new(g.to_vec(), vec![2 * l + 1]),
        })
    });
    Ok(entry(recipe, l, fam, realization(RealizationKind::SoAntisymmetric, 2 * l + 3), vec![conj(s0), conj(s1)], exp))
}

fn c_star(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::CStar, CartanType::C, l, 2)?;
    let exp = claims(&[2, 2], |g| {
        Some(match g {
            [1, 1] => GradeClaim::new(g.to_vec(), vec![2 * l * l - l - 1, 1]),
            _ => GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]),
        })
    });
    Ok(entry("C^(1,1)*", l, fam, realization(RealizationKind::SplitC, 4 * l), vec![conj(p0_type_d(l)), conj(p1_type_d(l))], exp))
}

fn bc21(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Bc21, CartanType::B, l, 2)?;
    let n = 2 * l + 1;
    let j: Vec<Triplet> = (1..=n).map(|i| (i, n + 1 - i, CycNum::one())).collect();
    let exp = vec![GradeClaim::new(vec![0, 0], vec![adjoint_b(l)]), GradeClaim::new(vec![1, 0], vec![2 * l * l + 3 * l])];
    let mut e = entry("BC^(2,1)", l, fam, realization(RealizationKind::Sl, n), vec![SigmaSpec::TwistedTranspose { matrix: j }, SigmaSpec::Identity], exp);
    e.notes.push("sigma_0 is X -> -J X^T J with J the antidiagonal unit matrix".into());
    Ok(e)
}

fn bc22_one(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Bc22One, CartanType::B, l, 2)?;
    let n = 4 * l + 2;
    let antidiag: Vec<Triplet> = (1..=n).map(|i| (i, n + 1 - i, alt(i))).collect();
    let blocks = diag(&signs(&[(1, 2 * l + 1), (-1, 2 * l + 1)]));
    let exp = claims(&[2, 2], |g| {
        Some(match g {
            [1, 0] => GradeClaim::new(g.to_vec(), vec![2 * l * l + 3 * l, 1]),
            _ => GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]),
        })
    });
    let mut e = entry("BC^(2,2)(1)", l, fam, realization(RealizationKind::SoAntisymmetric, n), vec![conj(blocks), conj(antidiag)], exp);
    e.notes.push("the block-diagonal sign matrix is sigma_0 and the antidiagonal one sigma_1".into());
    Ok(e)
}

fn bc22_two(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Bc22Two, CartanType::B, l, 2)?;
    let s1 = diag(&signs(&[(1, 2 * l + 1), (-1, 1)]));
    let exp = claims(&[2, 2], |g| {
        Some(match g {
            [0, 0] => GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]),
            [1, 0] => GradeClaim::new(g.to_vec(), vec![2 * l * l + 3 * l]).noted("stated without a trivial summand; the dimension count needs one"),
            _ => GradeClaim::new(g.to_vec(), vec![2 * l + 1]),
        })
    });
    let base = BaseSpec::Realization { realization: RealizationKind::Sl, n: 2 * l + 2, cartan: CartanChoice::Block };
    Ok(entry("BC^(2,2)(2)", l, fam, base, vec![SigmaSpec::CartanInvolution, conj(s1)], exp))
}

fn bc24(l: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::Bc24, CartanType::B, l, 2)?;
    let n = 4 * l + 4;
    let h = 2 * l + 2;
    let one = CycNum::one();
    let i = imaginary_unit()?;
    let mut p0 = vec![(h, n, one.clone()), (n, h, -&one)];
    let mut p1 = vec![(h, n, i.clone()), (n, h, i)];
    for j in 1..=2 * l + 1 {
        p0.push((n - j, j, alt(j)));
        p0.push((h - j, h + j, -&alt(j)));
        p1.push((j, j, one.clone()));
        p1.push((h + j, h + j, -&one));
    }
    let exp = claims(&[2, 4], |g| {
        Some(match g {
            [0, 0] | [0, 2] => GradeClaim::new(g.to_vec(), vec![adjoint_b(l)]),
            [1, 0] => GradeClaim::new(g.to_vec(), vec![2 * l * l + 3 * l, 1]),
            [1, 2] => GradeClaim::new(g.to_vec(), vec![adjoint_b(l), 1]),
            _ => GradeClaim::new(g.to_vec(), vec![2 * l + 1]),
        })
    });
    let mut e = entry("BC^(2,4)", l, fam, realization(RealizationKind::SplitD, n), vec![conj(p0), conj(p1)], exp);
    e.notes.push("the i-entries of sigma_1 sit at (2l+2, 4l+4) and (4l+4, 2l+2)".into());
    Ok(e)
}

/// The `B` family in `nvars = big_n + 1` variables with `sigma_k = Ad J_k` for `k <= m`.
pub fn ht_b(l: usize, m: usize, big_n: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::HtB { m }, CartanType::B, l, big_n + 1)?;
    let sigmas = (0..=big_n).map(|k| if k <= m { conj(j_matrix(l, m, k)) } else { SigmaSpec::Identity }).collect();
    let orders: Vec<u32> = (0..=big_n).map(|k| if k <= m { 2 } else { 1 }).collect();
    let trivial = (1usize << m) - 1;
    let exp = claims(&orders, |g| {
        Some(if g.iter().all(|x| *x == 0) {
            GradeClaim::new(g.to_vec(), vec![adjoint_b(l)])
        } else {
            GradeClaim::new(g.to_vec(), [vec![2 * l + 1], vec![1; trivial]].concat())
        })
    });
    let base = realization(RealizationKind::SoAntisymmetric, 2 * l + (2 << m));
    Ok(entry(&format!("HT-B[m={m},N={big_n}]"), l, fam, base, sigmas, exp))
}

/// The `BC` family: `sigma_0 = -X^T`, `sigma_k = Ad J_{k-1}` for `1 <= k <= m+1`.
pub fn ht_bc(l: usize, m: usize, big_n: usize) -> Result<CatalogEntry> {
    let fam = family(FamilyTag::HtBc { m }, CartanType::B, l, big_n + 1)?;
    let sigmas = (0..=big_n)
        .map(|k| match k {
            0 => SigmaSpec::CartanInvolution,
            k if k <= m + 1 => conj(j_matrix(l, m, k - 1)),
            _ => SigmaSpec::Identity,
        })
        .collect();
    let orders: Vec<u32> = (0..=big_n).map(|k| if k <= m + 1 { 2 } else { 1 }).collect();
    let trivial = (1usize << m) - 1;
    let exp = claims(&orders, |g| {
        Some(if g.iter().all(|x| *x == 0) {
            GradeClaim::new(g.to_vec(), vec![adjoint_b(l)])
        } else if g[0] == 1 && g[1..].iter().all(|x| *x == 0) {
            GradeClaim::new(g.to_vec(), [vec![2 * l * l + 3 * l], vec![1; trivial]].concat())
                .noted("stated with 2^m - 1 trivial summands; the dimension count needs 2^(m+1) - 1")
        } else {
            GradeClaim::new(g.to_vec(), [vec![2 * l + 1], vec![1; trivial]].concat())
        })
    });
    let base = BaseSpec::Realization { realization: RealizationKind::Sl, n: 2 * l + (2 << m), cartan: CartanChoice::Block };
    Ok(entry(&format!("HT-BC[m={m},N={big_n}]"), l, fam, base, sigmas, exp))
}

/// `(m, N)` pairs of the two families that the catalog instantiates.
pub const HT_B_PARAMS: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 1), (1, 2)];
pub const HT_BC_PARAMS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Recipe names with the ranks at which each is defined.
pub fn recipes() -> Vec<(String, Vec<usize>)> {
    let r = |s: &str, ranks: &[usize]| (s.to_string(), ranks.to_vec());
    let mut out = vec![
        r("A^(1,1)", &[1, 2, 3]),
        r("B^(1,1)", &[2, 3]),
        r("C^(1,1)", &[2, 3]),
        r("G^(1,1)", &[2]),
        r("F^(1,1)", &[4]),
        r("B^(1,2)", &[2, 3]),
        r("C^(1,2)", &[2, 3]),
        r("F^(1,2)", &[4]),
        r("G^(1,3)", &[2]),
        r("B^(2,1)", &[2, 3]),
        r("C^(2,1)", &[2, 3]),
        r("F^(2,1)", &[4]),
        r("G^(3,1)", &[2]),
        r("B^(2,2)", &[1, 2, 3]),
        r("C^(2,2)", &[2, 3]),
        r("F^(2,2)", &[4]),
        r("G^(3,3)", &[2]),
        r("A1^(1,1)*", &[1]),
        r("B^(2,2)*", &[2, 3]),
        r("C^(1,1)*", &[2, 3]),
        r("BC^(2,1)", &[1, 2, 3]),
        r("BC^(2,2)(1)", &[1, 2, 3]),
        r("BC^(2,2)(2)", &[1, 2, 3]),
        r("BC^(2,4)", &[1, 2, 3]),
    ];
    for (m, n) in HT_B_PARAMS {
        out.push(r(&format!("HT-B[m={m},N={n}]"), &[1, 2, 3]));
    }
    for (m, n) in HT_BC_PARAMS {
        out.push(r(&format!("HT-BC[m={m},N={n}]"), &[1, 2, 3]));
    }
    out
}

fn parse_ht(recipe: &str, prefix: &str) -> Option<(usize, usize)> {
    let inner = recipe.strip_prefix(prefix)?.strip_prefix("[m=")?.strip_suffix(']')?;
    let (m, n) = inner.split_once(",N=")?;
    Some((m.parse().ok()?, n.parse().ok()?))
}

/// The entry for a recipe at a rank.
pub fn catalog_entry(recipe: &str, rank: usize) -> Result<CatalogEntry> {
    let ranks = recipes().into_iter().find(|(r, _)| r == recipe).map(|(_, ranks)| ranks).ok_or_else(|| Error::UnknownEntry(recipe.into()))?;
    if !ranks.contains(&rank) {
        return Err(Error::RankOutOfRange { entry: recipe.into(), rank });
    }
    use CartanType::*;
    let e = match recipe {
        "A^(1,1)" => untwisted(A, rank)?,
        "B^(1,1)" => untwisted(B, rank)?,
        "C^(1,1)" => untwisted(C, rank)?,
        "G^(1,1)" => untwisted(G, rank)?,
        "F^(1,1)" => untwisted(F, rank)?,
        "B^(1,2)" => diagram_entry(B, rank)?,
        "C^(1,2)" => diagram_entry(C, rank)?,
        "F^(1,2)" => diagram_entry(F, rank)?,
        "G^(1,3)" => diagram_entry(G, rank)?,
        "B^(2,1)" => swap_entry(&diagram_entry(B, rank)?)?,
        "C^(2,1)" => swap_entry(&diagram_entry(C, rank)?)?,
        "F^(2,1)" => swap_entry(&diagram_entry(F, rank)?)?,
        "G^(3,1)" => swap_entry(&diagram_entry(G, rank)?)?,
        "B^(2,2)" => b22(rank)?,
        "C^(2,2)" => c22(rank)?,
        "F^(2,2)" => f22()?,
        "G^(3,3)" => g33()?,
        "A1^(1,1)*" | "B^(2,2)*" => b_star(rank)?,
        "C^(1,1)*" => c_star(rank)?,
        "BC^(2,1)" => bc21(rank)?,
        "BC^(2,2)(1)" => bc22_one(rank)?,
        "BC^(2,2)(2)" => bc22_two(rank)?,
        "BC^(2,4)" => bc24(rank)?,
        r => {
            if let Some((m, n)) = parse_ht(r, "HT-BC") {
                ht_bc(rank, m, n)?
            } else if let Some((m, n)) = parse_ht(r, "HT-B") {
                ht_b(rank, m, n)?
            } else {
                return Err(Error::UnknownEntry(r.into()));
            }
        }
    };
    e.validate()?;
    Ok(e)
}

/// One entry per recipe and rank in `ranks`; recipes of fixed rank (`G2`,
/// `F4`) are included whenever `ranks` is non-empty.
pub fn catalog_entries(ranks: &[usize]) -> Result<Vec<CatalogEntry>> {
    if ranks.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (recipe, valid) in recipes() {
        let fixed_rank = recipe.starts_with('G') || recipe.starts_with('F');
        for r in valid {
            if fixed_rank || ranks.contains(&r) {
                out.push(catalog_entry(&recipe, r)?);
            }
        }
    }
    Ok(out)
}

/// Looks an entry up by full name (`B2^(2,2)`) or by recipe and rank.
pub fn find_entry(name: &str, rank: Option<usize>) -> Result<CatalogEntry> {
    if let Some(r) = rank {
        if let Ok(e) = catalog_entry(name, r) {
            return Ok(e);
        }
    }
    for (recipe, valid) in recipes() {
        for r in valid {
            if rank.is_some_and(|x| x != r) {
                continue;
            }
            let e = catalog_entry(&recipe, r)?;
            if e.name == name || (recipe == name && rank.is_none()) {
                return Ok(e);
            }
        }
    }
    Err(Error::UnknownEntry(name.into()))
}
