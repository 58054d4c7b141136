use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;

use super::build::{build_entry, Built};
use super::report::{grade_key, DiffPoint, DiffSide, Report, Status};
use super::spec::CatalogEntry;
use crate::autgroup::{joint_decomposition, GradedDecomposition};
use crate::constructions::canonical_type;
use crate::decompanalysis::{dimension_audit, fixed_algebra_analysis, module_decomposition, verify_orthogonality, FixedAlgebra, ModuleReport};
use crate::ears::{axiom_spotcheck, compute_support, ears_compare, FamilyTag, Support};
use crate::error::Result;
use crate::exactfield::CycNum;
use crate::toroidal::{verify_closure, verify_jacobi_toroidal, TwistConfig};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Half-width of the exponent box for the root support.
    pub window: i64,
    /// Random pairs for closure and random triples per cocycle for Jacobi.
    pub samples: usize,
    /// Half-width of the exponent box for random elements.
    pub sample_window: i64,
    /// `(mu, nu)` pairs for the Jacobi check.
    pub cocycles: Vec<(CycNum, CycNum)>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        let c = |m, n| (CycNum::from_int(m), CycNum::from_int(n));
        RunOptions { window: 4, samples: 200, sample_window: 4, cocycles: vec![c(0, 0), c(1, 0), c(0, 1), c(2, 3)], seed: 0 }
    }
}

/// An entry built, decomposed, and analysed over its fixed algebra.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub built: Built,
    pub decomposition: GradedDecomposition,
    pub fixed: FixedAlgebra,
    /// Every non-zero grade as a module over the fixed algebra.
    pub modules: BTreeMap<Vec<u32>, ModuleReport>,
}

pub fn analyze_entry(e: &CatalogEntry) -> Result<Analysis> {
    let built = build_entry(e)?;
    let decomposition = joint_decomposition(built.base.algebra(), &built.sigmas)?;
    let fixed = fixed_algebra_analysis(built.base.split(), &decomposition)?;
    let modules = decomposition
        .components
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| Ok((k.clone(), module_decomposition(built.base.split(), &decomposition, k, &fixed)?)))
        .collect::<Result<_>>()?;
    Ok(Analysis { built, decomposition, fixed, modules })
}

/// The root support of an analysed entry on `[-window, window]^nvars`.
pub fn entry_support(a: &Analysis, window: i64) -> Result<Support> {
    compute_support(a.built.base.split(), &a.decomposition, &a.fixed, window)
}

fn timed<T>(report: &mut Report, stage: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    *report.timings_ms.entry(stage.into()).or_default() += t.elapsed().as_millis() as u64;
    out
}

fn skip(report: &mut Report, names: &[&str]) {
    for n in names {
        report.push(n, Status::Skipped, "an earlier stage failed");
    }
}

fn jacobi_name(mu: &CycNum, nu: &CycNum) -> String {
    format!("jacobi({mu},{nu})")
}

/// Builds, decomposes and verifies one entry; every stage is recorded, and
/// stages that depend on a failed one are marked skipped.
pub fn run_entry(e: &CatalogEntry, opts: &RunOptions) -> Report {
    let mut rep = Report::new(&e.name, &e.family.to_string(), e.rank);
    rep.notes = e.notes.clone();
    rep.notes.extend(e.expected.iter().filter_map(|c| c.note.as_ref().map(|n| format!("grade {}: {n}", grade_key(&c.grade)))));
    let jac: Vec<String> = opts.cocycles.iter().map(|(m, n)| jacobi_name(m, n)).collect();
    let late: Vec<&str> = ["fixed_type", "modules", "closure"].into_iter().chain(jac.iter().map(String::as_str)).chain(["ears", "length_classes", "axioms"]).collect();

    let built = match timed(&mut rep, "build", || build_entry(e)) {
        Ok(b) => {
            rep.push("build", Status::Pass, format!("{} of dimension {}", b.base.algebra().name(), b.base.algebra().dim()));
            b
        }
        Err(err) => {
            rep.push("build", Status::Fail, err.to_string());
            skip(&mut rep, &["tier", "commuting", "grading", "dims", "orthogonality"]);
            skip(&mut rep, &late);
            return rep;
        }
    };

    let orders: Vec<u32> = built.sigmas.iter().map(|s| s.order()).collect();
    let tiers = e.family.tiers();
    let exception = matches!(e.family.tag, FamilyTag::A1Star | FamilyTag::CStar);
    let (status, what) = match (orders == tiers, exception) {
        (true, false) => (Status::Pass, "equal"),
        (false, true) => (Status::Pass, "differ, as stated for this family"),
        (true, true) => (Status::Fail, "equal, but are stated to differ"),
        (false, false) => (Status::Fail, "differ"),
    };
    rep.push("tier", status, format!("orders {orders:?} and tiers {tiers:?} {what}"));

    let mut bad_pairs = Vec::new();
    for i in 0..built.sigmas.len() {
        for j in i + 1..built.sigmas.len() {
            if !built.sigmas[i].commutes(&built.sigmas[j]) {
                bad_pairs.push((i, j));
            }
        }
    }
    if bad_pairs.is_empty() {
        rep.push("commuting", Status::Pass, "all pairs commute");
    } else {
        rep.push("commuting", Status::Fail, format!("non-commuting pairs {bad_pairs:?}"));
    }

    let d = match timed(&mut rep, "decompose", || joint_decomposition(built.base.algebra(), &built.sigmas).and_then(|d| d.verify().map(|_| d))) {
        Ok(d) => {
            rep.push("grading", Status::Pass, format!("{} grades", d.components.len()));
            d
        }
        Err(err) => {
            rep.push("grading", Status::Fail, err.to_string());
            skip(&mut rep, &["dims", "orthogonality"]);
            skip(&mut rep, &late);
            return rep;
        }
    };
    for (k, n) in d.dims() {
        if n > 0 {
            rep.dims.insert(grade_key(&k), n);
        }
    }

    let expected: BTreeMap<Vec<u32>, usize> = e.expected.iter().map(|c| (c.grade.clone(), c.dim)).collect();
    let noted: BTreeSet<Vec<u32>> = e.expected.iter().filter(|c| c.note.is_some()).map(|c| c.grade.clone()).collect();
    let diffs = dimension_audit(&d, &expected);
    let total: usize = d.dims().values().sum();
    let sum_ok = total == built.base.algebra().dim();
    let describe = |diffs: &[crate::decompanalysis::DimDiff]| {
        diffs.iter().map(|x| format!("{} expected {} got {}", grade_key(&x.grade), x.expected, x.computed)).collect::<Vec<_>>().join("; ")
    };
    let status = if !sum_ok || diffs.iter().any(|x| !noted.contains(&x.grade)) {
        Status::Fail
    } else if diffs.is_empty() {
        Status::Pass
    } else {
        Status::Flagged
    };
    let detail = if diffs.is_empty() { format!("all grades match, total {total}") } else { format!("{}; total {total}", describe(&diffs)) };
    rep.push("dims", status, detail);

    let viol = timed(&mut rep, "orthogonality", || verify_orthogonality(&d, built.base.algebra().killing_form()));
    if viol.is_empty() {
        rep.push("orthogonality", Status::Pass, "no violations");
    } else {
        rep.push("orthogonality", Status::Fail, format!("{} non-orthogonal pairs, first {:?}", viol.len(), viol[0]));
    }

    let split = built.base.split();
    let fixed = match timed(&mut rep, "fixed", || fixed_algebra_analysis(split, &d)) {
        Ok(f) => f,
        Err(err) => {
            rep.push("fixed_type", Status::Fail, err.to_string());
            skip(&mut rep, &late[1..]);
            return rep;
        }
    };
    let want = vec![canonical_type(e.family.kind, e.family.rank)];
    let got = fixed.classification.types();
    let label = |t: &[(crate::constructions::CartanType, usize)]| t.iter().map(|(k, r)| format!("{k}{r}")).collect::<Vec<_>>().join("+");
    if got == want && fixed.classification.center_dim == 0 {
        rep.push("fixed_type", Status::Pass, format!("g_0 is {}", label(&got)));
    } else {
        rep.push("fixed_type", Status::Fail, format!("g_0 is {} with centre of dimension {}, expected {}", label(&got), fixed.classification.center_dim, label(&want)));
    }

    let modules = timed(&mut rep, "modules", || {
        d.components
            .par_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| (k.clone(), module_decomposition(split, &d, k, &fixed)))
            .collect::<Vec<_>>()
    });
    let mut mod_fail = Vec::new();
    let mut mod_flag = Vec::new();
    for (k, m) in modules {
        match m {
            Ok(m) => {
                let claim = e.expected.iter().find(|c| c.grade == k);
                let dims = m.dims();
                rep.modules.insert(grade_key(&k), m.summands.iter().map(|s| (s.highest_weight.clone(), s.dim)).collect());
                match claim {
                    Some(c) if c.modules == dims => {}
                    Some(c) if c.note.is_some() => mod_flag.push(format!("{} expected {:?} got {dims:?}", grade_key(&k), c.modules)),
                    Some(c) => mod_fail.push(format!("{} expected {:?} got {dims:?}", grade_key(&k), c.modules)),
                    None => mod_fail.push(format!("{} unexpected {dims:?}", grade_key(&k))),
                }
            }
            Err(err) => mod_fail.push(format!("{}: {err}", grade_key(&k))),
        }
    }
    if !mod_fail.is_empty() {
        rep.push("modules", Status::Fail, [mod_fail, mod_flag].concat().join("; "));
    } else if !mod_flag.is_empty() {
        rep.push("modules", Status::Flagged, mod_flag.join("; "));
    } else {
        rep.push("modules", Status::Pass, "all grades match");
    }

    match timed(&mut rep, "toroidal", || TwistConfig::new(d.clone())) {
        Ok(cfg) => {
            let closure = timed(&mut rep, "toroidal", || verify_closure(&cfg, opts.samples, opts.sample_window, opts.seed));
            match closure {
                Ok(r) if r.passed() => rep.push("closure", Status::Pass, format!("{} pairs", r.samples)),
                Ok(r) => rep.push("closure", Status::Fail, format!("{} of {} pairs leave the algebra: {}", r.failures, r.samples, r.examples.join("; "))),
                Err(err) => rep.push("closure", Status::Fail, err.to_string()),
            }
            for ((mu, nu), name) in opts.cocycles.iter().zip(&jac) {
                let c = cfg.clone().with_cocycle(mu.clone(), nu.clone());
                match timed(&mut rep, "toroidal", || verify_jacobi_toroidal(&c, opts.samples, opts.sample_window, opts.seed)) {
                    Ok(r) if r.passed() => rep.push(name, Status::Pass, format!("{} triples", r.samples)),
                    Ok(r) => rep.push(name, Status::Fail, format!("{} of {} triples: {}", r.failures, r.samples, r.examples.join("; "))),
                    Err(err) => rep.push(name, Status::Fail, err.to_string()),
                }
            }
        }
        Err(err) => {
            rep.push("closure", Status::Fail, err.to_string());
            skip(&mut rep, &jac.iter().map(String::as_str).collect::<Vec<_>>());
        }
    }

    let support = match timed(&mut rep, "ears", || compute_support(split, &d, &fixed, opts.window)) {
        Ok(s) => s,
        Err(err) => {
            rep.push("ears", Status::Fail, err.to_string());
            skip(&mut rep, &["length_classes", "axioms"]);
            return rep;
        }
    };
    match timed(&mut rep, "ears", || ears_compare(&support, &e.family)) {
        Ok(diff) if diff.is_empty() => rep.push("ears", Status::Pass, format!("{} points on [-{w},{w}]^{}, {} isotropic", diff.computed, support.nvars, support.isotropic.len(), w = opts.window)),
        Ok(diff) => {
            rep.push("ears", Status::Fail, format!("{} missing, {} extra against {}", diff.missing.len(), diff.extra.len(), diff.family));
            let missing = diff.missing.into_iter().map(|p| DiffPoint { side: DiffSide::Missing, point: p });
            let extra = diff.extra.into_iter().map(|p| DiffPoint { side: DiffSide::Extra, point: p });
            rep.support_diff = missing.chain(extra).take(100).collect();
        }
        Err(err) => rep.push("ears", Status::Fail, err.to_string()),
    }
    let classes = support.classes();
    let want: BTreeSet<u32> = e.family.classes().into_iter().collect();
    if classes == want {
        rep.push("length_classes", Status::Pass, format!("{classes:?}"));
    } else {
        rep.push("length_classes", Status::Fail, format!("{classes:?}, expected {want:?}"));
    }
    let ax = timed(&mut rep, "axioms", || axiom_spotcheck(&support));
    let detail = format!(
        "{} reflections, {} non-integral, {} reflection failures, {} doubled, lattice rank {}/{}, {} component(s)",
        ax.reflections_checked, ax.non_integral_pairs, ax.reflection_failures, ax.doubled_roots, ax.lattice_rank, ax.expected_rank, ax.components
    );
    rep.push("axioms", if ax.passed() { Status::Pass } else { Status::Fail }, detail);
    rep
}

/// Runs entries concurrently, returning reports in input order.
pub fn run_all(entries: &[CatalogEntry], opts: &RunOptions) -> Vec<Report> {
    entries.par_iter().map(|e| run_entry(e, opts)).collect()
}
