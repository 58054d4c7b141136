//! Acceptance criteria, one line each. All comparisons are exact.
//!
//! A criterion that fails only on a documented discrepancy between a printed
//! claim and the computed value still prints `FAIL`, with the discrepancy
//! listed; the process exits non-zero only for undocumented failures.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use toroidal_core::catalog::{analyze_entry, catalog_entries, catalog_entry, run_all, run_entry, Analysis, CatalogEntry, Report, RunOptions, SigmaSpec, Status};
use toroidal_core::constructions::{CartanType, ChevalleyAlgebra};
use toroidal_core::ears::{EarsFamily, FamilyTag};
use toroidal_core::exactfield::{root_of_unity, CycNum, Rational, SparseVec};
use toroidal_core::liecore::LieAlgebra;
use toroidal_core::toroidal::{canonicalize_k, cocycle_audit, resolved_tau2};
use toroidal_core::Error;

/// Entries whose printed per-grade claim is known to disagree with the
/// computation, with the disagreement.
const DOCUMENTED: &[(&str, &str)] = &[("BC^(2,2)(2)", "grade (1,0) is printed as 2l^2+3l; the computed space is 2l^2+3l+1, one trivial summand more")];

const CASES: u32 = 128;

enum Outcome {
    Pass,
    Documented(String),
    Fail(String),
}

struct Line {
    id: u32,
    title: &'static str,
    outcome: Outcome,
    detail: String,
    elapsed: Duration,
}

impl Line {
    fn print(&self) {
        let (tag, extra) = match &self.outcome {
            Outcome::Pass => ("PASS", String::new()),
            Outcome::Documented(why) => ("FAIL", format!(" [documented: {why}]")),
            Outcome::Fail(why) => ("FAIL", format!(" [{why}]")),
        };
        println!("{tag} {}. {}: {}{} ({:.1} s)", self.id, self.title, self.detail, extra, self.elapsed.as_secs_f64());
    }
}

fn within(limit: Duration, elapsed: Duration, failures: &mut Vec<String>) {
    if elapsed > limit {
        failures.push(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
    }
}

fn outcome(failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(failures.join("; "))
    }
}

fn status(r: &Report, check: &str) -> Status {
    r.check(check).map_or(Status::Skipped, |c| c.status)
}

fn module_dims(r: &Report, grade: &str) -> Vec<usize> {
    r.modules.get(grade).map(|m| m.iter().map(|s| s.1).collect()).unwrap_or_default()
}

fn criterion_g2() -> Line {
    let t = Instant::now();
    let r = run_entry(&catalog_entry("G^(3,3)", 2).unwrap(), &RunOptions::default());
    let elapsed = t.elapsed();
    let mut f = Vec::new();
    if r.dims.get("(0,0)") != Some(&14) || status(&r, "fixed_type") != Status::Pass {
        f.push(format!("g_0 is {:?}", r.check("fixed_type").map(|c| &c.details)));
    }
    let others: Vec<_> = r.dims.iter().filter(|(g, _)| *g != "(0,0)").collect();
    let eights = others.iter().filter(|(g, d)| **d == 8 && module_dims(&r, g) == [7, 1]).count();
    if others.len() != 8 || eights != 8 {
        f.push(format!("non-zero grades {:?}", others));
    }
    let total: usize = r.dims.values().sum();
    if total != 78 {
        f.push(format!("total {total}"));
    }
    within(Duration::from_secs(60), elapsed, &mut f);
    let detail = format!("g_0 = G2 (14), {eights} grades of 8 = 7 + 1, total {total}, verdict {}", r.verdict());
    Line { id: 1, title: "E6 with G2 fixed", outcome: outcome(f), detail, elapsed }
}

fn criterion_f4() -> Line {
    let t = Instant::now();
    let r = run_entry(&catalog_entry("F^(2,2)", 4).unwrap(), &RunOptions::default());
    let elapsed = t.elapsed();
    let mut f = Vec::new();
    let dims: Vec<usize> = r.dims.values().copied().collect();
    if dims != [52, 27, 27, 27] || status(&r, "fixed_type") != Status::Pass {
        f.push(format!("dims {dims:?}"));
    }
    for g in ["(0,1)", "(1,0)", "(1,1)"] {
        if module_dims(&r, g) != [26, 1] {
            f.push(format!("{g} is {:?}", module_dims(&r, g)));
        }
    }
    within(Duration::from_secs(180), elapsed, &mut f);
    let detail = format!("dims {dims:?}, each 27 = 26 + 1, total {}, verdict {}", dims.iter().sum::<usize>(), r.verdict());
    Line { id: 2, title: "E7 with F4 fixed", outcome: outcome(f), detail, elapsed }
}

fn is_ht(e: &CatalogEntry) -> bool {
    matches!(e.family.tag, FamilyTag::HtB { .. } | FamilyTag::HtBc { .. })
}

fn criterion_audit(runs: &[(CatalogEntry, Report)], elapsed: Duration) -> Line {
    let mut f = Vec::new();
    let mut documented = Vec::new();
    let mut count = 0;
    for (e, r) in runs.iter().filter(|(e, _)| !is_ht(e)) {
        count += 1;
        let total: usize = r.dims.values().sum();
        let dims = status(r, "dims");
        let orth = status(r, "orthogonality");
        if total != e.base.dim() || orth != Status::Pass {
            f.push(format!("{}: total {total}, orthogonality {orth}", e.name));
        } else if dims != Status::Pass {
            match DOCUMENTED.iter().find(|(recipe, _)| *recipe == e.recipe) {
                Some(_) if dims == Status::Flagged => documented.push(e.name.clone()),
                _ => f.push(format!("{}: {}", e.name, r.check("dims").map_or("", |c| &c.details))),
            }
        }
    }
    let bc24 = runs.iter().find(|(e, _)| e.name == "BC2^(2,4)").map(|(_, r)| r.dims.values().map(ToString::to_string).collect::<Vec<_>>().join("+"));
    let detail = format!("{count} entries, {} match the printed grades, BC2^(2,4) = {}", count - f.len() - documented.len(), bc24.unwrap_or_default());
    let outcome = match (f.is_empty(), documented.is_empty()) {
        (true, true) => Outcome::Pass,
        (true, false) => Outcome::Documented(format!("{}: {}", documented.join(", "), DOCUMENTED[0].1)),
        _ => Outcome::Fail(f.join("; ")),
    };
    Line { id: 3, title: "dimension audit and orthogonality", outcome, detail, elapsed }
}

fn in_ears_scope(e: &CatalogEntry) -> bool {
    match e.family.tag {
        FamilyTag::HtB { m } | FamilyTag::HtBc { m } => e.rank <= 2 && m <= 1 && e.family.nvars <= 3,
        _ => true,
    }
}

fn criterion_ears(runs: &[(CatalogEntry, Report)], elapsed: Duration) -> Line {
    let mut f = Vec::new();
    let mut points = 0;
    let scoped: Vec<_> = runs.iter().filter(|(e, _)| in_ears_scope(e)).collect();
    for (e, r) in &scoped {
        if status(r, "ears") != Status::Pass {
            f.push(format!("{}: {}", e.name, r.check("ears").map_or("", |c| &c.details)));
        }
        points += r.check("ears").and_then(|c| c.details.split_whitespace().next()?.parse::<usize>().ok()).unwrap_or(0);
    }
    within(Duration::from_secs(600), elapsed, &mut f);
    let detail = format!("{} entries on [-4,4]^(N+1), {points} support points, empty symmetric difference", scoped.len());
    Line { id: 4, title: "EARS windowed equality", outcome: outcome(f), detail, elapsed }
}

fn criterion_jacobi(runs: &[(CatalogEntry, Report)], opts: &RunOptions, elapsed: Duration) -> Line {
    let mut f = Vec::new();
    for (e, r) in runs {
        for c in r.checks.iter().filter(|c| c.name == "closure" || c.name.starts_with("jacobi(")) {
            if c.status != Status::Pass {
                f.push(format!("{} {}: {}", e.name, c.name, c.details));
            }
        }
    }
    let detail = format!("{} entries, {} triples per cocycle for {} cocycles, {} closure pairs", runs.len(), opts.samples, opts.cocycles.len(), opts.samples);
    Line { id: 5, title: "toroidal Jacobi and closure", outcome: outcome(f), detail, elapsed }
}

fn criterion_cocycle() -> Line {
    let t = Instant::now();
    let mut f = Vec::new();
    let mut parts = Vec::new();
    for nvars in [2, 3] {
        match cocycle_audit(nvars, 2) {
            Ok(v) => {
                if v.tau1_violations != 0 || v.zero_violations != 0 {
                    f.push(format!("N={}: tau_1 {} violations", nvars - 1, v.tau1_violations));
                }
                let passing = [v.tau2_mzero_violations, v.tau2_mp_violations].iter().filter(|x| **x == 0).count();
                if passing != 1 {
                    f.push(format!("N={}: {passing} readings of tau_2 pass", nvars - 1));
                }
                if resolved_tau2().ok() != Some(v.resolved) {
                    f.push("default reading differs".into());
                }
                parts.push(format!(
                    "N={}: {} pairs and {} triples, tau_1 0, m_0 reading {}, m_p reading {}, default {:?}",
                    nvars - 1,
                    v.pairs,
                    v.triples,
                    v.tau2_mzero_violations,
                    v.tau2_mp_violations,
                    v.resolved
                ));
            }
            Err(e) => f.push(e.to_string()),
        }
    }
    Line { id: 6, title: "cocycle audit on {-2..2}", outcome: outcome(f), detail: parts.join("; "), elapsed: t.elapsed() }
}

fn criterion_tiers(runs: &[(CatalogEntry, Report)], elapsed: Duration) -> Line {
    let mut f = Vec::new();
    let mut differ = Vec::new();
    for (e, r) in runs {
        if status(r, "tier") != Status::Pass {
            f.push(format!("{}: {}", e.name, r.check("tier").map_or("", |c| &c.details)));
        }
        if matches!(e.family.tag, FamilyTag::A1Star | FamilyTag::CStar) {
            differ.push(e.name.clone());
        }
    }
    let detail = format!("{} entries, orders equal tiers except {}", runs.len(), differ.join(", "));
    Line { id: 7, title: "tier numbers", outcome: outcome(f), detail, elapsed }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((rational(), 0i64..12), 0..4).prop_map(|t| t.into_iter().fold(CycNum::zero(), |acc, (c, k)| acc + root_of_unity(12, k).unwrap().scale(&c)))
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..dim, -3i64..=3), 1..5).prop_map(|t| t.into_iter().fold(SparseVec::zero(), |acc, (i, c)| acc.add_scaled(&SparseVec::unit(i), &CycNum::from_int(c))))
}

fn criterion_properties() -> Line {
    let t = Instant::now();
    let algebras: Vec<Arc<LieAlgebra>> = [(CartanType::B, 2), (CartanType::C, 3), (CartanType::G, 2), (CartanType::D, 4)]
        .into_iter()
        .map(|(k, r)| ChevalleyAlgebra::new(k, r).unwrap().algebra().clone())
        .collect();
    let graded: Vec<Analysis> = [("B^(2,2)", 2), ("BC^(2,4)", 1), ("G^(1,3)", 2)].iter().map(|(r, l)| analyze_entry(&catalog_entry(r, *l).unwrap()).unwrap()).collect();
    let alg = || (0..algebras.len()).prop_flat_map(|i| (Just(i), prop::collection::vec(element(algebras[i].dim()), 3)));
    let mut results = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
        results.push((name.to_string(), f(&mut runner)));
    };
    run("field axioms", &mut |r| {
        r.run(&(cyc(), cyc(), cyc()), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    });
    run("Killing invariance", &mut |r| {
        r.run(&alg(), |(i, v)| {
            let g = &algebras[i];
            prop_assert_eq!(g.killing(&g.bracket(&v[0], &v[1]), &v[2]), g.killing(&v[0], &g.bracket(&v[1], &v[2])));
            Ok(())
        })
        .map_err(|e| e.to_string())
    });
    run("Jacobi certification", &mut |r| {
        r.run(&alg(), |(i, v)| {
            let g = &algebras[i];
            prop_assert!(g.certify().is_ok());
            let s = g.bracket(&g.bracket(&v[0], &v[1]), &v[2]).add(&g.bracket(&g.bracket(&v[1], &v[2]), &v[0])).add(&g.bracket(&g.bracket(&v[2], &v[0]), &v[1]));
            prop_assert!(s.is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
    });
    run("grading additivity", &mut |r| {
        r.run(&(0..graded.len(), any::<u64>()), |(i, s)| {
            let d = &graded[i].decomposition;
            let grades = d.grades();
            let k = &grades[(s % grades.len() as u64) as usize];
            let l = &grades[((s >> 20) % grades.len() as u64) as usize];
            let (bk, bl) = (d.component(k), d.component(l));
            let x = &bk.basis()[((s >> 40) % bk.dim() as u64) as usize];
            let y = &bl.basis()[((s >> 52) % bl.dim() as u64) as usize];
            prop_assert!(d.component(&d.add(k, l)).contains(&d.algebra().bracket(x, y)));
            Ok(())
        })
        .map_err(|e| e.to_string())
    });
    run("canonicalize_k idempotence", &mut |r| {
        r.run(&(prop::collection::vec(-3i64..=3, 3), prop::collection::vec(-5i64..=5, 3)), |(m, a)| {
            let a: Vec<CycNum> = a.into_iter().map(CycNum::from_int).collect();
            let c = canonicalize_k(&a, &m);
            prop_assert_eq!(canonicalize_k(&c, &m), c);
            Ok(())
        })
        .map_err(|e| e.to_string())
    });
    let f: Vec<String> = results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    let names: Vec<&str> = results.iter().map(|(n, _)| n.as_str()).collect();
    let detail = format!("{} suites of {CASES} cases: {}", results.len(), names.join(", "));
    Line { id: 8, title: "property suites", outcome: outcome(f), detail, elapsed: t.elapsed() }
}

fn criterion_negative() -> Line {
    let t = Instant::now();
    let mut f = Vec::new();
    let quick = RunOptions { window: 2, samples: 20, ..RunOptions::default() };

    let b2 = ChevalleyAlgebra::new(CartanType::B, 2).unwrap();
    let bad = b2.algebra().with_corrupted_constant(b2.e(0), b2.f(0), b2.h(0), CycNum::from_int(3));
    let corrupted = match bad.certify() {
        Err(e @ Error::JacobiViolation { .. }) => e.to_string(),
        other => {
            f.push(format!("corrupted constant gave {other:?}"));
            String::new()
        }
    };

    let mut e = catalog_entry("A^(1,1)", 2).unwrap();
    e.sigmas = vec![SigmaSpec::Diagram { perm: vec![2, 1] }, SigmaSpec::Torus { scalars: vec![CycNum::from_int(-1), CycNum::one()] }];
    let r = run_entry(&e, &quick);
    if status(&r, "commuting") != Status::Fail {
        f.push("non-commuting pair was not rejected".into());
    }

    let mut e = catalog_entry("B^(2,2)", 2).unwrap();
    e.family = EarsFamily::new(FamilyTag::X1t, CartanType::B, 2, 2).unwrap();
    let r = run_entry(&e, &quick);
    if status(&r, "ears") != Status::Fail {
        f.push("wrong family was not rejected".into());
    }
    let detail = format!("{corrupted}; commuting check fails; ears check fails with {} differing points", r.support_diff.len());
    Line { id: 9, title: "negative controls", outcome: outcome(f), detail, elapsed: t.elapsed() }
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut lines = vec![criterion_g2(), criterion_f4()];
    for l in &lines {
        l.print();
    }

    let opts = RunOptions::default();
    let entries = catalog_entries(&[1, 2, 3]).unwrap();
    let t = Instant::now();
    let reports = run_all(&entries, &opts);
    let elapsed = t.elapsed();
    let runs: Vec<(CatalogEntry, Report)> = entries.into_iter().zip(reports).collect();
    for l in [criterion_audit(&runs, elapsed), criterion_ears(&runs, elapsed), criterion_jacobi(&runs, &opts, elapsed)] {
        l.print();
        lines.push(l);
    }
    for l in [criterion_cocycle(), criterion_tiers(&runs, elapsed), criterion_properties(), criterion_negative()] {
        l.print();
        lines.push(l);
    }

    let passed = lines.iter().filter(|l| matches!(l.outcome, Outcome::Pass)).count();
    let documented = lines.iter().filter(|l| matches!(l.outcome, Outcome::Documented(_))).count();
    let failed = lines.len() - passed - documented;
    println!("acceptance: {passed} passed, {documented} failed on documented discrepancies, {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
