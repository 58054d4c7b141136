use std::collections::BTreeMap;

use toroidal_core::autgroup::{joint_decomposition, GradedDecomposition};
use toroidal_core::catalog::{analyze_entry, build_entry, catalog_entry, entry_support, run_entry, BaseSpec, CatalogEntry, GradeClaim, RunOptions, SigmaSpec, Status};
use toroidal_core::constructions::{CartanType, ChevalleyAlgebra};
use toroidal_core::ears::{ears_compare, EarsFamily, FamilyTag};
use toroidal_core::exactfield::CycNum;
use toroidal_core::toroidal::{verify_closure, TwistConfig};
use toroidal_core::Error;

fn quick() -> RunOptions {
    RunOptions { window: 2, samples: 40, ..RunOptions::default() }
}

#[test]
fn corrupted_structure_constant_fails_certification() {
    let b2 = ChevalleyAlgebra::new(CartanType::B, 2).unwrap();
    let g = b2.algebra();
    assert!(g.certify().is_ok());
    let (e1, f1, h1) = (b2.e(0), b2.f(0), b2.h(0));
    let bad = g.with_corrupted_constant(e1, f1, h1, CycNum::from_int(3));
    assert!(matches!(bad.certify(), Err(Error::JacobiViolation { .. })));
    assert!(!bad.verify_jacobi().is_empty());
}

fn a2_entry(sigmas: Vec<SigmaSpec>) -> CatalogEntry {
    CatalogEntry {
        name: "A2 control".into(),
        recipe: "A2 control".into(),
        rank: 2,
        family: EarsFamily::new(FamilyTag::X11, CartanType::A, 2, 2).unwrap(),
        base: BaseSpec::Chevalley { cartan_type: CartanType::A, rank: 2 },
        sigmas,
        expected: vec![GradeClaim::new(vec![0, 0], vec![8])],
        notes: Vec::new(),
    }
}

#[test]
fn non_commuting_automorphisms_are_rejected() {
    let torus = SigmaSpec::Torus { scalars: vec![CycNum::from_int(-1), CycNum::one()] };
    let e = a2_entry(vec![SigmaSpec::Diagram { perm: vec![2, 1] }, torus]);
    let built = build_entry(&e).unwrap();
    assert!(!built.sigmas[0].commutes(&built.sigmas[1]));
    let err = joint_decomposition(built.base.algebra(), &built.sigmas).unwrap_err();
    assert!(matches!(err, Error::NonCommuting { first: 0, second: 1 }));

    let rep = run_entry(&e, &quick());
    assert_eq!(rep.check("commuting").unwrap().status, Status::Fail);
    assert_eq!(rep.check("ears").unwrap().status, Status::Skipped);
    assert_eq!(rep.verdict(), Status::Fail);
}

#[test]
fn wrong_family_is_reported() {
    let mut e = catalog_entry("B^(2,2)", 2).unwrap();
    let a = analyze_entry(&e).unwrap();
    let support = entry_support(&a, 2).unwrap();
    assert!(ears_compare(&support, &e.family).unwrap().is_empty());

    let wrong = EarsFamily::new(FamilyTag::X1t, CartanType::B, 2, 2).unwrap();
    let diff = ears_compare(&support, &wrong).unwrap();
    assert!(!diff.is_empty());

    e.family = wrong;
    let rep = run_entry(&e, &quick());
    assert_eq!(rep.check("ears").unwrap().status, Status::Fail);
    assert!(!rep.support_diff.is_empty());
    assert_eq!(rep.check("tier").unwrap().status, Status::Fail);
}

#[test]
fn mislabeled_grading_breaks_closure() {
    let a = analyze_entry(&catalog_entry("B^(2,2)", 2).unwrap()).unwrap();
    let d = &a.decomposition;
    let mut comps: BTreeMap<Vec<u32>, _> = d.components.clone();
    // Relabelings by group automorphisms are still gradings; moving g_0 is not.
    let (x, y) = (comps.remove(&vec![0, 0]).unwrap(), comps.remove(&vec![0, 1]).unwrap());
    comps.insert(vec![0, 0], y);
    comps.insert(vec![0, 1], x);
    let bad = GradedDecomposition::from_components_unchecked(d.algebra().clone(), d.orders.clone(), comps);
    assert!(matches!(bad.verify(), Err(Error::NotGraded(_))));
    let report = verify_closure(&TwistConfig::new(bad).unwrap(), 100, 3, 7).unwrap();
    assert!(!report.passed());
}

#[test]
fn misstated_dimensions_fail_the_audit() {
    let mut e = catalog_entry("C^(1,2)", 2).unwrap();
    let (p, q) = (e.expected[0].clone(), e.expected[1].clone());
    e.expected[0].dim = q.dim;
    e.expected[0].modules = q.modules;
    e.expected[1].dim = p.dim;
    e.expected[1].modules = p.modules;
    let rep = run_entry(&e, &quick());
    if p.dim != q.dim {
        assert_eq!(rep.check("dims").unwrap().status, Status::Fail);
    }
    assert_eq!(rep.check("modules").unwrap().status, Status::Fail);
}

#[test]
fn unknown_entries_and_ranks_are_errors() {
    assert!(matches!(catalog_entry("Q^(1,1)", 2), Err(Error::UnknownEntry(_))));
    assert!(matches!(catalog_entry("G^(3,3)", 3), Err(Error::RankOutOfRange { .. })));
}
