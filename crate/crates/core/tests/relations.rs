mod common;

use klrel::classification::{orbit_partition, Family};
use klrel::group::{structure, CosetId, GroupElement};
use klrel::forms::lf;
use klrel::relations::*;
use std::collections::HashSet;

#[test]
fn structural_laws_hold_for_catalog() {
    for r in catalog() {
        assert!(structural_violations(r).is_empty(), "{:?}", structural_violations(r));
    }
}

#[test]
fn catalog_covers_every_orbit() {
    let p = orbit_partition(Family::T3);
    let orbits: HashSet<usize> = catalog().iter().map(|r| p.orbit_index(&r.three_set()).unwrap()).collect();
    assert_eq!(orbits.len(), 18);
}

#[test]
fn all_relations_hold_at_sampled_points() {
    for r in catalog() {
        let report = verify(r, 25, 7, DEFAULT_TOLERANCE).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

#[test]
fn transport_of_orbit1_lkk() {
    let rho = GroupElement::from_forms(&["a", "b", "e-c", "e-d", "e", "1+a+b-f", "1+a+b-g"].map(lf));
    assert!(structure().contains(&rho));
    let t = find("Orbit1_LKK").unwrap().transport(&rho);
    let mut cosets = t.cosets();
    cosets.sort();
    assert_eq!(cosets, [CosetId::p(0), CosetId::p(1), CosetId::l(6)]);
    let report = verify(&t, 10, 11, DEFAULT_TOLERANCE).unwrap();
    assert!(report.pass, "{report:?}");
}
