//! Integer points of the S,T commutant.

use nalgebra::DMatrix;
use qsys_core::classify::*;
use qsys_core::mtc;
use qsys_core::qsystem::{self, full_center, invariant_matrix};

fn count(cat: &mtc::CategoryData) -> usize {
    enumerate_invariants(cat.modular_data(), DEFAULT_MAX_ENTRY).unwrap().len()
}

#[test]
fn counts_for_small_categories() {
    assert_eq!(count(&mtc::fibonacci().unwrap()), 1);
    assert_eq!(count(&mtc::ising().unwrap()), 1);
    assert_eq!(count(&mtc::pointed_cyclic(3, 2).unwrap()), 2);
    assert_eq!(count(&mtc::pointed_cyclic(5, 2).unwrap()), 2);
    // ℤ₉: identity, charge conjugation and the {0,3,6} extension.
    assert_eq!(count(&mtc::pointed_cyclic(9, 2).unwrap()), 3);
}

#[test]
fn su2_counts_follow_ade() {
    for k in 1..=16u32 {
        let cat = mtc::su2(k).unwrap();
        // A for every k, D for even k > 2 (D3 = A3), E6 at 10 and E7 at 16.
        let want = match k {
            10 | 16 => 3,
            2 => 1,
            _ if k % 2 == 0 => 2,
            _ => 1,
        };
        assert_eq!(count(&cat), want, "su2({k})");
    }
}

#[test]
fn ade_names() {
    let rows = ade_report(&[4, 6, 10, 16]).unwrap();
    let names: Vec<Vec<String>> = rows.iter().map(|r| r.entries.iter().map(|e| e.name.clone()).collect()).collect();
    assert_eq!(names[0], ["A5", "D4"]);
    assert_eq!(names[1], ["A7", "D5"]);
    let mut ten = names[2].clone();
    ten.sort();
    assert_eq!(ten, ["A11", "D7", "E6"]);
    let mut sixteen = names[3].clone();
    sixteen.sort();
    assert_eq!(sixteen, ["A17", "D10", "E7"]);
    let d10 = rows[3].entries.iter().find(|e| e.name == "D10").unwrap();
    assert_eq!(d10.trace, 10);
    assert_eq!(d10.realized_by.as_deref(), Some("isotropic {0,16}"));
    let e6 = rows[2].entries.iter().find(|e| e.name == "E6").unwrap();
    assert_eq!(e6.trace, 6);
    assert!(e6.realized_by.is_none());
    assert!(ade_report(&[17]).is_err());
}

#[test]
fn enumeration_is_canonical_and_valid() {
    let cat = mtc::su2(10).unwrap();
    let md = cat.modular_data();
    let a = enumerate_invariants(md, DEFAULT_MAX_ENTRY).unwrap();
    let b = enumerate_invariants(md, DEFAULT_MAX_ENTRY).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].z, DMatrix::identity(11, 11));
    for inv in &a {
        assert_eq!(inv.z[(0, 0)], 1);
        assert!(modular_residual(md, &inv.z) < 1e-9);
        assert!(inv.z.iter().all(|&v| v >= 0));
    }
}

#[test]
fn commutant_basis_is_rational() {
    let cat = mtc::su2(4).unwrap();
    let b = commutant_basis(cat.modular_data());
    assert_eq!(b.dim, b.basis.len());
    assert_eq!(b.pivots[0], (0, 0));
    for k in 0..b.dim {
        assert!(b.rational(k).iter().all(Option::is_some));
        for (j, &(p, q)) in b.pivots.iter().enumerate() {
            assert_eq!(b.basis[k][(p, q)], if j == k { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn full_center_invariants_are_enumerated() {
    let z3 = mtc::pointed_cyclic(3, 2).unwrap();
    let z9 = mtc::pointed_cyclic(9, 2).unwrap();
    let su4 = mtc::su2(4).unwrap();
    let cases = [
        (z3.clone(), qsystem::trivial_qsystem(&z3)),
        (z3.clone(), qsystem::permutation_qsystem(&z3, &qsystem::charge_conjugation(&z3)).unwrap()),
        (z9.clone(), qsystem::isotropic_subgroup_qsystem(&z9, &[0, 3, 6]).unwrap()),
        (su4.clone(), qsystem::isotropic_subgroup_qsystem(&su4, &[0, 4]).unwrap()),
    ];
    for (cat, q) in cases {
        let found = enumerate_invariants(cat.modular_data(), DEFAULT_MAX_ENTRY).unwrap();
        let z = invariant_matrix(&q).unwrap().z;
        assert!(found.iter().any(|inv| inv.z == z), "{}", cat.name());
        // The full center is commutative with dimension dim C.
        let fc = full_center(&q).unwrap();
        assert!((fc.dtheta() - cat.dim_total()).abs() < 1e-6);
    }
}
