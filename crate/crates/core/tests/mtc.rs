//! Axiom checks on the builtins and on deliberately broken data.

use qsys_core::mtc::{self, BraidSide, CategoryData, Family};
use qsys_core::{Error, C64};

fn assert_axioms(cat: &CategoryData) {
    let rep = mtc::verify_axioms(cat, 1e-9);
    for e in &rep.entries {
        assert!(e.pass, "{}: {} residual {:.3e}", cat.name(), e.name, e.residual);
    }
    assert!(rep.pass && rep.modular);
}

#[test]
fn small_builtins_satisfy_axioms() {
    for n in [2, 3, 4, 5, 6] {
        assert_axioms(&mtc::pointed_cyclic(n, mtc::default_pointed_parameter(n)).unwrap());
    }
    assert_axioms(&mtc::fibonacci().unwrap());
    assert_axioms(&mtc::ising().unwrap());
    for k in 1..=5 {
        assert_axioms(&mtc::su2(k).unwrap());
    }
}

#[test]
fn products_and_reversal_satisfy_axioms() {
    let fib = mtc::fibonacci().unwrap();
    let ising = mtc::ising().unwrap();
    assert_axioms(&mtc::reverse_braiding(&ising));
    let prod = mtc::deligne_product(&fib, &mtc::reverse_braiding(&fib));
    assert_axioms(&prod);
    assert_eq!(prod.rank(), 4);
    assert!((prod.dim_total() - fib.dim_total().powi(2)).abs() < 1e-9);
    let (a, b) = prod.factors().unwrap();
    assert!(a.same_data(&fib, 0.0));
    assert!(b.same_data(&mtc::reverse_braiding(&fib), 0.0));
}

#[test]
fn reversal_conjugates_twists_and_central_charge() {
    let cat = mtc::su2(3).unwrap();
    let rev = mtc::reverse_braiding(&cat);
    for (a, b) in cat.modular_data().omega.iter().zip(&rev.modular_data().omega) {
        assert!((a.conj() - b).norm() < 1e-12);
    }
    let c = cat.modular_data().c_mod8 + rev.modular_data().c_mod8;
    assert!(c.abs() < 1e-9 || (c - 8.0).abs() < 1e-9);
}

#[test]
fn product_labels_are_row_major() {
    let z2 = mtc::pointed_cyclic(2, 1).unwrap();
    let z3 = mtc::pointed_cyclic(3, 2).unwrap();
    let p = mtc::deligne_product(&z2, &z3);
    for a in 0..2 {
        for b in 0..3 {
            let l = mtc::pair_label(3, a, b);
            assert_eq!(l, a * 3 + b);
            let want = z2.modular_data().omega[a] * z3.modular_data().omega[b];
            assert!((p.modular_data().omega[l] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn broken_associator_fails_pentagon() {
    let cat = mtc::su2(4).unwrap();
    // Flip the sign of a single non-trivial 6j symbol.
    let mut done = false;
    let bad = cat
        .map_f(|key, _, _, v| {
            if !done && key == [2, 2, 2, 2] && v.norm() > 1e-3 && v.norm() < 0.999 {
                done = true;
                -v
            } else {
                v
            }
        })
        .unwrap();
    assert!(done);
    let rep = mtc::verify_axioms(&bad, 1e-9);
    assert!(rep.get("pentagon").unwrap().residual > 1e-3);
    assert!(!rep.pass);
}

#[test]
fn hexagon_sides_both_hold() {
    let cat = mtc::ising().unwrap();
    assert!(mtc::hexagon_residual(&cat, BraidSide::Plus) < 1e-10);
    assert!(mtc::hexagon_residual(&cat, BraidSide::Minus) < 1e-10);
}

#[test]
fn export_round_trip() {
    for cat in [mtc::ising().unwrap(), mtc::su2(3).unwrap(), mtc::pointed_cyclic(4, 3).unwrap()] {
        let f: Vec<([usize; 10], C64)> = cat.f_entries();
        let r: Vec<([usize; 5], C64)> = cat.r_entries();
        let back = CategoryData::from_entries(cat.name(), cat.ring().clone(), &f, &r).unwrap();
        assert!(back.same_data(&cat, 1e-14));
        assert_axioms(&back);
    }
}

#[test]
fn refusals() {
    assert!(matches!(mtc::pointed_cyclic(4, 2), Err(Error::DegenerateForm)));
    assert!(matches!(mtc::pointed_cyclic(3, 1), Err(Error::InvalidData(_))));
    assert!(matches!(mtc::su2(mtc::MAX_SU2_LEVEL + 1), Err(Error::UnsupportedLevel(_))));
    // A degenerate form still gives a braided category, just not a modular one.
    let deg = mtc::pointed_cyclic_unchecked(4, 2).unwrap();
    let rep = mtc::verify_axioms(&deg, 1e-9);
    assert!(rep.pass && !rep.modular);
}

#[test]
fn builtin_family_dispatch() {
    let a = mtc::builtin_category(&Family::Pointed(vec![(2, 1), (3, 2)])).unwrap();
    assert_eq!(a.rank(), 6);
    assert_axioms(&a);
    assert_eq!(mtc::builtin_category(&Family::Trivial).unwrap().rank(), 1);
}
