//! Q-system constructions, centers, the functor T and equivalence testing.

use nalgebra::DMatrix;
use proptest::prelude::*;
use qsys_core::classify::modular_residual;
use qsys_core::homcalc::{tensor, Morphism, Object};
use qsys_core::mtc::{self, BraidSide, CategoryData};
use qsys_core::qsystem::*;
use qsys_core::{CMat, Error, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_verified(q: &QSystem) {
    let rep = verify(q, 1e-9);
    for e in &rep.entries {
        assert!(e.pass, "{}: {} residual {:.3e}", q.category().name(), e.name, e.residual);
    }
    assert!(rep.verified);
}

fn z3() -> CategoryData {
    mtc::pointed_cyclic(3, 2).unwrap()
}

fn fast() -> SolverConfig {
    SolverConfig { restarts: 20, ..SolverConfig::default() }
}

#[test]
fn trivial_qsystem_is_the_unit() {
    let q = trivial_qsystem(&mtc::fibonacci().unwrap());
    assert_verified(&q);
    assert!(q.is_irreducible() && q.is_commutative(1e-9));
    assert!((q.dtheta() - 1.0).abs() < 1e-12);
    assert_eq!(invariant_matrix(&q).unwrap().z, DMatrix::identity(2, 2));
}

#[test]
fn longo_rehren_is_commutative() {
    for cat in [mtc::fibonacci().unwrap(), mtc::ising().unwrap(), z3(), mtc::su2(2).unwrap()] {
        let id: Vec<usize> = (0..cat.rank()).collect();
        let q = lr_qsystem(&cat, &cat, &id).unwrap();
        assert_verified(&q);
        assert!(q.is_irreducible());
        assert!(q.is_commutative(1e-9));
        assert!((q.dtheta() - cat.dim_total()).abs() < 1e-9);
        // θ = ⊕ ρ⊠ρ̄.
        let r = cat.rank();
        for a in 0..r {
            for b in 0..r {
                assert_eq!(q.theta().mult(mtc::pair_label(r, a, b)), usize::from(b == cat.ring().dual(a)));
            }
        }
    }
}

#[test]
fn permutation_qsystem_realizes_charge_conjugation() {
    let cat = z3();
    let q = permutation_qsystem(&cat, &charge_conjugation(&cat)).unwrap();
    assert_verified(&q);
    assert_eq!(q.theta().mults(), &[1, 1, 1]);
    let z = invariant_matrix(&q).unwrap().z;
    assert_eq!(z, DMatrix::from_row_slice(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0]));
    assert!(modular_residual(cat.modular_data(), &z) < 1e-9);
}

#[test]
fn isotropic_subgroups() {
    let z9 = mtc::pointed_cyclic(9, 2).unwrap();
    let q = isotropic_subgroup_qsystem(&z9, &[0, 3, 6]).unwrap();
    assert_verified(&q);
    assert!(q.is_commutative(1e-9));
    assert!((q.dtheta() - 3.0).abs() < 1e-12);
    // H^⊥ = H, so Z is the all-ones block on {0,3,6}.
    let z = invariant_matrix(&q).unwrap().z;
    for a in 0..9 {
        for b in 0..9 {
            let want = i64::from(a % 3 == 0 && b % 3 == 0);
            assert_eq!(z[(a, b)], want, "Z[{a},{b}]");
        }
    }
    assert!(matches!(isotropic_subgroup_qsystem(&z9, &[0, 1, 2, 3, 4, 5, 6, 7, 8]), Err(Error::NotIsotropic(_))));
    assert!(matches!(isotropic_subgroup_qsystem(&z9, &[0, 3]), Err(Error::InvalidData(_))));
}

#[test]
fn su2_simple_current_extension() {
    let cat = mtc::su2(4).unwrap();
    let q = isotropic_subgroup_qsystem(&cat, &[0, 4]).unwrap();
    assert_verified(&q);
    let z = invariant_matrix(&q).unwrap().z;
    // D4: |χ0+χ4|² + 2|χ2|².
    let want = DMatrix::from_row_slice(5, 5, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]);
    assert_eq!(z, want);
    assert_eq!(boundary_count(&q).unwrap(), 4);
    // At level 2 the current has twist -1.
    assert!(matches!(isotropic_subgroup_qsystem(&mtc::su2(2).unwrap(), &[0, 2]), Err(Error::NotIsotropic(_))));
}

#[test]
fn centers_of_commutative_qsystems_are_everything() {
    let cat = mtc::su2(4).unwrap();
    let q = isotropic_subgroup_qsystem(&cat, &[0, 4]).unwrap();
    let unit = Object::unit(cat.rank());
    for side in [CenterSide::Left, CenterSide::Right] {
        let p = center_projector(&q, &unit, side);
        assert!(p.distance(&Morphism::identity(q.theta())) < 1e-9);
    }
    let l = left_center(&q).unwrap();
    assert_eq!(l.theta(), q.theta());
}

#[test]
fn center_projector_is_an_orthogonal_projection() {
    let cat = z3();
    let id: Vec<usize> = (0..3).collect();
    let lr = lr_qsystem(&cat, &cat, &id).unwrap();
    let prod = lr.category().clone();
    let lifted = lift_to_product(&permutation_qsystem(&cat, &charge_conjugation(&cat)).unwrap(), &prod).unwrap();
    let q = product_qsystem(&lifted, &lr, BraidSide::Plus).unwrap();
    assert_verified(&q);
    let p = center_projector(&q, &Object::unit(prod.rank()), CenterSide::Left);
    assert!((&(&p * &p) - &p).max_abs() < 1e-9);
    assert!((&p.adjoint() - &p).max_abs() < 1e-9);
    let c = left_center(&q).unwrap();
    assert_verified(&c);
    assert!(c.is_commutative(1e-9));
}

#[test]
fn full_center_of_trivial_is_longo_rehren() {
    for cat in [mtc::fibonacci().unwrap(), z3()] {
        let id: Vec<usize> = (0..cat.rank()).collect();
        let z = full_center(&trivial_qsystem(&cat)).unwrap();
        assert_verified(&z);
        assert!(z.is_commutative(1e-9));
        let lr = lr_qsystem(&cat, &cat, &id).unwrap();
        let eq = equivalent_qsystems(&z, &lr, &fast()).unwrap();
        match eq {
            Equivalence::Yes { residual, .. } => assert!(residual < 1e-9),
            other => panic!("{}: {other:?}", cat.name()),
        }
    }
}

#[test]
fn functor_t_decomposes_by_the_invariant() {
    let cat = z3();
    let perm = permutation_qsystem(&cat, &charge_conjugation(&cat)).unwrap();
    let t = functor_t(&full_center(&perm).unwrap()).unwrap();
    assert_verified(&t);
    // ⊕ Z_{λμ} λ⊗μ̄ with Z = C gives 0 ⊕ 1⊗1 ⊕ 2⊗2 = 0 ⊕ 2 ⊕ 1.
    assert_eq!(t.theta().mults(), &[1, 1, 1]);
    assert!(equivalent_qsystems(&t, &perm, &fast()).unwrap().is_yes());
}

#[test]
fn product_and_direct_sum() {
    let cat = mtc::ising().unwrap();
    let triv = trivial_qsystem(&cat);
    let s = direct_sum(&[triv.clone(), triv.clone()]).unwrap();
    assert_verified(&s);
    assert!(!s.is_irreducible());
    assert!((s.dtheta() - 2.0).abs() < 1e-12);
    let p = product_qsystem(&triv, &triv, BraidSide::Minus).unwrap();
    assert_verified(&p);
    assert_eq!(p.theta(), triv.theta());
}

#[test]
fn commutative_irreducible_bound() {
    let z9 = mtc::pointed_cyclic(9, 2).unwrap();
    let q = isotropic_subgroup_qsystem(&z9, &[0, 3, 6]).unwrap();
    assert!((q.dtheta() - z9.dim_total().sqrt()).abs() < 1e-9);
    let fib = mtc::fibonacci().unwrap();
    let lr = lr_qsystem(&fib, &fib, &[0, 1]).unwrap();
    assert!(lr.dtheta() <= lr.category().dim_total().sqrt() + 1e-6);
}

#[test]
fn refusals() {
    let cat = z3();
    assert!(matches!(permutation_qsystem(&cat, &[0, 1, 2]), Err(Error::HasFixedPoint(_))));
    let z5 = mtc::pointed_cyclic(5, 2).unwrap();
    assert!(matches!(lr_qsystem(&z5, &z5, &[0, 2, 4, 1, 3]), Err(Error::NotAnEquivalence(_))));
    assert!(matches!(lr_qsystem(&z5, &z5, &[0, 1, 2]), Err(Error::NotAnEquivalence(_))));
    assert!(matches!(functor_t(&trivial_qsystem(&cat)), Err(Error::NotAProduct)));
    let fib = mtc::fibonacci().unwrap();
    assert!(matches!(
        equivalent_qsystems(&trivial_qsystem(&fib), &trivial_qsystem(&cat), &fast()),
        Err(Error::CategoryMismatch)
    ));
    let two = direct_sum(&[trivial_qsystem(&cat), trivial_qsystem(&cat)]).unwrap();
    assert!(matches!(morita_equivalent(&two, &two, &fast()), Err(Error::NotIrreducible)));
}

#[test]
fn perturbation_is_detected() {
    let cat = z3();
    let q = permutation_qsystem(&cat, &charge_conjugation(&cat)).unwrap();
    let bad = q.with_x(q.x().scale(C64::new(1.01, 0.0))).unwrap();
    let rep = verify(&bad, 1e-9);
    assert!(!rep.verified);
    assert!(rep.max_residual() > 1e-6);
}

#[test]
fn morita_classes() {
    let cat = z3();
    let triv = trivial_qsystem(&cat);
    let perm = permutation_qsystem(&cat, &charge_conjugation(&cat)).unwrap();
    assert_eq!(morita_equivalent(&triv, &perm, &fast()).unwrap().verdict, MoritaVerdict::No);
    assert_eq!(morita_equivalent(&perm, &perm, &fast()).unwrap().verdict, MoritaVerdict::Yes);
    assert_eq!(morita_equivalent(&triv, &triv, &fast()).unwrap().verdict, MoritaVerdict::Yes);
}

/// `(u⊗u)∘x∘u*` and `u∘w` for a unitary `u` on θ.
fn conjugate(q: &QSystem, u: &Morphism) -> QSystem {
    let cat = q.category();
    let x = &(&tensor(cat, u, u) * q.x()) * &u.adjoint();
    let w = u * q.w();
    QSystem::new(cat.clone(), q.theta().clone(), w, x).unwrap()
}

fn random_unitary(rng: &mut ChaCha8Rng, obj: &Object) -> Morphism {
    let blocks = (0..obj.rank())
        .map(|s| {
            let n = obj.mult(s);
            let m = CMat::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            if n == 0 {
                m
            } else {
                m.qr().q()
            }
        })
        .collect();
    Morphism::from_blocks(obj.clone(), obj.clone(), blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn solver_recovers_random_gauge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = mtc::fibonacci().unwrap();
        let triv = trivial_qsystem(&cat);
        // θ = 2·1 ⊕ τ, with a genuine U(2) gauge freedom on the unit block.
        let fib_lr = lr_qsystem(&cat, &cat, &[0, 1]).unwrap();
        let t = functor_t(&full_center(&triv).unwrap()).unwrap();
        for q in [t, fib_lr] {
            let u = random_unitary(&mut rng, q.theta());
            let q2 = conjugate(&q, &u);
            prop_assert!(verify(&q2, 1e-9).verified);
            let eq = equivalent_qsystems(&q, &q2, &SolverConfig::default()).unwrap();
            prop_assert!(eq.is_yes(), "{:?}", eq.verdict());
            if let Equivalence::Yes { witness, .. } = eq {
                prop_assert!(intertwiner_residual(&q, &q2, &witness) < 1e-9);
            }
        }
    }
}
