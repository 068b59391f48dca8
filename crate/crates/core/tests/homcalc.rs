//! Properties of the morphism calculus on random morphisms.

use proptest::prelude::*;
use qsys_core::homcalc::{
    associator, braiding, compose, conjugate_solution, hom_dim, left_trace, tensor, tensor_obj, zigzag_residual,
    Morphism, Object,
};
use qsys_core::mtc::{self, BraidSide, CategoryData};
use qsys_core::{CMat, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn categories() -> Vec<CategoryData> {
    vec![mtc::fibonacci().unwrap(), mtc::ising().unwrap(), mtc::su2(3).unwrap(), mtc::pointed_cyclic(3, 2).unwrap()]
}

fn random_object(rng: &mut ChaCha8Rng, rank: usize) -> Object {
    loop {
        let m: Vec<u32> = (0..rank).map(|_| rng.random_range(0..3)).collect();
        if m.iter().any(|&v| v > 0) {
            return Object::from_mult(m);
        }
    }
}

fn random_morphism(rng: &mut ChaCha8Rng, src: &Object, dst: &Object) -> Morphism {
    let blocks = (0..src.rank())
        .map(|s| {
            CMat::from_fn(dst.mult(s), src.mult(s), |_, _| {
                C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            })
        })
        .collect();
    Morphism::from_blocks(src.clone(), dst.clone(), blocks).unwrap()
}

fn pick(seed: u64) -> (CategoryData, ChaCha8Rng) {
    let cats = categories();
    let cat = cats[(seed % cats.len() as u64) as usize].clone();
    (cat, ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interchange_law(seed in any::<u64>()) {
        let (cat, mut rng) = pick(seed);
        let r = cat.rank();
        let (a, b, c) = (random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r));
        let (x, y, z) = (random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r));
        let f1 = random_morphism(&mut rng, &a, &b);
        let f2 = random_morphism(&mut rng, &b, &c);
        let g1 = random_morphism(&mut rng, &x, &y);
        let g2 = random_morphism(&mut rng, &y, &z);
        let lhs = compose(&tensor(&cat, &f2, &g2), &tensor(&cat, &f1, &g1)).unwrap();
        let rhs = tensor(&cat, &compose(&f2, &f1).unwrap(), &compose(&g2, &g1).unwrap());
        prop_assert!(lhs.distance(&rhs) < 1e-10);
    }

    #[test]
    fn tensor_commutes_with_dagger(seed in any::<u64>()) {
        let (cat, mut rng) = pick(seed);
        let r = cat.rank();
        let (a, b, x, y) = (random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r));
        let f = random_morphism(&mut rng, &a, &b);
        let g = random_morphism(&mut rng, &x, &y);
        let lhs = tensor(&cat, &f, &g).adjoint();
        let rhs = tensor(&cat, &f.adjoint(), &g.adjoint());
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn braiding_is_natural_and_unitary(seed in any::<u64>(), plus in any::<bool>()) {
        let (cat, mut rng) = pick(seed);
        let side = if plus { BraidSide::Plus } else { BraidSide::Minus };
        let r = cat.rank();
        let (a, b, x, y) = (random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r), random_object(&mut rng, r));
        let f = random_morphism(&mut rng, &a, &b);
        let g = random_morphism(&mut rng, &x, &y);
        let lhs = &braiding(&cat, &b, &y, side) * &tensor(&cat, &f, &g);
        let rhs = &tensor(&cat, &g, &f) * &braiding(&cat, &a, &x, side);
        prop_assert!(lhs.distance(&rhs) < 1e-10);
        let e = braiding(&cat, &a, &x, side);
        prop_assert!((&e.adjoint() * &e).distance(&Morphism::identity(&tensor_obj(&cat, &a, &x))) < 1e-10);
        let other = braiding(&cat, &x, &a, side.opposite()).adjoint();
        prop_assert!(e.distance(&other) < 1e-10);
    }

    #[test]
    fn associator_is_natural(seed in any::<u64>()) {
        let (cat, mut rng) = pick(seed);
        let r = cat.rank();
        let objs: Vec<Object> = (0..6).map(|_| random_object(&mut rng, r)).collect();
        let f = random_morphism(&mut rng, &objs[0], &objs[1]);
        let g = random_morphism(&mut rng, &objs[2], &objs[3]);
        let h = random_morphism(&mut rng, &objs[4], &objs[5]);
        let lhs = &associator(&cat, &objs[1], &objs[3], &objs[5]) * &tensor(&cat, &tensor(&cat, &f, &g), &h);
        let rhs = &tensor(&cat, &f, &tensor(&cat, &g, &h)) * &associator(&cat, &objs[0], &objs[2], &objs[4]);
        prop_assert!(lhs.distance(&rhs) < 1e-10);
    }

    #[test]
    fn conjugate_solutions_zigzag(seed in any::<u64>()) {
        let (cat, mut rng) = pick(seed);
        let x = random_object(&mut rng, cat.rank());
        prop_assert!(zigzag_residual(&cat, &x) < 1e-10);
        let sol = conjugate_solution(&cat, &x);
        let norm = (&sol.r.adjoint() * &sol.r).scalar();
        prop_assert!((norm - C64::new(x.dim(&cat), 0.0)).norm() < 1e-10);
    }

    #[test]
    fn trace_of_identity_is_dimension(seed in any::<u64>()) {
        let (cat, mut rng) = pick(seed);
        let r = cat.rank();
        let (l, a) = (random_object(&mut rng, r), random_object(&mut rng, r));
        let id = Morphism::identity(&tensor_obj(&cat, &l, &a));
        let t = left_trace(&cat, &l, &a, &id);
        prop_assert!(t.distance(&Morphism::identity(&a).scale(C64::new(l.dim(&cat), 0.0))) < 1e-10);
    }
}

#[test]
fn hom_dimensions_count_multiplicities() {
    let cat = mtc::su2(2).unwrap();
    let half = Object::simple(3, 1);
    let xx = tensor_obj(&cat, &half, &half);
    assert_eq!(xx.mults(), &[1, 0, 1]);
    assert_eq!(hom_dim(&xx, &xx), 2);
    assert_eq!(hom_dim(&Object::unit(3), &xx), 1);
}
