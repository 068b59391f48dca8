//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use qsys_core::classify::{enumerate_invariants, modular_residual, DEFAULT_MAX_ENTRY};
use qsys_core::mtc::{self, CategoryData};
use qsys_core::qsystem::*;
use qsys_core::{Error, C64};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn z(n: u32) -> CategoryData {
    mtc::pointed_cyclic(n, mtc::default_pointed_parameter(n)).unwrap()
}

fn identity_map(cat: &CategoryData) -> Vec<usize> {
    (0..cat.rank()).collect()
}

/// Irreducible Q-systems used by several criteria.
fn corpus() -> Vec<(String, QSystem)> {
    let fib = mtc::fibonacci().unwrap();
    let (z3, z5, z9) = (z(3), z(5), z(9));
    vec![
        ("trivial in Fibonacci".into(), trivial_qsystem(&fib)),
        ("trivial in Z3".into(), trivial_qsystem(&z3)),
        ("LR of Fibonacci".into(), lr_qsystem(&fib, &fib, &[0, 1]).unwrap()),
        ("Z9 isotropic {0,3,6}".into(), isotropic_subgroup_qsystem(&z9, &[0, 3, 6]).unwrap()),
        ("Z3 permutation C".into(), permutation_qsystem(&z3, &charge_conjugation(&z3)).unwrap()),
        ("Z5 permutation C".into(), permutation_qsystem(&z5, &charge_conjugation(&z5)).unwrap()),
    ]
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let mut cats: Vec<CategoryData> = [2, 3, 4, 5, 9].into_iter().map(z).collect();
    cats.push(mtc::ising().unwrap());
    cats.push(mtc::fibonacci().unwrap());
    for k in [1, 2, 3, 4, 10, 16] {
        cats.push(mtc::su2(k).unwrap());
    }
    let mut worst = 0.0f64;
    for cat in &cats {
        let rep = mtc::verify_axioms(cat, 1e-9);
        for e in &rep.entries {
            ensure(e.pass, || format!("{}: {} residual {:.3e}", cat.name(), e.name, e.residual))?;
            if e.residual.is_finite() {
                worst = worst.max(e.residual);
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} categories, max residual {worst:.2e}, {:.1}s", cats.len(), t.as_secs_f64()))
}

fn full_center_of_trivial() -> Outcome {
    let cfg = SolverConfig::default();
    let cats = [mtc::fibonacci().unwrap(), mtc::ising().unwrap(), z(3), mtc::su2(4).unwrap()];
    let mut worst = 0.0f64;
    for cat in &cats {
        let zc = full_center(&trivial_qsystem(cat)).map_err(err)?;
        let lr = lr_qsystem(cat, cat, &identity_map(cat)).map_err(err)?;
        match equivalent_qsystems(&zc, &lr, &cfg).map_err(err)? {
            Equivalence::Yes { residual, .. } => {
                ensure(residual < 1e-9, || format!("{}: witness residual {residual:.3e}", cat.name()))?;
                worst = worst.max(residual);
            }
            other => return Err(format!("{}: solver says {}", cat.name(), other.verdict())),
        }
        let inv = invariant_matrix(&trivial_qsystem(cat)).map_err(err)?;
        ensure(inv.z == DMatrix::identity(cat.rank(), cat.rank()), || format!("{}: Z = {}", cat.name(), inv.z))?;
    }
    Ok(format!("Z(id) = LR in 4 categories, witness residual ≤ {worst:.2e}"))
}

fn z3_permutation() -> Outcome {
    let cat = z(3);
    let q = permutation_qsystem(&cat, &charge_conjugation(&cat)).map_err(err)?;
    ensure(q.theta().mults() == [1, 1, 1], || format!("θ = {:?}", q.theta().mults()))?;
    let inv = invariant_matrix(&q).map_err(err)?;
    let c = DMatrix::from_row_slice(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0]);
    ensure(inv.z == c, || format!("Z = {}", inv.z))?;
    Ok(format!("θ = 0⊕1⊕2, Z = C (rounding {:.1e})", inv.rounding))
}

fn modular_invariance() -> Outcome {
    for (name, q) in corpus() {
        let cat = q.category();
        let inv = invariant_matrix(&q).map_err(err)?;
        let res = modular_residual(cat.modular_data(), &inv.z);
        ensure(res < 1e-6, || format!("{name}: [Z,S],[Z,T] residual {res:.3e}"))?;
        ensure(inv.z[(0, 0)] == 1, || format!("{name}: Z00 = {}", inv.z[(0, 0)]))?;
        let fc = full_center(&q).map_err(err)?;
        let gap = (fc.dtheta() - cat.dim_total()).abs();
        ensure(gap < 1e-6, || format!("{name}: dθ(Z) = {} vs dim {}", fc.dtheta(), cat.dim_total()))?;
    }
    Ok("6 Q-systems: Z commutes with S and T, Z00 = 1, dθ(Z) = dim".into())
}

fn dimension_bound() -> Outcome {
    let mut n = 0;
    for (name, q) in corpus() {
        if !(q.is_commutative(1e-9) && q.is_irreducible()) {
            continue;
        }
        n += 1;
        let bound = q.category().dim_total().sqrt();
        ensure(q.dtheta() <= bound + 1e-6, || format!("{name}: dθ = {} > {bound}", q.dtheta()))?;
        if name.starts_with("Z9") {
            ensure((q.dtheta() - bound).abs() < 1e-6, || format!("{name}: dθ = {} ≠ {bound}", q.dtheta()))?;
        }
    }
    ensure(n >= 3, || format!("only {n} commutative Q-systems in the corpus"))?;
    Ok(format!("{n} commutative irreducible Q-systems, equality for Z9 {{0,3,6}}"))
}

fn adjunction() -> Outcome {
    let cfg = SolverConfig::default();
    let fib = mtc::fibonacci().unwrap();
    let z3 = z(3);
    let cases = [
        ("trivial in Fibonacci", trivial_qsystem(&fib)),
        ("trivial in Z3", trivial_qsystem(&z3)),
        ("Z3 permutation C", permutation_qsystem(&z3, &charge_conjugation(&z3)).map_err(err)?),
    ];
    for (name, q) in &cases {
        let cat = q.category();
        let r = cat.rank();
        let zc = full_center(q).map_err(err)?;
        let t = functor_t(&zc).map_err(err)?;
        let inv = invariant_matrix(q).map_err(err)?;
        // ⊕ Z_{λμ} λ⊗μ̄
        let mut want = vec![0u32; r];
        for l in 0..r {
            for m in 0..r {
                let k = inv.z[(l, m)] as u32;
                for &(c, n) in cat.ring().channels(l, cat.ring().dual(m)) {
                    want[c] += k * n;
                }
            }
        }
        ensure(t.theta().mults() == want.as_slice(), || format!("{name}: T(Z) = {:?}, want {want:?}", t.theta().mults()))?;
        if cat.dims().iter().all(|d| (d - 1.0).abs() < 1e-12) {
            let copies = vec![q.clone(); inv.trace() as usize];
            let sum = direct_sum(&copies).map_err(err)?;
            let eq = equivalent_qsystems(&t, &sum, &cfg).map_err(err)?;
            ensure(eq.is_yes(), || format!("{name}: T(Z) vs {} copies: {}", copies.len(), eq.verdict()))?;
        }
    }
    Ok("T(Z(q)) = ⊕ Z λ⊗μ̄ for 3 Q-systems; pointed cases ≃ tr Z copies of q".into())
}

fn morita() -> Outcome {
    let cfg = SolverConfig::default();
    let cat = z(3);
    let triv = trivial_qsystem(&cat);
    let perm = permutation_qsystem(&cat, &charge_conjugation(&cat)).map_err(err)?;
    let rep = morita_equivalent(&triv, &perm, &cfg).map_err(err)?;
    ensure(rep.verdict == MoritaVerdict::No, || format!("trivial vs permutation: {:?}", rep.verdict))?;
    for (name, q) in corpus() {
        let rep = morita_equivalent(&q, &q, &cfg).map_err(err)?;
        ensure(rep.verdict == MoritaVerdict::Yes, || format!("{name} vs itself: {:?}", rep.verdict))?;
    }
    Ok("trivial ≁ permutation in Z3; every corpus member Morita equivalent to itself".into())
}

fn counts() -> Outcome {
    let mut cases: Vec<(String, CategoryData, usize)> = vec![
        ("Fibonacci".into(), mtc::fibonacci().unwrap(), 1),
        ("Ising".into(), mtc::ising().unwrap(), 1),
        ("Z3".into(), z(3), 2),
        ("su2(4)".into(), mtc::su2(4).unwrap(), 2),
        ("su2(10)".into(), mtc::su2(10).unwrap(), 3),
        ("su2(16)".into(), mtc::su2(16).unwrap(), 3),
    ];
    for k in [1, 3, 5, 7, 9] {
        cases.push((format!("su2({k})"), mtc::su2(k).unwrap(), 1));
    }
    let mut slowest = Duration::ZERO;
    for (name, cat, want) in &cases {
        let start = Instant::now();
        let a = enumerate_invariants(cat.modular_data(), DEFAULT_MAX_ENTRY).map_err(err)?;
        let t = start.elapsed();
        slowest = slowest.max(t);
        ensure(t < Duration::from_secs(60), || format!("{name}: took {t:?}"))?;
        ensure(a.len() == *want, || format!("{name}: {} invariants, want {want}", a.len()))?;
        let b = enumerate_invariants(cat.modular_data(), DEFAULT_MAX_ENTRY).map_err(err)?;
        ensure(a == b, || format!("{name}: output differs between runs"))?;
    }
    Ok(format!("{} categories, slowest {:.2}s", cases.len(), slowest.as_secs_f64()))
}

fn negative_controls() -> Outcome {
    let mut weakest = f64::INFINITY;
    for (name, q) in corpus() {
        ensure(verify(&q, 1e-9).verified, || format!("{name}: does not verify"))?;
        let bad = q.with_x(q.x().scale(C64::new(1.01, 0.0))).map_err(err)?;
        let worst = verify(&bad, 1e-9).max_residual();
        ensure(worst > 1e-6, || format!("{name}: perturbed residual only {worst:.3e}"))?;
        weakest = weakest.min(worst);
    }
    let z5 = z(5);
    match lr_qsystem(&z5, &z5, &[0, 2, 4, 1, 3]) {
        Err(Error::NotAnEquivalence(_)) => {}
        other => return Err(format!("non-braided bijection accepted: {:?}", other.map(|q| q.dtheta()))),
    }
    Ok(format!("perturbed residual ≥ {weakest:.2e}; Z5 map a ↦ 2a rejected"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axioms of the builtin categories", axioms),
        ("full center of the trivial Q-system", full_center_of_trivial),
        ("Z3 permutation Q-system realizes Z = C", z3_permutation),
        ("full centers give modular invariants", modular_invariance),
        ("dθ ≤ √dim for commutative Q-systems", dimension_bound),
        ("functor T on full centers", adjunction),
        ("Morita discrimination", morita),
        ("enumeration counts", counts),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
