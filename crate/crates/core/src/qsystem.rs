//! Q-systems `(θ, w, x)` and the constructions built from them.
//!
//! `w ∈ Hom(1, θ)` and `x ∈ Hom(θ, θ⊗θ)` are stored as isometries, so the
//! unit law reads `(w*⊗1)∘x = (1⊗w*)∘x = λ·1` with `λ = dθ^{-1/2}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::fusion::CheckEntry;
use crate::homcalc::{
    self, assoc_apply, braid_apply, summand_isometry, tensor, tensor_obj, Layout, Morphism, Object,
};
use crate::linalg::{self, c};
use crate::mtc::{self, BraidSide, CategoryData};
use crate::{Error, Result, C64};

mod center;
mod equivalence;

pub use center::{
    boundary_count, center_projector, full_center, invariant_matrix, left_center, lift_to_product, right_center,
    CenterSide, InvariantMatrix,
};
pub use equivalence::{equivalent_qsystems, intertwiner_residual, morita_equivalent, Equivalence, MoritaReport, MoritaVerdict, SolverConfig};

#[derive(Debug, Clone)]
pub struct QSystem {
    cat: CategoryData,
    theta: Object,
    w: Morphism,
    x: Morphism,
    dtheta: f64,
}

impl QSystem {
    pub fn new(cat: CategoryData, theta: Object, w: Morphism, x: Morphism) -> Result<Self> {
        let unit = Object::unit(cat.rank());
        if theta.rank() != cat.rank() {
            return Err(Error::ShapeMismatch("θ has the wrong rank".into()));
        }
        if w.src() != &unit || w.dst() != &theta {
            return Err(Error::ShapeMismatch("w must lie in Hom(1, θ)".into()));
        }
        let tt = tensor_obj(&cat, &theta, &theta);
        if x.src() != &theta || x.dst() != &tt {
            return Err(Error::ShapeMismatch("x must lie in Hom(θ, θ⊗θ)".into()));
        }
        let dtheta = theta.dim(&cat);
        Ok(Self { cat, theta, w, x, dtheta })
    }

    pub fn category(&self) -> &CategoryData {
        &self.cat
    }

    pub fn theta(&self) -> &Object {
        &self.theta
    }

    pub fn w(&self) -> &Morphism {
        &self.w
    }

    pub fn x(&self) -> &Morphism {
        &self.x
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    pub fn lambda(&self) -> f64 {
        1.0 / linalg::sqrt(self.dtheta)
    }

    /// `dim Hom(1, θ) = 1`.
    pub fn is_irreducible(&self) -> bool {
        self.theta.mult(0) == 1
    }

    pub fn commutativity_residual(&self) -> f64 {
        let bx = braid_apply(&self.cat, &self.theta, &self.theta, BraidSide::Plus, &self.x);
        bx.distance(&self.x)
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        self.commutativity_residual() < tol
    }

    /// Same Q-system with `x` replaced; used for negative controls.
    pub fn with_x(&self, x: Morphism) -> Result<Self> {
        Self::new(self.cat.clone(), self.theta.clone(), self.w.clone(), x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QReport {
    pub entries: Vec<CheckEntry>,
    pub lambda: f64,
    pub dtheta: f64,
    pub irreducible: bool,
    pub commutative: bool,
    pub verified: bool,
}

impl QReport {
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.residual))
    }
}

pub fn verify(q: &QSystem, tol: f64) -> QReport {
    let cat = &q.cat;
    let th = &q.theta;
    let unit = Object::unit(cat.rank());
    let id = Morphism::identity(th);
    let (w, x) = (&q.w, &q.x);
    let tt = tensor_obj(cat, th, th);
    let lambda = q.lambda();

    let iso_w = (&(&w.adjoint() * w) - &Morphism::identity(&unit)).max_abs();
    let iso_x = (&(&x.adjoint() * x) - &id).max_abs();

    // α ∘ (x⊗1) ∘ x = (1⊗x) ∘ x
    let lhs = &tensor(cat, x, &id) * x;
    let lhs = assoc_apply(cat, th, th, th, &lhs, false);
    let rhs = &tensor(cat, &id, x) * x;
    let assoc = lhs.distance(&rhs);

    let scaled = id.scale(c(lambda, 0.0));
    let unit_l = (&tensor(cat, &w.adjoint(), &id) * x).distance(&scaled);
    let unit_r = (&tensor(cat, &id, &w.adjoint()) * x).distance(&scaled);

    // (x*⊗1) ∘ α⁻¹ ∘ (1⊗x) = x∘x* = (1⊗x*) ∘ α ∘ (x⊗1)
    let xx = x * &x.adjoint();
    let f1 = tensor(cat, &id, x);
    let f1 = assoc_apply(cat, th, th, th, &f1, true);
    let f1 = &tensor(cat, &x.adjoint(), &id) * &f1;
    let f2 = tensor(cat, x, &id);
    let f2 = assoc_apply(cat, th, th, th, &f2, false);
    let f2 = &tensor(cat, &id, &x.adjoint()) * &f2;
    debug_assert_eq!(xx.src(), &tt);
    let frob_l = f1.distance(&xx);
    let frob_r = f2.distance(&xx);

    let comm = q.commutativity_residual();
    let entries = vec![
        CheckEntry::new("w isometry", iso_w, tol),
        CheckEntry::new("x isometry", iso_x, tol),
        CheckEntry::new("associativity", assoc, tol),
        CheckEntry::new("left unit", unit_l, tol),
        CheckEntry::new("right unit", unit_r, tol),
        CheckEntry::new("Frobenius (left)", frob_l, tol),
        CheckEntry::new("Frobenius (right)", frob_r, tol),
    ];
    let verified = entries.iter().all(|e| e.pass);
    QReport {
        entries,
        lambda,
        dtheta: q.dtheta,
        irreducible: q.is_irreducible(),
        commutative: comm < tol,
        verified,
    }
}

pub fn trivial_qsystem(cat: &CategoryData) -> QSystem {
    let unit = Object::unit(cat.rank());
    let id = Morphism::identity(&unit);
    QSystem::new(cat.clone(), unit, id.clone(), id).expect("trivial Q-system is well formed")
}

/// Group algebra of a subgroup `H` of invertible simples with trivial twists
/// and trivial restricted associator.
pub fn isotropic_subgroup_qsystem(cat: &CategoryData, h: &[usize]) -> Result<QSystem> {
    let ring = cat.ring();
    let r = cat.rank();
    let md = cat.modular_data();
    let mut members: Vec<usize> = h.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.first() != Some(&0) {
        return Err(Error::InvalidData("subgroup must contain the unit".into()));
    }
    for &a in &members {
        if a >= r {
            return Err(Error::InvalidData(format!("label {a} out of range")));
        }
        if (md.d[a] - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidData(format!("{} is not invertible", ring.label(a))));
        }
    }
    let product = |a: usize, b: usize| ring.channels(a, b)[0].0;
    for &a in &members {
        for &b in &members {
            if members.binary_search(&product(a, b)).is_err() {
                return Err(Error::InvalidData("labels are not closed under fusion".into()));
            }
        }
    }
    for &a in &members {
        if (md.omega[a] - c(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::NotIsotropic(String::from(ring.label(a))));
        }
    }
    for &a in &members {
        for &b in &members {
            for &cc in &members {
                let d = product(product(a, b), cc);
                let v = cat.with_f(a, b, cc, d, |blk| blk.mat[(0, 0)]).expect("admissible");
                if (v - c(1.0, 0.0)).norm() > 1e-9 {
                    return Err(Error::NonTrivialCocycle);
                }
            }
        }
    }
    let mut mult = vec![0u32; r];
    for &a in &members {
        mult[a] = 1;
    }
    let theta = Object::from_mult(mult);
    let unit = Object::unit(r);
    let mut w = Morphism::zero(&unit, &theta);
    w.block_mut(0)[(0, 0)] = c(1.0, 0.0);
    let lay = Layout::new(cat, &theta, &theta);
    let mut x = Morphism::zero(&theta, &lay.out);
    let k = 1.0 / linalg::sqrt(members.len() as f64);
    for &a in &members {
        for &b in &members {
            let p = product(a, b);
            let row = lay.index(cat, p, a, 0, b, 0, 0);
            x.block_mut(p)[(row, 0)] = c(k, 0.0);
        }
    }
    QSystem::new(cat.clone(), theta, w, x)
}

/// Checks that `phi` is a braided auto-equivalence between `a` and `b` on the
/// level of skeletal data (labels, N, d, ω, F and R).
pub fn check_equivalence(a: &CategoryData, b: &CategoryData, phi: &[usize]) -> Result<()> {
    let r = a.rank();
    if b.rank() != r || phi.len() != r {
        return Err(Error::NotAnEquivalence("ranks differ".into()));
    }
    let mut seen = vec![false; r];
    for &p in phi {
        if p >= r || seen[p] {
            return Err(Error::NotAnEquivalence("label map is not a bijection".into()));
        }
        seen[p] = true;
    }
    if phi[0] != 0 {
        return Err(Error::NotAnEquivalence("unit is not fixed".into()));
    }
    let (ra, rb) = (a.ring(), b.ring());
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                if ra.n(x, y, z) != rb.n(phi[x], phi[y], phi[z]) {
                    return Err(Error::NotAnEquivalence("fusion rules are not preserved".into()));
                }
            }
        }
    }
    let (ma, mb) = (a.modular_data(), b.modular_data());
    for x in 0..r {
        if (ma.d[x] - mb.d[phi[x]]).abs() > 1e-9 {
            return Err(Error::NotAnEquivalence("dimensions are not preserved".into()));
        }
        if (ma.omega[x] - mb.omega[phi[x]]).norm() > 1e-9 {
            return Err(Error::NotAnEquivalence(format!("twist of {} is not preserved", ra.label(x))));
        }
    }
    for x in 0..r {
        for y in 0..r {
            for &(z, _) in ra.channels(x, y) {
                let d = linalg::max_abs_diff(a.r_block(x, y, z), b.r_block(phi[x], phi[y], phi[z]));
                if d > 1e-9 {
                    return Err(Error::NotAnEquivalence("R-symbols are not preserved".into()));
                }
            }
        }
    }
    for [x, y, z, d] in mtc::admissible_quadruples(ra) {
        let fa = a.f_block(x, y, z, d).expect("admissible");
        let fb = b.f_block(phi[x], phi[y], phi[z], phi[d]).expect("admissible");
        for (i, l) in fa.left.iter().enumerate() {
            let lb = [phi[l[0] as usize] as u32, l[1], l[2]];
            let ib = fb.left.iter().position(|t| *t == lb).expect("basis");
            for (j, rr) in fa.right.iter().enumerate() {
                let rbb = [phi[rr[0] as usize] as u32, rr[1], rr[2]];
                let jb = fb.right.iter().position(|t| *t == rbb).expect("basis");
                if (fa.mat[(i, j)] - fb.mat[(ib, jb)]).norm() > 1e-9 {
                    return Err(Error::NotAnEquivalence("F-symbols are not preserved".into()));
                }
            }
        }
    }
    Ok(())
}

/// Conjugate vertex `ē ∈ Hom(ν̄, λ̄⊗μ̄)` of the basis vertex `e_α ∈ Hom(ν, λ⊗μ)`,
/// obtained by transposing `e_α*` and braiding `μ̄⊗λ̄ → λ̄⊗μ̄`; returned as
/// coefficients in the basis of `Hom(ν̄, λ̄⊗μ̄)`, normalized to unit length.
fn conjugate_vertex(cat: &CategoryData, l: usize, m: usize, n: usize, alpha: usize) -> Vec<C64> {
    let r = cat.rank();
    let ring = cat.ring();
    let (ol, om, on) = (Object::simple(r, l), Object::simple(r, m), Object::simple(r, n));
    let (lb, mb, nb) = (ring.dual(l), ring.dual(m), ring.dual(n));
    let (olb, omb, onb) = (Object::simple(r, lb), Object::simple(r, mb), Object::simple(r, nb));
    let sol_l = homcalc::conjugate_solution(cat, &ol);
    let sol_m = homcalc::conjugate_solution(cat, &om);
    let sol_n = homcalc::conjugate_solution(cat, &on);
    let id_l = Morphism::identity(&ol);
    let id_lb = Morphism::identity(&olb);
    let lm = tensor_obj(cat, &ol, &om);
    let mm = tensor_obj(cat, &om, &omb);
    let mlb = tensor_obj(cat, &omb, &olb);

    // R̄_{λμ}: 1 → (λμ)(μ̄λ̄)
    let step = &tensor(cat, &tensor(cat, &id_l, &sol_m.rbar), &id_lb) * &sol_l.rbar;
    let a_inv = homcalc::associator(cat, &ol, &om, &omb).adjoint();
    let step = &tensor(cat, &a_inv, &id_lb) * &step;
    let _ = mm;
    let rbar_lm = assoc_apply(cat, &lm, &omb, &olb, &step, false);

    // transpose of e*: ν̄ → ν̄⊗((λμ)(μ̄λ̄)) → ν̄⊗(ν(μ̄λ̄)) → (ν̄ν)(μ̄λ̄) → μ̄λ̄
    let e = homcalc::vertex(cat, l, m, n, alpha);
    let id_nb = Morphism::identity(&onb);
    let id_mlb = Morphism::identity(&mlb);
    let t = tensor(cat, &id_nb, &rbar_lm);
    let t = &tensor(cat, &id_nb, &tensor(cat, &e.adjoint(), &id_mlb)) * &t;
    let t = assoc_apply(cat, &onb, &on, &mlb, &t, true);
    let t = &tensor(cat, &sol_n.r.adjoint(), &id_mlb) * &t;
    let t = braid_apply(cat, &omb, &olb, BraidSide::Plus, &t);

    let lay = Layout::new(cat, &olb, &omb);
    let nvert = ring.n(lb, mb, nb) as usize;
    let blk = t.block(nb);
    let mut out: Vec<C64> = (0..nvert).map(|beta| blk[(lay.index(cat, nb, lb, 0, mb, 0, beta), 0)]).collect();
    let norm = linalg::sqrt(out.iter().map(|z| z.norm_sqr()).sum());
    for z in &mut out {
        *z /= norm;
    }
    out
}

/// Longo-Rehren Q-system on `⊕_ρ ρ⊠φ(ρ̄)` in `A⊠reverse(B)`.
pub fn lr_qsystem(cat_a: &CategoryData, cat_b: &CategoryData, phi: &[usize]) -> Result<QSystem> {
    check_equivalence(cat_a, cat_b, phi)?;
    let prod = mtc::deligne_product(cat_a, &mtc::reverse_braiding(cat_b));
    lr_qsystem_in(&prod, phi)
}

/// Longo-Rehren Q-system inside an existing product `A⊠B̄`.
pub fn lr_qsystem_in(prod: &CategoryData, phi: &[usize]) -> Result<QSystem> {
    let (a, bbar) = prod.factors().ok_or(Error::NotAProduct)?;
    let b = mtc::reverse_braiding(bbar);
    check_equivalence(a, &b, phi)?;
    let ra = a.ring();
    let rank_a = a.rank();
    let rank_b = b.rank();
    let d = &a.modular_data().d;
    let dtheta = a.dim_total();
    let label = |rho: usize| mtc::pair_label(rank_b, rho, phi[ra.dual(rho)]);
    let mut mult = vec![0u32; prod.rank()];
    for rho in 0..rank_a {
        mult[label(rho)] = 1;
    }
    let theta = Object::from_mult(mult);
    let unit = Object::unit(prod.rank());
    let mut w = Morphism::zero(&unit, &theta);
    w.block_mut(0)[(0, 0)] = c(1.0, 0.0);
    let lay = Layout::new(prod, &theta, &theta);
    let mut x = Morphism::zero(&theta, &lay.out);
    let rb = b.ring();
    for l in 0..rank_a {
        for m in 0..rank_a {
            for &(n, nn) in ra.channels(l, m) {
                let (sl, sm, sn) = (label(l), label(m), label(n));
                let nbv = rb.n(phi[ra.dual(l)], phi[ra.dual(m)], phi[ra.dual(n)]) as usize;
                let coef = linalg::sqrt(d[l] * d[m] / (d[n] * dtheta));
                for alpha in 0..nn as usize {
                    let ebar = conjugate_vertex(&b, phi[l], phi[m], phi[n], alpha);
                    for (beta, eb) in ebar.iter().enumerate() {
                        let row = lay.index(prod, sn, sl, 0, sm, 0, alpha * nbv + beta);
                        x.block_mut(sn)[(row, 0)] = eb * coef;
                    }
                }
            }
        }
    }
    QSystem::new(prod.clone(), theta, w, x)
}

/// Product Q-system on `θ₁⊗θ₂` with multiplication
/// `(1⊗ε^±(θ₁,θ₂)⊗1)∘(x₁⊗x₂)`.
pub fn product_qsystem(q1: &QSystem, q2: &QSystem, side: BraidSide) -> Result<QSystem> {
    let cat = &q1.cat;
    if !cat.shares_with(&q2.cat) {
        return Err(Error::CategoryMismatch);
    }
    let (p, q) = (&q1.theta, &q2.theta);
    let pq = tensor_obj(cat, p, q);
    let pp = tensor_obj(cat, p, p);
    let qq = tensor_obj(cat, q, q);
    let w = tensor(cat, &q1.w, &q2.w);
    let id_p = Morphism::identity(p);
    let id_q = Morphism::identity(q);
    // (PP)(QQ) → P(P(QQ)) → P((PQ)Q) → P((QP)Q) → P(Q(PQ)) → (PQ)(PQ)
    let h = tensor(cat, &q1.x, &q2.x);
    let h = assoc_apply(cat, p, p, &qq, &h, false);
    let a1 = homcalc::associator(cat, p, q, q).adjoint();
    let h = &tensor(cat, &id_p, &a1) * &h;
    let br = tensor(cat, &homcalc::braiding(cat, p, q, side), &id_q);
    let h = &tensor(cat, &id_p, &br) * &h;
    let a2 = homcalc::associator(cat, q, p, q);
    let h = &tensor(cat, &id_p, &a2) * &h;
    let h = assoc_apply(cat, p, q, &pq, &h, true);
    let _ = pp;
    QSystem::new(cat.clone(), pq, w, h)
}

pub fn direct_sum(qs: &[QSystem]) -> Result<QSystem> {
    let first = qs.first().ok_or_else(|| Error::InvalidData("empty list of Q-systems".into()))?;
    let cat = &first.cat;
    if qs.iter().any(|q| !cat.shares_with(&q.cat)) {
        return Err(Error::CategoryMismatch);
    }
    let parts: Vec<Object> = qs.iter().map(|q| q.theta.clone()).collect();
    let theta = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.direct_sum(p));
    let dtheta = theta.dim(cat);
    let unit = Object::unit(cat.rank());
    let tt = tensor_obj(cat, &theta, &theta);
    let mut w = Morphism::zero(&unit, &theta);
    let mut x = Morphism::zero(&theta, &tt);
    for (i, q) in qs.iter().enumerate() {
        let t = summand_isometry(&parts, i);
        let k = linalg::sqrt(q.dtheta / dtheta);
        w = &w + &(&t * &q.w).scale(c(k, 0.0));
        let tt_i = tensor(cat, &t, &t);
        x = &x + &(&(&tt_i * &q.x) * &t.adjoint());
    }
    QSystem::new(cat.clone(), theta, w, x)
}

/// Sub-Q-system cut out by an orthogonal projection `p ∈ Hom(θ, θ)`.
pub fn sub_qsystem(q: &QSystem, p: &Morphism, tol: f64) -> Result<QSystem> {
    let cat = &q.cat;
    let th = &q.theta;
    if p.src() != th || p.dst() != th {
        return Err(Error::ShapeMismatch("projection must be an endomorphism of θ".into()));
    }
    let id = Morphism::identity(th);
    let x = &q.x;
    let pp = tensor(cat, p, p);
    let one_p = tensor(cat, &id, p);
    let p_one = tensor(cat, p, &id);
    let a = &(&pp * x) * p;
    let b = &(&one_p * x) * p;
    let cc = &(&p_one * x) * p;
    let d = &pp * x;
    let res = a.distance(&b).max(a.distance(&cc)).max(a.distance(&d));
    if res > tol {
        return Err(Error::IncompatibleProjection(res));
    }
    let (s, sub) = homcalc::split_projection(p)?;
    if sub.is_zero() {
        return Err(Error::IncompatibleProjection(f64::INFINITY));
    }
    let lam2 = (&(&q.w.adjoint() * p) * &q.w).scalar().re;
    if lam2 <= 1e-12 {
        return Err(Error::IncompatibleProjection(f64::INFINITY));
    }
    let lam = linalg::sqrt(lam2);
    let dsub = sub.dim(cat);
    let w = (&s.adjoint() * &q.w).scale(c(1.0 / lam, 0.0));
    let ss = tensor(cat, &s.adjoint(), &s.adjoint());
    let xs = (&(&ss * x) * &s).scale(c(lam * linalg::sqrt(q.dtheta / dsub), 0.0));
    QSystem::new(cat.clone(), sub, w, xs)
}

/// Image under the functor `T(a⊠b̄) = a⊗b̄` of a Q-system in `C⊠reverse(C)`.
pub fn functor_t(q2: &QSystem) -> Result<QSystem> {
    let prod = &q2.cat;
    let (a, bbar) = prod.factors().ok_or(Error::NotAProduct)?;
    if !a.ring().same_as(bbar.ring()) || !mtc::reverse_braiding(bbar).same_data(a, 0.0) {
        return Err(Error::NotAProduct);
    }
    let base = a.clone();
    let r = base.rank();
    let rb = bbar.rank();
    let ring = base.ring();
    // summands of θ₂ as (pair label, copy, a, b)
    let mut summands = Vec::new();
    for s in q2.theta.support() {
        for i in 0..q2.theta.mult(s) {
            summands.push((s, i, s / rb, s % rb));
        }
    }
    let pieces: Vec<Object> = summands
        .iter()
        .map(|&(_, _, x, y)| tensor_obj(&base, &Object::simple(r, x), &Object::simple(r, y)))
        .collect();
    let theta = pieces.iter().skip(1).fold(pieces[0].clone(), |acc, p| acc.direct_sum(p));
    let iotas: Vec<Morphism> = (0..pieces.len()).map(|k| summand_isometry(&pieces, k)).collect();
    let unit = Object::unit(r);

    let mut w = Morphism::zero(&unit, &theta);
    for (k, &(s, i, _, _)) in summands.iter().enumerate() {
        if s == 0 {
            let v = q2.w.block(0)[(i, 0)];
            w = &w + &(&iotas[k] * &Morphism::identity(&unit)).scale(v);
        }
    }

    let tt = tensor_obj(&base, &theta, &theta);
    let lay2 = Layout::new(prod, &q2.theta, &q2.theta);
    let mut x = Morphism::zero(&theta, &tt);
    let simple = |s: usize| Object::simple(r, s);
    for (i, &(si, ci, ai, bi)) in summands.iter().enumerate() {
        for (j, &(sj, cj, aj, bj)) in summands.iter().enumerate() {
            let aa = tensor_obj(&base, &simple(ai), &simple(aj));
            let bb = tensor_obj(&base, &simple(bi), &simple(bj));
            let target = tensor_obj(&base, &aa, &bb);
            let mut g = Morphism::zero(&theta, &target);
            let mut nonzero = false;
            for (k, &(sk, ck, ak, bk)) in summands.iter().enumerate() {
                let na = ring.n(ai, aj, ak) as usize;
                let nb = bbar.ring().n(bi, bj, bk) as usize;
                if na == 0 || nb == 0 {
                    continue;
                }
                let Some(off) = lay2.try_offset(sk, si, sj) else { continue };
                let n2 = na * nb;
                let base_row = off + (ci * q2.theta.mult(sj) + cj) * n2;
                for mu1 in 0..na {
                    for mu2 in 0..nb {
                        let v = q2.x.block(sk)[(base_row + mu1 * nb + mu2, ck)];
                        if v.norm() == 0.0 {
                            continue;
                        }
                        nonzero = true;
                        let e = homcalc::vertex(&base, ai, aj, ak, mu1);
                        let f = homcalc::vertex(&base, bi, bj, bk, mu2);
                        let m = &tensor(&base, &e, &f) * &iotas[k].adjoint();
                        g = &g + &m.scale(v);
                    }
                }
            }
            if !nonzero {
                continue;
            }
            // (a_i a_j)(b_i b_j) → a_i(a_j(b_i b_j)) → a_i((a_j b_i) b_j) → a_i((b_i a_j) b_j)
            //   → a_i(b_i(a_j b_j)) → (a_i b_i)(a_j b_j)
            let (oai, oaj, obi, obj) = (simple(ai), simple(aj), simple(bi), simple(bj));
            let g = assoc_apply(&base, &oai, &oaj, &bb, &g, false);
            let step = homcalc::associator(&base, &oaj, &obi, &obj).adjoint();
            let g = &tensor(&base, &Morphism::identity(&oai), &step) * &g;
            let br = tensor(&base, &homcalc::braiding(&base, &oaj, &obi, BraidSide::Plus), &Morphism::identity(&obj));
            let g = &tensor(&base, &Morphism::identity(&oai), &br) * &g;
            let step = homcalc::associator(&base, &obi, &oaj, &obj);
            let g = &tensor(&base, &Morphism::identity(&oai), &step) * &g;
            let ab_j = tensor_obj(&base, &oaj, &obj);
            let g = assoc_apply(&base, &oai, &obi, &ab_j, &g, true);
            let emb = tensor(&base, &iotas[i], &iotas[j]);
            x = &x + &(&emb * &g);
        }
    }
    QSystem::new(base, theta, w, x)
}

/// `T(Θ_LR^φ)` for a braided auto-equivalence `φ` fixing only the unit.
pub fn permutation_qsystem(cat: &CategoryData, phi: &[usize]) -> Result<QSystem> {
    check_equivalence(cat, cat, phi)?;
    if let Some(s) = (1..cat.rank()).find(|&s| phi[s] == s) {
        return Err(Error::HasFixedPoint(String::from(cat.ring().label(s))));
    }
    functor_t(&lr_qsystem(cat, cat, phi)?)
}

/// Charge conjugation as a label map.
pub fn charge_conjugation(cat: &CategoryData) -> Vec<usize> {
    (0..cat.rank()).map(|s| cat.ring().dual(s)).collect()
}
