use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{lr_qsystem_in, product_qsystem, sub_qsystem, QSystem};
use crate::homcalc::{self, assoc_apply, braid_apply, tensor, tensor_obj, Layout, Morphism, Object};
use crate::linalg;
use crate::mtc::{self, BraidSide, CategoryData};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterSide {
    Left,
    Right,
}

/// Projection onto the left (or right) center part of `θ⊗ρ`: the partial
/// trace over `θ` of the loop `x∘x*` braided around `θ⊗ρ`. With isometric
/// `x` the two vertices on the loop already carry the `dθ^{-1/2}`.
pub fn center_projector(q: &QSystem, rho: &Object, side: CenterSide) -> Morphism {
    let cat = q.category();
    let th = q.theta();
    let eps = match side {
        CenterSide::Left => BraidSide::Plus,
        CenterSide::Right => BraidSide::Minus,
    };
    let a = tensor_obj(cat, th, rho);
    let la = tensor_obj(cat, th, &a);
    let dd = q.x() * &q.x().adjoint();
    // L(θρ) → (Lθ)ρ → (θL)ρ → θ(Lρ) → θ(ρL) → (θρ)L → L(θρ)
    let h = assoc_apply(cat, th, th, rho, &Morphism::identity(&la), true);
    let h = &tensor(cat, &dd, &Morphism::identity(rho)) * &h;
    let h = assoc_apply(cat, th, th, rho, &h, false);
    let h = &tensor(cat, &Morphism::identity(th), &homcalc::braiding(cat, th, rho, eps)) * &h;
    let h = assoc_apply(cat, th, rho, th, &h, true);
    let h = braid_apply(cat, &a, th, eps, &h);
    homcalc::left_trace(cat, th, &a, &h)
}

pub fn left_center(q: &QSystem) -> Result<QSystem> {
    let unit = Object::unit(q.category().rank());
    let p = center_projector(q, &unit, CenterSide::Left);
    sub_qsystem(q, &p, crate::ROUND_TOL)
}

pub fn right_center(q: &QSystem) -> Result<QSystem> {
    let unit = Object::unit(q.category().rank());
    let p = center_projector(q, &unit, CenterSide::Right);
    sub_qsystem(q, &p, crate::ROUND_TOL)
}

/// Copies a Q-system in `C` into `C⊠D` along `s ↦ s⊠1`.
pub fn lift_to_product(q: &QSystem, prod: &CategoryData) -> Result<QSystem> {
    let (first, second) = prod.factors().ok_or(Error::NotAProduct)?;
    if !first.same_data(q.category(), 0.0) {
        return Err(Error::CategoryMismatch);
    }
    let cat = q.category();
    let (r, rb) = (cat.rank(), second.rank());
    let lift = |s: usize| mtc::pair_label(rb, s, 0);
    let th = q.theta();
    let mut mult = vec![0u32; prod.rank()];
    for s in th.support() {
        mult[lift(s)] = th.mult(s) as u32;
    }
    let theta = Object::from_mult(mult);
    let unit = Object::unit(prod.rank());
    let mut w = Morphism::zero(&unit, &theta);
    for i in 0..th.mult(0) {
        w.block_mut(0)[(i, 0)] = q.w().block(0)[(i, 0)];
    }
    let small = Layout::new(cat, th, th);
    let big = Layout::new(prod, &theta, &theta);
    let mut x = Morphism::zero(&theta, &big.out);
    for s in th.support() {
        for t in th.support() {
            for &(cc, n) in cat.ring().channels(s, t) {
                for i in 0..th.mult(s) {
                    for j in 0..th.mult(t) {
                        for mu in 0..n as usize {
                            let r1 = small.index(cat, cc, s, i, t, j, mu);
                            let r2 = big.index(prod, lift(cc), lift(s), i, lift(t), j, mu);
                            for k in 0..th.mult(cc) {
                                x.block_mut(lift(cc))[(r2, k)] = q.x().block(cc)[(r1, k)];
                            }
                        }
                    }
                }
            }
        }
    }
    let _ = r;
    QSystem::new(prod.clone(), theta, w, x)
}

/// Full center of `q`, a commutative Q-system in `C⊠reverse(C)`.
pub fn full_center(q: &QSystem) -> Result<QSystem> {
    let cat = q.category();
    let prod = mtc::deligne_product(cat, &mtc::reverse_braiding(cat));
    let lifted = lift_to_product(q, &prod)?;
    let id: Vec<usize> = (0..cat.rank()).collect();
    let lr = lr_qsystem_in(&prod, &id)?;
    let pq = product_qsystem(&lifted, &lr, BraidSide::Plus)?;
    left_center(&pq)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMatrix {
    pub z: DMatrix<i64>,
    /// Largest distance of a raw trace from its rounded value.
    pub rounding: f64,
}

impl InvariantMatrix {
    pub fn trace(&self) -> i64 {
        self.z.trace()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.z.map(|v| v as f64)
    }
}

/// `Z_{λμ}`: multiplicity of `λ` in the range of the left center projection
/// of `θ⊗μ`.
pub fn invariant_matrix(q: &QSystem) -> Result<InvariantMatrix> {
    let r = q.category().rank();
    let mut z = DMatrix::<i64>::zeros(r, r);
    let mut rounding = 0.0f64;
    for mu in 0..r {
        let p = center_projector(q, &Object::simple(r, mu), CenterSide::Left);
        for lam in 0..r {
            let blk = p.block(lam);
            if blk.nrows() == 0 {
                continue;
            }
            let tr = blk.trace();
            let (k, err) = linalg::nearest_int(tr.re);
            let err = err.max(tr.im.abs());
            rounding = rounding.max(err);
            if err > crate::ROUND_TOL {
                return Err(Error::NonIntegralIndicator(tr.re));
            }
            z[(lam, mu)] = k;
        }
    }
    Ok(InvariantMatrix { z, rounding })
}

/// `tr Z`, the number of boundary conditions.
pub fn boundary_count(q: &QSystem) -> Result<i64> {
    Ok(invariant_matrix(q)?.trace())
}
