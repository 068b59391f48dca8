//! Objects, morphisms and the tensor calculus in fusion-tree bases.
//!
//! An [`Object`] is a multiplicity vector over the simples. Tensor products are
//! flattened: the copies of a simple `c` inside `X⊗Y` are ordered
//! lexicographically by `((s, i), (t, j), μ)`, where `i`, `j` enumerate copies
//! of `s` in `X` and `t` in `Y` and `μ` the fusion vertex `s⊗t → c`.
//! A [`Morphism`] stores one dense block per simple.
//!
//! Associators and braidings are never materialized for large objects; they
//! are applied to the target side of an existing morphism with
//! [`assoc_apply`] and [`braid_apply`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use crate::linalg::{self, c};
use crate::mtc::{BraidSide, CategoryData};
use crate::{CMat, Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Object {
    mult: Vec<u32>,
}

impl Object {
    pub fn zero(rank: usize) -> Self {
        Self { mult: vec![0; rank] }
    }

    pub fn unit(rank: usize) -> Self {
        Self::simple(rank, 0)
    }

    pub fn simple(rank: usize, s: usize) -> Self {
        let mut mult = vec![0; rank];
        mult[s] = 1;
        Self { mult }
    }

    pub fn from_mult(mult: Vec<u32>) -> Self {
        Self { mult }
    }

    pub fn rank(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self, s: usize) -> usize {
        self.mult[s] as usize
    }

    pub fn mults(&self) -> &[u32] {
        &self.mult
    }

    /// Simples occurring in the object.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mult.iter().enumerate().filter(|(_, &m)| m > 0).map(|(s, _)| s)
    }

    pub fn total(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn dim(&self, cat: &CategoryData) -> f64 {
        let d = &cat.modular_data().d;
        self.mult.iter().zip(d).map(|(&m, d)| f64::from(m) * d).sum()
    }

    pub fn direct_sum(&self, other: &Object) -> Object {
        Object { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    pub fn dual(&self, cat: &CategoryData) -> Object {
        let ring = cat.ring();
        let mut mult = vec![0; self.rank()];
        for s in self.support() {
            mult[ring.dual(s)] = self.mult[s];
        }
        Object { mult }
    }
}

/// A tensor word or a formal direct sum of words, resolved to an [`Object`]
/// by iterated fusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectExpr {
    Word(Vec<usize>),
    Sum(Vec<ObjectExpr>),
}

impl ObjectExpr {
    pub fn resolve(&self, cat: &CategoryData) -> Object {
        let rank = cat.rank();
        match self {
            ObjectExpr::Word(w) => {
                w.iter().fold(Object::unit(rank), |acc, &s| tensor_obj(cat, &acc, &Object::simple(rank, s)))
            }
            ObjectExpr::Sum(parts) => parts
                .iter()
                .fold(Object::zero(rank), |acc, p| acc.direct_sum(&p.resolve(cat))),
        }
    }
}

/// Index bookkeeping for a flattened tensor product `X⊗Y`.
#[derive(Debug, Clone)]
pub struct Layout {
    pub x: Object,
    pub y: Object,
    pub out: Object,
    pairs: Vec<Vec<(usize, usize)>>,
}

impl Layout {
    pub fn new(cat: &CategoryData, x: &Object, y: &Object) -> Self {
        let ring = cat.ring();
        let r = ring.rank();
        let mut pairs = vec![Vec::new(); r * r];
        let mut counter = vec![0usize; r];
        for s in x.support() {
            for t in y.support() {
                let mm = x.mult(s) * y.mult(t);
                for &(cc, n) in ring.channels(s, t) {
                    pairs[s * r + t].push((cc, counter[cc]));
                    counter[cc] += mm * n as usize;
                }
            }
        }
        let out = Object::from_mult(counter.iter().map(|&k| k as u32).collect());
        Self { x: x.clone(), y: y.clone(), out, pairs }
    }

    /// Offset of the `(s, t)` group inside the `c` block.
    #[inline]
    pub fn offset(&self, cc: usize, s: usize, t: usize) -> usize {
        let r = self.x.rank();
        self.pairs[s * r + t]
            .iter()
            .find(|(c2, _)| *c2 == cc)
            .map(|&(_, o)| o)
            .expect("pair does not fuse to the requested channel")
    }

    #[inline]
    pub fn try_offset(&self, cc: usize, s: usize, t: usize) -> Option<usize> {
        let r = self.x.rank();
        self.pairs[s * r + t].iter().find(|(c2, _)| *c2 == cc).map(|&(_, o)| o)
    }

    /// Row of copy `i` of `s`, copy `j` of `t`, vertex `mu` inside block `c`.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    pub fn index(&self, cat: &CategoryData, cc: usize, s: usize, i: usize, t: usize, j: usize, mu: usize) -> usize {
        let n = cat.ring().n(s, t, cc) as usize;
        self.offset(cc, s, t) + (i * self.y.mult(t) + j) * n + mu
    }
}

pub fn tensor_obj(cat: &CategoryData, x: &Object, y: &Object) -> Object {
    Layout::new(cat, x, y).out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    src: Object,
    dst: Object,
    blocks: Vec<CMat>,
}

impl Morphism {
    pub fn zero(src: &Object, dst: &Object) -> Self {
        let blocks = (0..src.rank()).map(|s| CMat::zeros(dst.mult(s), src.mult(s))).collect();
        Self { src: src.clone(), dst: dst.clone(), blocks }
    }

    pub fn identity(obj: &Object) -> Self {
        let blocks = (0..obj.rank()).map(|s| CMat::identity(obj.mult(s), obj.mult(s))).collect();
        Self { src: obj.clone(), dst: obj.clone(), blocks }
    }

    pub fn from_blocks(src: Object, dst: Object, blocks: Vec<CMat>) -> Result<Self> {
        if src.rank() != dst.rank() || blocks.len() != src.rank() {
            return Err(Error::ShapeMismatch("block count differs from rank".into()));
        }
        for (s, b) in blocks.iter().enumerate() {
            if b.shape() != (dst.mult(s), src.mult(s)) {
                return Err(Error::ShapeMismatch(format!(
                    "block {s} has shape {:?}, expected {:?}",
                    b.shape(),
                    (dst.mult(s), src.mult(s))
                )));
            }
        }
        Ok(Self { src, dst, blocks })
    }

    pub fn src(&self) -> &Object {
        &self.src
    }

    pub fn dst(&self) -> &Object {
        &self.dst
    }

    pub fn block(&self, s: usize) -> &CMat {
        &self.blocks[s]
    }

    pub fn block_mut(&mut self, s: usize) -> &mut CMat {
        &mut self.blocks[s]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            src: self.dst.clone(),
            dst: self.src.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().map(|b| b * k).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().fold(0.0, |m, b| m.max(linalg::max_abs(b)))
    }

    /// Max-norm distance; infinite when the shapes differ.
    pub fn distance(&self, other: &Morphism) -> f64 {
        if self.src != other.src || self.dst != other.dst {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .zip(&other.blocks)
            .fold(0.0, |m, (a, b)| m.max(linalg::max_abs_diff(a, b)))
    }

    /// Plain matrix trace summed over blocks.
    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    /// Value of an endomorphism of the unit object.
    pub fn scalar(&self) -> C64 {
        let b = &self.blocks[0];
        if b.nrows() == 1 && b.ncols() == 1 {
            b[(0, 0)]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.dst
    }
}

impl Add for &Morphism {
    type Output = Morphism;
    fn add(self, rhs: &Morphism) -> Morphism {
        assert!(self.src == rhs.src && self.dst == rhs.dst, "adding morphisms with different shapes");
        Morphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Morphism {
    type Output = Morphism;
    fn sub(self, rhs: &Morphism) -> Morphism {
        assert!(self.src == rhs.src && self.dst == rhs.dst, "subtracting morphisms with different shapes");
        Morphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Morphism {
    type Output = Morphism;
    /// Composition `self ∘ rhs`; panics on mismatched objects.
    fn mul(self, rhs: &Morphism) -> Morphism {
        compose(self, rhs).expect("composing morphisms with mismatched objects")
    }
}

pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if g.src != f.dst {
        return Err(Error::ShapeMismatch("source of g differs from target of f".into()));
    }
    Ok(Morphism {
        src: f.src.clone(),
        dst: g.dst.clone(),
        blocks: g.blocks.iter().zip(&f.blocks).map(|(a, b)| a * b).collect(),
    })
}

/// Basis vector of `Hom(c, a⊗b)` for the vertex `mu`.
pub fn vertex(cat: &CategoryData, a: usize, b: usize, cc: usize, mu: usize) -> Morphism {
    let r = cat.rank();
    let lay = Layout::new(cat, &Object::simple(r, a), &Object::simple(r, b));
    let src = Object::simple(r, cc);
    let mut m = Morphism::zero(&src, &lay.out);
    let row = lay.index(cat, cc, a, 0, b, 0, mu);
    m.blocks[cc][(row, 0)] = c(1.0, 0.0);
    m
}

pub fn tensor(cat: &CategoryData, f: &Morphism, g: &Morphism) -> Morphism {
    let ring = cat.ring();
    let ls = Layout::new(cat, &f.src, &g.src);
    let ld = Layout::new(cat, &f.dst, &g.dst);
    let mut out = Morphism::zero(&ls.out, &ld.out);
    for s in f.src.support() {
        let fs = &f.blocks[s];
        if fs.nrows() == 0 {
            continue;
        }
        for t in g.src.support() {
            let gt = &g.blocks[t];
            if gt.nrows() == 0 {
                continue;
            }
            let (mys, myd) = (g.src.mult(t), g.dst.mult(t));
            for &(cc, n) in ring.channels(s, t) {
                let n = n as usize;
                let os = ls.offset(cc, s, t);
                let od = ld.offset(cc, s, t);
                let blk = &mut out.blocks[cc];
                for i2 in 0..fs.nrows() {
                    for i in 0..fs.ncols() {
                        let a = fs[(i2, i)];
                        if a == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for j2 in 0..gt.nrows() {
                            for j in 0..gt.ncols() {
                                let v = a * gt[(j2, j)];
                                let rd = od + (i2 * myd + j2) * n;
                                let rs = os + (i * mys + j) * n;
                                for mu in 0..n {
                                    blk[(rd + mu, rs + mu)] = v;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn add_row(dst: &mut CMat, rd: usize, src: &CMat, rs: usize, k: C64) {
    for col in 0..src.ncols() {
        let v = src[(rs, col)];
        dst[(rd, col)] += k * v;
    }
}

/// Given `h: A → (X⊗Y)⊗Z`, returns `α_{X,Y,Z} ∘ h: A → X⊗(Y⊗Z)`. With
/// `inverse`, `h: A → X⊗(Y⊗Z)` and the result is `α⁻¹ ∘ h`.
pub fn assoc_apply(cat: &CategoryData, x: &Object, y: &Object, z: &Object, h: &Morphism, inverse: bool) -> Morphism {
    let ring = cat.ring();
    let lxy = Layout::new(cat, x, y);
    let lxy_z = Layout::new(cat, &lxy.out, z);
    let lyz = Layout::new(cat, y, z);
    let lx_yz = Layout::new(cat, x, &lyz.out);
    let (from, to) = if inverse { (&lx_yz.out, &lxy_z.out) } else { (&lxy_z.out, &lx_yz.out) };
    assert_eq!(h.dst(), from, "associator applied to a morphism with the wrong target");
    let mut out = Morphism::zero(&h.src, to);
    for d in 0..ring.rank() {
        if h.blocks[d].nrows() == 0 || h.blocks[d].ncols() == 0 {
            continue;
        }
        for s in x.support() {
            for t in y.support() {
                for u in z.support() {
                    cat.with_f(s, t, u, d, |blk| {
                        for i in 0..x.mult(s) {
                            for j in 0..y.mult(t) {
                                for k in 0..z.mult(u) {
                                    for (l, &[e, al, be]) in blk.left.iter().enumerate() {
                                        let (e, al, be) = (e as usize, al as usize, be as usize);
                                        let nst = ring.n(s, t, e) as usize;
                                        let p = lxy.offset(e, s, t) + (i * y.mult(t) + j) * nst + al;
                                        let neu = ring.n(e, u, d) as usize;
                                        let row_l = lxy_z.offset(d, e, u) + (p * z.mult(u) + k) * neu + be;
                                        for (rr, &[f, ga, de]) in blk.right.iter().enumerate() {
                                            let (f, ga, de) = (f as usize, ga as usize, de as usize);
                                            let coef = blk.mat[(l, rr)];
                                            if coef == C64::new(0.0, 0.0) {
                                                continue;
                                            }
                                            let ntu = ring.n(t, u, f) as usize;
                                            let q = lyz.offset(f, t, u) + (j * z.mult(u) + k) * ntu + ga;
                                            let nsf = ring.n(s, f, d) as usize;
                                            let row_r = lx_yz.offset(d, s, f)
                                                + (i * lyz.out.mult(f) + q) * nsf
                                                + de;
                                            if inverse {
                                                add_row(&mut out.blocks[d], row_l, &h.blocks[d], row_r, coef.conj());
                                            } else {
                                                add_row(&mut out.blocks[d], row_r, &h.blocks[d], row_l, coef);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    });
                }
            }
        }
    }
    out
}

/// The associator `(X⊗Y)⊗Z → X⊗(Y⊗Z)` as a dense morphism.
pub fn associator(cat: &CategoryData, x: &Object, y: &Object, z: &Object) -> Morphism {
    let src = tensor_obj(cat, &tensor_obj(cat, x, y), z);
    assoc_apply(cat, x, y, z, &Morphism::identity(&src), false)
}

/// Right composition with the associator: `f ∘ α_{X,Y,Z}` for
/// `f: X⊗(Y⊗Z) → B`, or `f ∘ α⁻¹` with `inverse`.
pub fn assoc_then(cat: &CategoryData, x: &Object, y: &Object, z: &Object, f: &Morphism, inverse: bool) -> Morphism {
    assoc_apply(cat, x, y, z, &f.adjoint(), !inverse).adjoint()
}

/// Given `h: A → X⊗Y`, returns `ε(X,Y) ∘ h: A → Y⊗X`.
pub fn braid_apply(cat: &CategoryData, x: &Object, y: &Object, side: BraidSide, h: &Morphism) -> Morphism {
    let ring = cat.ring();
    let lxy = Layout::new(cat, x, y);
    let lyx = Layout::new(cat, y, x);
    assert_eq!(h.dst(), &lxy.out, "braiding applied to a morphism with the wrong target");
    let mut out = Morphism::zero(&h.src, &lyx.out);
    for s in x.support() {
        for t in y.support() {
            for &(cc, n) in ring.channels(s, t) {
                if h.blocks[cc].ncols() == 0 {
                    continue;
                }
                let n = n as usize;
                let rmat = match side {
                    BraidSide::Plus => cat.r_block(s, t, cc).clone(),
                    BraidSide::Minus => cat.r_block(t, s, cc).adjoint(),
                };
                let o1 = lxy.offset(cc, s, t);
                let o2 = lyx.offset(cc, t, s);
                for i in 0..x.mult(s) {
                    for j in 0..y.mult(t) {
                        let b1 = o1 + (i * y.mult(t) + j) * n;
                        let b2 = o2 + (j * x.mult(s) + i) * n;
                        for mu in 0..n {
                            for nu in 0..n {
                                let k = rmat[(mu, nu)];
                                if k != C64::new(0.0, 0.0) {
                                    add_row(&mut out.blocks[cc], b2 + nu, &h.blocks[cc], b1 + mu, k);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn braiding(cat: &CategoryData, x: &Object, y: &Object, side: BraidSide) -> Morphism {
    braid_apply(cat, x, y, side, &Morphism::identity(&tensor_obj(cat, x, y)))
}

/// Right composition with a braiding: `f ∘ ε(X,Y)` for `f: Y⊗X → B`.
pub fn braid_then(cat: &CategoryData, x: &Object, y: &Object, side: BraidSide, f: &Morphism) -> Morphism {
    // ε(X,Y)* = ε^{opp}(Y,X)
    braid_apply(cat, y, x, side.opposite(), &f.adjoint()).adjoint()
}

pub fn hom_dim(x: &Object, y: &Object) -> usize {
    x.mults().iter().zip(y.mults()).map(|(&a, &b)| (a * b) as usize).sum()
}

#[derive(Debug, Clone)]
pub struct ConjugateSolution {
    pub object: Object,
    pub conjugate: Object,
    /// `R̄ ∈ Hom(1, X⊗X̄)`.
    pub rbar: Morphism,
    /// `R ∈ Hom(1, X̄⊗X)`.
    pub r: Morphism,
    pub dim: f64,
}

/// Standard solution of the conjugate equations for `X`, assembled from the
/// normalized solutions of its simple summands.
pub fn conjugate_solution(cat: &CategoryData, x: &Object) -> ConjugateSolution {
    let ring = cat.ring();
    let r = cat.rank();
    let xb = x.dual(cat);
    let unit = Object::unit(r);
    let l_bx = Layout::new(cat, &xb, x);
    let l_xb = Layout::new(cat, x, &xb);
    let mut rr = Morphism::zero(&unit, &l_bx.out);
    let mut rbar = Morphism::zero(&unit, &l_xb.out);
    let d = &cat.modular_data().d;
    for s in x.support() {
        let sb = ring.dual(s);
        let sq = linalg::sqrt(d[s]);
        for i in 0..x.mult(s) {
            let row = l_bx.index(cat, 0, sb, i, s, i, 0);
            rr.blocks[0][(row, 0)] = cat.rigidity_phase(s) * sq;
            let row = l_xb.index(cat, 0, s, i, sb, i, 0);
            rbar.blocks[0][(row, 0)] = c(sq, 0.0);
        }
    }
    ConjugateSolution { object: x.clone(), conjugate: xb, rbar, r: rr, dim: x.dim(cat) }
}

/// Left partial trace over `L` of `m: L⊗A → L⊗A`, taken with the standard
/// solution for `L`.
pub fn left_trace(cat: &CategoryData, l: &Object, a: &Object, m: &Morphism) -> Morphism {
    let sol = conjugate_solution(cat, l);
    let lb = &sol.conjugate;
    let id_a = Morphism::identity(a);
    // A → (L̄L)A → L̄(LA)
    let start = tensor(cat, &sol.r, &id_a);
    let start = assoc_apply(cat, lb, l, a, &start, false);
    // 1_{L̄} ⊗ m
    let mid = &tensor(cat, &Morphism::identity(lb), m) * &start;
    let back = assoc_apply(cat, lb, l, a, &mid, true);
    &tensor(cat, &sol.r.adjoint(), &id_a) * &back
}

fn projection_residual(p: &Morphism) -> f64 {
    if !p.is_endo() {
        return f64::INFINITY;
    }
    let sq = &(p * p) - p;
    sq.max_abs().max((&p.adjoint() - p).max_abs())
}

pub fn projector_rank(p: &Morphism) -> Result<usize> {
    let res = projection_residual(p);
    if res > crate::ROUND_TOL {
        return Err(Error::NotAProjection(res));
    }
    let tr = p.trace();
    Ok(linalg::nearest_int(tr.re).0.max(0) as usize)
}

/// Orthogonal projection onto the range of an idempotent `e`, via
/// `p = e(1 + e - e*)^{-1}`.
pub fn orthogonalize_idempotent(e: &Morphism) -> Result<Morphism> {
    if !e.is_endo() {
        return Err(Error::NotAProjection(f64::INFINITY));
    }
    let idem = (&(e * e) - e).max_abs();
    if idem > crate::ROUND_TOL {
        return Err(Error::NotAProjection(idem));
    }
    let mut out = e.clone();
    for (s, b) in e.blocks.iter().enumerate() {
        if b.nrows() == 0 {
            continue;
        }
        let n = b.nrows();
        let m = CMat::identity(n, n) + b - b.adjoint();
        let inv = m.try_inverse().ok_or(Error::NotAProjection(f64::INFINITY))?;
        out.blocks[s] = b * inv;
    }
    Ok(out)
}

/// Splits an orthogonal projection `p = s s*` with `s` an isometry from the
/// returned subobject.
pub fn split_projection(p: &Morphism) -> Result<(Morphism, Object)> {
    let p = if projection_residual(p) > crate::ROUND_TOL {
        orthogonalize_idempotent(p)?
    } else {
        p.clone()
    };
    let ranges: Vec<CMat> = p.blocks.iter().map(linalg::projector_range).collect();
    let sub = Object::from_mult(ranges.iter().map(|b| b.ncols() as u32).collect());
    let s = Morphism::from_blocks(sub.clone(), p.src.clone(), ranges)?;
    Ok((s, sub))
}

/// Embedding of the `k`-th summand into a direct sum of objects.
pub fn summand_isometry(parts: &[Object], k: usize) -> Morphism {
    let rank = parts[0].rank();
    let total = parts.iter().fold(Object::zero(rank), |acc, p| acc.direct_sum(p));
    let mut m = Morphism::zero(&parts[k], &total);
    for s in 0..rank {
        let off: usize = parts[..k].iter().map(|p| p.mult(s)).sum();
        for i in 0..parts[k].mult(s) {
            m.blocks[s][(off + i, i)] = c(1.0, 0.0);
        }
    }
    m
}

/// Largest deviation in the zig-zag identities and in `R*R = d` for the
/// standard solution of `X`.
pub fn zigzag_residual(cat: &CategoryData, x: &Object) -> f64 {
    let sol = conjugate_solution(cat, x);
    let xb = &sol.conjugate;
    let id_x = Morphism::identity(x);
    let id_xb = Morphism::identity(xb);
    let first = tensor(cat, &sol.rbar, &id_x);
    let first = assoc_apply(cat, x, xb, x, &first, false);
    let first = &tensor(cat, &id_x, &sol.r.adjoint()) * &first;
    let second = tensor(cat, &id_xb, &sol.rbar);
    let second = assoc_apply(cat, xb, x, xb, &second, true);
    let second = &tensor(cat, &sol.r.adjoint(), &id_xb) * &second;
    let d = sol.dim;
    let rr = (&sol.r.adjoint() * &sol.r).scalar();
    let rbrb = (&sol.rbar.adjoint() * &sol.rbar).scalar();
    first
        .distance(&id_x)
        .max(second.distance(&id_xb))
        .max((rr - c(d, 0.0)).norm())
        .max((rbrb - c(d, 0.0)).norm())
}
