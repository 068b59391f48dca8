//! Skeletal unitary modular tensor categories.
//!
//! F-symbols are stored as unitary blocks `F^{abc}_d` whose rows are the
//! left-nested trees `(a⊗b → e; α)(e⊗c → d; β)` and whose columns are the
//! right-nested trees `(b⊗c → f; γ)(a⊗f → d; δ)`:
//!
//! ```text
//! left(e, α, β) = Σ F^{abc}_d[(e, α, β), (f, γ, δ)] · right(f, γ, δ)
//! ```
//!
//! `R^{ab}_c[α, β]` is the coefficient of the vertex `(b⊗a → c; β)` in the
//! image of `(a⊗b → c; α)` under the braiding `ε(a, b)`.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::fusion::{self, CheckEntry, FusionRingData, ModularData};
use crate::homcalc::{self, assoc_apply, braid_apply, tensor, Morphism, Object};
use crate::linalg::{self, c, cis};
use crate::{CMat, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidSide {
    Plus,
    Minus,
}

impl BraidSide {
    pub fn opposite(self) -> Self {
        match self {
            BraidSide::Plus => BraidSide::Minus,
            BraidSide::Minus => BraidSide::Plus,
        }
    }
}

/// One unitary recoupling block. Tree labels are `[intermediate, first
/// vertex, second vertex]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FBlock {
    pub left: Vec<[u32; 3]>,
    pub right: Vec<[u32; 3]>,
    pub mat: CMat,
}

#[derive(Debug)]
enum FStore {
    Table(BTreeMap<[u32; 4], FBlock>),
    Product {
        a: Arc<FStore>,
        b: Arc<FStore>,
        ring_b: Arc<FusionRingData>,
    },
}

impl FStore {
    fn block(&self, key: [usize; 4]) -> Option<Cow<'_, FBlock>> {
        match self {
            FStore::Table(t) => t.get(&key.map(|k| k as u32)).map(Cow::Borrowed),
            FStore::Product { a, b, ring_b } => {
                let r2 = ring_b.rank();
                let ka = key.map(|k| k / r2);
                let kb = key.map(|k| k % r2);
                let ba = a.block(ka)?;
                let bb = b.block(kb)?;
                let (x2, y2, z2, d2) = (kb[0], kb[1], kb[2], kb[3]);
                let r2u = r2 as u32;
                let mut left = Vec::with_capacity(ba.left.len() * bb.left.len());
                for l1 in &ba.left {
                    for l2 in &bb.left {
                        let e2 = l2[0] as usize;
                        let n1 = ring_b.n(x2, y2, e2);
                        let n2 = ring_b.n(e2, z2, d2);
                        left.push([l1[0] * r2u + l2[0], l1[1] * n1 + l2[1], l1[2] * n2 + l2[2]]);
                    }
                }
                let mut right = Vec::with_capacity(ba.right.len() * bb.right.len());
                for r1 in &ba.right {
                    for rr in &bb.right {
                        let f2 = rr[0] as usize;
                        let n1 = ring_b.n(y2, z2, f2);
                        let nb = ring_b.n(x2, f2, d2);
                        right.push([r1[0] * r2u + rr[0], r1[1] * n1 + rr[1], r1[2] * nb + rr[2]]);
                    }
                }
                Some(Cow::Owned(FBlock { left, right, mat: ba.mat.kronecker(&bb.mat) }))
            }
        }
    }
}

type RTable = Vec<Vec<(usize, CMat)>>;

/// Skeletal category data: fusion ring, F- and R-symbols and the derived
/// modular data.
#[derive(Debug, Clone)]
pub struct CategoryData {
    name: String,
    ring: Arc<FusionRingData>,
    f: Arc<FStore>,
    r: Arc<RTable>,
    md: Arc<ModularData>,
    rigidity: Arc<Vec<C64>>,
    factors: Option<(Arc<CategoryData>, Arc<CategoryData>)>,
}

/// Left and right tree bases of `Hom(d, a⊗b⊗c)`.
pub fn tree_bases(ring: &FusionRingData, a: usize, b: usize, cc: usize, d: usize) -> (Vec<[u32; 3]>, Vec<[u32; 3]>) {
    let mut left = Vec::new();
    for &(e, k1) in ring.channels(a, b) {
        let k2 = ring.n(e, cc, d);
        for al in 0..k1 {
            for be in 0..k2 {
                left.push([e as u32, al, be]);
            }
        }
    }
    let mut right = Vec::new();
    for &(f, k1) in ring.channels(b, cc) {
        let k2 = ring.n(a, f, d);
        for ga in 0..k1 {
            for de in 0..k2 {
                right.push([f as u32, ga, de]);
            }
        }
    }
    (left, right)
}

/// All `(a, b, c, d)` with `Hom(d, a⊗b⊗c) ≠ 0`.
pub fn admissible_quadruples(ring: &FusionRingData) -> Vec<[usize; 4]> {
    let r = ring.rank();
    let mut out = Vec::new();
    let mut seen = vec![false; r];
    for a in 0..r {
        for b in 0..r {
            for cc in 0..r {
                seen.iter_mut().for_each(|x| *x = false);
                for &(e, _) in ring.channels(a, b) {
                    for &(d, _) in ring.channels(e, cc) {
                        seen[d] = true;
                    }
                }
                for (d, &s) in seen.iter().enumerate() {
                    if s {
                        out.push([a, b, cc, d]);
                    }
                }
            }
        }
    }
    out
}

fn table_from_fn(
    ring: &FusionRingData,
    mut f: impl FnMut([usize; 4], [u32; 3], [u32; 3]) -> C64,
) -> BTreeMap<[u32; 4], FBlock> {
    let mut table = BTreeMap::new();
    for key in admissible_quadruples(ring) {
        let (left, right) = tree_bases(ring, key[0], key[1], key[2], key[3]);
        let mat = CMat::from_fn(left.len(), right.len(), |i, j| f(key, left[i], right[j]));
        table.insert(key.map(|k| k as u32), FBlock { left, right, mat });
    }
    table
}

fn r_table_from_fn(ring: &FusionRingData, mut f: impl FnMut(usize, usize, usize, u32, u32) -> C64) -> RTable {
    let r = ring.rank();
    let mut table = vec![Vec::new(); r * r];
    for a in 0..r {
        for b in 0..r {
            for &(cc, n) in ring.channels(a, b) {
                let m = CMat::from_fn(n as usize, n as usize, |i, j| f(a, b, cc, i as u32, j as u32));
                table[a * r + b].push((cc, m));
            }
        }
    }
    table
}

impl CategoryData {
    fn assemble(name: String, ring: Arc<FusionRingData>, f: Arc<FStore>, r: Arc<RTable>) -> Result<Self> {
        let rank = ring.rank();
        for a in 0..rank {
            for b in 0..rank {
                if ring.channels(a, b).len() != r[a * rank + b].len() {
                    return Err(Error::InvalidData(format!("R-symbols missing for ({a},{b})")));
                }
            }
        }
        let d = ring.perron_dims();
        let omega: Vec<C64> = (0..rank)
            .map(|a| {
                let mut acc = c(0.0, 0.0);
                for (cc, m) in &r[a * rank + a] {
                    acc += m.trace() * d[*cc];
                }
                acc / d[a]
            })
            .collect();
        let y = CMat::from_fn(rank, rank, |l, m| {
            let mut acc = c(0.0, 0.0);
            for ((cc, m1), (_, m2)) in r[l * rank + m].iter().zip(&r[m * rank + l]) {
                acc += (m1 * m2).trace() * d[*cc];
            }
            acc.conj()
        });
        let mut rigidity = Vec::with_capacity(rank);
        for s in 0..rank {
            let sb = ring.dual(s);
            let f00 = f
                .block([s, sb, s, s])
                .and_then(|blk| {
                    let l = blk.left.iter().position(|t| t == &[0, 0, 0])?;
                    let rr = blk.right.iter().position(|t| t == &[0, 0, 0])?;
                    Some(blk.mat[(l, rr)])
                })
                .unwrap_or(c(0.0, 0.0));
            if f00.norm() < 1e-12 {
                return Err(Error::InvalidData(format!("F^{{s s* s}}_s has no unit entry for s={s}")));
            }
            rigidity.push((c(1.0, 0.0) / (f00 * d[s])).conj());
        }
        let md = ModularData::from_parts(&ring, d, omega, y);
        Ok(Self { name, ring, f, r, md: Arc::new(md), rigidity: Arc::new(rigidity), factors: None })
    }

    /// Builds a category from sparse F and R entries. Missing entries of
    /// admissible blocks are zero.
    pub fn from_entries(
        name: &str,
        ring: FusionRingData,
        f_entries: &[([usize; 10], C64)],
        r_entries: &[([usize; 5], C64)],
    ) -> Result<Self> {
        ring.validate()?;
        let mut fmap: BTreeMap<[usize; 10], C64> = BTreeMap::new();
        for (k, v) in f_entries {
            fmap.insert(*k, *v);
        }
        let mut used = 0usize;
        let table = table_from_fn(&ring, |[a, b, cc, d], l, r| {
            let key = [
                a, b, cc, d, l[0] as usize, r[0] as usize, l[1] as usize, l[2] as usize, r[1] as usize,
                r[2] as usize,
            ];
            match fmap.get(&key) {
                Some(v) => {
                    used += 1;
                    *v
                }
                None => c(0.0, 0.0),
            }
        });
        if used != fmap.len() {
            return Err(Error::InvalidData("F entry outside the admissible tree bases".into()));
        }
        let mut rmap: BTreeMap<[usize; 5], C64> = BTreeMap::new();
        for (k, v) in r_entries {
            rmap.insert(*k, *v);
        }
        let mut used = 0usize;
        let rt = r_table_from_fn(&ring, |a, b, cc, al, be| match rmap.get(&[a, b, cc, al as usize, be as usize]) {
            Some(v) => {
                used += 1;
                *v
            }
            None => c(0.0, 0.0),
        });
        if used != rmap.len() {
            return Err(Error::InvalidData("R entry for a non-admissible vertex".into()));
        }
        Self::assemble(name.to_string(), Arc::new(ring), Arc::new(FStore::Table(table)), Arc::new(rt))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FusionRingData {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn modular_data(&self) -> &ModularData {
        &self.md
    }

    pub fn dims(&self) -> &[f64] {
        &self.md.d
    }

    pub fn dim_total(&self) -> f64 {
        self.md.dim_total
    }

    /// Factors when the category was built as a Deligne product.
    pub fn factors(&self) -> Option<(&CategoryData, &CategoryData)> {
        self.factors.as_ref().map(|(a, b)| (a.as_ref(), b.as_ref()))
    }

    /// Runs `f` on the block `F^{abc}_d`; `None` when `Hom(d, a⊗b⊗c) = 0`.
    pub fn with_f<T>(&self, a: usize, b: usize, cc: usize, d: usize, f: impl FnOnce(&FBlock) -> T) -> Option<T> {
        self.f.block([a, b, cc, d]).map(|blk| f(&blk))
    }

    pub fn f_block(&self, a: usize, b: usize, cc: usize, d: usize) -> Option<FBlock> {
        self.f.block([a, b, cc, d]).map(Cow::into_owned)
    }

    pub fn r_block(&self, a: usize, b: usize, cc: usize) -> &CMat {
        let r = self.rank();
        self.r[a * r + b]
            .iter()
            .find(|(c2, _)| *c2 == cc)
            .map(|(_, m)| m)
            .expect("R-symbol requested for a channel that does not occur")
    }

    /// Phase `φ_s` with `R_s = √d_s · φ_s · (s̄⊗s → 1)` solving the zig-zag
    /// equations against `R̄_s = √d_s · (s⊗s̄ → 1)`.
    pub fn rigidity_phase(&self, s: usize) -> C64 {
        self.rigidity[s]
    }

    /// Sparse F entries `([a,b,c,d,e,f,α,β,γ,δ], value)` with nonzero value.
    pub fn f_entries(&self) -> Vec<([usize; 10], C64)> {
        let mut out = Vec::new();
        for [a, b, cc, d] in admissible_quadruples(&self.ring) {
            self.with_f(a, b, cc, d, |blk| {
                for (i, l) in blk.left.iter().enumerate() {
                    for (j, r) in blk.right.iter().enumerate() {
                        let v = blk.mat[(i, j)];
                        if v.norm() > 0.0 {
                            out.push((
                                [
                                    a, b, cc, d, l[0] as usize, r[0] as usize, l[1] as usize, l[2] as usize,
                                    r[1] as usize, r[2] as usize,
                                ],
                                v,
                            ));
                        }
                    }
                }
            });
        }
        out
    }

    pub fn r_entries(&self) -> Vec<([usize; 5], C64)> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for (cc, m) in &self.r[a * r + b] {
                    for i in 0..m.nrows() {
                        for j in 0..m.ncols() {
                            if m[(i, j)].norm() > 0.0 {
                                out.push(([a, b, *cc, i, j], m[(i, j)]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Structural identity: same ring, F and R up to `tol`.
    pub fn same_data(&self, other: &CategoryData, tol: f64) -> bool {
        if Arc::ptr_eq(&self.f, &other.f) && Arc::ptr_eq(&self.r, &other.r) {
            return true;
        }
        if !self.ring.same_as(&other.ring) {
            return false;
        }
        let r = self.rank();
        for ab in 0..r * r {
            for ((c1, m1), (c2, m2)) in self.r[ab].iter().zip(&other.r[ab]) {
                if c1 != c2 || linalg::max_abs_diff(m1, m2) > tol {
                    return false;
                }
            }
        }
        if Arc::ptr_eq(&self.f, &other.f) {
            return true;
        }
        admissible_quadruples(&self.ring).into_iter().all(|[a, b, cc, d]| {
            match (self.f.block([a, b, cc, d]), other.f.block([a, b, cc, d])) {
                (Some(x), Some(y)) => {
                    x.left == y.left && x.right == y.right && linalg::max_abs_diff(&x.mat, &y.mat) <= tol
                }
                _ => false,
            }
        })
    }

    pub(crate) fn shares_with(&self, other: &CategoryData) -> bool {
        (Arc::ptr_eq(&self.f, &other.f) && Arc::ptr_eq(&self.r, &other.r)) || self.same_data(other, 0.0)
    }

    /// Category with every F entry passed through `g`; used for negative
    /// controls.
    pub fn map_f(&self, mut g: impl FnMut([usize; 4], [u32; 3], [u32; 3], C64) -> C64) -> Result<Self> {
        let table = table_from_fn(&self.ring, |key, l, r| {
            let v = self
                .with_f(key[0], key[1], key[2], key[3], |blk| {
                    let i = blk.left.iter().position(|t| *t == l).expect("basis");
                    let j = blk.right.iter().position(|t| *t == r).expect("basis");
                    blk.mat[(i, j)]
                })
                .expect("admissible");
            g(key, l, r, v)
        });
        Self::assemble(self.name.clone(), self.ring.clone(), Arc::new(FStore::Table(table)), self.r.clone())
    }
}

// ---------------------------------------------------------------------------
// Builtin families

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Trivial,
    /// Product of cyclic groups `ℤ_n` with forms `q(a) = exp(πi p a²/n)`.
    Pointed(Vec<(u32, u32)>),
    Ising,
    Fibonacci,
    Su2(u32),
}

pub fn builtin_category(family: &Family) -> Result<CategoryData> {
    match family {
        Family::Trivial => pointed_cyclic_unchecked(1, 0),
        Family::Pointed(factors) => {
            if factors.is_empty() {
                return Err(Error::InvalidData("pointed category needs at least one factor".into()));
            }
            let mut cats = Vec::new();
            for &(n, p) in factors {
                cats.push(pointed_cyclic(n, p)?);
            }
            let mut acc = cats.remove(0);
            for next in cats {
                acc = deligne_product(&acc, &next);
            }
            Ok(acc)
        }
        Family::Ising => ising(),
        Family::Fibonacci => fibonacci(),
        Family::Su2(k) => su2(*k),
    }
}

/// Default form parameter for `ℤ_n`: `q(a) = e^{2πi a²/n}` for odd `n`,
/// `e^{πi a²/n}` for even `n`.
pub fn default_pointed_parameter(n: u32) -> u32 {
    if n % 2 == 1 {
        2
    } else {
        1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `ℤ_n` with `q(a) = exp(πi p a²/n)`; refuses degenerate forms.
pub fn pointed_cyclic(n: u32, p: u32) -> Result<CategoryData> {
    if n == 0 {
        return Err(Error::InvalidData("group order must be positive".into()));
    }
    if (u64::from(p) * u64::from(n)) % 2 == 1 {
        return Err(Error::InvalidData(format!("p·n must be even (n={n}, p={p})")));
    }
    if n > 1 && gcd(p % (2 * n), n) != 1 {
        return Err(Error::DegenerateForm);
    }
    pointed_cyclic_unchecked(n, p)
}

/// Like [`pointed_cyclic`] but accepts degenerate forms, which give braided
/// but non-modular categories.
pub fn pointed_cyclic_unchecked(n: u32, p: u32) -> Result<CategoryData> {
    let nn = n.max(1) as usize;
    if (u64::from(p) * nn as u64) % 2 == 1 {
        return Err(Error::InvalidData(format!("p·n must be even (n={n}, p={p})")));
    }
    let labels = (0..nn).map(|a| a.to_string()).collect();
    let dual = (0..nn).map(|a| (nn - a) % nn).collect();
    let entries = (0..nn).flat_map(|a| (0..nn).map(move |b| (a, b, (a + b) % nn, 1)));
    let ring = FusionRingData::new(labels, dual, entries)?;
    let pf = f64::from(p);
    let nf = nn as f64;
    let table = table_from_fn(&ring, |[a, b, cc, _], _, _| {
        let carry = (b + cc) / nn;
        if (p as usize * a * carry) % 2 == 1 {
            c(-1.0, 0.0)
        } else {
            c(1.0, 0.0)
        }
    });
    let rt = r_table_from_fn(&ring, |a, b, _, _, _| cis(PI * pf * (a * b) as f64 / nf));
    let name = if nn == 1 { "trivial".to_string() } else { format!("pointed-z{nn}-p{p}") };
    CategoryData::assemble(name, Arc::new(ring), Arc::new(FStore::Table(table)), Arc::new(rt))
}

pub fn fibonacci() -> Result<CategoryData> {
    let ring = FusionRingData::new(
        vec!["1".into(), "tau".into()],
        vec![0, 1],
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
    )?;
    let phi = (1.0 + linalg::sqrt(5.0)) / 2.0;
    let table = table_from_fn(&ring, |key, l, r| {
        if key == [1, 1, 1, 1] {
            let (e, f) = (l[0], r[0]);
            match (e, f) {
                (0, 0) => c(1.0 / phi, 0.0),
                (1, 1) => c(-1.0 / phi, 0.0),
                _ => c(1.0 / linalg::sqrt(phi), 0.0),
            }
        } else {
            c(1.0, 0.0)
        }
    });
    let rt = r_table_from_fn(&ring, |a, b, cc, _, _| match (a, b, cc) {
        (1, 1, 0) => cis(-4.0 * PI / 5.0),
        (1, 1, 1) => cis(3.0 * PI / 5.0),
        _ => c(1.0, 0.0),
    });
    CategoryData::assemble("fibonacci".into(), Arc::new(ring), Arc::new(FStore::Table(table)), Arc::new(rt))
}

pub fn ising() -> Result<CategoryData> {
    // labels: 0 = 1, 1 = σ, 2 = ψ
    let ring = FusionRingData::new(
        vec!["1".into(), "sigma".into(), "psi".into()],
        vec![0, 1, 2],
        [
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (2, 0, 2, 1),
            (1, 1, 0, 1),
            (1, 1, 2, 1),
            (1, 2, 1, 1),
            (2, 1, 1, 1),
            (2, 2, 0, 1),
        ],
    )?;
    let s2 = 1.0 / linalg::sqrt(2.0);
    let table = table_from_fn(&ring, |key, l, r| match key {
        [1, 1, 1, 1] => {
            if l[0] == 2 && r[0] == 2 {
                c(-s2, 0.0)
            } else {
                c(s2, 0.0)
            }
        }
        [1, 2, 1, 2] | [2, 1, 2, 1] => c(-1.0, 0.0),
        _ => c(1.0, 0.0),
    });
    let rt = r_table_from_fn(&ring, |a, b, cc, _, _| match (a, b, cc) {
        (1, 1, 0) => cis(-PI / 8.0),
        (1, 1, 2) => cis(3.0 * PI / 8.0),
        (1, 2, 1) | (2, 1, 1) => c(0.0, -1.0),
        (2, 2, 0) => c(-1.0, 0.0),
        _ => c(1.0, 0.0),
    });
    CategoryData::assemble("ising".into(), Arc::new(ring), Arc::new(FStore::Table(table)), Arc::new(rt))
}

struct QNumbers {
    fact: Vec<f64>,
}

impl QNumbers {
    fn new(k: u32) -> Self {
        let h = f64::from(k + 2);
        let q = |n: usize| libm::sin(n as f64 * PI / h) / libm::sin(PI / h);
        let mut fact = vec![1.0];
        for n in 1..=(2 * k as usize + 4) {
            let prev = fact[n - 1];
            fact.push(prev * q(n));
        }
        Self { fact }
    }

    fn qint(&self, n: usize) -> f64 {
        self.fact[n] / self.fact[n - 1]
    }

    /// Triangle coefficient for doubled spins.
    fn delta(&self, a: usize, b: usize, cc: usize) -> f64 {
        let num = self.fact[(a + b - cc) / 2] * self.fact[(a + cc - b) / 2] * self.fact[(b + cc - a) / 2];
        linalg::sqrt(num / self.fact[(a + b + cc) / 2 + 1])
    }

    /// Quantum 6j symbol `{j1 j2 j3; j4 j5 j6}` for doubled spins.
    fn sixj(&self, j: [usize; 6]) -> f64 {
        let [j1, j2, j3, j4, j5, j6] = j;
        let a = [(j1 + j2 + j3) / 2, (j1 + j5 + j6) / 2, (j4 + j2 + j6) / 2, (j4 + j5 + j3) / 2];
        let b = [(j1 + j2 + j4 + j5) / 2, (j2 + j3 + j5 + j6) / 2, (j3 + j1 + j6 + j4) / 2];
        let lo = *a.iter().max().unwrap();
        let hi = *b.iter().min().unwrap();
        let mut sum = 0.0;
        for z in lo..=hi {
            let mut den = 1.0;
            for &ai in &a {
                den *= self.fact[z - ai];
            }
            for &bi in &b {
                den *= self.fact[bi - z];
            }
            let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * self.fact[z + 1] / den;
        }
        self.delta(j1, j2, j3) * self.delta(j1, j5, j6) * self.delta(j4, j2, j6) * self.delta(j4, j5, j3) * sum
    }
}

/// Largest supported level for `su2`.
pub const MAX_SU2_LEVEL: u32 = 24;

/// `SU(2)_k` with labels `0..=k` (twice the spin).
pub fn su2(k: u32) -> Result<CategoryData> {
    if k == 0 || k > MAX_SU2_LEVEL {
        return Err(Error::UnsupportedLevel(k));
    }
    let kk = k as usize;
    let admissible = |a: usize, b: usize, cc: usize| {
        (a + b + cc).is_multiple_of(2) && cc + a >= b && cc + b >= a && cc <= a + b && a + b + cc <= 2 * kk
    };
    let mut entries = Vec::new();
    for a in 0..=kk {
        for b in 0..=kk {
            for cc in 0..=kk {
                if admissible(a, b, cc) {
                    entries.push((a, b, cc, 1));
                }
            }
        }
    }
    let labels = (0..=kk).map(|a| a.to_string()).collect();
    let ring = FusionRingData::new(labels, (0..=kk).collect(), entries)?;
    let qn = QNumbers::new(k);
    let table = table_from_fn(&ring, |[a, b, cc, d], l, r| {
        let (e, f) = (l[0] as usize, r[0] as usize);
        let sign = if ((a + b + cc + d) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let v = sign * linalg::sqrt(qn.qint(e + 1) * qn.qint(f + 1)) * qn.sixj([a, b, e, cc, d, f]);
        c(v, 0.0)
    });
    let h = |j: usize| (j * (j + 2)) as f64 / (4.0 * f64::from(k + 2));
    let rt = r_table_from_fn(&ring, |a, b, cc, _, _| {
        let sign = if ((a + b - cc) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        cis(PI * (h(cc) - h(a) - h(b))) * sign
    });
    CategoryData::assemble(format!("su2-{k}"), Arc::new(ring), Arc::new(FStore::Table(table)), Arc::new(rt))
}

// ---------------------------------------------------------------------------
// Derived categories

pub fn reverse_braiding(cat: &CategoryData) -> CategoryData {
    let rank = cat.rank();
    let rt = r_table_from_fn(&cat.ring, |a, b, cc, al, be| cat.r_block(b, a, cc)[(be as usize, al as usize)].conj());
    let name = match cat.name.strip_prefix("rev(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("rev({})", cat.name),
    };
    let _ = rank;
    let mut out = CategoryData::assemble(name, cat.ring.clone(), cat.f.clone(), Arc::new(rt))
        .expect("reversal of valid data is valid");
    out.factors = cat
        .factors
        .as_ref()
        .map(|(a, b)| (Arc::new(reverse_braiding(a)), Arc::new(reverse_braiding(b))));
    out
}

pub fn deligne_product(a: &CategoryData, b: &CategoryData) -> CategoryData {
    let ring = a.ring.product(&b.ring);
    let (ra, rb) = (a.rank(), b.rank());
    let rt = r_table_from_fn(&ring, |x, y, cc, al, be| {
        let (x1, x2, y1, y2, c1, c2) = (x / rb, x % rb, y / rb, y % rb, cc / rb, cc % rb);
        let n2 = b.ring.n(x2, y2, c2);
        let m1 = a.r_block(x1, y1, c1);
        let m2 = b.r_block(x2, y2, c2);
        let (a1, a2) = ((al / n2) as usize, (al % n2) as usize);
        let (b1, b2) = ((be / n2) as usize, (be % n2) as usize);
        m1[(a1, b1)] * m2[(a2, b2)]
    });
    let _ = ra;
    let f = FStore::Product { a: a.f.clone(), b: b.f.clone(), ring_b: b.ring.clone() };
    let mut out = CategoryData::assemble(
        format!("{}⊠{}", a.name, b.name),
        Arc::new(ring),
        Arc::new(f),
        Arc::new(rt),
    )
    .expect("product of valid data is valid");
    out.factors = Some((Arc::new(a.clone()), Arc::new(b.clone())));
    out
}

/// Label of the pair `(a, b)` in a Deligne product.
pub fn pair_label(b_rank: usize, a: usize, b: usize) -> usize {
    a * b_rank + b
}

// ---------------------------------------------------------------------------
// Axiom verification

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub entries: Vec<CheckEntry>,
    pub modular: bool,
    pub pass: bool,
}

impl AxiomReport {
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().filter(|e| e.residual.is_finite()).fold(0.0, |m, e| m.max(e.residual))
    }
}

/// Residual of the pentagon, evaluated through the morphism calculus on
/// `((a⊗b)⊗c)⊗d` for all simple quadruples.
pub fn pentagon_residual(cat: &CategoryData) -> f64 {
    let r = cat.rank();
    let simples: Vec<Object> = (0..r).map(|s| Object::simple(r, s)).collect();
    let ids: Vec<Morphism> = simples.iter().map(Morphism::identity).collect();
    let mut worst = 0.0f64;
    for (a, oa) in simples.iter().enumerate() {
        for ob in &simples {
            let ab = homcalc::tensor_obj(cat, oa, ob);
            for oc in &simples {
                let abc = homcalc::tensor_obj(cat, &ab, oc);
                let bc = homcalc::tensor_obj(cat, ob, oc);
                let a_abc = homcalc::associator(cat, oa, ob, oc);
                for (d, od) in simples.iter().enumerate() {
                    let src = homcalc::tensor_obj(cat, &abc, od);
                    let id = Morphism::identity(&src);
                    // α_{a,b,cd} ∘ α_{ab,c,d}
                    let cd = homcalc::tensor_obj(cat, oc, od);
                    let lhs = assoc_apply(cat, &ab, oc, od, &id, false);
                    let lhs = assoc_apply(cat, oa, ob, &cd, &lhs, false);
                    // (1_a ⊗ α_{b,c,d}) ∘ α_{a,bc,d} ∘ (α_{a,b,c} ⊗ 1_d)
                    let rhs = tensor(cat, &a_abc, &ids[d]);
                    let rhs = assoc_apply(cat, oa, &bc, od, &rhs, false);
                    let a_bcd = homcalc::associator(cat, ob, oc, od);
                    let rhs = &tensor(cat, &ids[a], &a_bcd) * &rhs;
                    worst = worst.max(lhs.distance(&rhs));
                }
            }
        }
    }
    worst
}

/// Residual of both hexagon identities for the braiding on `side`, over all
/// simple triples.
pub fn hexagon_residual(cat: &CategoryData, side: BraidSide) -> f64 {
    let r = cat.rank();
    let simples: Vec<Object> = (0..r).map(|s| Object::simple(r, s)).collect();
    let mut worst = 0.0f64;
    for oa in &simples {
        for ob in &simples {
            let ab = homcalc::tensor_obj(cat, oa, ob);
            let e_ab = homcalc::braiding(cat, oa, ob, side);
            for ox in &simples {
                // α_{b,x,a} ∘ ε(a, bx) ∘ α_{a,b,x} = (1_b⊗ε(a,x)) ∘ α_{b,a,x} ∘ (ε(a,b)⊗1_x)
                let src = homcalc::tensor_obj(cat, &ab, ox);
                let id = Morphism::identity(&src);
                let bx = homcalc::tensor_obj(cat, ob, ox);
                let lhs = assoc_apply(cat, oa, ob, ox, &id, false);
                let lhs = braid_apply(cat, oa, &bx, side, &lhs);
                let lhs = assoc_apply(cat, ob, ox, oa, &lhs, false);
                let rhs = tensor(cat, &e_ab, &Morphism::identity(ox));
                let rhs = assoc_apply(cat, ob, oa, ox, &rhs, false);
                let e_ax = homcalc::braiding(cat, oa, ox, side);
                let rhs = &tensor(cat, &Morphism::identity(ob), &e_ax) * &rhs;
                worst = worst.max(lhs.distance(&rhs));

                // α⁻¹_{x,a,b} ∘ ε(ab, x) ∘ α⁻¹_{a,b,x} = (ε(a,x)⊗1_b) ∘ α⁻¹_{a,x,b} ∘ (1_a⊗ε(b,x))
                let src = homcalc::tensor_obj(cat, oa, &bx);
                let id = Morphism::identity(&src);
                let lhs = assoc_apply(cat, oa, ob, ox, &id, true);
                let lhs = braid_apply(cat, &ab, ox, side, &lhs);
                let lhs = assoc_apply(cat, ox, oa, ob, &lhs, true);
                let e_bx = homcalc::braiding(cat, ob, ox, side);
                let rhs = tensor(cat, &Morphism::identity(oa), &e_bx);
                let rhs = assoc_apply(cat, oa, ox, ob, &rhs, true);
                let rhs = &tensor(cat, &e_ax, &Morphism::identity(ob)) * &rhs;
                worst = worst.max(lhs.distance(&rhs));
            }
        }
    }
    worst
}

fn f_unitarity_residual(cat: &CategoryData) -> f64 {
    let mut worst = 0.0f64;
    for [a, b, cc, d] in admissible_quadruples(&cat.ring) {
        cat.with_f(a, b, cc, d, |blk| {
            let n = blk.mat.nrows();
            if blk.mat.ncols() != n {
                worst = f64::INFINITY;
                return;
            }
            let res = linalg::max_abs_diff(&(&blk.mat * blk.mat.adjoint()), &CMat::identity(n, n));
            worst = worst.max(res);
        });
    }
    worst
}

fn r_unitarity_residual(cat: &CategoryData) -> f64 {
    let r = cat.rank();
    let mut worst = 0.0f64;
    for ab in 0..r * r {
        for (_, m) in &cat.r[ab] {
            let n = m.nrows();
            worst = worst.max(linalg::max_abs_diff(&(m * m.adjoint()), &CMat::identity(n, n)));
        }
    }
    worst
}

/// F-blocks with a unit leg must be identities in the chosen skeleton.
fn unit_residual(cat: &CategoryData) -> f64 {
    let mut worst = 0.0f64;
    for [a, b, cc, d] in admissible_quadruples(&cat.ring) {
        if a != 0 && b != 0 && cc != 0 {
            continue;
        }
        cat.with_f(a, b, cc, d, |blk| {
            let n = blk.mat.nrows();
            if blk.mat.ncols() != n {
                worst = f64::INFINITY;
                return;
            }
            worst = worst.max(linalg::max_abs_diff(&blk.mat, &CMat::identity(n, n)));
        });
    }
    let r = cat.rank();
    for a in 0..r {
        for (x, y) in [(0, a), (a, 0)] {
            let m = cat.r_block(x, y, a);
            worst = worst.max((m[(0, 0)] - c(1.0, 0.0)).norm());
        }
    }
    worst
}

fn zigzag_residual(cat: &CategoryData) -> f64 {
    let r = cat.rank();
    let mut worst = 0.0f64;
    for s in 0..r {
        let x = Object::simple(r, s);
        worst = worst.max(homcalc::zigzag_residual(cat, &x));
    }
    worst
}

pub fn verify_axioms(cat: &CategoryData, tol: f64) -> AxiomReport {
    let mut entries = vec![
        CheckEntry::new("F unitarity", f_unitarity_residual(cat), tol),
        CheckEntry::new("R unitarity", r_unitarity_residual(cat), tol),
        CheckEntry::new("unit triviality", unit_residual(cat), tol),
        CheckEntry::new("pentagon", pentagon_residual(cat), tol),
        CheckEntry::new("hexagon(+)", hexagon_residual(cat, BraidSide::Plus), tol),
        CheckEntry::new("hexagon(-)", hexagon_residual(cat, BraidSide::Minus), tol),
        CheckEntry::new("zig-zag", zigzag_residual(cat), tol),
        CheckEntry::new(
            "dimension homomorphism",
            fusion::dimension_homomorphism_residual(&cat.ring, &cat.md.d),
            tol,
        ),
    ];
    let pass = entries.iter().all(|e| e.pass);
    let md_report = fusion::check_modular_data(&cat.ring, &cat.md, tol);
    entries.extend(md_report.entries);
    AxiomReport { entries, modular: md_report.modular, pass }
}
