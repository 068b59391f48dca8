//! Modular invariants: the commutant of `S` and `T`, exhaustive search for
//! its non-negative integer points, and per-level reports for `su2(k)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::fusion::ModularData;
use crate::linalg;
use crate::mtc;
use crate::qsystem::{self, InvariantMatrix};
use crate::{Error, Result};

/// Default upper bound on entries during enumeration.
pub const DEFAULT_MAX_ENTRY: i64 = 8;
/// Lattice points visited before giving up.
pub const SEARCH_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CommutantBasis {
    /// Basis element `k` is the unique commutant element with coordinate 1 at
    /// `pivots[k]` and 0 at every other pivot.
    pub basis: Vec<DMatrix<f64>>,
    pub pivots: Vec<(usize, usize)>,
    pub dim: usize,
}

impl CommutantBasis {
    /// Entries as fractions `(p, q)` where one within 1e-6 exists.
    pub fn rational(&self, k: usize) -> DMatrix<Option<(i64, i64)>> {
        self.basis[k].map(|v| linalg::rationalize(v, 1000, 1e-6))
    }
}

/// Positions `(μ, ν)` with `T_μ = T_ν`; every other entry of a matrix
/// commuting with the diagonal `T` vanishes.
fn allowed_positions(md: &ModularData) -> Vec<(usize, usize)> {
    let r = md.rank();
    let mut pos = Vec::new();
    // (0,0) first, then the rest of row 0 and column 0, then the others, so
    // that the search fixes the first row early.
    let mut order: Vec<(usize, usize)> = Vec::new();
    order.push((0, 0));
    for nu in 1..r {
        order.push((0, nu));
    }
    for mu in 1..r {
        order.push((mu, 0));
    }
    for mu in 1..r {
        for nu in 1..r {
            order.push((mu, nu));
        }
    }
    for (mu, nu) in order {
        if (md.t[(mu, mu)] - md.t[(nu, nu)]).norm() < 1e-9 {
            pos.push((mu, nu));
        }
    }
    pos
}

pub fn commutant_basis(md: &ModularData) -> CommutantBasis {
    let r = md.rank();
    let pos = allowed_positions(md);
    let nv = pos.len();
    let s = &md.s;
    // (ZS - SZ)_{ik} = Σ_j Z_ij S_jk - S_ij Z_jk
    let mut a = DMatrix::<f64>::zeros(2 * r * r, nv);
    for i in 0..r {
        for k in 0..r {
            let row = 2 * (i * r + k);
            for (v, &(p, q)) in pos.iter().enumerate() {
                let mut coef = crate::C64::new(0.0, 0.0);
                if p == i {
                    coef += s[(q, k)];
                }
                if q == k {
                    coef -= s[(i, p)];
                }
                a[(row, v)] = coef.re;
                a[(row + 1, v)] = coef.im;
            }
        }
    }
    let null = linalg::real_null_space(&a, 1e-10);
    let mut m = null.transpose();
    let piv_cols = linalg::rref(&mut m, 1e-9);
    let dim = piv_cols.len();
    let mut basis = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut z = DMatrix::<f64>::zeros(r, r);
        for (v, &(p, q)) in pos.iter().enumerate() {
            let x = m[(k, v)];
            z[(p, q)] = match linalg::rationalize(x, 1000, 1e-9) {
                Some((num, den)) => num as f64 / den as f64,
                None => x,
            };
        }
        basis.push(z);
    }
    let pivots = piv_cols.iter().map(|&v| pos[v]).collect();
    CommutantBasis { basis, pivots, dim }
}

struct Search<'a> {
    basis: &'a CommutantBasis,
    /// `(μ, ν, coefficient per basis element)` for every entry that can be
    /// non-zero.
    entries: Vec<(usize, usize, Vec<f64>)>,
    weight: Vec<Vec<f64>>,
    bound: f64,
    max_entry: f64,
    visited: u128,
    found: Vec<DMatrix<i64>>,
}

impl Search<'_> {
    /// Range of an affine form over the coordinates `depth..` in `[0, max]`.
    fn range(&self, fixed: f64, coefs: &[f64], depth: usize) -> (f64, f64) {
        let (mut lo, mut hi) = (fixed, fixed);
        for &a in &coefs[depth..] {
            if a < 0.0 {
                lo += a * self.max_entry;
            } else {
                hi += a * self.max_entry;
            }
        }
        (lo, hi)
    }

    fn feasible(&self, coords: &[f64], depth: usize) -> bool {
        let eval = |coefs: &[f64]| -> f64 { coords[..depth].iter().zip(coefs).map(|(c, a)| c * a).sum() };
        for (_, _, coefs) in &self.entries {
            let (lo, hi) = self.range(eval(coefs), coefs, depth);
            if hi < -1e-6 || lo > self.max_entry + 1e-6 {
                return false;
            }
        }
        for w in &self.weight {
            let (lo, _) = self.range(eval(w), w, depth);
            if lo > self.bound + 1e-6 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, coords: &mut Vec<f64>) -> Result<()> {
        self.visited += 1;
        if self.visited > SEARCH_BUDGET {
            return Err(Error::SearchBudgetExceeded(SEARCH_BUDGET));
        }
        let depth = coords.len();
        if !self.feasible(coords, depth) {
            return Ok(());
        }
        if depth == self.basis.dim {
            self.accept(coords);
            return Ok(());
        }
        // Pivot 0 is Z₀₀, pinned to 1.
        let range = if depth == 0 { 1..=1 } else { 0..=self.max_entry as i64 };
        for v in range {
            coords.push(v as f64);
            self.run(coords)?;
            coords.pop();
        }
        Ok(())
    }

    fn accept(&mut self, coords: &[f64]) {
        let r = self.basis.basis[0].nrows();
        let mut z = DMatrix::<i64>::zeros(r, r);
        for (mu, nu, coefs) in &self.entries {
            let v: f64 = coords.iter().zip(coefs).map(|(c, a)| c * a).sum();
            let (k, err) = linalg::nearest_int(v);
            if err > 1e-6 || k < 0 || k as f64 > self.max_entry {
                return;
            }
            z[(*mu, *nu)] = k;
        }
        self.found.push(z);
    }
}

/// Canonical order: the identity first, then row-major lexicographic.
fn canonical_sort(zs: &mut [DMatrix<i64>]) {
    zs.sort_by(|a, b| {
        let ia = a == &DMatrix::identity(a.nrows(), a.ncols());
        let ib = b == &DMatrix::identity(b.nrows(), b.ncols());
        ib.cmp(&ia).then_with(|| a.transpose().as_slice().cmp(b.transpose().as_slice()))
    });
}

/// All non-negative integer matrices commuting with `S` and `T`, with
/// `Z₀₀ = 1` and entries at most `max_entry`.
///
/// Besides the box constraints the search uses `Σ_ν Z_{0ν} d_ν ≤ √D` and the
/// same bound on the first column, which hold for every invariant coming from
/// a Q-system.
pub fn enumerate_invariants(md: &ModularData, max_entry: i64) -> Result<Vec<InvariantMatrix>> {
    let basis = commutant_basis(md);
    let r = md.rank();
    if basis.dim == 0 || basis.pivots[0] != (0, 0) {
        return Ok(Vec::new());
    }
    let mut entries = Vec::new();
    for mu in 0..r {
        for nu in 0..r {
            let coefs: Vec<f64> = basis.basis.iter().map(|b| b[(mu, nu)]).collect();
            if coefs.iter().any(|a| a.abs() > 1e-12) {
                entries.push((mu, nu, coefs));
            }
        }
    }
    let row_w: Vec<f64> = (0..basis.dim)
        .map(|k| (0..r).map(|nu| basis.basis[k][(0, nu)] * md.d[nu]).sum())
        .collect();
    let col_w: Vec<f64> = (0..basis.dim)
        .map(|k| (0..r).map(|mu| basis.basis[k][(mu, 0)] * md.d[mu]).sum())
        .collect();
    let mut search = Search {
        basis: &basis,
        entries,
        weight: vec![row_w, col_w],
        bound: linalg::sqrt(md.dim_total),
        max_entry: max_entry as f64,
        visited: 0,
        found: Vec::new(),
    };
    search.run(&mut Vec::new())?;
    let mut found = search.found;
    canonical_sort(&mut found);
    Ok(found.into_iter().map(|z| InvariantMatrix { z, rounding: 0.0 }).collect())
}

/// Largest entry of `[Z,S]` and `[Z,T]`.
pub fn modular_residual(md: &ModularData, z: &DMatrix<i64>) -> f64 {
    let zc = z.map(|v| crate::C64::new(v as f64, 0.0));
    let a = &zc * &md.s - &md.s * &zc;
    let b = &zc * &md.t - &md.t * &zc;
    linalg::max_abs(&a).max(linalg::max_abs(&b))
}

/// A-D-E name of an `su2(k)` invariant. E₆ and E₈ show up in the vacuum row;
/// E₇ shares its vacuum row with D₁₀ but drops the spin-1 diagonal term.
pub fn ade_name(level: u32, z: &DMatrix<i64>) -> String {
    let k = level as usize;
    if z == &DMatrix::identity(z.nrows(), z.ncols()) {
        return format!("A{}", k + 1);
    }
    match (k, z[(0, 6.min(k))], z[(2.min(k), 2.min(k))], z[(0, 10.min(k))]) {
        (10, 1, _, _) => "E6".into(),
        (16, _, 0, _) => "E7".into(),
        (28, _, _, 1) => "E8".into(),
        _ => format!("D{}", k / 2 + 2),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdeEntry {
    pub name: String,
    pub z: DMatrix<i64>,
    pub trace: i64,
    /// Builtin construction realizing the invariant, if any.
    pub realized_by: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdeRow {
    pub level: u32,
    pub count: usize,
    pub entries: Vec<AdeEntry>,
}

/// Enumerates the modular invariants of `su2(k)` for each level and marks the
/// ones realized by the trivial Q-system or by the simple-current extension
/// `0⊕k` (k divisible by 4).
pub fn ade_report(levels: &[u32]) -> Result<Vec<AdeRow>> {
    let mut rows = Vec::new();
    for &k in levels {
        if k > 16 {
            return Err(Error::UnsupportedLevel(k));
        }
        let cat = mtc::su2(k)?;
        let found = enumerate_invariants(cat.modular_data(), DEFAULT_MAX_ENTRY)?;
        let mut realized: Vec<(DMatrix<i64>, String)> = Vec::new();
        let triv = qsystem::trivial_qsystem(&cat);
        realized.push((qsystem::invariant_matrix(&triv)?.z, "trivial".into()));
        if k % 4 == 0 {
            let k = k as usize;
            let q = qsystem::isotropic_subgroup_qsystem(&cat, &[0, k])?;
            realized.push((qsystem::invariant_matrix(&q)?.z, format!("isotropic {{0,{k}}}")));
        }
        let entries = found
            .into_iter()
            .map(|inv| AdeEntry {
                name: ade_name(k, &inv.z),
                trace: inv.trace(),
                realized_by: realized.iter().find(|(z, _)| z == &inv.z).map(|(_, n)| n.clone()),
                z: inv.z,
            })
            .collect::<Vec<_>>();
        rows.push(AdeRow { level: k, count: entries.len(), entries });
    }
    Ok(rows)
}
