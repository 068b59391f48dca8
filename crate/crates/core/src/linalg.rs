//! Small dense linear-algebra helpers shared by the other modules.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::{CMat, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(i * t)`.
pub fn cis(t: f64) -> C64 {
    C64::new(libm::cos(t), libm::sin(t))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn nearest_int(x: f64) -> (i64, f64) {
    let r = libm::round(x);
    (r as i64, (x - r).abs())
}

/// Orthonormal basis (as columns) of the range of a Hermitian projector.
///
/// Columns are ordered by the position of their largest entry and each column
/// is rephased so that this entry is real and positive, which keeps the
/// output stable across runs.
pub fn projector_range(p: &CMat) -> CMat {
    let n = p.nrows();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let herm = (p + p.adjoint()) * c(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut cols: Vec<(usize, DVector<C64>)> = Vec::new();
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev > 0.5 {
            let mut v = eig.eigenvectors.column(k).into_owned();
            let (imax, _) = v
                .iter()
                .enumerate()
                .fold((0, -1.0), |(bi, bv), (i, z)| {
                    if z.norm() > bv + 1e-12 {
                        (i, z.norm())
                    } else {
                        (bi, bv)
                    }
                });
            let ph = v[imax] / v[imax].norm();
            v /= ph;
            cols.push((imax, v));
        }
    }
    cols.sort_by_key(|(i, _)| *i);
    // Degenerate eigenspaces can come back non-orthogonal after sorting only
    // through rounding; a Gram-Schmidt pass cleans that up.
    let mut out = CMat::zeros(n, cols.len());
    for (j, (_, v)) in cols.into_iter().enumerate() {
        let mut v = v;
        for k in 0..j {
            let u = out.column(k).into_owned();
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let nv = v.norm();
        out.set_column(j, &(v / c(nv, 0.0)));
    }
    out
}

/// Numerical rank with singular values counted above `thresh`.
pub fn rank(m: &CMat, thresh: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    sv.iter().filter(|&&s| s >= thresh).count()
}

/// Unitary factor of the polar decomposition.
pub fn polar_unitary(m: &CMat) -> CMat {
    if m.nrows() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested u");
    let vt = svd.v_t.expect("requested v_t");
    u * vt
}

/// Basis of the real null space of `a`, one vector per returned column.
pub fn real_null_space(a: &DMatrix<f64>, thresh: f64) -> DMatrix<f64> {
    let ncols = a.ncols();
    if ncols == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Pad so that the SVD returns a full set of right singular vectors.
    let rows = a.nrows().max(ncols);
    let mut padded = DMatrix::<f64>::zeros(rows, ncols);
    padded.view_mut((0, 0), (a.nrows(), ncols)).copy_from(a);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let scale = svd.singular_values.iter().fold(1.0f64, |m, &s| m.max(s));
    let null: Vec<usize> = (0..ncols)
        .filter(|&k| svd.singular_values[k] < thresh * scale)
        .collect();
    let mut out = DMatrix::<f64>::zeros(ncols, null.len());
    for (j, &k) in null.iter().enumerate() {
        out.set_column(j, &vt.row(k).transpose());
    }
    out
}

/// Reduced row echelon form with partial pivoting. Returns the pivot columns.
pub fn rref(m: &mut DMatrix<f64>, eps: f64) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) = (r..rows).fold((r, 0.0f64), |(bi, bv), i| {
            if m[(i, col)].abs() > bv {
                (i, m[(i, col)].abs())
            } else {
                (bi, bv)
            }
        });
        if val < eps {
            continue;
        }
        m.swap_rows(r, best);
        let p = m[(r, col)];
        for j in 0..cols {
            m[(r, j)] /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = m[(i, col)];
                if f != 0.0 {
                    for j in 0..cols {
                        let v = m[(r, j)];
                        m[(i, j)] -= f * v;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Best rational approximation with denominator at most `max_den`, if one lies
/// within `tol`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    for q in 1..=max_den {
        let p = libm::round(x * q as f64);
        if (x - p / q as f64).abs() < tol {
            return Some((p as i64, q));
        }
    }
    None
}

/// Perron-Frobenius eigenvector of a non-negative matrix, normalized so that
/// the first entry is 1.
pub fn perron_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let n = m.nrows();
    // Shifting by the identity makes the iteration converge for periodic
    // matrices such as the fusion matrices of cyclic groups.
    let shifted = m + DMatrix::<f64>::identity(n, n);
    let mut v = DVector::from_element(n, 1.0);
    for _ in 0..10_000 {
        let w = &shifted * &v;
        let norm = w.norm();
        let w = w / norm;
        let delta = (&w - &v).amax();
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    let v0 = v[0];
    v / v0
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn sqrt(x: f64) -> f64 {
    Float::sqrt(x)
}
