use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{full_center, QSystem};
use crate::homcalc::{tensor, Morphism};
use crate::linalg::{self, c};
use crate::{CMat, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { restarts: 200, iterations: 500, tol: crate::TOL, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Equivalence {
    /// A unitary `u: θ → θ̃` with `x̃u = (u⊗u)x` and `uw = w̃`.
    Yes { witness: Morphism, residual: f64 },
    No(String),
    Unknown { best_residual: f64 },
}

impl Equivalence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Equivalence::Yes { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            Equivalence::Yes { .. } => "yes",
            Equivalence::No(_) => "no",
            Equivalence::Unknown { .. } => "unknown",
        }
    }
}

/// Largest violation of the intertwining relations and of unitarity.
pub fn intertwiner_residual(q1: &QSystem, q2: &QSystem, u: &Morphism) -> f64 {
    let cat = q1.category();
    let uu = tensor(cat, u, u);
    let a = (q2.x() * u).distance(&(&uu * q1.x()));
    let b = (u * q1.w()).distance(q2.w());
    let id = Morphism::identity(q1.theta());
    let cc = (&u.adjoint() * u).distance(&id);
    a.max(b).max(cc)
}

pub fn equivalent_qsystems(q1: &QSystem, q2: &QSystem, cfg: &SolverConfig) -> Result<Equivalence> {
    if !q1.category().shares_with(q2.category()) {
        return Err(Error::CategoryMismatch);
    }
    if q1.theta() != q2.theta() {
        return Ok(Equivalence::No("the underlying objects differ".into()));
    }
    let th = q1.theta();
    let id = Morphism::identity(th);
    let r0 = intertwiner_residual(q1, q2, &id);
    if r0 < cfg.tol {
        return Ok(Equivalence::Yes { witness: id, residual: r0 });
    }
    if th.mults().iter().all(|&m| m <= 1) {
        if let Some(u) = propagate_phases(q1, q2) {
            let res = intertwiner_residual(q1, q2, &u);
            if res < cfg.tol {
                return Ok(Equivalence::Yes { witness: u, residual: res });
            }
        }
    }
    Ok(gauss_newton(q1, q2, cfg))
}

/// For multiplicity-free `θ` every intertwiner is diagonal; solve for the
/// phases one equation at a time.
fn propagate_phases(q1: &QSystem, q2: &QSystem) -> Option<Morphism> {
    let cat = q1.category();
    let th = q1.theta();
    let r = cat.rank();
    let lay = crate::homcalc::Layout::new(cat, th, th);
    // (c, s, t, x value, x̃ value)
    let mut eqs = Vec::new();
    for s in th.support() {
        for t in th.support() {
            for &(cc, n) in cat.ring().channels(s, t) {
                if th.mult(cc) == 0 {
                    continue;
                }
                for mu in 0..n as usize {
                    let row = lay.index(cat, cc, s, 0, t, 0, mu);
                    let a = q1.x().block(cc)[(row, 0)];
                    let b = q2.x().block(cc)[(row, 0)];
                    if (a.norm() - b.norm()).abs() > 1e-9 {
                        return None;
                    }
                    if a.norm() > 1e-12 {
                        eqs.push((cc, s, t, a, b));
                    }
                }
            }
        }
    }
    let mut ph: Vec<Option<C64>> = vec![None; r];
    let (w1, w2) = (q1.w().block(0)[(0, 0)], q2.w().block(0)[(0, 0)]);
    ph[0] = Some(if w1.norm() > 1e-12 { w2 / w1 } else { c(1.0, 0.0) });
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for &(cc, s, t, a, b) in &eqs {
                // b u_c = u_s u_t a
                match (ph[cc], ph[s], ph[t]) {
                    (None, Some(us), Some(ut)) => {
                        ph[cc] = Some(us * ut * a / b);
                        progress = true;
                    }
                    (Some(uc), None, Some(ut)) if s != t => {
                        ph[s] = Some(b * uc / (ut * a));
                        progress = true;
                    }
                    (Some(uc), Some(us), None) if s != t => {
                        ph[t] = Some(b * uc / (us * a));
                        progress = true;
                    }
                    _ => {}
                }
            }
        }
        match th.support().find(|&s| ph[s].is_none()) {
            Some(s) => ph[s] = Some(c(1.0, 0.0)),
            None => break,
        }
    }
    let mut u = Morphism::identity(th);
    for s in th.support() {
        let p = ph[s].unwrap();
        u.block_mut(s)[(0, 0)] = p / p.norm();
    }
    Some(u)
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let mut gauss = || {
        let u1: f64 = rng.random::<f64>().max(1e-300);
        let u2: f64 = rng.random::<f64>();
        linalg::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
    };
    let m = CMat::from_fn(n, n, |_, _| c(gauss(), gauss()));
    linalg::polar_unitary(&m)
}

/// Hermitian generator from real coordinates: diagonal entries first, then
/// real and imaginary parts of the strict upper triangle.
fn hermitian(n: usize, p: &[f64]) -> CMat {
    let mut h = CMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        h[(i, i)] = c(p[k], 0.0);
        k += 1;
    }
    for i in 0..n {
        for j in i + 1..n {
            let z = c(p[k], p[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

fn expi(h: &CMat) -> CMat {
    let eig = h.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let d = CMat::from_diagonal(&eig.eigenvalues.map(linalg::cis));
    v * d * v.adjoint()
}

fn residual_vector(q1: &QSystem, q2: &QSystem, u: &Morphism) -> DVector<f64> {
    let cat = q1.category();
    let uu = tensor(cat, u, u);
    let a = &(q2.x() * u) - &(&uu * q1.x());
    let b = &(u * q1.w()) - q2.w();
    flatten(&[a, b])
}

fn flatten(ms: &[Morphism]) -> DVector<f64> {
    let mut out = Vec::new();
    for m in ms {
        for blk in m.blocks() {
            for z in blk.iter() {
                out.push(z.re);
                out.push(z.im);
            }
        }
    }
    DVector::from_vec(out)
}

fn gauss_newton(q1: &QSystem, q2: &QSystem, cfg: &SolverConfig) -> Equivalence {
    let cat = q1.category();
    let th = q1.theta();
    let blocks: Vec<usize> = th.support().collect();
    let sizes: Vec<usize> = blocks.iter().map(|&s| th.mult(s)).collect();
    let nparams: usize = sizes.iter().map(|m| m * m).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = f64::INFINITY;

    let apply = |u: &Morphism, p: &[f64]| -> Morphism {
        let mut out = u.clone();
        let mut k = 0;
        for (&s, &m) in blocks.iter().zip(&sizes) {
            let h = hermitian(m, &p[k..k + m * m]);
            k += m * m;
            *out.block_mut(s) = u.block(s) * expi(&h);
        }
        out
    };

    for _ in 0..cfg.restarts {
        let mut u = Morphism::identity(th);
        for (&s, &m) in blocks.iter().zip(&sizes) {
            *u.block_mut(s) = random_unitary(m, &mut rng);
        }
        let mut r = residual_vector(q1, q2, &u);
        let mut norm = r.norm();
        let mut damping = 1e-3;
        let mut stall = 0;
        for _ in 0..cfg.iterations {
            if r.amax() < cfg.tol * 0.1 {
                break;
            }
            // Jacobian columns from the derivative along u·iE.
            let mut jac = DMatrix::<f64>::zeros(r.len(), nparams);
            let mut col = 0;
            for (&s, &m) in blocks.iter().zip(&sizes) {
                for e in 0..m * m {
                    let mut p = vec![0.0; m * m];
                    p[e] = 1.0;
                    let h = hermitian(m, &p);
                    let mut du = Morphism::zero(th, th);
                    *du.block_mut(s) = u.block(s) * h * c(0.0, 1.0);
                    let a = &(q2.x() * &du)
                        - &(&(&tensor(cat, &du, &u) + &tensor(cat, &u, &du)) * q1.x());
                    let b = &du * q1.w();
                    jac.set_column(col, &flatten(&[a, b]));
                    col += 1;
                }
            }
            let jt = jac.transpose();
            let jtj = &jt * &jac;
            let g = &jt * &r;
            let mut accepted = false;
            for _ in 0..20 {
                let mut sys = jtj.clone();
                for i in 0..nparams {
                    sys[(i, i)] += damping * (1.0 + jtj[(i, i)]);
                }
                let Some(step) = sys.cholesky().map(|ch| ch.solve(&(-&g))) else {
                    damping *= 10.0;
                    continue;
                };
                let cand = apply(&u, step.as_slice());
                let rc = residual_vector(q1, q2, &cand);
                let nc = rc.norm();
                if nc < norm {
                    stall = if nc > norm * (1.0 - 1e-6) { stall + 1 } else { 0 };
                    u = cand;
                    r = rc;
                    norm = nc;
                    damping = (damping / 3.0).max(1e-12);
                    accepted = true;
                    break;
                }
                damping *= 4.0;
            }
            if !accepted || stall > 30 {
                break;
            }
        }
        let res = intertwiner_residual(q1, q2, &u);
        if res < cfg.tol {
            return Equivalence::Yes { witness: u, residual: res };
        }
        best = best.min(res);
    }
    Equivalence::Unknown { best_residual: best }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoritaVerdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoritaReport {
    pub verdict: MoritaVerdict,
    pub detail: String,
}

/// Two irreducible Q-systems are Morita equivalent exactly when their full
/// centers are equivalent.
pub fn morita_equivalent(q1: &QSystem, q2: &QSystem, cfg: &SolverConfig) -> Result<MoritaReport> {
    if !q1.is_irreducible() || !q2.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if !q1.category().shares_with(q2.category()) {
        return Err(Error::CategoryMismatch);
    }
    let z1 = full_center(q1)?;
    let z2 = full_center(q2)?;
    let eq = equivalent_qsystems(&z1, &z2, cfg)?;
    let report = match eq {
        Equivalence::Yes { residual, .. } => MoritaReport {
            verdict: MoritaVerdict::Yes,
            detail: format!("full centers equivalent, witness residual {residual:.3e}"),
        },
        Equivalence::No(why) => MoritaReport { verdict: MoritaVerdict::No, detail: format!("full centers differ: {why}") },
        Equivalence::Unknown { best_residual } => MoritaReport {
            verdict: MoritaVerdict::Unknown,
            detail: format!("no witness found, best residual {best_residual:.3e}"),
        },
    };
    Ok(report)
}
