//! Fusion rings and modular data.
//!
//! Nothing in here needs F- or R-symbols: [`FusionRingData`] is the integer
//! tensor `N_{ab}^c` and [`ModularData`] bundles the derived scalars and the
//! `S`, `T` matrices together with a consistency checker.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::linalg::{self, c, cis};
use crate::{CMat, Error, Result, C64, ROUND_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct FusionRingData {
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<u32>,
    channels: Vec<Vec<(usize, u32)>>,
}

impl FusionRingData {
    /// Builds a ring from `(a, b, c, N_{ab}^c)` entries and checks the unit,
    /// duality and associativity axioms.
    pub fn new(
        labels: Vec<String>,
        dual: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self> {
        let ring = Self::new_unchecked(labels, dual, entries)?;
        ring.validate()?;
        Ok(ring)
    }

    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        dual: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::InvalidData("no simple objects".into()));
        }
        if dual.len() != r {
            return Err(Error::InvalidData("dual has wrong length".into()));
        }
        let mut n = vec![0u32; r * r * r];
        for (a, b, cc, k) in entries {
            if a >= r || b >= r || cc >= r {
                return Err(Error::InvalidData(format!("fusion index out of range: ({a},{b},{cc})")));
            }
            n[(a * r + b) * r + cc] = k;
        }
        let mut channels = vec![Vec::new(); r * r];
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    let k = n[(a * r + b) * r + cc];
                    if k > 0 {
                        channels[a * r + b].push((cc, k));
                    }
                }
            }
        }
        Ok(Self { labels, dual, n, channels })
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        for (a, &da) in self.dual.iter().enumerate() {
            if da >= r || self.dual[da] != a {
                return Err(Error::InvalidData(format!("dual is not an involution at {a}")));
            }
        }
        if self.dual[0] != 0 {
            return Err(Error::InvalidData("unit is not self-dual".into()));
        }
        for a in 0..r {
            for b in 0..r {
                let d = u32::from(a == b);
                if self.n(0, a, b) != d || self.n(a, 0, b) != d {
                    return Err(Error::InvalidData(format!("unit law fails at ({a},{b})")));
                }
                if self.n(a, b, 0) != u32::from(b == self.dual[a]) {
                    return Err(Error::InvalidData(format!("duality fails at ({a},{b})")));
                }
            }
        }
        let mut lhs = vec![0u64; r];
        let mut rhs = vec![0u64; r];
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(e, k1) in self.channels(a, b) {
                        for &(d, k2) in self.channels(e, cc) {
                            lhs[d] += u64::from(k1) * u64::from(k2);
                        }
                    }
                    for &(f, k1) in self.channels(b, cc) {
                        for &(d, k2) in self.channels(a, f) {
                            rhs[d] += u64::from(k1) * u64::from(k2);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidData(format!(
                            "fusion is not associative at ({a},{b},{cc})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn n(&self, a: usize, b: usize, cc: usize) -> u32 {
        let r = self.rank();
        self.n[(a * r + b) * r + cc]
    }

    /// Nonzero `(c, N_{ab}^c)` pairs in increasing `c`.
    pub fn channels(&self, a: usize, b: usize) -> &[(usize, u32)] {
        &self.channels[a * self.rank() + b]
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.n.iter().all(|&k| k <= 1)
    }

    /// Entries `(a, b, c, N)` with `N > 0`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let r = self.rank();
        (0..r * r).flat_map(move |ab| {
            self.channels[ab].iter().map(move |&(cc, k)| (ab / r, ab % r, cc, k))
        })
    }

    /// Ring of the Deligne product: labels are pairs `(a, b)` flattened as
    /// `a * rank(other) + b`.
    pub fn product(&self, other: &FusionRingData) -> FusionRingData {
        let (r1, r2) = (self.rank(), other.rank());
        let r = r1 * r2;
        let mut labels = Vec::with_capacity(r);
        let mut dual = Vec::with_capacity(r);
        for a in 0..r1 {
            for b in 0..r2 {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
                dual.push(self.dual[a] * r2 + other.dual[b]);
            }
        }
        let mut n = vec![0u32; r * r * r];
        let mut channels = vec![Vec::new(); r * r];
        for a1 in 0..r1 {
            for a2 in 0..r2 {
                for b1 in 0..r1 {
                    for b2 in 0..r2 {
                        let (a, b) = (a1 * r2 + a2, b1 * r2 + b2);
                        let ch = &mut channels[a * r + b];
                        for &(c1, k1) in self.channels(a1, b1) {
                            for &(c2, k2) in other.channels(a2, b2) {
                                let cc = c1 * r2 + c2;
                                n[(a * r + b) * r + cc] = k1 * k2;
                                ch.push((cc, k1 * k2));
                            }
                        }
                        ch.sort_unstable();
                    }
                }
            }
        }
        FusionRingData { labels, dual, n, channels }
    }

    /// Fusion matrix `(N_a)_{bc} = N_{ab}^c`.
    pub fn fusion_matrix(&self, a: usize) -> DMatrix<f64> {
        let r = self.rank();
        DMatrix::from_fn(r, r, |b, cc| f64::from(self.n(a, b, cc)))
    }

    /// Quantum dimensions as the Perron-Frobenius eigenvector of `Σ_a N_a`.
    pub fn perron_dims(&self) -> Vec<f64> {
        let r = self.rank();
        let mut m = DMatrix::<f64>::zeros(r, r);
        for (a, b, cc, k) in self.entries() {
            let _ = a;
            m[(b, cc)] += f64::from(k);
        }
        linalg::perron_vector(&m).iter().copied().collect()
    }

    pub(crate) fn same_as(&self, other: &FusionRingData) -> bool {
        self.dual == other.dual && self.n == other.n
    }
}

#[derive(Debug, Clone)]
pub struct ModularData {
    pub d: Vec<f64>,
    pub omega: Vec<C64>,
    pub s: CMat,
    pub t: CMat,
    pub y: CMat,
    pub c: CMat,
    pub dim_total: f64,
    pub z: C64,
    pub c_mod8: f64,
}

impl ModularData {
    /// Assembles modular data from dimensions, twists and the Hopf-link
    /// matrix `Y`.
    pub fn from_parts(ring: &FusionRingData, d: Vec<f64>, omega: Vec<C64>, y: CMat) -> Self {
        let r = ring.rank();
        let dim_total: f64 = d.iter().map(|x| x * x).sum();
        let z: C64 = d.iter().zip(&omega).map(|(x, w)| w * (x * x)).sum();
        let mut c_mod8 = 4.0 * z.arg() / core::f64::consts::PI;
        c_mod8 = libm::fmod(c_mod8, 8.0);
        if c_mod8 < 0.0 {
            c_mod8 += 8.0;
        }
        if (c_mod8 - 8.0).abs() < 1e-12 {
            c_mod8 = 0.0;
        }
        let s = &y * c(1.0 / linalg::sqrt(dim_total), 0.0);
        let phase = cis(-core::f64::consts::PI * c_mod8 / 12.0);
        let t = CMat::from_fn(r, r, |i, j| if i == j { phase * omega[i] } else { C64::new(0.0, 0.0) });
        let cm = CMat::from_fn(r, r, |i, j| c(if i == ring.dual(j) { 1.0 } else { 0.0 }, 0.0));
        Self { d, omega, s, t, y, c: cm, dim_total, z, c_mod8 }
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

/// `N_{ab}^c` from the Verlinde formula, flattened as `(a * r + b) * r + c`.
pub fn verlinde_fusion(s: &CMat) -> Result<Vec<u32>> {
    let r = s.nrows();
    let mut out = vec![0u32; r * r * r];
    for a in 0..r {
        for b in 0..r {
            for cc in 0..r {
                let mut acc = C64::new(0.0, 0.0);
                for x in 0..r {
                    acc += s[(a, x)] * s[(b, x)] * s[(cc, x)].conj() / s[(0, x)];
                }
                let (k, dev) = linalg::nearest_int(acc.re);
                let dev = dev.max(acc.im.abs());
                if dev > ROUND_TOL || k < 0 {
                    return Err(Error::NonIntegralFusion(dev));
                }
                out[(a * r + b) * r + cc] = k as u32;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

impl CheckEntry {
    pub fn new(name: &str, residual: f64, tol: f64) -> Self {
        Self { name: name.into(), residual, pass: residual < tol }
    }

    pub fn flag(name: &str, pass: bool) -> Self {
        Self { name: name.into(), residual: if pass { 0.0 } else { f64::INFINITY }, pass }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularReport {
    pub entries: Vec<CheckEntry>,
    pub modular: bool,
}

impl ModularReport {
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

pub fn check_modular_data(ring: &FusionRingData, md: &ModularData, tol: f64) -> ModularReport {
    let r = ring.rank();
    let (s, t, cm) = (&md.s, &md.t, &md.c);
    let id = CMat::identity(r, r);
    let mut entries = Vec::new();
    let diff = |a: &CMat, b: &CMat| linalg::max_abs_diff(a, b);

    entries.push(CheckEntry::new("TSTST=S", diff(&(t * s * t * s * t), s), tol));
    entries.push(CheckEntry::new("CTC=T", diff(&(cm * t * cm), t), tol));
    entries.push(CheckEntry::new("CSC=S", diff(&(cm * s * cm), s), tol));
    entries.push(CheckEntry::new("S unitary", diff(&(s * s.adjoint()), &id), tol));
    let st = s * t;
    let st3 = &st * &st * &st;
    let s2 = s * s;
    let res = diff(&st3, &s2).max(diff(&s2, cm));
    entries.push(CheckEntry::new("(ST)^3=S^2=C", res, tol));
    let verlinde = match verlinde_fusion(s) {
        Ok(n) => {
            let ok = (0..r).all(|a| {
                (0..r).all(|b| (0..r).all(|cc| n[(a * r + b) * r + cc] == ring.n(a, b, cc)))
            });
            CheckEntry::flag("Verlinde(S)=N", ok)
        }
        Err(_) => CheckEntry::flag("Verlinde(S)=N", false),
    };
    entries.push(verlinde);
    let modular = entries.iter().all(|e| e.pass);
    ModularReport { entries, modular }
}

pub fn global_dimension(md: &ModularData) -> f64 {
    md.d.iter().map(|x| x * x).sum()
}

pub fn frobenius_schur(md: &ModularData, ring: &FusionRingData, a: usize) -> Result<i32> {
    let r = ring.rank();
    let mut acc = C64::new(0.0, 0.0);
    for b in 0..r {
        for cc in 0..r {
            let k = ring.n(b, cc, a);
            if k > 0 {
                let ratio = md.omega[b] / md.omega[cc];
                acc += ratio * ratio * (f64::from(k) * md.d[b] * md.d[cc]);
            }
        }
    }
    acc /= md.dim_total;
    let (k, dev) = linalg::nearest_int(acc.re);
    if dev > ROUND_TOL || acc.im.abs() > ROUND_TOL || !(-1..=1).contains(&k) {
        return Err(Error::NonIntegralIndicator(acc.re));
    }
    Ok(k as i32)
}

/// Residual of the dimension homomorphism `d_a d_b = Σ_c N_{ab}^c d_c`.
pub fn dimension_homomorphism_residual(ring: &FusionRingData, d: &[f64]) -> f64 {
    let r = ring.rank();
    let mut worst = 0.0f64;
    for a in 0..r {
        for b in 0..r {
            let rhs: f64 = ring.channels(a, b).iter().map(|&(cc, k)| f64::from(k) * d[cc]).sum();
            worst = worst.max((d[a] * d[b] - rhs).abs());
        }
    }
    worst
}
