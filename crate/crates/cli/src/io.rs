//! JSON file formats for categories, morphisms and Q-systems.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qsys_core::fusion::FusionRingData;
use qsys_core::homcalc::{Morphism, Object};
use qsys_core::mtc::CategoryData;
use qsys_core::qsystem::QSystem;
use qsys_core::{CMat, C64};

use crate::spec::CategorySpec;
use crate::Error;

/// `[a, b, c, d, e, f, α, β, γ, δ, re, im]`.
pub type FRow = (usize, usize, usize, usize, usize, usize, usize, usize, usize, usize, f64, f64);
/// `[a, b, c, α, β, re, im]`.
pub type RRow = (usize, usize, usize, usize, usize, f64, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub simples: Vec<String>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<(usize, usize, usize, u32)>,
    #[serde(rename = "F", default)]
    pub f: Vec<FRow>,
    #[serde(rename = "R", default)]
    pub r: Vec<RRow>,
}

impl CategoryFile {
    pub fn from_category(cat: &CategoryData) -> Self {
        let ring = cat.ring();
        let f = cat
            .f_entries()
            .into_iter()
            .map(|(k, v)| (k[0], k[1], k[2], k[3], k[4], k[5], k[6], k[7], k[8], k[9], v.re, v.im))
            .collect();
        let r = cat
            .r_entries()
            .into_iter()
            .map(|(k, v)| (k[0], k[1], k[2], k[3], k[4], v.re, v.im))
            .collect();
        Self {
            name: Some(cat.name().to_string()),
            simples: ring.labels().to_vec(),
            dual: ring.duals().to_vec(),
            n: ring.entries().collect(),
            f,
            r,
        }
    }

    pub fn to_category(&self) -> Result<CategoryData, Error> {
        let ring = FusionRingData::new(self.simples.clone(), self.dual.clone(), self.n.iter().copied())?;
        let f: Vec<([usize; 10], C64)> = self
            .f
            .iter()
            .map(|&(a, b, c, d, e, f, al, be, ga, de, re, im)| ([a, b, c, d, e, f, al, be, ga, de], C64::new(re, im)))
            .collect();
        let r: Vec<([usize; 5], C64)> =
            self.r.iter().map(|&(a, b, c, al, be, re, im)| ([a, b, c, al, be], C64::new(re, im))).collect();
        let name = self.name.as_deref().unwrap_or("file");
        Ok(CategoryData::from_entries(name, ring, &f, &r)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub src: Vec<(Label, u32)>,
    pub dst: Vec<(Label, u32)>,
    /// `[simple, row, col, re, im]`, non-zero entries only.
    pub blocks: Vec<(usize, usize, usize, f64, f64)>,
}

fn object_expr(cat: &CategoryData, obj: &Object) -> Vec<(Label, u32)> {
    obj.support().map(|s| (Label::Name(cat.ring().label(s).to_string()), obj.mult(s) as u32)).collect()
}

fn resolve_object(cat: &CategoryData, expr: &[(Label, u32)]) -> Result<Object, Error> {
    let mut mult = vec![0u32; cat.rank()];
    for (label, m) in expr {
        let s = match label {
            Label::Index(i) if *i < cat.rank() => *i,
            Label::Name(n) => cat
                .ring()
                .index_of(n)
                .ok_or_else(|| Error::Usage(format!("unknown simple `{n}`")))?,
            Label::Index(i) => return Err(Error::Usage(format!("simple index {i} out of range"))),
        };
        mult[s] += m;
    }
    Ok(Object::from_mult(mult))
}

impl MorphismFile {
    pub fn from_morphism(cat: &CategoryData, m: &Morphism) -> Self {
        let mut blocks = Vec::new();
        for (s, b) in m.blocks().iter().enumerate() {
            for col in 0..b.ncols() {
                for row in 0..b.nrows() {
                    let z = b[(row, col)];
                    if z.norm() > 0.0 {
                        blocks.push((s, row, col, z.re, z.im));
                    }
                }
            }
        }
        Self { src: object_expr(cat, m.src()), dst: object_expr(cat, m.dst()), blocks }
    }

    pub fn to_morphism(&self, cat: &CategoryData) -> Result<Morphism, Error> {
        let src = resolve_object(cat, &self.src)?;
        let dst = resolve_object(cat, &self.dst)?;
        let mut blocks: Vec<CMat> = (0..cat.rank()).map(|s| CMat::zeros(dst.mult(s), src.mult(s))).collect();
        for &(s, row, col, re, im) in &self.blocks {
            let b = blocks
                .get_mut(s)
                .filter(|b| row < b.nrows() && col < b.ncols())
                .ok_or_else(|| Error::Usage(format!("block entry ({s}, {row}, {col}) out of range")))?;
            b[(row, col)] = C64::new(re, im);
        }
        Ok(Morphism::from_blocks(src, dst, blocks)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    /// A builtin spec or a path to a category file.
    Reference(String),
    Inline(Box<CategoryFile>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSystemFile {
    pub category: CategoryRef,
    pub theta: Vec<u32>,
    pub w: MorphismFile,
    pub x: MorphismFile,
}

/// A category together with the builtin spec it came from, if any.
#[derive(Debug, Clone)]
pub struct LoadedCategory {
    pub cat: CategoryData,
    pub spec: Option<CategorySpec>,
}

impl LoadedCategory {
    pub fn reference(&self) -> CategoryRef {
        match &self.spec {
            Some(s) => CategoryRef::Reference(s.render()),
            None => CategoryRef::Inline(Box::new(CategoryFile::from_category(&self.cat))),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

/// Resolves `builtin:...` or a path to a category file.
pub fn load_category(arg: &str) -> Result<LoadedCategory, Error> {
    if arg.starts_with("builtin:") {
        let spec = CategorySpec::parse(arg)?;
        let cat = spec.build()?;
        return Ok(LoadedCategory { cat, spec: Some(spec) });
    }
    let file: CategoryFile = read_json(Path::new(arg))?;
    Ok(LoadedCategory { cat: file.to_category()?, spec: None })
}

pub fn resolve_ref(r: &CategoryRef) -> Result<LoadedCategory, Error> {
    match r {
        CategoryRef::Reference(s) => load_category(s),
        CategoryRef::Inline(f) => Ok(LoadedCategory { cat: f.to_category()?, spec: None }),
    }
}

impl QSystemFile {
    pub fn from_qsystem(cat: &LoadedCategory, q: &QSystem) -> Self {
        Self {
            category: cat.reference(),
            theta: q.theta().mults().to_vec(),
            w: MorphismFile::from_morphism(&cat.cat, q.w()),
            x: MorphismFile::from_morphism(&cat.cat, q.x()),
        }
    }

    pub fn to_qsystem(&self) -> Result<(LoadedCategory, QSystem), Error> {
        let cat = resolve_ref(&self.category)?;
        let theta = Object::from_mult(self.theta.clone());
        let w = self.w.to_morphism(&cat.cat)?;
        let x = self.x.to_morphism(&cat.cat)?;
        let q = QSystem::new(cat.cat.clone(), theta, w, x)?;
        Ok((cat, q))
    }
}
