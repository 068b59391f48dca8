//! Argument parsing and command dispatch for `mtcq`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsys_core::classify;
use qsys_core::fusion::CheckEntry;
use qsys_core::homcalc::Object;
use qsys_core::mtc::{self, BraidSide, CategoryData};
use qsys_core::qsystem::{self, MoritaVerdict, QSystem, SolverConfig};

use crate::format::{self, num, round12};
use crate::io::{self, LoadedCategory, QSystemFile};
use crate::spec::QSystemSpec;
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "mtcq", version, about = "Modular tensor categories and Q-systems")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for checks (default 1e-9, or QSYS_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the equivalence solver.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Category data.
    #[command(subcommand)]
    Mtc(MtcCmd),
    /// Q-systems.
    #[command(subcommand)]
    Qsys(QsysCmd),
    /// Modular invariants.
    #[command(subcommand)]
    Classify(ClassifyCmd),
}

#[derive(Debug, Subcommand)]
enum MtcCmd {
    /// Run the axiom and modular-data checks.
    Check { category: String },
    /// Write the category in the JSON file format.
    Export { category: String },
    /// Deligne product of two categories, in the JSON file format.
    Deligne { first: String, second: String },
}

#[derive(Debug, Args)]
struct QArgs {
    /// Builtin spec or category file.
    #[arg(long)]
    category: Option<String>,
    /// `builtin:trivial`, `builtin:perm-C`, `builtin:perm-<map>`, `builtin:lr`,
    /// `builtin:isotropic-<labels>` or a Q-system file.
    #[arg(long)]
    qsystem: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Braid {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
enum QsysCmd {
    /// Check the Q-system axioms.
    Verify(QArgs),
    /// Longo-Rehren Q-system in C⊠rev(C) for a braided auto-equivalence.
    Lr {
        #[arg(long)]
        category: String,
        /// Label map as comma-separated indices; identity by default.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Product Q-system of two Q-systems in the same category.
    Product {
        #[command(flatten)]
        q: QArgs,
        /// Second factor.
        #[arg(long)]
        with: String,
        #[arg(long, value_enum, default_value = "plus")]
        braiding: Braid,
    },
    /// Left or right center.
    Center {
        #[command(flatten)]
        q: QArgs,
        #[arg(long, value_enum, default_value = "left")]
        side: Side,
    },
    /// Full center in C⊠rev(C) and the invariant matrix.
    FullCenter(QArgs),
    /// Modular invariant matrix Z.
    Invariant(QArgs),
    /// Image of a Q-system in C⊠rev(C) under T(a⊠b) = a⊗b.
    FunctorT(QArgs),
    /// Morita equivalence of two irreducible Q-systems.
    Morita {
        #[command(flatten)]
        q: QArgs,
        #[arg(long)]
        with: String,
    },
}

#[derive(Debug, Subcommand)]
enum ClassifyCmd {
    /// All modular invariants with bounded entries.
    Invariants {
        category: String,
        #[arg(long, default_value_t = classify::DEFAULT_MAX_ENTRY)]
        max_entry: i64,
    },
    /// A-D-E table for su2(k).
    Ade {
        /// Range `a..b` (inclusive) or comma-separated list.
        #[arg(long)]
        levels: String,
    },
}

struct Ctx {
    json: bool,
    tol: f64,
    seed: u64,
}

/// Report text plus whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let tol = match cli.tol {
        Some(t) => Ok(t),
        None => match std::env::var("QSYS_TOL") {
            Ok(v) => v.parse::<f64>().map_err(|_| Error::Usage(format!("QSYS_TOL is not a number: {v}"))),
            Err(_) => Ok(qsys_core::TOL),
        },
    };
    let result = tol.and_then(|tol| {
        let ctx = Ctx { json: cli.json, tol, seed: cli.seed };
        dispatch(&ctx, &cli.group)
    });
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {path}: {e}")),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(ctx: &Ctx, group: &Group) -> Result<Outcome, Error> {
    match group {
        Group::Mtc(cmd) => mtc_cmd(ctx, cmd),
        Group::Qsys(cmd) => qsys_cmd(ctx, cmd),
        Group::Classify(cmd) => classify_cmd(ctx, cmd),
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn entries_json(entries: &[CheckEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!({ "name": e.name, "residual": round12(e.residual), "pass": e.pass }))
            .collect(),
    )
}

fn entries_table(entries: &[CheckEntry]) -> String {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| vec![e.name.clone(), num(e.residual), if e.pass { "ok".into() } else { "FAIL".into() }])
        .collect();
    format::table(&["check", "residual", "status"], &rows)
}

// ---------------------------------------------------------------------------

fn mtc_cmd(ctx: &Ctx, cmd: &MtcCmd) -> Result<Outcome, Error> {
    match cmd {
        MtcCmd::Check { category } => {
            let cat = io::load_category(category)?.cat;
            let rep = mtc::verify_axioms(&cat, ctx.tol);
            let ok = rep.entries.iter().all(|e| e.pass);
            let md = cat.modular_data();
            let ring = cat.ring();
            if ctx.json {
                let simples: Vec<Value> = (0..cat.rank())
                    .map(|s| {
                        json!({
                            "label": ring.label(s),
                            "dim": round12(md.d[s]),
                            "twist": [round12(md.omega[s].re), round12(md.omega[s].im)],
                        })
                    })
                    .collect();
                let v = json!({
                    "category": cat.name(),
                    "rank": cat.rank(),
                    "dim_total": round12(md.dim_total),
                    "central_charge_mod8": round12(md.c_mod8),
                    "simples": simples,
                    "checks": entries_json(&rep.entries),
                    "modular": rep.modular,
                    "pass": ok,
                });
                return Ok(Outcome { text: to_json(&v), ok });
            }
            let mut text = format!("category {}  rank {}\n", cat.name(), cat.rank());
            text.push_str(&format!("global dimension {}  central charge mod 8 {}\n\n", num(md.dim_total), num(md.c_mod8)));
            let rows: Vec<Vec<String>> = (0..cat.rank())
                .map(|s| vec![ring.label(s).to_string(), ring.label(ring.dual(s)).to_string(), num(md.d[s]), format::complex(md.omega[s])])
                .collect();
            text.push_str(&format::table(&["simple", "dual", "dim", "twist"], &rows));
            text.push('\n');
            text.push_str(&entries_table(&rep.entries));
            text.push_str(if ok { "\nall checks passed\n" } else { "\nsome checks FAILED\n" });
            Ok(Outcome { text, ok })
        }
        MtcCmd::Export { category } => {
            let cat = io::load_category(category)?.cat;
            Ok(Outcome::ok(to_json(&io::CategoryFile::from_category(&cat))))
        }
        MtcCmd::Deligne { first, second } => {
            let a = io::load_category(first)?.cat;
            let b = io::load_category(second)?.cat;
            let p = mtc::deligne_product(&a, &b);
            Ok(Outcome::ok(to_json(&io::CategoryFile::from_category(&p))))
        }
    }
}

// ---------------------------------------------------------------------------

fn parse_label_map(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Usage(format!("bad label map `{s}`"))))
        .collect()
}

fn load_qsystem(category: Option<&str>, qsys: &str) -> Result<(LoadedCategory, QSystem), Error> {
    if qsys.starts_with("builtin:") {
        let spec = QSystemSpec::parse(qsys)?;
        let cat_arg = category.ok_or_else(|| Error::Usage("builtin Q-systems need --category".into()))?;
        let base = io::load_category(cat_arg)?;
        let cat = &base.cat;
        let q = match &spec {
            QSystemSpec::Trivial => qsystem::trivial_qsystem(cat),
            QSystemSpec::PermC => qsystem::permutation_qsystem(cat, &qsystem::charge_conjugation(cat))?,
            QSystemSpec::Perm(phi) => qsystem::permutation_qsystem(cat, phi)?,
            QSystemSpec::Isotropic(labels) => {
                let idx = labels
                    .iter()
                    .map(|l| cat.ring().index_of(l).ok_or_else(|| Error::Usage(format!("unknown simple `{l}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                qsystem::isotropic_subgroup_qsystem(cat, &idx)?
            }
            QSystemSpec::Lr => {
                let (doubled, q) = lr_in_double(&base, None)?;
                return Ok((doubled, q));
            }
        };
        return Ok((base, q));
    }
    let file: QSystemFile = io::read_json(std::path::Path::new(qsys))?;
    let (loaded, q) = file.to_qsystem()?;
    if let Some(arg) = category {
        let given = io::load_category(arg)?;
        if !given.cat.same_data(&loaded.cat, 1e-12) {
            return Err(Error::Usage("--category does not match the category of the Q-system file".into()));
        }
    }
    Ok((loaded, q))
}

fn lr_in_double(base: &LoadedCategory, phi: Option<&[usize]>) -> Result<(LoadedCategory, QSystem), Error> {
    let cat = &base.cat;
    let id: Vec<usize> = (0..cat.rank()).collect();
    let phi = phi.unwrap_or(&id);
    let doubled = match &base.spec {
        Some(spec) => {
            let d = spec.doubled()?;
            LoadedCategory { cat: d.build()?, spec: Some(d) }
        }
        None => LoadedCategory { cat: mtc::deligne_product(cat, &mtc::reverse_braiding(cat)), spec: None },
    };
    let q = qsystem::lr_qsystem_in(&doubled.cat, phi)?;
    Ok((doubled, q))
}

fn object_string(cat: &CategoryData, obj: &Object) -> String {
    let parts: Vec<String> = obj
        .support()
        .map(|s| {
            let l = cat.ring().label(s);
            if obj.mult(s) == 1 {
                l.to_string()
            } else {
                format!("{}·{}", obj.mult(s), l)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

/// Object of a product category written with pair labels.
fn pair_object_string(cat: &CategoryData, obj: &Object) -> String {
    let Some((a, b)) = cat.factors() else { return object_string(cat, obj) };
    let rb = b.rank();
    let parts: Vec<String> = obj
        .support()
        .map(|s| {
            let l = format!("({},{})", a.ring().label(s / rb), b.ring().label(s % rb));
            if obj.mult(s) == 1 {
                l
            } else {
                format!("{}·{}", obj.mult(s), l)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn qsystem_summary(ctx: &Ctx, cat: &LoadedCategory, q: &QSystem, title: &str) -> (String, Value, bool) {
    let rep = qsystem::verify(q, ctx.tol);
    let text = format!(
        "{title}\n  category    {}\n  theta       {}\n  dim theta   {}\n  irreducible {}\n  commutative {}\n  verified    {} (max residual {})\n",
        cat.cat.name(),
        pair_object_string(&cat.cat, q.theta()),
        num(rep.dtheta),
        rep.irreducible,
        rep.commutative,
        rep.verified,
        num(rep.max_residual()),
    );
    let v = json!({
        "dtheta": round12(rep.dtheta),
        "lambda": round12(rep.lambda),
        "irreducible": rep.irreducible,
        "commutative": rep.commutative,
        "verified": rep.verified,
        "checks": entries_json(&rep.entries),
    });
    (text, v, rep.verified)
}

/// Q-system file with the verification report attached.
fn qsystem_output(ctx: &Ctx, cat: &LoadedCategory, q: &QSystem, title: &str) -> Outcome {
    let (text, report, ok) = qsystem_summary(ctx, cat, q, title);
    if ctx.json {
        let mut v = serde_json::to_value(QSystemFile::from_qsystem(cat, q)).expect("serializable");
        v["report"] = report;
        return Outcome { text: to_json(&v), ok };
    }
    Outcome { text, ok }
}

fn qsys_cmd(ctx: &Ctx, cmd: &QsysCmd) -> Result<Outcome, Error> {
    let cfg = SolverConfig { seed: ctx.seed, tol: ctx.tol, ..SolverConfig::default() };
    match cmd {
        QsysCmd::Verify(a) => {
            let (cat, q) = load_qsystem(a.category.as_deref(), &a.qsystem)?;
            let (mut text, report, ok) = qsystem_summary(ctx, &cat, &q, "Q-system");
            if ctx.json {
                return Ok(Outcome { text: to_json(&report), ok });
            }
            text.push('\n');
            text.push_str(&entries_table(&qsystem::verify(&q, ctx.tol).entries));
            Ok(Outcome { text, ok })
        }
        QsysCmd::Lr { category, phi } => {
            let base = io::load_category(category)?;
            let phi = phi.as_deref().map(parse_label_map).transpose()?;
            let (doubled, q) = lr_in_double(&base, phi.as_deref())?;
            Ok(qsystem_output(ctx, &doubled, &q, "Longo-Rehren Q-system"))
        }
        QsysCmd::Product { q, with, braiding } => {
            let (cat, q1) = load_qsystem(q.category.as_deref(), &q.qsystem)?;
            let cat_arg = q.category.clone().or_else(|| cat.spec.as_ref().map(|s| s.render()));
            let (_, q2) = load_qsystem(cat_arg.as_deref(), with)?;
            let side = match braiding {
                Braid::Plus => BraidSide::Plus,
                Braid::Minus => BraidSide::Minus,
            };
            let p = qsystem::product_qsystem(&q1, &q2, side)?;
            Ok(qsystem_output(ctx, &cat, &p, "product Q-system"))
        }
        QsysCmd::Center { q, side } => {
            let (cat, q) = load_qsystem(q.category.as_deref(), &q.qsystem)?;
            let c = match side {
                Side::Left => qsystem::left_center(&q)?,
                Side::Right => qsystem::right_center(&q)?,
            };
            Ok(qsystem_output(ctx, &cat, &c, "center"))
        }
        QsysCmd::FullCenter(a) => full_center_cmd(ctx, a),
        QsysCmd::Invariant(a) => {
            let (cat, q) = load_qsystem(a.category.as_deref(), &a.qsystem)?;
            let inv = qsystem::invariant_matrix(&q)?;
            let md = cat.cat.modular_data();
            let res = classify::modular_residual(md, &inv.z);
            let ok = res < qsys_core::ROUND_TOL;
            if ctx.json {
                let v = json!({
                    "invariant_matrix": format::int_rows(&inv.z),
                    "trace": inv.trace(),
                    "rounding": round12(inv.rounding),
                    "modular_residual": round12(res),
                });
                return Ok(Outcome { text: to_json(&v), ok });
            }
            let text = format!(
                "Z =\n{}trace {}\nrounding {}\n[Z,S], [Z,T] residual {}\n",
                format::int_matrix(&inv.z),
                inv.trace(),
                num(inv.rounding),
                num(res)
            );
            Ok(Outcome { text, ok })
        }
        QsysCmd::FunctorT(a) => {
            let (cat, q) = load_qsystem(a.category.as_deref(), &a.qsystem)?;
            let t = qsystem::functor_t(&q)?;
            let (base, _) = cat.cat.factors().ok_or(qsys_core::Error::NotAProduct)?;
            let spec = cat.spec.as_ref().and_then(|s| s.factors.first().cloned()).map(|f| crate::spec::CategorySpec { factors: vec![f] });
            let base = LoadedCategory { cat: base.clone(), spec };
            Ok(qsystem_output(ctx, &base, &t, "T(Q)"))
        }
        QsysCmd::Morita { q, with } => {
            let (cat, q1) = load_qsystem(q.category.as_deref(), &q.qsystem)?;
            let cat_arg = q.category.clone().or_else(|| cat.spec.as_ref().map(|s| s.render()));
            let (_, q2) = load_qsystem(cat_arg.as_deref(), with)?;
            let rep = qsystem::morita_equivalent(&q1, &q2, &cfg)?;
            let verdict = match rep.verdict {
                MoritaVerdict::Yes => "yes",
                MoritaVerdict::No => "no",
                MoritaVerdict::Unknown => "unknown",
            };
            let ok = rep.verdict != MoritaVerdict::Unknown;
            if ctx.json {
                let v = json!({ "verdict": verdict, "detail": rep.detail, "seed": ctx.seed });
                return Ok(Outcome { text: to_json(&v), ok });
            }
            Ok(Outcome { text: format!("morita equivalent: {verdict}\n  {}\n", rep.detail), ok })
        }
    }
}

fn full_center_cmd(ctx: &Ctx, a: &QArgs) -> Result<Outcome, Error> {
    let (cat, q) = load_qsystem(a.category.as_deref(), &a.qsystem)?;
    let z = qsystem::full_center(&q)?;
    let inv = qsystem::invariant_matrix(&q)?;
    let doubled = match &cat.spec {
        Some(s) => {
            let d = s.doubled()?;
            LoadedCategory { cat: z.category().clone(), spec: Some(d) }
        }
        None => LoadedCategory { cat: z.category().clone(), spec: None },
    };
    let (summary, report, ok) = qsystem_summary(ctx, &doubled, &z, "full center");
    let dim_total = cat.cat.dim_total();
    let dim_ok = (z.dtheta() - dim_total).abs() < qsys_core::ROUND_TOL;
    if ctx.json {
        let mut v = json!({
            "invariant_matrix": format::int_rows(&inv.z),
            "trace": inv.trace(),
            "dim_total": round12(dim_total),
            "full_center": serde_json::to_value(QSystemFile::from_qsystem(&doubled, &z)).expect("serializable"),
        });
        v["full_center"]["report"] = report;
        return Ok(Outcome { text: to_json(&v), ok: ok && dim_ok });
    }
    let text = format!(
        "{summary}  dim C       {}\n\nZ =\n{}trace {}\n",
        num(dim_total),
        format::int_matrix(&inv.z),
        inv.trace()
    );
    Ok(Outcome { text, ok: ok && dim_ok })
}

// ---------------------------------------------------------------------------

fn parse_levels(s: &str) -> Result<Vec<u32>, Error> {
    let bad = || Error::Usage(format!("bad level list `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn classify_cmd(ctx: &Ctx, cmd: &ClassifyCmd) -> Result<Outcome, Error> {
    match cmd {
        ClassifyCmd::Invariants { category, max_entry } => {
            let cat = io::load_category(category)?.cat;
            let md = cat.modular_data();
            let basis = classify::commutant_basis(md);
            let found = classify::enumerate_invariants(md, *max_entry)?;
            if ctx.json {
                let list: Vec<Value> = found
                    .iter()
                    .map(|z| json!({ "matrix": format::int_rows(&z.z), "trace": z.trace() }))
                    .collect();
                let v = json!({
                    "category": cat.name(),
                    "commutant_dim": basis.dim,
                    "max_entry": max_entry,
                    "count": found.len(),
                    "invariants": list,
                });
                return Ok(Outcome::ok(to_json(&v)));
            }
            let mut text = format!(
                "category {}  commutant dimension {}  invariants {}\n",
                cat.name(),
                basis.dim,
                found.len()
            );
            for (k, z) in found.iter().enumerate() {
                text.push_str(&format!("\n#{}  trace {}\n{}", k + 1, z.trace(), format::int_matrix(&z.z)));
            }
            Ok(Outcome::ok(text))
        }
        ClassifyCmd::Ade { levels } => {
            let levels = parse_levels(levels)?;
            let rows = classify::ade_report(&levels)?;
            if ctx.json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        let entries: Vec<Value> = r
                            .entries
                            .iter()
                            .map(|e| {
                                json!({
                                    "name": e.name,
                                    "trace": e.trace,
                                    "realized_by": e.realized_by,
                                    "matrix": format::int_rows(&e.z),
                                })
                            })
                            .collect();
                        json!({ "level": r.level, "count": r.count, "invariants": entries })
                    })
                    .collect();
                return Ok(Outcome::ok(to_json(&json!({ "levels": list }))));
            }
            let table_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let names: Vec<String> = r.entries.iter().map(|e| e.name.clone()).collect();
                    let traces: Vec<String> = r.entries.iter().map(|e| e.trace.to_string()).collect();
                    let realized: Vec<String> = r
                        .entries
                        .iter()
                        .map(|e| format!("{}: {}", e.name, e.realized_by.as_deref().unwrap_or("-")))
                        .collect();
                    vec![r.level.to_string(), r.count.to_string(), names.join(" "), traces.join(" "), realized.join("; ")]
                })
                .collect();
            Ok(Outcome::ok(format::table(&["level", "count", "invariants", "traces", "realized by"], &table_rows)))
        }
    }
}
