//! The `modcat` command line: argument parsing, dispatch and reports.
//!
//! Every command produces a [`Report`] whose text summary is rendered from
//! its JSON findings, so the two never disagree.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::condense_witt::{self, CenterKind, IsotropicSubgroup};
use crate::constructors;
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::fusion::{FusionSubring, DEFAULT_MAX_RANK};
use crate::groups::{builtin, PreMetricGroup, DEFAULT_ORDER_BOUND};
use crate::io;
use crate::modular_data::ModularData;
use crate::sl2z;

pub const MAX_RANK_ENV: &str = "MODCAT_MAX_RANK";

#[derive(Parser, Debug)]
#[command(name = "modcat", version, about = "Exact modular data toolkit")]
struct Cli {
    /// Bound on subring searches; defaults to $MODCAT_MAX_RANK or 24.
    #[arg(long, global = true)]
    max_rank: Option<usize>,
    /// Print the text summary instead of the JSON report.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct modular data and write it as JSON.
    Build(BuildArgs),
    /// Premodular axioms plus S² = dim·C and TSTST = Ω⁺S.
    Verify { file: PathBuf },
    /// Transparent objects, Gauss sums, grading, invertibles and their pairing.
    Analyze { file: PathBuf },
    /// All prime factorizations into modular subrings.
    Factorize { file: PathBuf },
    /// Congruence check of the SL(2,ℤ) representation.
    Congruence { file: PathBuf },
    /// Condense a pointed datum by an isotropic subgroup.
    Condense {
        file: PathBuf,
        /// Generators as coordinate tuples ("1,0;0,1"), or simple indices ("#1;#2")
        /// for modular data input.
        #[arg(long)]
        subgroup: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Quotient of a pointed datum by its radical.
    Modularize {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Witt equivalence of two pointed data.
    Witt { a: PathBuf, b: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BuildKind {
    Pointed,
    Double,
    Dn,
    Dg,
    Product,
    Reverse,
}

#[derive(clap::Args, Debug)]
struct BuildArgs {
    kind: BuildKind,
    /// Cyclic factor orders, comma separated.
    #[arg(long, value_delimiter = ',')]
    abelian: Option<Vec<u64>>,
    /// Quadratic form file.
    #[arg(long)]
    q: Option<PathBuf>,
    /// Group file, or a built-in name (Z<n>, S3, D4, Q8).
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub findings: Value,
    /// Set only for `--text`.
    pub text_mode: bool,
    /// Help and version text, printed as is.
    pub verbatim: Option<String>,
}

impl Report {
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {}\n", self.command.join(" "), self.status.name());
        render(&self.findings, 1, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status.name(),
            "findings": self.findings,
            "summary": self.summary(),
        })
    }

    /// What the binary prints.
    pub fn output(&self) -> String {
        if let Some(text) = &self.verbatim {
            text.clone()
        } else if self.text_mode {
            self.summary()
        } else {
            io::to_canonical_string(&self.to_json())
        }
    }
}

fn is_cyc(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.contains_key("n") && m.contains_key("c") && m.contains_key("approx"))
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ if is_cyc(v) => Some(v["approx"].as_str().unwrap_or_default().to_string()),
        Value::Array(items) => {
            let parts: Vec<String> = items
                .iter()
                .map(|x| if x.is_array() || (x.is_object() && !is_cyc(x)) { None } else { inline(x) })
                .collect::<Option<_>>()?;
            let joined = format!("[{}]", parts.join(", "));
            (joined.len() <= 100).then_some(joined)
        }
        Value::Object(_) => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// Exact value at its minimal conductor with a decimal approximation.
pub fn cyc_json(c: &Cyc) -> Value {
    let mut v = serde_json::to_value(c).expect("values always serialize");
    let z = c.approx();
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let text = if im == 0.0 {
        format!("{re:.12}")
    } else if re == 0.0 {
        format!("{im:.12}i")
    } else {
        format!("{re:.12}{im:+.12}i")
    };
    v.as_object_mut()
        .expect("Cyc serializes to an object")
        .insert("approx".into(), Value::String(text));
    v
}

fn cycs_json(cs: &[Cyc]) -> Value {
    Value::Array(cs.iter().map(cyc_json).collect())
}

fn members(k: &FusionSubring) -> Value {
    json!(k.members())
}

fn max_rank(flag: Option<usize>) -> Result<usize> {
    if let Some(r) = flag {
        return Ok(r);
    }
    match std::env::var(MAX_RANK_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::parse(MAX_RANK_ENV, format!("expected a positive integer, got \"{s}\""))),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code with its report.
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let text_mode = command.iter().any(|a| a == "--text");
    let finish = |status: Status, findings: Value| {
        let report = Report {
            command: command.clone(),
            status,
            findings,
            text_mode,
            verbatim: None,
        };
        (status.exit_code(), report)
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let usage = e.to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let (code, mut report) = finish(Status::Pass, json!({"usage": usage.trim_end()}));
                report.verbatim = Some(usage);
                return (code, report);
            }
            return finish(Status::Error, json!({"usage": usage.trim_end()}));
        }
    };
    match dispatch(&cli) {
        Ok((status, findings)) => finish(status, findings),
        Err(e) => {
            let location = match &e {
                Error::Parse { location, .. } => Value::String(location.clone()),
                _ => Value::Null,
            };
            finish(Status::Error, json!({"error": e.to_string(), "location": location}))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Status, Value)> {
    let max_rank = max_rank(cli.max_rank)?;
    match &cli.command {
        Command::Build(args) => build(args),
        Command::Verify { file } => verify(&load_data(file)?, max_rank),
        Command::Analyze { file } => analyze(&load_data(file)?, max_rank),
        Command::Factorize { file } => factorize(&load_data(file)?, max_rank),
        Command::Congruence { file } => congruence(&load_data(file)?),
        Command::Condense {
            file,
            subgroup,
            output,
        } => {
            let doc = io::read_document(file)?;
            let loc = location(file);
            let m = io::form_or_pointed_from_json(&doc, &loc)?;
            // simple index → element of the recovered form, for `#i` generators
            let degree = match doc.get("ring") {
                Some(_) => Some(io::modular_data_from_json(&doc, &loc)?.ring().grading()?.degree),
                None => None,
            };
            condense(&m, degree.as_deref(), subgroup, output.as_deref())
        }
        Command::Modularize { file, output } => modularize(&load_form(file)?, output.as_deref()),
        Command::Witt { a, b } => witt(&load_form(a)?, &load_form(b)?),
    }
}

fn location(path: &Path) -> String {
    path.display().to_string()
}

fn load_data(path: &Path) -> Result<ModularData> {
    io::modular_data_from_json(&io::read_document(path)?, &location(path))
}

fn load_form(path: &Path) -> Result<PreMetricGroup> {
    io::form_or_pointed_from_json(&io::read_document(path)?, &location(path))
}

fn write(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, io::to_canonical_string(v)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn require<'a, T>(v: &'a Option<T>, flag: &str, kind: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::parse("arguments", format!("build {kind} needs {flag}")))
}

fn build(args: &BuildArgs) -> Result<(Status, Value)> {
    let mut extra = Map::new();
    let md = match args.kind {
        BuildKind::Pointed => {
            let form = match (&args.q, &args.abelian) {
                (Some(path), orders) => {
                    let f = io::form_from_json(&io::read_document(path)?, &location(path))?;
                    if let Some(o) = orders {
                        if f.orders() != o.as_slice() {
                            return Err(Error::parse("--abelian", "orders differ from the form file"));
                        }
                    }
                    f
                }
                (None, Some(o)) => PreMetricGroup::zero(o.clone()),
                (None, None) => PreMetricGroup::zero(vec![]),
            };
            constructors::pointed(&form)?
        }
        BuildKind::Double => constructors::double_abelian(require(&args.abelian, "--abelian", "double")?),
        BuildKind::Dn => constructors::diagonal_dn(*require(&args.n, "--n", "dn")?)?,
        BuildKind::Dg => {
            let spec = require(&args.group, "--group", "dg")?;
            let path = Path::new(spec);
            let g = if path.exists() {
                let doc = io::read_document(path)?;
                let loc = location(path);
                let g = io::group_from_json(&doc, &loc)?.to_finite();
                if io::embedded_character_table(&doc, &g, &loc)?.is_some() {
                    extra.insert("character_table".into(), json!("validated"));
                }
                g
            } else {
                builtin::by_name(spec).ok_or_else(|| {
                    Error::parse("--group", format!("\"{spec}\" is neither a file nor a built-in group"))
                })?
            };
            extra.insert("group_order".into(), json!(g.order()));
            constructors::drinfeld_double(&g, DEFAULT_ORDER_BOUND)?
        }
        BuildKind::Product => {
            let l = load_data(require(&args.left, "--left", "product")?)?;
            let r = load_data(require(&args.right, "--right", "product")?)?;
            constructors::deligne_product(&l, &r)
        }
        BuildKind::Reverse => constructors::reverse(&load_data(require(&args.input, "--input", "reverse")?)?),
    };
    let doc = io::modular_data_to_json(&md);
    let mut findings = extra;
    findings.insert("rank".into(), json!(md.rank()));
    findings.insert("global_dim".into(), cyc_json(&md.global_dim()));
    findings.insert("modular".into(), json!(md.is_modular()?.modular));
    match &args.output {
        Some(path) => {
            write(path, &doc)?;
            findings.insert("output".into(), json!(location(path)));
        }
        None => {
            findings.insert("data".into(), doc);
        }
    }
    Ok((Status::Pass, Value::Object(findings)))
}

fn relation_json(c: &crate::modular_data::RelationCheck) -> Value {
    json!({"holds": c.holds, "first_difference": c.witness})
}

fn verify(md: &ModularData, max_rank: usize) -> Result<(Status, Value)> {
    let report = md.validate_premodular(max_rank);
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    let mut f = Map::new();
    f.insert("rank".into(), json!(md.rank()));
    f.insert("subrings_checked".into(), json!(report.subrings_checked));
    f.insert("violations".into(), json!(violations));
    if !report.is_valid() {
        return Ok((Status::Fail, Value::Object(f)));
    }
    let modularity = md.is_modular()?;
    let gauss = md.gauss_sums()?;
    f.insert("global_dim".into(), cyc_json(&md.global_dim()));
    f.insert("gauss_sums".into(), json!({"plus": cyc_json(&gauss.plus), "minus": cyc_json(&gauss.minus)}));
    f.insert("modular".into(), json!(modularity.modular));
    f.insert("transparent".into(), members(&modularity.transparent));
    let mut pass = true;
    if modularity.modular {
        let rel = md.verify_modular_relations()?;
        pass = rel.holds();
        f.insert(
            "relations".into(),
            json!({"s_squared_is_dim_c": relation_json(&rel.s_squared), "tstst_is_omega_s": relation_json(&rel.tstst)}),
        );
    } else {
        f.insert("relations".into(), Value::Null);
    }
    Ok((if pass { Status::Pass } else { Status::Fail }, Value::Object(f)))
}

fn analyze(md: &ModularData, max_rank: usize) -> Result<(Status, Value)> {
    let report = md.validate_premodular(max_rank);
    if !report.is_valid() {
        let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Ok((Status::Fail, json!({"violations": violations})));
    }
    let modularity = md.is_modular()?;
    let gauss = md.gauss_sums()?;
    let grading = md.ring().grading()?;
    let inv = md.ring().invertibles();
    let mut f = Map::new();
    f.insert("rank".into(), json!(md.rank()));
    f.insert("dims".into(), cycs_json(md.dims()));
    f.insert("twists".into(), cycs_json(md.twists()));
    f.insert("global_dim".into(), cyc_json(&md.global_dim()));
    f.insert("transparent".into(), members(&modularity.transparent));
    f.insert("modular".into(), json!(modularity.modular));
    f.insert("gauss_sums".into(), json!({"plus": cyc_json(&gauss.plus), "minus": cyc_json(&gauss.minus)}));
    f.insert("anomaly_free".into(), json!(gauss.plus == gauss.minus));
    f.insert(
        "grading".into(),
        json!({"group_orders": grading.group.orders(), "order": grading.group.size(), "degree": grading.degree}),
    );
    f.insert("invertibles".into(), json!(inv.elements));
    let mut status = Status::Pass;
    if modularity.modular {
        f.insert(
            "central_charge".into(),
            condense_witt::central_charge(md).map_or(Value::Null, |c| cyc_json(&c)),
        );
        let gn = md.gn_pairing()?;
        if !gn.is_isomorphism() {
            status = Status::Fail;
        }
        f.insert(
            "gn_pairing".into(),
            json!({
                "well_defined": gn.well_defined,
                "bimultiplicative": gn.bimultiplicative,
                "nondegenerate": gn.nondegenerate,
                "isomorphism": gn.is_isomorphism(),
                "grading_order": gn.grading_order,
                "invertibles": gn.invertibles.len(),
            }),
        );
    } else {
        f.insert("gn_pairing".into(), Value::Null);
    }
    Ok((status, Value::Object(f)))
}

fn factorize(md: &ModularData, max_rank: usize) -> Result<(Status, Value)> {
    let p = md.prime_factorize(max_rank)?;
    let list = |ks: &[FusionSubring]| Value::Array(ks.iter().map(members).collect());
    let splittings: Vec<Value> = p
        .splittings
        .iter()
        .map(|s| json!({"factor": members(&s.factor), "complement": members(&s.complement)}))
        .collect();
    Ok((
        Status::Pass,
        json!({
            "is_prime": p.is_prime,
            "modular_subrings": list(&p.modular_subrings),
            "prime_subrings": list(&p.prime_subrings),
            "splittings": splittings,
            "factorizations": p.factorizations.iter().map(|f| list(f)).collect::<Vec<_>>(),
            "factorization_count": p.factorizations.len(),
        }),
    ))
}

fn congruence(md: &ModularData) -> Result<(Status, Value)> {
    let r = sl2z::congruence_check(md)?;
    let scalars: Vec<Value> = r
        .scalars
        .iter()
        .map(|s| s.as_ref().map_or(Value::Null, cyc_json))
        .collect();
    let pass = r.all_scalar() && r.all_one != Some(false);
    Ok((
        if pass { Status::Pass } else { Status::Fail },
        json!({
            "t_order": r.t_order,
            "level": r.level,
            "retried": r.retried,
            "cosets": r.cosets,
            "generators": r.generators,
            "lambda": cyc_json(&r.lambda),
            "mu": cyc_json(&r.mu),
            "canonical": r.canonical,
            "all_scalar": r.all_scalar(),
            "all_one": r.all_one,
            "scalars": scalars,
        }),
    ))
}

/// Generators separated by `;`: coordinate tuples of the form's group, or
/// `#i` for simple object i when the input was modular data.
fn parse_generators(m: &PreMetricGroup, degree: Option<&[usize]>, text: &str) -> Result<Vec<usize>> {
    let g = m.group();
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|tuple| {
            if let Some(index) = tuple.trim().strip_prefix('#') {
                let degree = degree.ok_or_else(|| Error::parse("--subgroup", "#i needs modular data input"))?;
                return index
                    .parse::<usize>()
                    .ok()
                    .and_then(|i| degree.get(i).copied())
                    .ok_or_else(|| Error::parse("--subgroup", format!("no simple object \"{tuple}\"")));
            }
            let coords: Vec<i64> = tuple
                .trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse("--subgroup", format!("bad element \"{tuple}\"")))?;
            if coords.len() != g.rank() {
                return Err(Error::parse(
                    "--subgroup",
                    format!("element \"{tuple}\" needs {} coordinates", g.rank()),
                ));
            }
            Ok(g.encode_signed(&coords))
        })
        .collect()
}

fn form_summary(m: &PreMetricGroup) -> Value {
    json!({
        "order": m.size(),
        "nondegenerate": m.is_nondegenerate(),
        "gauss_sum": cyc_json(&condense_witt::gauss_sum_of_form(m)),
        "form": io::form_to_json(m),
    })
}

fn condense(m: &PreMetricGroup, degree: Option<&[usize]>, subgroup: &str, output: Option<&Path>) -> Result<(Status, Value)> {
    let gens = parse_generators(m, degree, subgroup)?;
    let h = IsotropicSubgroup::new(m, &gens)?;
    let c = condense_witt::condense(m, &h)?;
    let (free, local) = condense_witt::module_dims(m, &h)?;
    if let Some(path) = output {
        write(path, &io::form_to_json(&c))?;
    }
    let mut f = Map::new();
    f.insert("input".into(), form_summary(m));
    f.insert("subgroup_order".into(), json!(h.order()));
    f.insert("subgroup".into(), json!(h.subgroup.elements()));
    f.insert("condensed".into(), form_summary(&c));
    f.insert("modules".into(), json!({"all": free, "local": local}));
    let mut status = Status::Pass;
    if m.is_nondegenerate() {
        let dim_law = c.size() * h.order() * h.order() == m.size();
        let gauss_law = &condense_witt::gauss_sum_of_form(&c) * &Cyc::from_int(h.order() as i64)
            == condense_witt::gauss_sum_of_form(m);
        f.insert("dimension_law".into(), json!(dim_law));
        f.insert("gauss_sum_law".into(), json!(gauss_law));
        if !(dim_law && gauss_law) {
            status = Status::Fail;
        }
    }
    Ok((status, Value::Object(f)))
}

fn modularize(m: &PreMetricGroup, output: Option<&Path>) -> Result<(Status, Value)> {
    let t = condense_witt::center_type(m);
    let q: Vec<String> = t.q_on_radical.iter().map(|r| r.to_string()).collect();
    let mut f = Map::new();
    f.insert("center_type".into(), json!(t.kind.name()));
    f.insert("radical".into(), json!(t.radical.elements()));
    f.insert("q_on_radical".into(), json!(q));
    match t.kind {
        CenterKind::Modular | CenterKind::Modularizable => {
            let quotient = condense_witt::modularize(m)?;
            if let Some(path) = output {
                write(path, &io::form_to_json(&quotient))?;
            }
            f.insert("modularization".into(), form_summary(&quotient));
            Ok((Status::Pass, Value::Object(f)))
        }
        _ => {
            f.insert("modularization".into(), Value::Null);
            Ok((Status::Fail, Value::Object(f)))
        }
    }
}

fn witt(a: &PreMetricGroup, b: &PreMetricGroup) -> Result<(Status, Value)> {
    let w = condense_witt::witt_equivalent(a, b)?;
    let (ka, kb) = &w.anisotropic;
    let witness = w.witness.as_ref().map(|iso| {
        let images: Vec<Vec<u64>> = iso.images.iter().map(|&x| kb.group().decode(x)).collect();
        json!({"generator_images": images})
    });
    let charge = |m: &PreMetricGroup| condense_witt::central_charge_of_form(m).map_or(Value::Null, |c| cyc_json(&c));
    Ok((
        Status::Pass,
        json!({
            "equivalent": w.equivalent,
            "anisotropic_a": form_summary(ka),
            "anisotropic_b": form_summary(kb),
            "central_charge_a": charge(a),
            "central_charge_b": charge(b),
            "witness": witness,
        }),
    ))
}
