//! Command-line interface. `run` parses arguments, dispatches to the
//! library and returns the process exit code: `0` success, `1` a violated
//! bound or failed certification, `2` a usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{big_json, e_value, BoundValue};
use crate::combinat::{h, sigma_size};
use crate::error::Error;
use crate::extremal::{conjecture_family, dq_family, hp_affine_family, linear_family, CertifiedFamily};
use crate::gf::{prime_power, Field};
use crate::linalg::rref;
use crate::poly::{count_affine_zeros, count_projective_zeros, MonomialBasis};
use crate::polyfile::{parse_poly_file, PolyFile};
use crate::prm::{ghw_bruteforce, ghw_formula, prm_code};
use crate::verify::{
    audit_bounds, bounds_suite, combinatorial_identities, exhaustive_max, extremal_suite, oracle_suite,
    random_search, regime_consistency, SuiteReport, DEFAULT_BUDGET,
};

/// Inclusive integer range written `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusiveRange {
    pub start: u64,
    pub end: u64,
}

impl InclusiveRange {
    fn single(&self) -> Option<u64> {
        (self.start == self.end).then_some(self.start)
    }

    fn values(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(InclusiveRange { start, end })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Hp,
    Conj,
    Dq,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Regimes,
    Bounds,
    Extremal,
    Oracle,
    Combinat,
}

#[derive(Debug, Parser)]
#[command(name = "homzeros", version, about = "Common zeros of homogeneous polynomials over finite fields")]
pub struct Cli {
    /// Field size (a prime power), or a range of sizes where allowed.
    #[arg(long, global = true)]
    q: Option<InclusiveRange>,
    /// Field characteristic (with --e as an alternative to --q).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Extension degree (with --p).
    #[arg(long, global = true)]
    e: Option<u32>,
    /// Degree, or inclusive range `a..b`.
    #[arg(long, global = true)]
    d: Option<InclusiveRange>,
    /// Projective dimension, or inclusive range `a..b`.
    #[arg(long, global = true)]
    m: Option<InclusiveRange>,
    /// Number of forms, or inclusive range `a..b`.
    #[arg(long, global = true)]
    r: Option<InclusiveRange>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest number of subspaces an exhaustive run may cover.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for caching search reports.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The value of e_r(d, m) with status and provenance, one row per cell.
    Bound,
    /// A grid of values: one row per r, one column per d.
    Table,
    /// Build and certify an extremal family.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Count the common zeros of a polynomial file and audit the bounds.
    Count {
        input: PathBuf,
    },
    /// Search subspaces for the largest common zero set.
    Search {
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Samples for random mode.
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Samples per cell for the bounds suite.
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
    },
    /// Generalized Hamming weights of projective Reed–Muller codes.
    Ghw {
        /// Also compute the weights by enumerating subcodes.
        #[arg(long)]
        brute_force: bool,
        /// Write the generator matrix as CSV to this path.
        #[arg(long)]
        generator_out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::Certification(_)) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Output text plus whether a check failed (exit code 1).
struct Output {
    text: String,
    failed: bool,
}

type CmdResult = Result<Output, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = dispatch(&cli).and_then(|out| emit(&cli, out, stdout));
    let _ = stdout.flush();
    match outcome {
        Ok(true) => 1,
        Ok(false) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Writes the output to --out or `stdout`; returns whether a check failed.
fn emit(cli: &Cli, out: Output, stdout: &mut dyn Write) -> Result<bool, Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => stdout
            .write_all(out.text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}")))?,
    }
    Ok(out.failed)
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Bound => cmd_bound(cli),
        Command::Table => cmd_table(cli),
        Command::Construct { family } => cmd_construct(cli, *family),
        Command::Count { input } => cmd_count(cli, input),
        Command::Search { mode, iters } => cmd_search(cli, *mode, *iters),
        Command::Verify { suite, iters } => cmd_verify(cli, *suite, *iters),
        Command::Ghw {
            brute_force,
            generator_out,
        } => cmd_ghw(cli, *brute_force, generator_out.as_deref()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Field sizes selected by --q (a range keeps only prime powers) or --p/--e.
fn field_sizes(cli: &Cli) -> Result<Vec<u64>, Failure> {
    match (cli.q, cli.p) {
        (Some(range), p) => {
            if let Some(q) = range.single() {
                if prime_power(q).is_none() {
                    return Err(usage(format!("q = {q} is not a prime power")));
                }
                if let Some(p) = p {
                    let e = cli.e.unwrap_or(1);
                    if p.checked_pow(e) != Some(q) {
                        return Err(usage(format!("q = {q} does not equal p^e = {p}^{e}")));
                    }
                }
                return Ok(vec![q]);
            }
            if p.is_some() || cli.e.is_some() {
                return Err(usage("--p/--e cannot be combined with a range of q"));
            }
            let qs: Vec<u64> = range.values().filter(|&q| prime_power(q).is_some()).collect();
            if qs.is_empty() {
                return Err(usage("no prime powers in the q range"));
            }
            Ok(qs)
        }
        (None, Some(p)) => {
            let e = cli.e.unwrap_or(1);
            let q = p.checked_pow(e).filter(|&q| prime_power(q) == Some((p as u32, e)));
            q.map(|q| vec![q]).ok_or_else(|| usage(format!("{p}^{e} is not a prime power with prime {p}")))
        }
        (None, None) => Err(usage("give the field with --q, or --p and --e")),
    }
}

/// The single field selected by --q or --p/--e.
fn one_field(cli: &Cli) -> Result<Arc<Field>, Failure> {
    let qs = field_sizes(cli)?;
    if qs.len() != 1 {
        return Err(usage("this command needs a single field size"));
    }
    let field = match (cli.p, cli.q) {
        (Some(p), None) => Field::new(p as u32, cli.e.unwrap_or(1), None)?,
        _ => Field::of_size(qs[0])?,
    };
    Ok(Arc::new(field))
}

fn required(range: Option<InclusiveRange>, name: &str) -> Result<InclusiveRange, Failure> {
    range.ok_or_else(|| usage(format!("--{name} is required")))
}

fn single(range: Option<InclusiveRange>, name: &str) -> Result<u64, Failure> {
    required(range, name)?
        .single()
        .ok_or_else(|| usage(format!("--{name} must be a single value here")))
}

fn as_u32(v: u64, name: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| usage(format!("--{name} = {v} is too large")))
}

/// Ranks from --r, or every rank `1..=C(m+d, d)` when absent.
fn ranks(cli: &Cli, d: u32, m: u32) -> Result<Vec<u64>, Failure> {
    let top = sigma_size(d, m)?;
    match cli.r {
        Some(range) => {
            if range.start == 0 || range.end > top {
                return Err(usage(format!("--r must lie in 1..{top} for d = {d}, m = {m}")));
            }
            Ok(range.values().collect())
        }
        None => Ok((1..=top).collect()),
    }
}

fn cell_json(q: u64, d: u32, m: u32, r: u64, b: &BoundValue) -> Value {
    let mut map = Map::new();
    map.insert("q".into(), json!(q));
    map.insert("d".into(), json!(d));
    map.insert("m".into(), json!(m));
    map.insert("r".into(), json!(r));
    if let Value::Object(inner) = b.to_json() {
        map.extend(inner);
    }
    Value::Object(map)
}

fn opt_big(v: &Option<num_bigint::BigUint>) -> String {
    v.as_ref().map_or(String::new(), ToString::to_string)
}

/// Renders rows of flat objects as CSV or a Markdown table.
fn tabulate(format: Format, columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let _ = writeln!(out, "{}", columns.join(","));
            for row in rows {
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
        _ => {
            let _ = writeln!(out, "| {} |", columns.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
            for row in rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    out
}

fn cmd_bound(cli: &Cli) -> CmdResult {
    let mut cells = Vec::new();
    for q in field_sizes(cli)? {
        for m in required(cli.m, "m")?.values() {
            for d in required(cli.d, "d")?.values() {
                let (d, m) = (as_u32(d, "d")?, as_u32(m, "m")?);
                for r in ranks(cli, d, m)? {
                    cells.push((q, d, m, r, e_value(r, d, m, q)?));
                }
            }
        }
    }
    let text = match cli.format {
        Format::Json => pretty(&Value::Array(
            cells.iter().map(|(q, d, m, r, b)| cell_json(*q, *d, *m, *r, b)).collect(),
        )),
        f => {
            let rows: Vec<Vec<String>> = cells
                .iter()
                .map(|(q, d, m, r, b)| {
                    vec![
                        q.to_string(),
                        d.to_string(),
                        m.to_string(),
                        r.to_string(),
                        opt_big(&b.value),
                        b.status.as_str().into(),
                        b.theorem.into(),
                        opt_big(&b.lower),
                        opt_big(&b.upper),
                    ]
                })
                .collect();
            tabulate(f, &["q", "d", "m", "r", "value", "status", "theorem", "lower", "upper"], &rows)
        }
    };
    Ok(Output { text, failed: false })
}

/// Compact cell text: the value, `~v` when conjectural, `[l,u]` when open.
fn cell_text(b: &BoundValue) -> String {
    match (&b.value, b.status) {
        (Some(v), crate::bounds::Status::Exact) => v.to_string(),
        (Some(v), _) => format!("~{v}"),
        (None, _) => format!("[{},{}]", opt_big(&b.lower), opt_big(&b.upper)),
    }
}

fn cmd_table(cli: &Cli) -> CmdResult {
    let qs = field_sizes(cli)?;
    let mut tables = Vec::new();
    let mut text = String::new();
    for q in qs {
        for m in required(cli.m, "m")?.values() {
            let m = as_u32(m, "m")?;
            let ds: Vec<u32> = required(cli.d, "d")?
                .values()
                .filter(|&d| d >= 1 && d <= q)
                .map(|d| as_u32(d, "d"))
                .collect::<Result<_, _>>()?;
            let top = ds.iter().map(|&d| sigma_size(d, m)).collect::<Result<Vec<_>, _>>()?;
            let max_r = cli.r.map_or(top.iter().copied().max().unwrap_or(0), |r| r.end);
            let min_r = cli.r.map_or(1, |r| r.start.max(1));
            let mut rows = Vec::new();
            for r in min_r..=max_r {
                let cells: Vec<Option<BoundValue>> = ds
                    .iter()
                    .zip(&top)
                    .map(|(&d, &t)| if r <= t { e_value(r, d, m, q).ok() } else { None })
                    .collect();
                rows.push((r, cells));
            }
            match cli.format {
                Format::Json => tables.push(json!({
                    "q": q,
                    "m": m,
                    "d": ds,
                    "rows": rows.iter().map(|(r, cells)| json!({
                        "r": r,
                        "cells": cells.iter().map(|c| c.as_ref().map_or(Value::Null, BoundValue::to_json)).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })),
                f => {
                    if f == Format::Md {
                        let _ = writeln!(text, "q = {q}, m = {m} (~ conjectural, [l,u] open)\n");
                    }
                    let mut columns = vec!["r".to_string()];
                    columns.extend(ds.iter().map(|d| format!("d={d}")));
                    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
                    let body: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(r, cells)| {
                            let mut row = vec![r.to_string()];
                            row.extend(cells.iter().map(|c| c.as_ref().map_or(String::new(), cell_text)));
                            row
                        })
                        .collect();
                    text.push_str(&tabulate(f, &cols, &body));
                    if f == Format::Md {
                        text.push('\n');
                    }
                }
            }
        }
    }
    if cli.format == Format::Json {
        text = pretty(&Value::Array(tables));
    }
    Ok(Output { text, failed: false })
}

fn family_json(family: &CertifiedFamily) -> Result<Value, Failure> {
    Ok(json!({
        "family": PolyFile::from_polys(&family.polys)?.to_json(),
        "count": family.claimed_count,
        "target": family.target.to_json(),
        "certified": family.certified,
    }))
}

fn cmd_construct(cli: &Cli, kind: FamilyArg) -> CmdResult {
    if cli.format != Format::Json {
        return Err(usage("construct writes JSON only"));
    }
    let field = one_field(cli)?;
    let m = as_u32(single(cli.m, "m")?, "m")?;
    let r = single(cli.r, "r")?;
    let family = match kind {
        FamilyArg::Hp => hp_affine_family(r, as_u32(single(cli.d, "d")?, "d")?, m, &field)?,
        FamilyArg::Conj => conjecture_family(r, as_u32(single(cli.d, "d")?, "d")?, m, &field)?,
        FamilyArg::Dq => dq_family(r, m, &field)?,
        FamilyArg::Linear => linear_family(r, m, &field)?,
    };
    Ok(Output {
        text: pretty(&family_json(&family)?),
        failed: !family.certified,
    })
}

fn cmd_count(cli: &Cli, input: &Path) -> CmdResult {
    let text = std::fs::read_to_string(input).map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
    let polys = parse_poly_file(&text)?;
    let first = &polys[0];
    let field = first.field().clone();
    let q = field.q() as u64;
    let projective = first.is_homogeneous();
    let basis = if projective {
        MonomialBasis::homogeneous(first.nvars(), first.degree())?
    } else {
        MonomialBasis::affine(first.nvars(), first.degree())?
    };
    let rows = polys.iter().map(|f| f.coefficients(&basis)).collect::<Result<Vec<_>, _>>()?;
    let span = rref(&field, basis.len(), &rows)?;
    let (count, violations) = if projective {
        let count = count_projective_zeros(&polys)?;
        if first.nvars() < 2 {
            return Err(usage("projective files need at least two variables"));
        }
        let m = first.nvars() as u32 - 1;
        let violations = if span.rank() == 0 {
            Vec::new()
        } else {
            audit_bounds(&span, first.degree(), m, &field)?
        };
        (count, violations)
    } else {
        let count = count_affine_zeros(&polys)?;
        let mut violations = Vec::new();
        let (d, m) = (first.degree(), first.nvars() as u32);
        if span.rank() > 0 && d >= 1 && (d as u64) < q && m >= 1 {
            let bound = h(span.rank() as u64, d, m, q)?;
            if num_bigint::BigUint::from(count) > bound {
                violations.push(crate::verify::Violation {
                    check: "affine".into(),
                    detail: format!("{count} affine zeros exceed H_{}({d}, {m}) = {bound}", span.rank()),
                });
            }
        }
        (count, violations)
    };
    let failed = !violations.is_empty();
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "count": count,
            "projective": projective,
            "rank": span.rank(),
            "violations": violations,
        })),
        f => tabulate(
            f,
            &["count", "projective", "rank", "violations"],
            &[vec![
                count.to_string(),
                projective.to_string(),
                span.rank().to_string(),
                violations.len().to_string(),
            ]],
        ),
    };
    Ok(Output { text, failed })
}

fn cache_path(dir: &Path, mode: ModeArg, q: u64, d: u32, m: u32, r: u64, seed: Option<u64>, budget: u64, iters: Option<u64>) -> PathBuf {
    let mode = match mode {
        ModeArg::Exhaustive => "exhaustive",
        ModeArg::Random => "random",
    };
    let seed = seed.map_or("none".to_string(), |s| s.to_string());
    let iters = iters.map_or(String::new(), |i| format!("-iters{i}"));
    dir.join(format!("search-q{q}-d{d}-m{m}-r{r}-{mode}-seed{seed}-budget{budget}{iters}.json"))
}

fn cmd_search(cli: &Cli, mode: ModeArg, iters: u64) -> CmdResult {
    let field = one_field(cli)?;
    let q = field.q() as u64;
    let d = as_u32(single(cli.d, "d")?, "d")?;
    let m = as_u32(single(cli.m, "m")?, "m")?;
    let mut payloads = Vec::new();
    let mut metas = Vec::new();
    for r in ranks(cli, d, m)? {
        let (seed, it) = match mode {
            ModeArg::Exhaustive => (None, None),
            ModeArg::Random => (Some(cli.seed), Some(iters)),
        };
        let cached = cli
            .cache_dir
            .as_ref()
            .map(|dir| cache_path(dir, mode, q, d, m, r, seed, cli.budget, it));
        if let Some(path) = &cached {
            if let Ok(text) = std::fs::read_to_string(path) {
                if let Ok(payload) = serde_json::from_str::<Value>(&text) {
                    payloads.push(payload);
                    metas.push(json!({"cached": true}));
                    continue;
                }
            }
        }
        let report = match mode {
            ModeArg::Exhaustive => exhaustive_max(r, d, m, &field, cli.threads, cli.budget)?,
            ModeArg::Random => random_search(r, d, m, &field, iters, cli.seed, cli.threads)?,
        };
        let payload = report.to_json();
        if let Some(path) = &cached {
            std::fs::create_dir_all(path.parent().expect("cache files live in a directory"))
                .and_then(|_| std::fs::write(path, pretty(&payload)))
                .map_err(|e| usage(format!("cannot write cache {}: {e}", path.display())))?;
        }
        let mut meta = report.meta_json();
        meta["cached"] = json!(false);
        payloads.push(payload);
        metas.push(meta);
    }
    let failed = payloads
        .iter()
        .any(|p| p["bound_violations"].as_array().is_some_and(|v| !v.is_empty()));
    let text = match cli.format {
        Format::Json => pretty(&json!({"results": payloads, "meta": metas})),
        f => {
            let rows: Vec<Vec<String>> = payloads
                .iter()
                .map(|p| {
                    let field_text = |k: &str| match &p[k] {
                        Value::Null => String::new(),
                        v => v.to_string().trim_matches('"').to_string(),
                    };
                    vec![
                        field_text("q"),
                        field_text("d"),
                        field_text("m"),
                        field_text("r"),
                        field_text("mode"),
                        field_text("max_count"),
                        field_text("subspaces_examined"),
                        p["dispatcher"]["value"].to_string().replace("null", ""),
                        p["dispatcher"]["status"].as_str().unwrap_or("").into(),
                        p["bound_violations"].as_array().map_or(0, Vec::len).to_string(),
                    ]
                })
                .collect();
            tabulate(
                f,
                &["q", "d", "m", "r", "mode", "max_count", "subspaces", "dispatcher", "status", "violations"],
                &rows,
            )
        }
    };
    Ok(Output { text, failed })
}

fn suite_text(format: Format, report: &SuiteReport) -> String {
    match format {
        Format::Json => pretty(&report.to_json()),
        f => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        if c.failure_count == 0 { "pass" } else { "FAIL" }.to_string(),
                        c.name.to_string(),
                        c.cases.to_string(),
                        c.failure_count.to_string(),
                    ]
                })
                .collect();
            tabulate(f, &["result", "check", "cases", "failures"], &rows)
        }
    }
}

fn cmd_verify(cli: &Cli, suite: SuiteArg, iters: u64) -> CmdResult {
    let q_max = |default: u64| cli.q.map_or(default, |r| r.end);
    let m_max = |default: u32| -> Result<u32, Failure> { cli.m.map_or(Ok(default), |r| as_u32(r.end, "m")) };
    let report = match suite {
        SuiteArg::Regimes => regime_consistency(q_max(9), m_max(4)?)?,
        SuiteArg::Combinat => combinatorial_identities(q_max(9), m_max(4)?)?,
        SuiteArg::Extremal => extremal_suite(q_max(5), m_max(3)?)?,
        SuiteArg::Oracle => {
            let qs = match cli.q {
                Some(_) => field_sizes(cli)?,
                None => vec![2, 3],
            };
            let mut all = SuiteReport {
                suite: "oracle",
                checks: Vec::new(),
            };
            for q in qs {
                all.merge(oracle_suite(q, m_max(2)?, cli.budget, cli.threads)?);
            }
            all
        }
        SuiteArg::Bounds => {
            let cells = match (cli.q, cli.d, cli.m) {
                (None, None, None) => vec![(3, 2, 2), (4, 3, 2), (3, 3, 2)],
                _ => vec![(
                    single(cli.q, "q")?,
                    as_u32(single(cli.d, "d")?, "d")?,
                    as_u32(single(cli.m, "m")?, "m")?,
                )],
            };
            bounds_suite(&cells, iters, cli.seed, cli.threads)?
        }
    };
    Ok(Output {
        text: suite_text(cli.format, &report),
        failed: !report.passed(),
    })
}

fn cmd_ghw(cli: &Cli, brute_force: bool, generator_out: Option<&Path>) -> CmdResult {
    let field = one_field(cli)?;
    let q = field.q() as u64;
    let d = as_u32(single(cli.d, "d")?, "d")?;
    let m = as_u32(single(cli.m, "m")?, "m")?;
    let code = if brute_force || generator_out.is_some() {
        Some(prm_code(d, m, &field)?)
    } else {
        None
    };
    if let (Some(path), Some(code)) = (generator_out, &code) {
        std::fs::write(path, code.generator_csv()).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut rows = Vec::new();
    let mut failed = false;
    for r in ranks(cli, d, m)? {
        let formula = ghw_formula(r, d, m, q)?;
        let mut row = Map::new();
        row.insert("r".into(), json!(r));
        row.insert("d".into(), json!(d));
        row.insert("m".into(), json!(m));
        row.insert("q".into(), json!(q));
        row.insert("ghw".into(), formula.value.as_ref().map_or(Value::Null, big_json));
        row.insert("status".into(), json!(formula.status.as_str()));
        row.insert("theorem".into(), json!(formula.theorem));
        if let Some(l) = &formula.lower {
            row.insert("lower".into(), big_json(l));
        }
        if let Some(u) = &formula.upper {
            row.insert("upper".into(), big_json(u));
        }
        if let Some(code) = &code {
            let weight = ghw_bruteforce(r, code, cli.budget, cli.threads)?;
            let agrees = formula.exact_u64().is_none_or(|v| v == weight);
            failed |= !agrees;
            row.insert("brute_force".into(), json!(weight));
            row.insert("agrees".into(), json!(agrees));
        }
        rows.push(Value::Object(row));
    }
    let text = match cli.format {
        Format::Json => pretty(&Value::Array(rows)),
        f => {
            let mut columns = vec!["r", "d", "m", "q", "ghw", "status", "theorem"];
            if code.is_some() {
                columns.extend(["brute_force", "agrees"]);
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    columns
                        .iter()
                        .map(|c| match &row[*c] {
                            Value::Null => String::new(),
                            Value::String(s) => s.clone(),
                            v => v.to_string(),
                        })
                        .collect()
                })
                .collect();
            tabulate(f, &columns, &body)
        }
    };
    Ok(Output { text, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("1..6".parse::<InclusiveRange>().unwrap(), InclusiveRange { start: 1, end: 6 });
        assert_eq!("4".parse::<InclusiveRange>().unwrap(), InclusiveRange { start: 4, end: 4 });
        assert_eq!("2..=3".parse::<InclusiveRange>().unwrap(), InclusiveRange { start: 2, end: 3 });
        assert!("5..2".parse::<InclusiveRange>().is_err());
        assert!("x".parse::<InclusiveRange>().is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["homzeros", "bound", "--q", "6", "--d", "2", "--m", "2"], &mut out, &mut err), 2);
        assert_eq!(run(["homzeros", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["homzeros", "bound", "--q", "3", "--d", "2", "--m", "2", "--r", "7"], &mut out, &mut err), 2);
    }
}
