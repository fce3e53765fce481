//! Command line front end.
//!
//! ```text
//! qfodc verify --group glq --n 2 --calculus gamma-z1 --zn "L-[n,n]^2" --format json
//! qfodc table  --group glq --n 2 --calculus gamma-x
//! qfodc verify --check-all
//! ```
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 for
//! configuration errors and unsupported combinations.

pub mod suite;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::calculi::recipe::{build_elementary, build_recipe_orthogonal, build_recipe_sl, build_triangles, sl_choice_g, Chain, Triangle};
use crate::calculi::relations::{commutation_table, relation_table};
use crate::calculi::{
    build_bicovariant, build_gamma_full, build_gamma_row, build_gamma_x, build_gamma_y, build_gamma_z, default_zn, Calculus,
    FormEngine,
};
use crate::fralgebra::{Family, GroupSpec};
use crate::numeric::default_q0;
use crate::oracle::{Context, OracleConfig};
use crate::report::{CheckResult, Status, VerificationReport};
use crate::ufunctionals::GroupLike;
use crate::{Error, Result};

pub const CACHE_ENV: &str = "QFODC_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "qfodc", version, about = "Exact checks for left-covariant differential calculi on FRT quantum groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the checks for a group and calculus and print a report.
    Verify(RunArgs),
    /// Print the commutation relations of a calculus.
    Table(RunArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    /// glq, slq, oq or spq.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Specialization point of the numeric oracle, a rational such as 7/10.
    #[arg(long)]
    pub q: Option<String>,
    /// gamma-x, gamma-y, gamma-z1..4, gamma-full, gamma-row:J, bicovariant,
    /// elementary:CHAIN:I,J, recipe-oq, recipe-spq, recipe-slq, t-plus, ...
    #[arg(long)]
    pub calculus: Option<String>,
    /// Group-like parameter, e.g. "L-[n,n]^2".
    #[arg(long)]
    pub zn: Option<String>,
    #[arg(long)]
    pub degree_bound: Option<usize>,
    /// Comma-separated check ids (or id prefixes) to keep.
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
    /// Run the whole acceptance suite.
    #[arg(long)]
    pub check_all: bool,
    /// json or markdown.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// JSON file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Resolved configuration: file values overridden by flags.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub group: Option<String>,
    pub n: Option<usize>,
    pub q: Option<String>,
    pub calculus: Option<String>,
    pub zn: Option<String>,
    #[serde(alias = "degree-bound")]
    pub degree_bound: Option<usize>,
    pub check: Vec<String>,
    #[serde(alias = "check-all")]
    pub check_all: bool,
    pub format: Option<String>,
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn merge(mut self, a: &RunArgs) -> RunConfig {
        macro_rules! take {
            ($($f:ident),*) => {$(if a.$f.is_some() { self.$f = a.$f.clone(); })*};
        }
        take!(group, n, q, calculus, zn, degree_bound, format, workers);
        if !a.check.is_empty() {
            self.check = a.check.clone();
        }
        self.check_all |= a.check_all;
        self
    }

    pub fn group_spec(&self) -> Result<GroupSpec> {
        let fam: Family = self.group.as_deref().ok_or_else(|| Error::Config("--group is required".into()))?.parse()?;
        let n = self.n.ok_or_else(|| Error::Config("--n is required".into()))?;
        GroupSpec::new(fam, n)
    }

    pub fn oracle_config(&self) -> Result<OracleConfig> {
        let mut c = OracleConfig::default();
        if let Some(q) = &self.q {
            let v: BigRational = q.trim().parse().map_err(|_| Error::Config(format!("--q must be a rational number, got '{q}'")))?;
            if v <= BigRational::from_integer(0.into()) {
                return Err(Error::Config("--q must be positive".into()));
            }
            c.q0 = Some(v);
        }
        Ok(c)
    }

    pub fn zn_for(&self, g: &GroupSpec) -> Result<Option<GroupLike>> {
        self.zn.as_deref().map(|s| GroupLike::parse_with_n(s, g.n).map_err(|e| Error::Config(e.to_string()))).transpose()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound.unwrap_or(crate::calculi::checks::DEGREE_BOUND)
    }
}

/// Build a calculus from its command line name.
pub fn build_calculus(ctx: &Context, name: &str, zn: Option<&GroupLike>) -> Result<Calculus> {
    let g = &ctx.group;
    let zdef = default_zn(g);
    let z = zn.unwrap_or(&zdef);
    match name {
        "gamma-x" => build_gamma_x(ctx),
        "gamma-y" => build_gamma_y(ctx),
        "gamma-full" => build_gamma_full(ctx),
        "bicovariant" => build_bicovariant(ctx),
        "recipe-oq" | "recipe-spq" => {
            let want = if name == "recipe-oq" { Family::Oq } else { Family::Spq };
            if g.family != want {
                return Err(Error::Config(format!("{name} needs --group {want}")));
            }
            build_recipe_orthogonal(ctx, None, 2)
        }
        "recipe-slq" => {
            if g.family != Family::SLq {
                return Err(Error::Config("recipe-slq needs --group slq".into()));
            }
            let (f, gs) = sl_choice_g(g.n, g.n - 1);
            build_recipe_sl(ctx, &f, &gs)
        }
        _ => {
            if let Some(v) = name.strip_prefix("gamma-z") {
                let v: u8 = v.parse().map_err(|_| Error::Config(format!("unknown calculus '{name}'")))?;
                return build_gamma_z(ctx, v, z);
            }
            if let Some(j) = name.strip_prefix("gamma-row:") {
                let j: usize = j.parse().map_err(|_| Error::Config(format!("bad row in '{name}'")))?;
                if j == 0 {
                    return Err(Error::Config("rows are numbered from 1".into()));
                }
                return build_gamma_row(ctx, j - 1);
            }
            if let Some(rest) = name.strip_prefix("elementary:") {
                let (chain, idx) = rest.split_once(':').ok_or_else(|| Error::Config("expected elementary:CHAIN:I,J".into()))?;
                let (i, j) = idx.split_once(',').ok_or_else(|| Error::Config("expected elementary:CHAIN:I,J".into()))?;
                let parse = |s: &str| -> Result<usize> {
                    s.trim().parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(|| Error::Config(format!("bad index '{s}'")))
                };
                let id = GroupLike::identity(g.n);
                return build_elementary(ctx, Chain::parse(chain)?, parse(i)? - 1, parse(j)? - 1, zn.unwrap_or(&id));
            }
            if name.starts_with("t-") {
                let parts = name.split('+').map(Triangle::parse).collect::<Result<Vec<_>>>()?;
                return build_triangles(ctx, &parts);
            }
            Err(Error::Config(format!("unknown calculus '{name}'")))
        }
    }
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::Unsupported(_) | Error::Parse(_) | Error::Io(_) | Error::AssumptionViolated(_))
}

/// What a run produced: text for stdout and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        Outcome { code: if is_config_error(e) { 2 } else { 1 }, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn exit_code(report: &VerificationReport) -> i32 {
    if report.checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else if report.checks.iter().any(|c| c.status == Status::Unsupported) {
        2
    } else {
        0
    }
}

fn keep(filter: &[String], id: &str) -> bool {
    filter.is_empty() || filter.iter().any(|f| id == f || id.starts_with(f.as_str()))
}

fn render(report: &VerificationReport, format: &str) -> String {
    let mut s = if format == "markdown" { report.to_markdown() } else { report.to_json() };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn cache_path(cfg: &RunConfig) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let key = format!(
        "v{}-{}-{}-{}-{}-{}-{}",
        env!("CARGO_PKG_VERSION"),
        cfg.group.as_deref().unwrap_or("-"),
        cfg.n.unwrap_or(0),
        cfg.calculus.as_deref().unwrap_or("group"),
        cfg.zn.as_deref().unwrap_or("default"),
        cfg.q.as_deref().unwrap_or("default"),
        cfg.degree_bound(),
    );
    let safe: String = key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' }).collect();
    Some(PathBuf::from(dir).join(format!("{safe}.json")))
}

fn load_cached(path: &Path) -> Option<Vec<CheckResult>> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn store_cached(path: &Path, checks: &[CheckResult]) {
    if let Some(parent) = path.parent() {
        let _ = fs::create_dir_all(parent);
    }
    if let Ok(text) = serde_json::to_string(checks) {
        let _ = fs::write(path, text);
    }
}

fn verify(cfg: &RunConfig) -> Result<VerificationReport> {
    if cfg.check_all {
        let mut checks: Vec<CheckResult> = suite::acceptance().into_iter().filter(|c| keep(&cfg.check, &c.id)).collect();
        if checks.is_empty() {
            return Err(Error::Config("no acceptance criterion matches --check".into()));
        }
        let mut r = VerificationReport {
            group: cfg.group.clone().unwrap_or_else(|| "all".into()),
            n: cfg.n.unwrap_or(0),
            q: cfg.q.clone().unwrap_or_else(|| "7/10".into()),
            calculus: "acceptance".into(),
            zn: None,
            checks: std::mem::take(&mut checks),
        };
        r.sort();
        return Ok(r);
    }
    let g = cfg.group_spec()?;
    let oc = cfg.oracle_config()?;
    let q = oc.q0.clone().unwrap_or_else(|| default_q0(&g)).to_string();
    let zn = cfg.zn_for(&g)?;
    let cache = cache_path(cfg);
    let cached = cache.as_deref().and_then(load_cached);
    let (calculus, zn_text, checks) = match cached {
        Some(checks) => (cfg.calculus.clone().unwrap_or_else(|| "none".into()), cfg.zn.clone(), checks),
        None => {
            let ctx = Context::new(&g, oc)?;
            let (name, zn_text, checks) = match &cfg.calculus {
                None => ("none".to_string(), None, suite::group_checks(&ctx)),
                Some(name) => {
                    let c = match build_calculus(&ctx, name, zn.as_ref()) {
                        Ok(c) => c,
                        Err(e) if is_config_error(&e) => return Err(e),
                        Err(e) => {
                            let fail = CheckResult::fail("build", "construction of the tangent space", e.to_string());
                            return Ok(VerificationReport {
                                group: g.family.to_string(),
                                n: g.n,
                                q,
                                calculus: name.clone(),
                                zn: cfg.zn.clone(),
                                checks: vec![fail],
                            });
                        }
                    };
                    let zt = c.zn.as_ref().map(|z| cfg.zn.clone().unwrap_or_else(|| z.to_string()));
                    (c.kind.to_string(), zt, suite::calculus_checks(&ctx, &c, cfg.degree_bound()))
                }
            };
            if let Some(p) = &cache {
                store_cached(p, &checks);
            }
            (name, zn_text, checks)
        }
    };
    let checks: Vec<CheckResult> = checks.into_iter().filter(|c| keep(&cfg.check, &c.id)).collect();
    if checks.is_empty() {
        return Err(Error::Config(format!("no check matches --check {}", cfg.check.join(","))));
    }
    let mut r = VerificationReport { group: g.family.to_string(), n: g.n, q, calculus, zn: zn_text, checks };
    r.sort();
    Ok(r)
}

#[derive(Serialize)]
struct TableOut {
    group: String,
    n: usize,
    calculus: String,
    relations: String,
    commutation: String,
}

fn table(cfg: &RunConfig) -> Result<String> {
    let g = cfg.group_spec()?;
    let ctx = Context::new(&g, cfg.oracle_config()?)?;
    let name = cfg.calculus.as_deref().ok_or_else(|| Error::Config("--calculus is required".into()))?;
    let c = build_calculus(&ctx, name, cfg.zn_for(&g)?.as_ref())?;
    let fe = FormEngine::new(&c, &ctx);
    let relations = relation_table(&fe)?;
    let commutation = if c.basis.is_empty() && !c.is_bicovariant() { String::new() } else { commutation_table(&fe)? };
    if cfg.format.as_deref() == Some("json") {
        let out = TableOut { group: g.family.to_string(), n: g.n, calculus: c.kind.to_string(), relations, commutation };
        return Ok(serde_json::to_string_pretty(&out).expect("table serializes") + "\n");
    }
    let mut s = format!("# {} (n = {}), calculus {}\n\n", g.family, g.n, c.kind);
    if !relations.lines().nth(2).unwrap_or("").is_empty() {
        s.push_str("## Relations\n\n");
        s.push_str(&relations);
        s.push('\n');
    }
    s.push_str("## Commutation rules\n\n");
    s.push_str(&commutation);
    Ok(s)
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let (args, is_table) = match &cli.command {
        Command::Verify(a) => (a, false),
        Command::Table(a) => (a, true),
    };
    let base = match &args.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let cfg = base.merge(args);
    if let Some(f) = &cfg.format {
        if f != "json" && f != "markdown" {
            return Err(Error::Config(format!("--format must be json or markdown, got '{f}'")));
        }
    }
    let work = || -> Result<Outcome> {
        if is_table {
            return Ok(Outcome { code: 0, stdout: table(&cfg)?, stderr: String::new() });
        }
        let r = verify(&cfg)?;
        Ok(Outcome { code: exit_code(&r), stdout: render(&r, cfg.format.as_deref().unwrap_or("json")), stderr: String::new() })
    };
    match cfg.workers {
        Some(0) => Err(Error::Config("--workers must be positive".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Parse arguments and run, without touching the process streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, stdout: if code == 0 { e.to_string() } else { String::new() }, stderr: if code == 0 { String::new() } else { e.to_string() } };
        }
    };
    dispatch(cli).unwrap_or_else(|e| Outcome::error(&e))
}

/// Entry point of the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_merge_prefers_flags() {
        let file: RunConfig = serde_json::from_str(r#"{"group": "glq", "n": 3, "degree-bound": 2}"#).unwrap();
        let args = RunArgs { n: Some(2), ..Default::default() };
        let cfg = file.merge(&args);
        assert_eq!(cfg.group.as_deref(), Some("glq"));
        assert_eq!(cfg.n, Some(2));
        assert_eq!(cfg.degree_bound(), 2);
        assert!(serde_json::from_str::<RunConfig>(r#"{"grup": "glq"}"#).is_err());
    }

    #[test]
    fn exit_code_prefers_failures() {
        let mut r = VerificationReport { group: "glq".into(), n: 2, q: "7/10".into(), calculus: "gamma-x".into(), zn: None, checks: vec![CheckResult::pass("a", "")] };
        assert_eq!(exit_code(&r), 0);
        r.checks.push(CheckResult::new("b", "", Status::Unsupported, None));
        assert_eq!(exit_code(&r), 2);
        r.checks.push(CheckResult::fail("c", "", "w"));
        assert_eq!(exit_code(&r), 1);
    }

    #[test]
    fn unsupported_is_exit_two() {
        let out = run(["qfodc", "verify", "--group", "spq", "--n", "4", "--calculus", "gamma-x"]);
        assert_eq!(out.code, 2, "{out:?}");
        let out = run(["qfodc", "verify", "--group", "glq", "--n", "2", "--calculus", "gamma-q"]);
        assert_eq!(out.code, 2);
    }
}
