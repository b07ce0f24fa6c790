//! Command-line front end. Each subcommand builds a report value from the
//! library and renders it either as JSON or as text via `Display`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 lemma counterexample,
//! 3 enumeration ceiling or sweep budget exceeded.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::critical::{
    critical_set_rankin_selberg, critical_set_so, ratio_argument_map, CriticalSetReport,
    RankinSelbergReport, SoWeight, TwistData,
};
use crate::error::Error;
use crate::lemma::{verify_equivalence, DWindow, SweepConfig, SweepReport};
use crate::parabolic::{KostantReport, Parabolic};
use crate::rootdata::{RootSystem, Weight};
use crate::weyl::{WeylElement, DEFAULT_ENUMERATION_CEILING};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_COUNTEREXAMPLE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

/// Relative `--output` paths (and default counterexample/checkpoint files)
/// are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "SOCRIT_OUTPUT_DIR";

const DEFAULT_SWEEP_BUDGET: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "socrit",
    version,
    about = "Type-D Weyl group combinatorics and critical sets"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest rank for which W(D_r) may be fully enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CEILING)]
    max_enum_rank: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root datum of D_r.
    Roots {
        #[arg(long)]
        rank: usize,
    },
    /// Enumerate W(D_r): order and length distribution.
    Weyl {
        #[arg(long)]
        rank: usize,
        /// Include every element in the report.
        #[arg(long)]
        list: bool,
    },
    /// Kostant representatives of a standard parabolic.
    Kostant {
        #[arg(long)]
        ambient_rank: usize,
        /// Deleted simple roots (1-based, comma separated, or `none`).
        #[arg(long, value_parser = parse_index_set, default_value = "1")]
        delete: IndexSet,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Critical set of L(s, χ × σ) from μ, or of a Rankin–Selberg product from k, l.
    CriticalSet {
        #[command(flatten)]
        so: OptionalSoArgs,
        #[arg(long, conflicts_with_all = ["n", "mu"], requires = "l")]
        k: Option<i64>,
        #[arg(long, requires = "k")]
        l: Option<i64>,
    },
    /// Successive-ratio arguments (−n−d, 1−n−d) over the twist window.
    Ratios {
        #[command(flatten)]
        so: SoArgs,
        /// A single twist; defaults to the whole auto window.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Exhaustive equivalence check of conditions (1), (2), (3).
    VerifyLemma(VerifyArgs),
}

#[derive(Debug, Args)]
struct SoArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated integers, e.g. `3,2` or `5,5,2,-1`.
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    mu: Weight,
}

#[derive(Debug, Args)]
struct OptionalSoArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    mu: Option<Weight>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Even values of n, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Sweep all dominant μ with μ_1 ≤ this bound.
    #[arg(long)]
    mu_max: i64,
    /// `auto` or `LO:HI`.
    #[arg(long, default_value = "auto", value_parser = parse_d_window, allow_hyphen_values = true)]
    d_window: DWindow,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
    budget: usize,
    /// Allow odd n; outcomes are reported, never asserted.
    #[arg(long)]
    explore_odd: bool,
    /// Report runtime_ms as 0 so identical inputs give identical bytes.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, default_value = "lemma-counterexamples.json")]
    counterexamples_out: PathBuf,
    #[arg(long, default_value = "lemma-checkpoint.json")]
    checkpoint_out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Direct,
}

#[derive(Clone, Debug)]
struct IndexSet(Vec<usize>);

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad weight entry {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Weight::new)
}

fn parse_index_set(s: &str) -> Result<IndexSet, String> {
    if s.trim().is_empty() || s.trim() == "none" {
        return Ok(IndexSet(Vec::new()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad index {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(IndexSet)
}

fn parse_d_window(s: &str) -> Result<DWindow, String> {
    if s == "auto" {
        return Ok(DWindow::Auto);
    }
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `auto` or LO:HI, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok(DWindow::Fixed { lo, hi })
}

#[derive(Debug, Serialize)]
pub struct RootsReport {
    pub rank: usize,
    pub root_count: usize,
    pub positive_root_count: usize,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub rho: Weight,
}

#[derive(Debug, Serialize)]
pub struct WeylReport {
    pub rank: usize,
    pub order: usize,
    pub max_length: usize,
    /// Entry `l` counts elements of length `l`.
    pub length_distribution: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<WeylEntry>>,
}

#[derive(Debug, Serialize)]
pub struct WeylEntry {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub length: usize,
}

#[derive(Debug, Serialize)]
pub struct RatiosReport {
    pub n: usize,
    pub mu: Weight,
    pub critical_set: Vec<i64>,
    pub ratios: Vec<RatioEntry>,
}

#[derive(Debug, Serialize)]
pub struct RatioEntry {
    pub d: i64,
    pub arguments: Option<(i64, i64)>,
}

impl fmt::Display for RootsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D_{}: {} roots, {} positive",
            self.rank, self.root_count, self.positive_root_count
        )?;
        writeln!(f, "rho = {}", self.rho)?;
        writeln!(f, "simple roots:")?;
        for (i, a) in self.simple_roots.iter().enumerate() {
            writeln!(f, "  alpha_{} = {a}", i + 1)?;
        }
        writeln!(f, "positive roots:")?;
        for a in &self.positive_roots {
            writeln!(f, "  {a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for WeylReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "|W(D_{})| = {}", self.rank, self.order)?;
        writeln!(f, "max length = {}", self.max_length)?;
        writeln!(f, "length distribution: {:?}", self.length_distribution)?;
        if let Some(elements) = &self.elements {
            for e in elements {
                writeln!(
                    f,
                    "  perm={:?} signs={:?} length={}",
                    e.perm, e.signs, e.length
                )?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for KostantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D_{} deleted {:?}: {} Kostant representatives",
            self.ambient_rank, self.deleted, self.count
        )?;
        let lengths: Vec<_> = self.reps.iter().map(|r| r.length).collect();
        writeln!(f, "lengths: {lengths:?}")?;
        for r in &self.reps {
            writeln!(
                f,
                "  perm={:?} signs={:?} length={}",
                r.perm, r.signs, r.length
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for CriticalSetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} mu={}: critical set {:?}",
            self.n, self.mu, self.critical_set
        )
    }
}

impl fmt::Display for RankinSelbergReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "k={} l={}: critical set {:?}",
            self.k, self.l, self.critical_set
        )
    }
}

impl fmt::Display for RatiosReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} mu={}: critical set {:?}",
            self.n, self.mu, self.critical_set
        )?;
        for r in &self.ratios {
            match r.arguments {
                Some((a, b)) => writeln!(f, "  d={}: L({a})/L({b})", r.d)?,
                None => writeln!(f, "  d={}: -", r.d)?,
            }
        }
        Ok(())
    }
}

enum Failure {
    Usage(String),
    Limit(String),
    Counterexample,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationTooLarge { .. } | Error::BudgetExceeded { .. } => {
                Failure::Limit(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

struct Output<'a> {
    format: Format,
    path: Option<PathBuf>,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit<T: Serialize + fmt::Display>(&mut self, report: &T) -> Result<(), Failure> {
        let body = render(self.format, report);
        match &self.path {
            Some(path) => write_atomic(path, &body)?,
            None => self.out.write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

fn render<T: Serialize + fmt::Display>(format: Format, report: &T) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report.to_string(),
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Temp file in the target directory, then rename.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn so_weight(n: Option<usize>, mu: Weight) -> Result<SoWeight, Failure> {
    if let Some(n) = n {
        if n != mu.rank() {
            return Err(Failure::Usage(format!(
                "--n {n} does not match mu of length {}",
                mu.rank()
            )));
        }
    }
    Ok(SoWeight::new(mu)?)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Limit(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_LIMIT
        }
        Err(Failure::Counterexample) => EXIT_COUNTEREXAMPLE,
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let ceiling = cli.max_enum_rank;
    let mut output = Output {
        format: cli.format,
        path: cli.output.as_deref().map(resolve),
        out,
    };
    match cli.command {
        Command::Roots { rank } => {
            let rs = RootSystem::new(rank)?;
            output.emit(&RootsReport {
                rank,
                root_count: rs.roots().len(),
                positive_root_count: rs.positive_roots().len(),
                simple_roots: rs.simple_roots().to_vec(),
                positive_roots: rs.positive_roots().to_vec(),
                rho: rs.rho().clone(),
            })
        }
        Command::Weyl { rank, list } => {
            let mut distribution = vec![0usize; rank * rank.saturating_sub(1) + 1];
            let mut elements = list.then(Vec::new);
            let mut order = 0;
            for w in WeylElement::enumerate(rank, ceiling)? {
                let length = w.length();
                distribution[length] += 1;
                order += 1;
                if let Some(v) = elements.as_mut() {
                    v.push(WeylEntry {
                        perm: w.perm_one_based(),
                        signs: w.signs(),
                        length,
                    });
                }
            }
            let max_length = distribution.iter().rposition(|&c| c > 0).unwrap_or(0);
            output.emit(&WeylReport {
                rank,
                order,
                max_length,
                length_distribution: distribution,
                elements,
            })
        }
        Command::Kostant {
            ambient_rank,
            delete,
            method,
        } => {
            let p = Parabolic::new(ambient_rank, &delete.0)?;
            let reps = match method {
                Method::Auto => p.kostant_reps(ceiling)?,
                Method::Brute => p.kostant_reps_brute_force(ceiling)?,
                Method::Direct => p.kostant_reps_direct()?,
            };
            output.emit(&reps.report())
        }
        Command::CriticalSet { so, k, l } => match (k, l, so.mu) {
            (Some(k), Some(l), _) => output.emit(&RankinSelbergReport {
                k,
                l,
                critical_set: critical_set_rankin_selberg(k, l)?,
            }),
            (_, _, Some(mu)) => output.emit(&CriticalSetReport::new(&so_weight(so.n, mu)?)),
            _ => Err(Failure::Usage(
                "give either --mu or both --k and --l".into(),
            )),
        },
        Command::Ratios { so, d } => {
            let weight = so_weight(so.n, so.mu)?;
            let ds: Vec<i64> = match d {
                Some(d) => vec![d],
                None => {
                    let (lo, hi) = DWindow::auto_bounds(weight.n(), weight.last_abs());
                    (lo..=hi).collect()
                }
            };
            output.emit(&RatiosReport {
                n: weight.n(),
                mu: weight.mu().clone(),
                critical_set: critical_set_so(&weight),
                ratios: ds
                    .into_iter()
                    .map(|d| RatioEntry {
                        d,
                        arguments: ratio_argument_map(&TwistData::new(d), &weight),
                    })
                    .collect(),
            })
        }
        Command::VerifyLemma(args) => verify(args, &mut output, err),
    }
}

fn verify(args: VerifyArgs, output: &mut Output<'_>, err: &mut dyn Write) -> Result<(), Failure> {
    let config = SweepConfig {
        ns: args.n,
        mu_max: args.mu_max,
        d_window: args.d_window,
        budget: Some(args.budget),
        explore_odd: args.explore_odd,
        jobs: args.jobs,
    };
    let strip = |mut r: SweepReport| {
        if args.no_timing {
            r.runtime_ms = 0;
        }
        r
    };
    match verify_equivalence(&config) {
        Ok(report) => finish_sweep(&strip(report), &args.counterexamples_out, output, err),
        Err(Error::BudgetExceeded {
            budget,
            required,
            checkpoint,
        }) => {
            let path = resolve(&args.checkpoint_out);
            write_atomic(&path, &render(Format::Json, &strip(*checkpoint)))?;
            Err(Failure::Limit(format!(
                "sweep needs {required} instances but the budget is {budget}; partial report written to {}",
                path.display()
            )))
        }
        Err(e) => Err(e.into()),
    }
}

/// Emits the report; a dirty report is also persisted as JSON and turns
/// into [`EXIT_COUNTEREXAMPLE`].
fn finish_sweep(
    report: &SweepReport,
    counterexamples_out: &Path,
    output: &mut Output<'_>,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    output.emit(report)?;
    if report.is_clean() {
        return Ok(());
    }
    let path = resolve(counterexamples_out);
    write_atomic(&path, &render(Format::Json, report))?;
    writeln!(err, "lemma violated; report written to {}", path.display())?;
    Err(Failure::Counterexample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemma::{check_instance, LemmaInstance};

    #[test]
    fn dirty_sweep_is_persisted_and_fails() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("cx.json");
        let mut bad =
            check_instance(&LemmaInstance::new(Weight::new(vec![3, 2]), -3).unwrap()).unwrap();
        bad.cond1 = false;
        bad.equivalent = false;
        bad.violation = true;
        let report = SweepReport {
            instances: 1,
            counterexamples: vec![bad],
            ratio_coverage_ok: true,
            uniqueness_ok: true,
            ..Default::default()
        };
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let mut output = Output {
            format: Format::Json,
            path: None,
            out: &mut stdout,
        };
        let result = finish_sweep(&report, &target, &mut output, &mut stderr);
        assert!(matches!(result, Err(Failure::Counterexample)));
        let saved: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
        assert_eq!(saved["counterexamples"].as_array().unwrap().len(), 1);
        assert_eq!(saved["counterexamples"][0]["equivalent"], false);
        assert!(String::from_utf8(stderr)
            .unwrap()
            .contains("lemma violated"));
    }

    #[test]
    fn clean_sweep_passes() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("cx.json");
        let report = SweepReport {
            ratio_coverage_ok: true,
            uniqueness_ok: true,
            ..Default::default()
        };
        let mut stdout = Vec::new();
        let mut output = Output {
            format: Format::Text,
            path: None,
            out: &mut stdout,
        };
        assert!(finish_sweep(&report, &target, &mut output, &mut Vec::new()).is_ok());
        assert!(!target.exists());
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_weight("3,-2").unwrap(), Weight::new(vec![3, -2]));
        assert!(parse_weight("3,x").is_err());
        assert_eq!(parse_index_set("none").unwrap().0, Vec::<usize>::new());
        assert_eq!(parse_index_set("1,4").unwrap().0, vec![1, 4]);
        assert_eq!(parse_d_window("auto").unwrap(), DWindow::Auto);
        assert_eq!(
            parse_d_window("-10:6").unwrap(),
            DWindow::Fixed { lo: -10, hi: 6 }
        );
        assert!(parse_d_window("6:-10").is_err());
        assert!(parse_d_window("6").is_err());
    }
}
