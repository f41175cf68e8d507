//! Command line front end.
//!
//! Exit codes: 0 on success, 1 on a runtime error (reported on stderr as
//! `{"error": {"kind": ..., "message": ...}}`), 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use betamodel_core::{
    all_pair_pvalues, homogeneity_cauchy, homogeneity_classic, homogeneity_lrt_with_fit, mle_fit,
    pair_test, BetaFit, DegreeSequence, FitConfig, HomogeneityResult, Method,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::SimulationConfig;
use crate::io::{read_degrees, read_graph, GraphFormat};
use crate::montecarlo::run_experiment;
use crate::reproduce::{self, Options};
use crate::{datasets, Error, Result};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "BETAMODEL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "betamodel",
    version,
    about = "Fit and test the beta-model for undirected graphs"
)]
pub struct Cli {
    /// Worker threads for simulations (default: $BETAMODEL_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the model and print estimates with diagnostics.
    Fit {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        fit: FitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Test beta_i = beta_j for one pair of nodes.
    TestPair {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        fit: FitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Test that all node parameters are equal.
    TestHomog {
        #[command(flatten)]
        input: Input,
        /// cauchy, lrt, fisher, pearson, george, edgington, stouffer or tippett.
        #[arg(long, default_value = "cauchy", value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[command(flatten)]
        fit: FitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-sided pair p-values for every pair i < j.
    Pvalues {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        fit: FitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a Monte Carlo experiment described by a TOML file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write per-replication statistics as CSV.
        #[arg(long)]
        replications_csv: Option<PathBuf>,
    },
    /// Regenerate a standard table, figure data or the chesapeake analysis.
    Reproduce {
        target: Target,
        /// Replications per cell.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated node counts replacing the default grid.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Directory for output files; without it the main result goes to stdout.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Table2,
    Table3,
    Table4,
    Figures,
    Homogeneity,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Edge list, one `i j` pair per line, 1-based.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// 0/1 adjacency matrix, one row per line.
    #[arg(long)]
    pub adjacency: Option<PathBuf>,
    /// Degree sequence, comma or whitespace separated.
    #[arg(long)]
    pub degrees: Option<PathBuf>,
    /// Bundled dataset name.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Fit JSON written by `betamodel fit`.
    #[arg(long)]
    pub fit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

impl FitArgs {
    fn config(&self) -> FitConfig {
        let mut cfg = FitConfig::default();
        if let Some(t) = self.tolerance {
            cfg.tolerance = t;
        }
        if let Some(m) = self.max_iterations {
            cfg.max_iterations = m;
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

impl Input {
    fn degrees(&self) -> Result<DegreeSequence> {
        if let Some(path) = &self.edges {
            Ok(read_graph(path, GraphFormat::EdgeList)?.degrees())
        } else if let Some(path) = &self.adjacency {
            Ok(read_graph(path, GraphFormat::Adjacency)?.degrees())
        } else if let Some(path) = &self.degrees {
            read_degrees(path)
        } else if let Some(name) = &self.dataset {
            datasets::dataset(name).ok_or_else(|| Error::UnknownDataset(name.clone()))
        } else {
            unreachable!("clap enforces one input")
        }
    }

    fn load_fit(&self, cfg: &FitConfig) -> Result<BetaFit> {
        match &self.fit {
            Some(path) => read_fit(path),
            None => Ok(mle_fit(&self.degrees()?, cfg)?),
        }
    }
}

/// Reads a fit written by `betamodel fit`.
pub fn read_fit(path: &Path) -> Result<BetaFit> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fit: BetaFit = serde_json::from_str(&text)?;
    let n = fit.degrees.len();
    for actual in [fit.beta_hat.len(), fit.v_hat.len()] {
        if actual != n {
            return Err(betamodel_core::Error::DimensionMismatch {
                expected: n,
                actual,
            }
            .into());
        }
    }
    Ok(fit)
}

#[derive(Serialize)]
struct PairOutput {
    method: &'static str,
    i: usize,
    j: usize,
    statistic: f64,
    p_value: f64,
    upper_tail: f64,
    reject: bool,
}

#[derive(Serialize)]
struct PairValue {
    i: usize,
    j: usize,
    p_value: f64,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            }
            fs::write(path, text).map_err(|e| Error::io(path, e))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn fit_csv(fit: &BetaFit) -> String {
    let mut out = String::from("node,degree,beta_hat,v_hat\n");
    for (k, (&b, &v)) in fit.beta_hat.as_slice().iter().zip(&fit.v_hat).enumerate() {
        let _ = writeln!(out, "{},{},{b},{v}", k + 1, fit.degrees.as_slice()[k]);
    }
    out
}

fn homogeneity_csv(r: &HomogeneityResult) -> String {
    format!(
        "method,statistic,p_value,reject,assumes_independence\n{},{},{},{},{}\n",
        r.method, r.statistic, r.p_value, r.reject, r.assumes_independence
    )
}

fn homogeneity(fit: &BetaFit, method: Method, alpha: f64) -> Result<HomogeneityResult> {
    Ok(match method {
        Method::Cauchy => homogeneity_cauchy(fit, alpha)?,
        Method::Lrt => homogeneity_lrt_with_fit(fit, alpha)?,
        other => homogeneity_classic(fit, other.combiner().expect("classic method"), alpha)?,
    })
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    emit(text, Some(&dir.join(name)))
}

fn reproduce(target: Target, opts: &Options, dir: Option<&Path>) -> Result<()> {
    let (name, text) = match target {
        Target::Table1 => (
            "table1.csv",
            reproduce::pair_rows_csv(&reproduce::table1(opts)?),
        ),
        Target::Table2 => (
            "table2.csv",
            reproduce::homogeneity_rows_csv(&reproduce::table2(opts)?),
        ),
        Target::Table3 => (
            "table3.csv",
            reproduce::homogeneity_rows_csv(&reproduce::table3(opts)?),
        ),
        Target::Table4 => ("table4.csv", reproduce::table4_csv(&reproduce::table4()?)),
        Target::Homogeneity => ("homogeneity.json", to_json(&reproduce::homogeneity(0.05)?)?),
        Target::Figures => {
            let panels = reproduce::figures(opts)?;
            if let Some(dir) = dir {
                for panel in &panels {
                    let hist = panel
                        .distribution
                        .histogram
                        .to_csv(panel.distribution.reference_mean);
                    write_file(dir, &format!("figures/hist_{}.csv", panel.stem()), &hist)?;
                }
            }
            (
                "figures/summary.csv",
                reproduce::figures_summary_csv(&panels),
            )
        }
    };
    match dir {
        Some(dir) => write_file(dir, name, &text),
        None => emit(&text, None),
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Fit { input, fit, output } => {
            let fitted = input.load_fit(&fit.config())?;
            let text = match output.format {
                Format::Json => to_json(&fitted)?,
                Format::Csv => fit_csv(&fitted),
            };
            emit(&text, output.output.as_deref())
        }
        Command::TestPair {
            input,
            i,
            j,
            alpha,
            fit,
            output,
        } => {
            let fitted = input.load_fit(&fit.config())?;
            let r = pair_test(&fitted, i, j, alpha)?;
            let text = match output.format {
                Format::Json => to_json(&PairOutput {
                    method: "pair",
                    i: r.i,
                    j: r.j,
                    statistic: r.u_hat,
                    p_value: r.p_value,
                    upper_tail: r.upper_tail,
                    reject: r.reject,
                })?,
                Format::Csv => format!(
                    "i,j,statistic,p_value,upper_tail,reject\n{},{},{},{},{},{}\n",
                    r.i, r.j, r.u_hat, r.p_value, r.upper_tail, r.reject
                ),
            };
            emit(&text, output.output.as_deref())
        }
        Command::TestHomog {
            input,
            method,
            alpha,
            fit,
            output,
        } => {
            let fitted = input.load_fit(&fit.config())?;
            let r = homogeneity(&fitted, method, alpha)?;
            let text = match output.format {
                Format::Json => to_json(&r)?,
                Format::Csv => homogeneity_csv(&r),
            };
            emit(&text, output.output.as_deref())
        }
        Command::Pvalues { input, fit, output } => {
            let fitted = input.load_fit(&fit.config())?;
            let pvals = all_pair_pvalues(&fitted)?;
            let text = match output.format {
                Format::Json => {
                    let rows: Vec<PairValue> = pvals
                        .iter()
                        .map(|(i, j, p_value)| PairValue { i, j, p_value })
                        .collect();
                    to_json(&rows)?
                }
                Format::Csv => {
                    let mut out = String::from("i,j,p_value\n");
                    for (i, j, p) in pvals.iter() {
                        let _ = writeln!(out, "{i},{j},{p}");
                    }
                    out
                }
            };
            emit(&text, output.output.as_deref())
        }
        Command::Simulate {
            config,
            output,
            replications_csv,
        } => {
            let mut spec = SimulationConfig::load(&config)?.to_spec()?;
            spec.keep_replications = replications_csv.is_some();
            let mut report = run_experiment(&spec)?;
            if let Some(path) = &replications_csv {
                emit(&report.replication_csv().unwrap_or_default(), Some(path))?;
                report.per_replication = None;
            }
            emit(&to_json(&report)?, output.as_deref())
        }
        Command::Reproduce {
            target,
            reps,
            seed,
            sizes,
            output_dir,
        } => {
            let opts = Options {
                replications: reps,
                seed,
                sizes,
            };
            reproduce(target, &opts, output_dir.as_deref())
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{THREADS_ENV}={v} is not a thread count"))),
        _ => Ok(None),
    }
}

fn run_parsed(cli: Cli) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(cli.threads)? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| execute(cli.command))
}

/// Structured error text written to stderr on failure.
pub fn error_json(err: &Error) -> String {
    let report = ErrorReport {
        error: ErrorBody {
            kind: err.kind(),
            message: err.to_string(),
        },
    };
    serde_json::to_string(&report).expect("error report serializes")
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{}", error_json(&err));
            1
        }
    }
}
