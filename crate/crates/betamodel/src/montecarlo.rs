//! Simulation studies: size and power of the pair test and of the
//! homogeneity tests, and the sampling distribution of `Û_ij`.
//!
//! Replication `k` of an experiment with base seed `s` samples its graph
//! from the ChaCha8 stream `(s, k)`, so reports do not depend on the number
//! of worker threads. Replications whose fit fails (boundary degrees or no
//! convergence) are counted in `failed` and left out of every denominator.

use std::fmt::Write as _;
use std::time::Instant;

use betamodel_core::dist::normal_cdf;
use betamodel_core::hypothesis::pair_statistic;
use betamodel_core::{
    homogeneity_cauchy, homogeneity_lrt_with_fit, mle_fit, pair_test, sample_graph_seeded, BetaFit,
    BetaVector, FitConfig, HomogeneityResult,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Heterogeneity scale `L_n`, the largest node parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heterogeneity {
    Zero,
    /// `(log log n)^{1/2}`
    SqrtLogLog,
    /// `log log n`
    LogLog,
    /// `(log n)^{1/2}`
    SqrtLog,
    /// `c log n`
    CLog(f64),
    Fixed(f64),
}

impl Heterogeneity {
    pub fn value(self, n: usize) -> f64 {
        let ln = (n as f64).ln();
        match self {
            Heterogeneity::Zero => 0.0,
            Heterogeneity::SqrtLogLog => ln.ln().sqrt(),
            Heterogeneity::LogLog => ln.ln(),
            Heterogeneity::SqrtLog => ln.sqrt(),
            Heterogeneity::CLog(c) => c * ln,
            Heterogeneity::Fixed(v) => v,
        }
    }

    pub fn label(self) -> String {
        match self {
            Heterogeneity::Zero => "0".into(),
            Heterogeneity::SqrtLogLog => "sqrt(log log n)".into(),
            Heterogeneity::LogLog => "log log n".into(),
            Heterogeneity::SqrtLog => "sqrt(log n)".into(),
            Heterogeneity::CLog(c) => format!("{c} log n"),
            Heterogeneity::Fixed(v) => format!("{v}"),
        }
    }
}

/// How node parameters are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaRule {
    /// `β_i = (i − 1) L_n / (n − 1)`.
    Linear,
    /// `β_i = 0` for `i ≤ r`, linear above.
    HomogeneousTail { r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentMethod {
    Pair,
    Cauchy,
    Lrt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub n: usize,
    pub rule: BetaRule,
    pub heterogeneity: Heterogeneity,
    /// 1-based node pairs for the pair test.
    pub pairs: Vec<(usize, usize)>,
    pub alpha: f64,
    pub replications: usize,
    pub seed: u64,
    pub methods: Vec<ExperimentMethod>,
    pub fit: FitConfig,
    /// Keep per-replication records in the report.
    pub keep_replications: bool,
}

impl ExperimentSpec {
    pub fn new(n: usize, heterogeneity: Heterogeneity) -> Self {
        ExperimentSpec {
            n,
            rule: BetaRule::Linear,
            heterogeneity,
            pairs: Vec::new(),
            alpha: 0.05,
            replications: 200,
            seed: 0,
            methods: Vec::new(),
            fit: FitConfig::default(),
            keep_replications: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.n < 3 {
            return fail(format!(
                "n = {} is too small; need at least 3 nodes",
                self.n
            ));
        }
        if self.replications == 0 {
            return fail("replications must be at least 1".into());
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail(format!("alpha = {} is outside (0, 1)", self.alpha));
        }
        if let BetaRule::HomogeneousTail { r } = self.rule {
            if r == 0 || r > self.n {
                return fail(format!("r = {r} is outside 1..={}", self.n));
            }
        }
        if !self.heterogeneity.value(self.n).is_finite() {
            return fail("heterogeneity scale is not finite".into());
        }
        for &(i, j) in &self.pairs {
            if i == 0 || j == 0 || i > self.n || j > self.n {
                return fail(format!("pair ({i}, {j}) is outside 1..={}", self.n));
            }
            if i == j {
                return fail(format!("pair ({i}, {j}) repeats a node"));
            }
        }
        if self.methods.contains(&ExperimentMethod::Pair) && self.pairs.is_empty() {
            return fail("the pair method needs at least one pair".into());
        }
        self.fit.validate()?;
        Ok(())
    }
}

/// Node parameters for an experiment.
pub fn build_beta(spec: &ExperimentSpec) -> BetaVector {
    let n = spec.n;
    let scale = spec.heterogeneity.value(n);
    let prefix = match spec.rule {
        BetaRule::Linear => 0,
        BetaRule::HomogeneousTail { r } => r,
    };
    let values = (1..=n)
        .map(|i| {
            if i <= prefix {
                0.0
            } else {
                (i - 1) as f64 * scale / (n - 1) as f64
            }
        })
        .collect();
    BetaVector::new(values).expect("finite heterogeneity gives finite parameters")
}

/// Outcome of one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replication {
    pub index: u64,
    /// Set when the fit failed; the replication then carries no statistics.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// `Û` for each requested pair, in spec order.
    pub pair_statistics: Vec<f64>,
    pub pair_rejections: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cauchy: Option<HomogeneityResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lrt: Option<HomogeneityResult>,
}

impl Replication {
    pub fn converged(&self) -> bool {
        self.error.is_none()
    }
}

fn failed_replication(index: u64, err: impl ToString) -> Replication {
    Replication {
        index,
        error: Some(err.to_string()),
        pair_statistics: Vec::new(),
        pair_rejections: Vec::new(),
        cauchy: None,
        lrt: None,
    }
}

fn run_replication(spec: &ExperimentSpec, beta: &BetaVector, index: u64) -> Replication {
    let degrees = sample_graph_seeded(beta, spec.seed, index).degrees();
    let fit = match mle_fit(&degrees, &spec.fit) {
        Ok(fit) => fit,
        Err(e) => return failed_replication(index, e),
    };
    match evaluate(spec, &fit, index) {
        Ok(rep) => rep,
        Err(e) => failed_replication(index, e),
    }
}

fn evaluate(
    spec: &ExperimentSpec,
    fit: &BetaFit,
    index: u64,
) -> betamodel_core::Result<Replication> {
    let mut rep = Replication {
        index,
        error: None,
        pair_statistics: Vec::new(),
        pair_rejections: Vec::new(),
        cauchy: None,
        lrt: None,
    };
    if spec.methods.contains(&ExperimentMethod::Pair) {
        for &(i, j) in &spec.pairs {
            let result = pair_test(fit, i, j, spec.alpha)?;
            rep.pair_statistics.push(result.u_hat);
            rep.pair_rejections.push(result.reject);
        }
    }
    if spec.methods.contains(&ExperimentMethod::Cauchy) {
        rep.cauchy = Some(homogeneity_cauchy(fit, spec.alpha)?);
    }
    if spec.methods.contains(&ExperimentMethod::Lrt) {
        rep.lrt = Some(homogeneity_lrt_with_fit(fit, spec.alpha)?);
    }
    Ok(rep)
}

fn run_replications(spec: &ExperimentSpec) -> Vec<Replication> {
    let beta = build_beta(spec);
    (0..spec.replications as u64)
        .into_par_iter()
        .map(|index| run_replication(spec, &beta, index))
        .collect()
}

/// Rejection count for one method (and pair).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub method: ExperimentMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    pub rejections: usize,
    /// Replications that produced a statistic.
    pub valid: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    /// Value of `L_n` used.
    pub heterogeneity_value: f64,
    pub failed: usize,
    pub cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_replication: Option<Vec<Replication>>,
    pub elapsed_seconds: f64,
}

impl ExperimentReport {
    pub fn cell(&self, method: ExperimentMethod, pair: Option<(usize, usize)>) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.pair == pair)
    }

    pub fn proportion(
        &self,
        method: ExperimentMethod,
        pair: Option<(usize, usize)>,
    ) -> Option<f64> {
        self.cell(method, pair).map(|c| c.proportion)
    }

    /// Per-replication table, one row per replication.
    pub fn replication_csv(&self) -> Option<String> {
        let reps = self.per_replication.as_ref()?;
        let mut out = String::from("replication,converged");
        for (i, j) in &self.spec.pairs {
            let _ = write!(out, ",u_{i}_{j}");
        }
        out.push_str(",cauchy_statistic,cauchy_p_value,lrt_statistic,lrt_p_value\n");
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for rep in reps {
            let _ = write!(out, "{},{}", rep.index, rep.converged());
            for k in 0..self.spec.pairs.len() {
                let _ = write!(out, ",{}", opt(rep.pair_statistics.get(k).copied()));
            }
            let _ = writeln!(
                out,
                ",{},{},{},{}",
                opt(rep.cauchy.map(|r| r.statistic)),
                opt(rep.cauchy.map(|r| r.p_value)),
                opt(rep.lrt.map(|r| r.statistic)),
                opt(rep.lrt.map(|r| r.p_value)),
            );
        }
        Some(out)
    }
}

fn proportion(rejections: usize, valid: usize) -> f64 {
    if valid == 0 {
        f64::NAN
    } else {
        rejections as f64 / valid as f64
    }
}

/// Runs every requested method on every replication.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    if spec.methods.is_empty() {
        return Err(Error::Config("no methods requested".into()));
    }
    let start = Instant::now();
    let reps = run_replications(spec);
    let valid: Vec<&Replication> = reps.iter().filter(|r| r.converged()).collect();
    let mut cells = Vec::new();
    for &method in &spec.methods {
        match method {
            ExperimentMethod::Pair => {
                for (k, &pair) in spec.pairs.iter().enumerate() {
                    let rejections = valid.iter().filter(|r| r.pair_rejections[k]).count();
                    cells.push(Cell {
                        method,
                        pair: Some(pair),
                        rejections,
                        valid: valid.len(),
                        proportion: proportion(rejections, valid.len()),
                    });
                }
            }
            ExperimentMethod::Cauchy | ExperimentMethod::Lrt => {
                let pick = |r: &Replication| {
                    if method == ExperimentMethod::Cauchy {
                        r.cauchy
                    } else {
                        r.lrt
                    }
                };
                let rejections = valid
                    .iter()
                    .filter(|r| pick(r).is_some_and(|h| h.reject))
                    .count();
                cells.push(Cell {
                    method,
                    pair: None,
                    rejections,
                    valid: valid.len(),
                    proportion: proportion(rejections, valid.len()),
                });
            }
        }
    }
    Ok(ExperimentReport {
        spec: spec.clone(),
        heterogeneity_value: spec.heterogeneity.value(spec.n),
        failed: reps.len() - valid.len(),
        cells,
        per_replication: spec.keep_replications.then_some(reps),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Size/power of the pair test for each pair in the spec.
pub fn run_pair_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if !spec.methods.contains(&ExperimentMethod::Pair) {
        return Err(Error::Config(
            "pair experiment requires the pair method".into(),
        ));
    }
    run_experiment(spec)
}

/// Size/power of the Cauchy and/or likelihood-ratio homogeneity tests.
pub fn run_homogeneity_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if spec.methods.is_empty() || spec.methods.contains(&ExperimentMethod::Pair) {
        return Err(Error::Config(
            "homogeneity experiment takes methods from {cauchy, lrt}".into(),
        ));
    }
    run_experiment(spec)
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `samples` and
/// `N(mean, 1)`.
pub fn ks_distance_normal(samples: &[f64], mean: f64) -> f64 {
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |acc: f64, (k, &x)| {
        let f = normal_cdf(x - mean);
        let above = (k + 1) as f64 / m - f;
        let below = f - k as f64 / m;
        acc.max(above).max(below)
    })
}

/// Asymptotic 1% critical value of the one-sample KS distance.
pub fn ks_critical_1pct(samples: usize) -> f64 {
    1.63 / (samples as f64).sqrt()
}

pub const HISTOGRAM_BINS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
    /// Samples outside `[lo, hi)`.
    pub outside: usize,
}

impl Histogram {
    /// 64 equal bins over `[center − 4, center + 4)`.
    pub fn around(samples: &[f64], center: f64) -> Self {
        let (lo, hi) = (center - 4.0, center + 4.0);
        let width = (hi - lo) / HISTOGRAM_BINS as f64;
        let mut counts = vec![0; HISTOGRAM_BINS];
        let mut outside = 0;
        for &x in samples {
            let bin = ((x - lo) / width).floor();
            if bin >= 0.0 && (bin as usize) < HISTOGRAM_BINS {
                counts[bin as usize] += 1;
            } else {
                outside += 1;
            }
        }
        Histogram {
            lo,
            hi,
            counts,
            outside,
        }
    }

    /// Bin table with the empirical density and the `N(reference_mean, 1)`
    /// density at each bin midpoint.
    pub fn to_csv(&self, reference_mean: f64) -> String {
        let total: usize = self.counts.iter().sum::<usize>() + self.outside;
        let width = (self.hi - self.lo) / self.counts.len() as f64;
        let mut out = String::from("bin_lo,bin_hi,count,density,normal_density\n");
        for (k, &count) in self.counts.iter().enumerate() {
            let lo = self.lo + k as f64 * width;
            let mid = lo + width / 2.0;
            let z = mid - reference_mean;
            let normal = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let density = if total == 0 {
                0.0
            } else {
                count as f64 / (total as f64 * width)
            };
            let _ = writeln!(
                out,
                "{lo:.6},{:.6},{count},{density:.6},{normal:.6}",
                lo + width
            );
        }
        out
    }
}

/// Sampled distribution of `Û_ij` for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub pair: (usize, usize),
    pub samples: Vec<f64>,
    pub failed: usize,
    pub mean: f64,
    pub std_dev: f64,
    /// 0 when `L_n = 0`, otherwise the sample mean.
    pub reference_mean: f64,
    pub ks_distance: f64,
    pub ks_critical_1pct: f64,
    pub histogram: Histogram,
}

impl EmpiricalDistribution {
    fn from_samples(pair: (usize, usize), samples: Vec<f64>, failed: usize, null: bool) -> Self {
        let m = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / m;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
        let reference_mean = if null { 0.0 } else { mean };
        EmpiricalDistribution {
            pair,
            ks_distance: ks_distance_normal(&samples, reference_mean),
            ks_critical_1pct: ks_critical_1pct(samples.len()),
            histogram: Histogram::around(&samples, reference_mean),
            samples,
            failed,
            mean,
            std_dev: var.sqrt(),
            reference_mean,
        }
    }
}

pub const MIN_DISTRIBUTION_REPLICATIONS: usize = 100;

/// Samples `Û` for every pair in the spec from shared replications.
pub fn empirical_distributions(spec: &ExperimentSpec) -> Result<Vec<EmpiricalDistribution>> {
    spec.validate()?;
    if spec.pairs.is_empty() {
        return Err(Error::Config("no pairs requested".into()));
    }
    if spec.replications < MIN_DISTRIBUTION_REPLICATIONS {
        return Err(Error::Config(format!(
            "need at least {MIN_DISTRIBUTION_REPLICATIONS} replications, got {}",
            spec.replications
        )));
    }
    let beta = build_beta(spec);
    let draws: Vec<Option<Vec<f64>>> = (0..spec.replications as u64)
        .into_par_iter()
        .map(|index| {
            let degrees = sample_graph_seeded(&beta, spec.seed, index).degrees();
            let fit = mle_fit(&degrees, &spec.fit).ok()?;
            spec.pairs
                .iter()
                .map(|&(i, j)| pair_statistic(&fit, i, j).ok())
                .collect()
        })
        .collect();
    let failed = draws.iter().filter(|d| d.is_none()).count();
    let null = spec.heterogeneity.value(spec.n) == 0.0;
    Ok(spec
        .pairs
        .iter()
        .enumerate()
        .map(|(k, &pair)| {
            let samples: Vec<f64> = draws.iter().flatten().map(|d| d[k]).collect();
            EmpiricalDistribution::from_samples(pair, samples, failed, null)
        })
        .collect())
}

/// [`empirical_distributions`] for a single pair.
pub fn empirical_distribution(
    spec: &ExperimentSpec,
    pair: (usize, usize),
) -> Result<EmpiricalDistribution> {
    let single = ExperimentSpec {
        pairs: vec![pair],
        ..spec.clone()
    };
    Ok(empirical_distributions(&single)?.remove(0))
}
