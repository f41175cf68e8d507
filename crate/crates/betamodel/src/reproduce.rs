//! Standard simulation grids and the chesapeake analyses.
//!
//! Default seeds: table1 1001, table2 2001, table3 3001, figures 4001.
//! Every cell of a grid uses the same base seed, so cells differ only in
//! their parameters.

use std::fmt::Write as _;

use betamodel_core::{
    homogeneity_cauchy, homogeneity_lrt_with_fit, mle_fit, pair_test, FitConfig, HomogeneityResult,
};
use serde::Serialize;

use crate::datasets::{self, CHESAPEAKE_PANEL};
use crate::montecarlo::{
    empirical_distributions, run_homogeneity_experiment, run_pair_experiment, BetaRule,
    EmpiricalDistribution, ExperimentMethod, ExperimentSpec, Heterogeneity,
};
use crate::Result;

pub const TABLE1_SEED: u64 = 1001;
pub const TABLE2_SEED: u64 = 2001;
pub const TABLE3_SEED: u64 = 3001;
pub const FIGURES_SEED: u64 = 4001;

pub const TABLE_REPLICATIONS: usize = 200;
pub const FIGURE_REPLICATIONS: usize = 1000;

pub const TABLE1_SIZES: [usize; 2] = [300, 500];
pub const TABLE1_PAIRS: [(usize, usize); 4] = [(1, 50), (1, 100), (50, 100), (50, 200)];
pub const TABLE1_SCALES: [Heterogeneity; 3] = [
    Heterogeneity::Zero,
    Heterogeneity::LogLog,
    Heterogeneity::SqrtLog,
];

pub const HOMOGENEITY_SIZES: [usize; 3] = [100, 200, 500];
/// `n − r` for the homogeneous prefix length `r`.
pub const PREFIX_OFFSETS: [usize; 5] = [0, 1, 2, 5, 10];
pub const TABLE2_SCALES: [Heterogeneity; 3] = [
    Heterogeneity::SqrtLogLog,
    Heterogeneity::LogLog,
    Heterogeneity::SqrtLog,
];
pub const TABLE3_SCALES: [Heterogeneity; 3] = [
    Heterogeneity::CLog(0.1),
    Heterogeneity::CLog(0.2),
    Heterogeneity::CLog(0.5),
];

pub const FIGURE_SIZES: [usize; 2] = [300, 500];

/// Overrides for the default grids.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub replications: Option<usize>,
    pub seed: Option<u64>,
    pub sizes: Option<Vec<usize>>,
}

impl Options {
    fn replications(&self, default: usize) -> usize {
        self.replications.unwrap_or(default)
    }

    fn seed(&self, default: u64) -> u64 {
        self.seed.unwrap_or(default)
    }

    fn sizes(&self, default: &[usize]) -> Vec<usize> {
        self.sizes.clone().unwrap_or_else(|| default.to_vec())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub n: usize,
    pub heterogeneity: Heterogeneity,
    pub pair: (usize, usize),
    pub proportion: f64,
    pub valid: usize,
    pub failed: usize,
}

/// Size and power of the pair test.
pub fn table1(opts: &Options) -> Result<Vec<PairRow>> {
    let mut rows = Vec::new();
    for n in opts.sizes(&TABLE1_SIZES) {
        for scale in TABLE1_SCALES {
            let mut spec = ExperimentSpec::new(n, scale);
            spec.pairs = TABLE1_PAIRS
                .iter()
                .copied()
                .filter(|&(_, j)| j <= n)
                .collect();
            spec.methods = vec![ExperimentMethod::Pair];
            spec.replications = opts.replications(TABLE_REPLICATIONS);
            spec.seed = opts.seed(TABLE1_SEED);
            let report = run_pair_experiment(&spec)?;
            for cell in &report.cells {
                rows.push(PairRow {
                    n,
                    heterogeneity: scale,
                    pair: cell.pair.expect("pair cells carry their pair"),
                    proportion: cell.proportion,
                    valid: cell.valid,
                    failed: report.failed,
                });
            }
        }
    }
    Ok(rows)
}

pub fn pair_rows_csv(rows: &[PairRow]) -> String {
    let mut out = String::from("n,heterogeneity,i,j,proportion,valid,failed\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.3},{},{}",
            r.n,
            r.heterogeneity.label(),
            r.pair.0,
            r.pair.1,
            r.proportion,
            r.valid,
            r.failed
        );
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityRow {
    pub n: usize,
    pub r: usize,
    pub heterogeneity: Heterogeneity,
    pub cauchy: f64,
    pub lrt: f64,
    pub valid: usize,
    pub failed: usize,
}

fn homogeneity_grid(
    opts: &Options,
    scales: &[Heterogeneity],
    seed: u64,
) -> Result<Vec<HomogeneityRow>> {
    let mut rows = Vec::new();
    for n in opts.sizes(&HOMOGENEITY_SIZES) {
        for offset in PREFIX_OFFSETS {
            if offset >= n {
                continue;
            }
            let r = n - offset;
            for &scale in scales {
                let mut spec = ExperimentSpec::new(n, scale);
                spec.rule = BetaRule::HomogeneousTail { r };
                spec.methods = vec![ExperimentMethod::Cauchy, ExperimentMethod::Lrt];
                spec.replications = opts.replications(TABLE_REPLICATIONS);
                spec.seed = opts.seed(seed);
                let report = run_homogeneity_experiment(&spec)?;
                let cauchy = report
                    .cell(ExperimentMethod::Cauchy, None)
                    .expect("cauchy requested");
                let lrt = report
                    .cell(ExperimentMethod::Lrt, None)
                    .expect("lrt requested");
                rows.push(HomogeneityRow {
                    n,
                    r,
                    heterogeneity: scale,
                    cauchy: cauchy.proportion,
                    lrt: lrt.proportion,
                    valid: cauchy.valid,
                    failed: report.failed,
                });
            }
        }
    }
    Ok(rows)
}

/// Homogeneity tests with `L_n` in {sqrt(log log n), log log n, sqrt(log n)}.
pub fn table2(opts: &Options) -> Result<Vec<HomogeneityRow>> {
    homogeneity_grid(opts, &TABLE2_SCALES, TABLE2_SEED)
}

/// Homogeneity tests with `L_n = c log n`, c in {0.1, 0.2, 0.5}.
pub fn table3(opts: &Options) -> Result<Vec<HomogeneityRow>> {
    homogeneity_grid(opts, &TABLE3_SCALES, TABLE3_SEED)
}

pub fn homogeneity_rows_csv(rows: &[HomogeneityRow]) -> String {
    let mut out = String::from("n,r,heterogeneity,cauchy,lrt,valid,failed\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{:.3},{},{}",
            row.n,
            row.r,
            row.heterogeneity.label(),
            row.cauchy,
            row.lrt,
            row.valid,
            row.failed
        );
    }
    out
}

/// Upper-tail pair p-values `1 − Φ(|Û_ij|)` among the chesapeake panel
/// nodes, ordered by degree. Diagonal entries are `None`.
pub fn table4() -> Result<Vec<Vec<Option<f64>>>> {
    let d = datasets::dataset("chesapeake").expect("bundled dataset");
    let fit = mle_fit(&d, &FitConfig::default())?;
    CHESAPEAKE_PANEL
        .iter()
        .map(|&i| {
            CHESAPEAKE_PANEL
                .iter()
                .map(|&j| {
                    if i == j {
                        Ok(None)
                    } else {
                        Ok(Some(pair_test(&fit, i, j, 0.05)?.upper_tail))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn table4_csv(grid: &[Vec<Option<f64>>]) -> String {
    let mut out = String::from("i\\j");
    for j in CHESAPEAKE_PANEL {
        let _ = write!(out, ",{j}");
    }
    out.push('\n');
    for (row, i) in grid.iter().zip(CHESAPEAKE_PANEL) {
        let _ = write!(out, "{i}");
        for cell in row {
            match cell {
                Some(p) => {
                    let _ = write!(out, ",{p:.3}");
                }
                None => out.push_str(",-"),
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ChesapeakeHomogeneity {
    pub cauchy: HomogeneityResult,
    pub lrt: HomogeneityResult,
}

/// Cauchy-combination and likelihood-ratio homogeneity tests on chesapeake.
pub fn homogeneity(alpha: f64) -> Result<ChesapeakeHomogeneity> {
    let d = datasets::dataset("chesapeake").expect("bundled dataset");
    let fit = mle_fit(&d, &FitConfig::default())?;
    Ok(ChesapeakeHomogeneity {
        cauchy: homogeneity_cauchy(&fit, alpha)?,
        lrt: homogeneity_lrt_with_fit(&fit, alpha)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FigurePanel {
    pub n: usize,
    pub heterogeneity: Heterogeneity,
    /// `β_i − β_j` under the simulation parameters.
    pub shift: f64,
    pub distribution: EmpiricalDistribution,
}

impl FigurePanel {
    /// File stem used when writing histograms.
    pub fn stem(&self) -> String {
        let scale = match self.heterogeneity {
            Heterogeneity::Zero => "zero",
            Heterogeneity::SqrtLogLog => "sqrt-loglog",
            Heterogeneity::LogLog => "loglog",
            Heterogeneity::SqrtLog => "sqrt-log",
            Heterogeneity::CLog(_) => "clog",
            Heterogeneity::Fixed(_) => "fixed",
        };
        let (i, j) = self.distribution.pair;
        format!("n{}_{scale}_{i}_{j}", self.n)
    }
}

/// Sampled distributions of `Û_ij` for the `table1` pairs.
pub fn figures(opts: &Options) -> Result<Vec<FigurePanel>> {
    let mut panels = Vec::new();
    for n in opts.sizes(&FIGURE_SIZES) {
        for scale in TABLE1_SCALES {
            let mut spec = ExperimentSpec::new(n, scale);
            spec.pairs = TABLE1_PAIRS
                .iter()
                .copied()
                .filter(|&(_, j)| j <= n)
                .collect();
            spec.replications = opts.replications(FIGURE_REPLICATIONS);
            spec.seed = opts.seed(FIGURES_SEED);
            let step = scale.value(n) / (n - 1) as f64;
            for distribution in empirical_distributions(&spec)? {
                let (i, j) = distribution.pair;
                let shift = (i as f64 - j as f64) * step;
                panels.push(FigurePanel {
                    n,
                    heterogeneity: scale,
                    shift,
                    distribution,
                });
            }
        }
    }
    Ok(panels)
}

pub fn figures_summary_csv(panels: &[FigurePanel]) -> String {
    let mut out = String::from("n,heterogeneity,i,j,shift,samples,failed,mean,std_dev,reference_mean,ks_distance,ks_critical_1pct\n");
    for p in panels {
        let d = &p.distribution;
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
            p.n,
            p.heterogeneity.label(),
            d.pair.0,
            d.pair.1,
            p.shift,
            d.samples.len(),
            d.failed,
            d.mean,
            d.std_dev,
            d.reference_mean,
            d.ks_distance,
            d.ks_critical_1pct
        );
    }
    out
}
