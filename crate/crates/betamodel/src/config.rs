//! TOML configuration for `betamodel simulate`.
//!
//! ```toml
//! n = 100
//! heterogeneity = "loglog"   # zero | sqrt-loglog | loglog | sqrt-log | <number>
//! # c = 0.1                  # L_n = c log n, instead of `heterogeneity`
//! r = 99                     # homogeneous prefix; omit for the linear rule
//! pairs = [[1, 50]]
//! alpha = 0.05
//! reps = 200
//! seed = 2001
//! methods = ["cauchy", "lrt"]
//! ```

use std::path::Path;

use betamodel_core::FitConfig;
use serde::Deserialize;

use crate::montecarlo::{BetaRule, ExperimentMethod, ExperimentSpec, Heterogeneity};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum ScaleValue {
    Number(f64),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub n: usize,
    #[serde(default)]
    heterogeneity: Option<ScaleValue>,
    /// `L_n = c log n`.
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default)]
    pub pairs: Vec<(usize, usize)>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(alias = "reps", default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub seed: u64,
    pub methods: Vec<ExperimentMethod>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub max_iterations: Option<usize>,
}

fn default_alpha() -> f64 {
    0.05
}

fn default_replications() -> usize {
    200
}

pub fn parse_heterogeneity(name: &str) -> Result<Heterogeneity> {
    let key: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect::<String>()
        .to_lowercase();
    Ok(match key.as_str() {
        "zero" | "0" => Heterogeneity::Zero,
        "sqrt-loglog" | "sqrtloglog" => Heterogeneity::SqrtLogLog,
        "loglog" | "log-log" => Heterogeneity::LogLog,
        "sqrt-log" | "sqrtlog" => Heterogeneity::SqrtLog,
        other => match other.parse::<f64>() {
            Ok(v) if v.is_finite() => Heterogeneity::Fixed(v),
            _ => return Err(Error::Config(format!("unknown heterogeneity `{name}`"))),
        },
    })
}

impl SimulationConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn heterogeneity(&self) -> Result<Heterogeneity> {
        match (&self.heterogeneity, self.c) {
            (Some(_), Some(_)) => Err(Error::Config(
                "set either `heterogeneity` or `c`, not both".into(),
            )),
            (None, Some(c)) => Ok(Heterogeneity::CLog(c)),
            (None, None) => Ok(Heterogeneity::Zero),
            (Some(ScaleValue::Number(v)), None) => Ok(Heterogeneity::Fixed(*v)),
            (Some(ScaleValue::Name(name)), None) => parse_heterogeneity(name),
        }
    }

    pub fn to_spec(&self) -> Result<ExperimentSpec> {
        let mut fit = FitConfig::default();
        if let Some(t) = self.tolerance {
            fit.tolerance = t;
        }
        if let Some(m) = self.max_iterations {
            fit.max_iterations = m;
        }
        let spec = ExperimentSpec {
            n: self.n,
            rule: match self.r {
                Some(r) => BetaRule::HomogeneousTail { r },
                None => BetaRule::Linear,
            },
            heterogeneity: self.heterogeneity()?,
            pairs: self.pairs.clone(),
            alpha: self.alpha,
            replications: self.replications,
            seed: self.seed,
            methods: self.methods.clone(),
            fit,
            keep_replications: false,
        };
        spec.validate()?;
        Ok(spec)
    }
}
