//! Maximum likelihood estimation of the node parameters.
//!
//! The MLE solves `d_i = Σ_{j≠i} p_ij` for every node. It is found with the
//! fixed-point map
//!
//! ```text
//! β_i ← log d_i − log Σ_{j≠i} 1 / (exp(−β_j) + exp(β_i))
//! ```
//!
//! started from `β = 0`. Note `exp(β_i) Σ_{j≠i} 1/(exp(−β_j) + exp(β_i))`
//! is exactly the expected degree `Σ_{j≠i} p_ij`, so one pass over the pairs
//! yields both the residuals and the next iterate.

use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, log};

use crate::graph::{BetaVector, DegreeSequence};
use crate::logistic::{log1p_exp, logistic_variance};
use crate::{Error, Result};

/// Stopping rules for [`mle_fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitConfig {
    /// Bound on `max_i |d_i − Σ_{j≠i} p̂_ij|`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// The fit is abandoned once any `|β_i|` exceeds this.
    pub divergence_bound: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            tolerance: 1e-8,
            max_iterations: 5000,
            divergence_bound: 50.0,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1"));
        }
        if !(self.divergence_bound > 0.0) {
            return Err(Error::InvalidConfig("divergence_bound must be positive"));
        }
        Ok(())
    }
}

/// A fitted β-model.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaFit {
    pub beta_hat: BetaVector,
    /// Plug-in Fisher diagonal `v̂_ii = Σ_{j≠i} p̂_ij (1 − p̂_ij)`.
    pub v_hat: Vec<f64>,
    /// The degree sequence the fit was computed from.
    pub degrees: DegreeSequence,
    pub iterations: usize,
    pub max_residual: f64,
    pub converged: bool,
}

impl BetaFit {
    pub fn node_count(&self) -> usize {
        self.beta_hat.len()
    }
}

/// `ℓ(β | d) = Σ_i β_i d_i − Σ_{i<j} log(1 + exp(β_i + β_j))`.
pub fn log_likelihood(beta: &BetaVector, d: &DegreeSequence) -> Result<f64> {
    let b = beta.as_slice();
    if b.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            actual: b.len(),
        });
    }
    let linear: f64 = b
        .iter()
        .zip(d.as_slice())
        .map(|(&bi, &di)| bi * f64::from(di))
        .sum();
    let mut partition = 0.0;
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            partition += log1p_exp(b[i] + b[j]);
        }
    }
    Ok(linear - partition)
}

/// Fisher information diagonal `v_ii = Σ_{j≠i} p_ij (1 − p_ij)`.
pub fn fisher_diag(beta: &BetaVector) -> Vec<f64> {
    let b = beta.as_slice();
    // Summing over all j and removing the j = i term keeps the result
    // bitwise identical for nodes with bitwise identical β.
    b.iter()
        .map(|&bi| {
            let all: f64 = b.iter().map(|&bj| logistic_variance(bi + bj)).sum();
            all - logistic_variance(bi + bi)
        })
        .collect()
}

/// Fits the β-model to a degree sequence by fixed-point iteration.
///
/// Nodes of equal degree share one parameter at every iterate, so the map
/// runs over the distinct degrees weighted by their multiplicities.
pub fn mle_fit(d: &DegreeSequence, cfg: &FitConfig) -> Result<BetaFit> {
    cfg.validate()?;
    d.check_interior()?;
    let n = d.len();
    let mut multiplicity = vec![0u32; n];
    for &di in d.as_slice() {
        multiplicity[di as usize] += 1;
    }
    let levels: Vec<u32> = (0..n as u32)
        .filter(|&k| multiplicity[k as usize] > 0)
        .collect();
    let weight: Vec<f64> = levels
        .iter()
        .map(|&k| f64::from(multiplicity[k as usize]))
        .collect();
    let log_degree: Vec<f64> = levels.iter().map(|&k| log(f64::from(k))).collect();
    let m = levels.len();
    let mut beta = vec![0.0; m];
    let mut exp_pos = vec![1.0; m];
    let mut exp_neg = vec![1.0; m];
    let mut sums = vec![0.0; m];
    let mut iterations = 0;
    loop {
        let mut max_residual: f64 = 0.0;
        for k in 0..m {
            let ek = exp_pos[k];
            // Full sum minus the self term, as in `fisher_diag`.
            let all: f64 = exp_neg
                .iter()
                .zip(&weight)
                .map(|(&em, &w)| w / (em + ek))
                .sum();
            let s = all - 1.0 / (exp_neg[k] + ek);
            sums[k] = s;
            let residual = f64::from(levels[k]) - ek * s;
            max_residual = max_residual.max(residual.abs());
        }
        if max_residual.is_nan() {
            return Err(Error::NonConvergence {
                iterations,
                max_residual,
                diverged: true,
            });
        }
        if max_residual <= cfg.tolerance {
            let mut level_beta = vec![0.0; n];
            for (k, &level) in levels.iter().enumerate() {
                level_beta[level as usize] = beta[k];
            }
            let beta_hat = BetaVector::new(
                d.as_slice()
                    .iter()
                    .map(|&di| level_beta[di as usize])
                    .collect(),
            )?;
            let v_hat = fisher_diag(&beta_hat);
            return Ok(BetaFit {
                beta_hat,
                v_hat,
                degrees: d.clone(),
                iterations,
                max_residual,
                converged: true,
            });
        }
        if iterations == cfg.max_iterations {
            return Err(Error::NonConvergence {
                iterations,
                max_residual,
                diverged: false,
            });
        }
        iterations += 1;
        for k in 0..m {
            let next = log_degree[k] - log(sums[k]);
            if !(next.abs() <= cfg.divergence_bound) {
                return Err(Error::NonConvergence {
                    iterations,
                    max_residual,
                    diverged: true,
                });
            }
            beta[k] = next;
        }
        for k in 0..m {
            exp_pos[k] = exp(beta[k]);
            exp_neg[k] = exp(-beta[k]);
        }
    }
}

/// Closed-form MLE under `β_1 = … = β_n`, with its log-likelihood.
///
/// The common value solves `d̄ / (n − 1) = logistic(2β)`, so
/// `β = ½ logit(Σ d_i / (n (n − 1)))`.
pub fn restricted_mle_homogeneous(d: &DegreeSequence) -> Result<(f64, f64)> {
    let n = d.len() as u64;
    let total = d.total();
    let capacity = n * (n - 1);
    if total == 0 || total >= capacity {
        return Err(Error::DegreeSumBoundary { sum: total });
    }
    let beta = 0.5 * log(total as f64 / (capacity - total) as f64);
    let loglik = log_likelihood(&BetaVector::new(vec![beta; d.len()])?, d)?;
    Ok((beta, loglik))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn seq(v: &[u32]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn log_likelihood_examples() {
        let d = seq(&[3, 1, 2, 2, 2, 2]);
        let l = log_likelihood(&BetaVector::zeros(6), &d).unwrap();
        assert!((l + 15.0 * LN_2).abs() < 1e-12);

        let l2 = log_likelihood(&BetaVector::zeros(2), &seq(&[1, 1])).unwrap();
        assert!((l2 + LN_2).abs() < 1e-15);

        // β = ½ ln 2 everywhere: p_ij = 2/3, log(1 + 2) per pair.
        let half = 0.5 * LN_2;
        let l4 = log_likelihood(
            &BetaVector::new(vec![half; 4]).unwrap(),
            &seq(&[2, 2, 2, 2]),
        )
        .unwrap();
        let expected = 4.0 * LN_2 - 6.0 * 3f64.ln();
        assert!((l4 - expected).abs() < 1e-13);
        assert!((l4 + 3.819_085_009_768_877).abs() < 1e-12);
    }

    #[test]
    fn log_likelihood_dimension_mismatch() {
        assert_eq!(
            log_likelihood(&BetaVector::zeros(3), &seq(&[1, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 3
            })
        );
    }

    #[test]
    fn fisher_diag_examples() {
        for v in fisher_diag(&BetaVector::zeros(33)) {
            assert_eq!(v, 8.0);
        }
        let v = fisher_diag(&BetaVector::new(vec![1.0, -1.0, 0.0]).unwrap());
        // f(0) + f(1) with f(x) = e^x / (1 + e^x)^2.
        let f1 = 1f64.exp() / (1.0 + 1f64.exp()).powi(2);
        assert!((v[0] - (0.25 + f1)).abs() < 1e-15);
        assert!((v[0] - 0.446_611_933_241_481_9).abs() < 1e-12);
    }

    #[test]
    fn fisher_diag_respects_heterogeneity_bounds() {
        let beta = BetaVector::new((0..50).map(|i| (i as f64 - 25.0) / 12.0).collect()).unwrap();
        let ln = beta.max_abs();
        let upper = 49.0 / 4.0;
        let lower = upper * (-2.0 * ln).exp();
        for v in fisher_diag(&beta) {
            assert!(v >= lower && v <= upper, "{v} not in [{lower}, {upper}]");
        }
    }

    #[test]
    fn symmetric_fixed_point() {
        let fit = mle_fit(&seq(&[2, 2, 2, 2]), &FitConfig::default()).unwrap();
        for &b in fit.beta_hat.as_slice() {
            assert!((b - 0.5 * LN_2).abs() < 1e-8);
        }
        assert!(fit.converged && fit.max_residual <= 1e-8);
        assert!(fit.v_hat.iter().all(|&v| v > 0.0 && v <= 0.75));
    }

    #[test]
    fn boundary_degrees_rejected() {
        let cfg = FitConfig::default();
        assert_eq!(
            mle_fit(&seq(&[0, 1, 1]), &cfg),
            Err(Error::DegreeBoundary { node: 1, degree: 0 })
        );
        assert_eq!(
            mle_fit(&seq(&[1, 3, 2, 2]), &cfg),
            Err(Error::DegreeBoundary { node: 2, degree: 3 })
        );
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let cfg = FitConfig {
            max_iterations: 1,
            ..FitConfig::default()
        };
        match mle_fit(&seq(&[1, 2, 2, 2, 1]), &cfg) {
            Err(Error::NonConvergence {
                iterations: 1,
                diverged: false,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(FitConfig {
            tolerance: 0.0,
            ..cfg
        }
        .validate()
        .is_err());
    }

    #[test]
    fn boundary_adjacent_sequence_diverges() {
        // Graphical but on the boundary of the degree polytope: the
        // likelihood keeps increasing toward infinity.
        let cfg = FitConfig {
            tolerance: 1e-14,
            ..FitConfig::default()
        };
        assert!(matches!(
            mle_fit(&seq(&[3, 3, 2, 1, 1]), &cfg),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn equal_degrees_give_bitwise_equal_parameters() {
        let d = seq(&[1, 2, 2, 2, 1, 3, 3, 2]);
        let fit = mle_fit(&d, &FitConfig::default()).unwrap();
        let b = fit.beta_hat.as_slice();
        assert_eq!(b[0], b[4]);
        assert_eq!(b[1], b[2]);
        assert_eq!(b[5], b[6]);
        assert_eq!(fit.v_hat[1], fit.v_hat[7]);
        assert!(b[5] > b[1] && b[1] > b[0]);
    }

    #[test]
    fn restricted_examples() {
        let (b, l) = restricted_mle_homogeneous(&seq(&[2, 2, 2, 2])).unwrap();
        assert!((b - 0.5 * LN_2).abs() < 1e-15);
        assert!((l - (4.0 * LN_2 - 6.0 * 3f64.ln())).abs() < 1e-12);
        assert_eq!(
            restricted_mle_homogeneous(&seq(&[0, 0, 0])),
            Err(Error::DegreeSumBoundary { sum: 0 })
        );
        assert_eq!(
            restricted_mle_homogeneous(&seq(&[2, 2, 2])),
            Err(Error::DegreeSumBoundary { sum: 6 })
        );
    }
}
