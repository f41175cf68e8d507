//! Pairwise equality and global homogeneity tests.
//!
//! The pairwise statistic is the studentized difference
//! `Û_ij = (β̂_i − β̂_j) / sqrt(1/v̂_ii + 1/v̂_jj)`, asymptotically standard
//! normal when `β_i = β_j`. Global homogeneity combines the pair p-values
//! with the Cauchy combination statistic, which stays calibrated under the
//! strong dependence between pairs sharing a node. The likelihood-ratio test
//! against the Erdős–Rényi fit and six classic combiners are provided as
//! baselines.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, PI};
use core::fmt;
use core::str::FromStr;

use libm::{atan2, log, log1p, sqrt, tan};

use crate::dist::{
    cauchy_quantile, chisq_cdf, chisq_sf, irwin_hall_cdf, min_uniform_cdf, normal_cdf,
    normal_quantile, normal_sf, student_t_sf,
};
use crate::graph::DegreeSequence;
use crate::inference::{log_likelihood, mle_fit, restricted_mle_homogeneous, BetaFit, FitConfig};
use crate::{Error, Result};

/// P-values are clamped to `[P_CLAMP, 1 − P_CLAMP]` before `tan`, `log` or
/// `Φ⁻¹` is applied.
pub const P_CLAMP: f64 = 1e-15;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Outcome of the test of `β_i = β_j`. Node ids are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairTestResult {
    pub i: usize,
    pub j: usize,
    pub u_hat: f64,
    /// Two-sided p-value `2 (1 − Φ(|Û|))`.
    pub p_value: f64,
    /// One-sided tail `1 − Φ(|Û|)`, half of `p_value`.
    pub upper_tail: f64,
    /// `|Û| ≥ u_{1−α/2}`.
    pub reject: bool,
}

fn check_level(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidLevel(alpha))
    }
}

fn check_fit(fit: &BetaFit) -> Result<()> {
    if !fit.converged {
        return Err(Error::Unconverged);
    }
    let n = fit.beta_hat.len();
    for len in [fit.v_hat.len(), fit.degrees.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    Ok(())
}

fn check_node(node: usize, n: usize) -> Result<()> {
    if node == 0 || node > n {
        Err(Error::NodeOutOfRange { node, n })
    } else {
        Ok(())
    }
}

#[inline]
fn studentized(beta: &[f64], v: &[f64], a: usize, b: usize) -> f64 {
    (beta[a] - beta[b]) / sqrt(1.0 / v[a] + 1.0 / v[b])
}

/// `Û_ij` for 1-based nodes `i ≠ j`.
pub fn pair_statistic(fit: &BetaFit, i: usize, j: usize) -> Result<f64> {
    check_fit(fit)?;
    let n = fit.node_count();
    check_node(i, n)?;
    check_node(j, n)?;
    if i == j {
        return Err(Error::SameNode(i));
    }
    Ok(studentized(
        fit.beta_hat.as_slice(),
        &fit.v_hat,
        i - 1,
        j - 1,
    ))
}

/// Tests `H0: β_i = β_j` at level `alpha`.
pub fn pair_test(fit: &BetaFit, i: usize, j: usize, alpha: f64) -> Result<PairTestResult> {
    check_level(alpha)?;
    let u_hat = pair_statistic(fit, i, j)?;
    let upper_tail = normal_sf(u_hat.abs());
    let critical = normal_quantile(1.0 - alpha / 2.0)?;
    Ok(PairTestResult {
        i,
        j,
        u_hat,
        p_value: (2.0 * upper_tail).min(1.0),
        upper_tail,
        reject: u_hat.abs() >= critical,
    })
}

/// Two-sided pair p-values for all `i < j`, packed row by row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairPValues {
    n: usize,
    values: Vec<f64>,
}

impl PairPValues {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Packed values in the order `(1,2), (1,3), …, (1,n), (2,3), …`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn offset(&self, a: usize, b: usize) -> usize {
        // a < b, both 0-based.
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    /// Symmetric lookup by 1-based ids; `None` on the diagonal or out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        let (a, b) = if i < j {
            (i - 1, j - 1)
        } else {
            (j - 1, i - 1)
        };
        Some(self.values[self.offset(a, b)])
    }

    /// `(i, j, p)` with 1-based `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
            .zip(self.values.iter().copied())
            .map(|((i, j), p)| (i, j, p))
    }
}

/// Two-sided p-values of every pair test.
pub fn all_pair_pvalues(fit: &BetaFit) -> Result<PairPValues> {
    check_fit(fit)?;
    let n = fit.node_count();
    let beta = fit.beta_hat.as_slice();
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            let u = studentized(beta, &fit.v_hat, a, b);
            values.push((2.0 * normal_sf(u.abs())).min(1.0));
        }
    }
    Ok(PairPValues { n, values })
}

/// Homogeneity test method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Method {
    Cauchy,
    Lrt,
    Fisher,
    Pearson,
    George,
    Edgington,
    Stouffer,
    Tippett,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Cauchy,
        Method::Lrt,
        Method::Fisher,
        Method::Pearson,
        Method::George,
        Method::Edgington,
        Method::Stouffer,
        Method::Tippett,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cauchy => "cauchy",
            Method::Lrt => "lrt",
            Method::Fisher => "fisher",
            Method::Pearson => "pearson",
            Method::George => "george",
            Method::Edgington => "edgington",
            Method::Stouffer => "stouffer",
            Method::Tippett => "tippett",
        }
    }

    /// The classic combiner behind this method, if any.
    pub fn combiner(self) -> Option<Combiner> {
        match self {
            Method::Fisher => Some(Combiner::Fisher),
            Method::Pearson => Some(Combiner::Pearson),
            Method::George => Some(Combiner::George),
            Method::Edgington => Some(Combiner::Edgington),
            Method::Stouffer => Some(Combiner::Stouffer),
            Method::Tippett => Some(Combiner::Tippett),
            Method::Cauchy | Method::Lrt => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error returned when parsing an unknown method name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown method; expected one of cauchy, lrt, fisher, pearson, george, edgington, stouffer, tippett")
    }
}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or(UnknownMethod)
    }
}

/// Classic p-value combiners. Their null distributions assume independent
/// inputs, which pair p-values from one network are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combiner {
    /// `T_F = Σ log p`; `−2 T_F ~ χ²_{2K}`.
    Fisher,
    /// `T_P = −Σ log(1 − p)`; `2 T_P ~ χ²_{2K}`, small values are significant.
    Pearson,
    /// `T_G = Σ log(p / (1 − p))`; the logit statistic of Mudholkar and
    /// George, `−T_G sqrt(3(5K+4) / (π² K (5K+2))) ≈ t_{5K+4}`.
    George,
    /// `T_E = Σ p`; Irwin–Hall lower tail, normal approximation for K > 12.
    Edgington,
    /// `T_S = Σ Φ⁻¹(p)`; `T_S / sqrt(K) ~ N(0, 1)`, lower tail.
    Stouffer,
    /// `T_T = min p`; `P(T_T ≤ t) = 1 − (1 − t)^K`.
    Tippett,
}

impl From<Combiner> for Method {
    fn from(c: Combiner) -> Self {
        match c {
            Combiner::Fisher => Method::Fisher,
            Combiner::Pearson => Method::Pearson,
            Combiner::George => Method::George,
            Combiner::Edgington => Method::Edgington,
            Combiner::Stouffer => Method::Stouffer,
            Combiner::Tippett => Method::Tippett,
        }
    }
}

/// Outcome of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomogeneityResult {
    pub method: Method,
    pub statistic: f64,
    pub p_value: f64,
    pub reject: bool,
    /// Set for the classic combiners, whose p-values are only valid for
    /// independent inputs.
    #[cfg_attr(feature = "serde", serde(default))]
    pub assumes_independence: bool,
}

#[inline]
fn clamp_p(p: f64) -> f64 {
    p.clamp(P_CLAMP, 1.0 - P_CLAMP)
}

fn check_pvalues(pvals: &[f64]) -> Result<()> {
    if pvals.is_empty() {
        return Err(Error::EmptyInput);
    }
    if pvals.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Domain("p-value combination"));
    }
    Ok(())
}

/// Compensated sum, used where the total is compared against a tolerance.
fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Cauchy combination `T = Σ w_k tan((0.5 − p_k) π)` with the two-sided
/// p-value `1 − 2 atan(|T|) / π`; rejects when `|T| > c_{1−α/2}`.
pub fn cauchy_combine(pvals: &[f64], weights: &[f64], alpha: f64) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    check_pvalues(pvals)?;
    if weights.len() != pvals.len() {
        return Err(Error::DimensionMismatch {
            expected: pvals.len(),
            actual: weights.len(),
        });
    }
    let sum = neumaier_sum(weights);
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite())
        || (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE
    {
        return Err(Error::InvalidWeights { sum });
    }
    let statistic: f64 = pvals
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&p, &w)| w * tan((0.5 - clamp_p(p)) * PI))
        .sum();
    cauchy_result(statistic, alpha)
}

fn cauchy_result(statistic: f64, alpha: f64) -> Result<HomogeneityResult> {
    let magnitude = statistic.abs();
    // atan2(1, t) = π/2 − atan(t) for t ≥ 0, without cancellation in the tail.
    let p_value = FRAC_2_PI * atan2(1.0, magnitude);
    Ok(HomogeneityResult {
        method: Method::Cauchy,
        statistic,
        p_value: p_value.clamp(0.0, 1.0),
        reject: magnitude > cauchy_quantile(1.0 - alpha / 2.0)?,
        assumes_independence: false,
    })
}

/// Combines p-values with one of the classic statistics.
pub fn classic_combine(pvals: &[f64], combiner: Combiner, alpha: f64) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    check_pvalues(pvals)?;
    let k = pvals.len();
    let kf = k as f64;
    let clamped = pvals.iter().map(|&p| clamp_p(p));
    let (statistic, p_value) = match combiner {
        Combiner::Fisher => {
            let t: f64 = clamped.map(log).sum();
            (t, chisq_sf(-2.0 * t, 2.0 * kf)?)
        }
        Combiner::Pearson => {
            let t: f64 = clamped.map(|p| -log1p(-p)).sum();
            (t, chisq_cdf(2.0 * t, 2.0 * kf)?)
        }
        Combiner::George => {
            let t: f64 = clamped.map(|p| log(p) - log1p(-p)).sum();
            let scale = sqrt(3.0 * (5.0 * kf + 4.0) / (PI * PI * kf * (5.0 * kf + 2.0)));
            (t, student_t_sf(-t * scale, 5.0 * kf + 4.0)?)
        }
        Combiner::Edgington => {
            let t: f64 = pvals.iter().sum();
            (t, irwin_hall_cdf(t, k)?)
        }
        Combiner::Stouffer => {
            let mut t = 0.0;
            for p in clamped {
                t += normal_quantile(p)?;
            }
            (t, normal_cdf(t / sqrt(kf)))
        }
        Combiner::Tippett => {
            let t = pvals.iter().copied().fold(f64::INFINITY, f64::min);
            (t, min_uniform_cdf(t, k))
        }
    };
    let p_value = p_value.clamp(0.0, 1.0);
    Ok(HomogeneityResult {
        method: combiner.into(),
        statistic,
        p_value,
        reject: p_value <= alpha,
        assumes_independence: true,
    })
}

/// P-values of the pairs that enter the homogeneity combination.
///
/// Nodes with equal degree have bitwise equal `β̂` and `v̂`, hence `Û = 0`
/// and a p-value of exactly 1. Such pairs get weight zero; tan((0.5 − p)π)
/// at the clamped p = 1 would otherwise swamp the statistic.
fn informative_pvalues(fit: &BetaFit) -> Result<Vec<f64>> {
    check_fit(fit)?;
    let n = fit.node_count();
    if n < 2 {
        return Err(Error::EmptyInput);
    }
    let degrees = fit.degrees.as_slice();
    let all = all_pair_pvalues(fit)?;
    Ok(all
        .iter()
        .filter(|&(i, j, _)| degrees[i - 1] != degrees[j - 1])
        .map(|(_, _, p)| p)
        .collect())
}

/// Cauchy-combination test of `β_1 = … = β_n`.
///
/// Uniform weights over all pairs whose degrees differ. A regular graph has
/// no such pair; the statistic is then 0 and the p-value 1.
pub fn homogeneity_cauchy(fit: &BetaFit, alpha: f64) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    let pvals = informative_pvalues(fit)?;
    if pvals.is_empty() {
        return cauchy_result(0.0, alpha);
    }
    let w = 1.0 / pvals.len() as f64;
    let statistic: f64 = pvals
        .iter()
        .map(|&p| w * tan((0.5 - clamp_p(p)) * PI))
        .sum();
    cauchy_result(statistic, alpha)
}

/// Classic-combiner homogeneity test over the same pairs as
/// [`homogeneity_cauchy`].
pub fn homogeneity_classic(
    fit: &BetaFit,
    combiner: Combiner,
    alpha: f64,
) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    let pvals = informative_pvalues(fit)?;
    if pvals.is_empty() {
        return Ok(HomogeneityResult {
            method: combiner.into(),
            statistic: f64::NAN,
            p_value: 1.0,
            reject: false,
            assumes_independence: true,
        });
    }
    classic_combine(&pvals, combiner, alpha)
}

/// Likelihood-ratio test of full homogeneity, `2 (ℓ(β̂) − ℓ(β̂_res))`
/// against `χ²_{n−1}`.
pub fn homogeneity_lrt(
    d: &DegreeSequence,
    cfg: &FitConfig,
    alpha: f64,
) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    let fit = mle_fit(d, cfg)?;
    homogeneity_lrt_with_fit(&fit, alpha)
}

/// [`homogeneity_lrt`] reusing an existing fit.
pub fn homogeneity_lrt_with_fit(fit: &BetaFit, alpha: f64) -> Result<HomogeneityResult> {
    check_level(alpha)?;
    check_fit(fit)?;
    let d = &fit.degrees;
    let unrestricted = log_likelihood(&fit.beta_hat, d)?;
    let (_, restricted) = restricted_mle_homogeneous(d)?;
    let statistic = 2.0 * (unrestricted - restricted);
    let df = (d.len() - 1) as f64;
    let p_value = chisq_sf(statistic.max(0.0), df)?;
    Ok(HomogeneityResult {
        method: Method::Lrt,
        statistic,
        p_value,
        reject: p_value <= alpha,
        assumes_independence: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BetaVector;
    use alloc::vec;

    fn fit_of(d: &[u32]) -> BetaFit {
        mle_fit(
            &DegreeSequence::new(d.to_vec()).unwrap(),
            &FitConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn pair_test_is_antisymmetric_and_consistent() {
        let fit = fit_of(&[1, 2, 3, 2, 2, 4]);
        let a = pair_test(&fit, 1, 6, 0.05).unwrap();
        let b = pair_test(&fit, 6, 1, 0.05).unwrap();
        assert_eq!(a.u_hat, -b.u_hat);
        assert_eq!(a.p_value, b.p_value);
        assert!(a.u_hat < 0.0);
        assert!((a.p_value - 2.0 * (1.0 - normal_cdf(a.u_hat.abs()))).abs() < 1e-14);
        assert_eq!(a.upper_tail * 2.0, a.p_value);
    }

    #[test]
    fn equal_degrees_give_zero_statistic() {
        let fit = fit_of(&[1, 2, 3, 2, 2, 4]);
        let r = pair_test(&fit, 2, 5, 0.05).unwrap();
        assert_eq!(r.u_hat, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
    }

    #[test]
    fn pair_test_errors() {
        let mut fit = fit_of(&[2, 2, 2, 2]);
        assert_eq!(pair_test(&fit, 2, 2, 0.05), Err(Error::SameNode(2)));
        assert_eq!(
            pair_test(&fit, 1, 5, 0.05),
            Err(Error::NodeOutOfRange { node: 5, n: 4 })
        );
        assert_eq!(pair_test(&fit, 1, 2, 1.0), Err(Error::InvalidLevel(1.0)));
        fit.converged = false;
        assert_eq!(pair_test(&fit, 1, 2, 0.05), Err(Error::Unconverged));
    }

    #[test]
    fn reject_rule_matches_critical_value() {
        // Synthetic fit with v̂ = 1 so Û = (β_i − β_j) / sqrt 2.
        let d = DegreeSequence::new(vec![1, 1, 1, 1]).unwrap();
        let z = 1.959_963_984_540_054;
        let fit = BetaFit {
            beta_hat: BetaVector::new(vec![
                0.0,
                z * 2f64.sqrt() + 1e-9,
                z * 2f64.sqrt() - 1e-9,
                0.0,
            ])
            .unwrap(),
            v_hat: vec![1.0; 4],
            degrees: d,
            iterations: 0,
            max_residual: 0.0,
            converged: true,
        };
        assert!(pair_test(&fit, 2, 1, 0.05).unwrap().reject);
        assert!(!pair_test(&fit, 3, 1, 0.05).unwrap().reject);
    }

    #[test]
    fn pair_pvalue_layout() {
        let fit = fit_of(&[1, 2, 3, 2, 2, 4]);
        let all = all_pair_pvalues(&fit).unwrap();
        assert_eq!(all.values().len(), 15);
        for (i, j, p) in all.iter() {
            assert!(i < j);
            assert_eq!(pair_test(&fit, i, j, 0.05).unwrap().p_value, p);
            assert_eq!(all.get(j, i), Some(p));
        }
        assert_eq!(all.get(3, 3), None);
        let two = mle_fit(
            &DegreeSequence::new(vec![1, 1]).unwrap(),
            &FitConfig::default(),
        );
        assert_eq!(two, Err(Error::DegreeBoundary { node: 1, degree: 1 }));
    }

    #[test]
    fn regular_graph_pvalues_are_one() {
        let fit = fit_of(&[2; 7]);
        assert!(all_pair_pvalues(&fit)
            .unwrap()
            .values()
            .iter()
            .all(|&p| p == 1.0));
        let h = homogeneity_cauchy(&fit, 0.05).unwrap();
        assert_eq!((h.statistic, h.p_value, h.reject), (0.0, 1.0, false));
        let lrt = homogeneity_lrt_with_fit(&fit, 0.05).unwrap();
        assert!(lrt.statistic.abs() < 1e-9);
        assert!((lrt.p_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cauchy_examples() {
        let r = cauchy_combine(&[0.5], &[1.0], 0.05).unwrap();
        assert!(r.statistic.abs() < 1e-15);
        assert_eq!(r.p_value, 1.0);

        let r = cauchy_combine(&[0.05], &[1.0], 0.05).unwrap();
        assert!((r.statistic - 6.313_751_514_675_043).abs() < 1e-9);
        assert!((r.p_value - 0.10).abs() < 1e-12);
        assert!(!r.reject);
    }

    #[test]
    fn cauchy_input_validation() {
        assert_eq!(cauchy_combine(&[], &[], 0.05), Err(Error::EmptyInput));
        assert!(matches!(
            cauchy_combine(&[0.2, 0.3], &[0.5, 0.6], 0.05),
            Err(Error::InvalidWeights { .. })
        ));
        assert!(matches!(
            cauchy_combine(&[0.2, 0.3], &[1.5, -0.5], 0.05),
            Err(Error::InvalidWeights { .. })
        ));
        assert!(matches!(
            cauchy_combine(&[1.2], &[1.0], 0.05),
            Err(Error::Domain(_))
        ));
        let r = cauchy_combine(&[0.0, 1.0], &[0.5, 0.5], 0.05).unwrap();
        assert!(r.statistic.is_finite() && r.p_value.is_finite());
    }

    #[test]
    fn classic_examples() {
        let f = classic_combine(&[1.0, 1.0, 1.0], Combiner::Fisher, 0.05).unwrap();
        assert!(f.statistic.abs() < 1e-13);
        assert!((f.p_value - 1.0).abs() < 1e-12);
        assert!(f.assumes_independence);

        let t = classic_combine(&[0.2, 0.5, 0.9], Combiner::Tippett, 0.05).unwrap();
        assert_eq!(t.statistic, 0.2);
        assert!((t.p_value - 0.488).abs() < 1e-12);

        let s = classic_combine(&[0.5; 4], Combiner::Stouffer, 0.05).unwrap();
        assert_eq!(s.statistic, 0.0);
        assert_eq!(s.p_value, 0.5);

        // One input: every method reduces to that p-value (George only
        // approximately, through the t approximation).
        for c in [
            Combiner::Fisher,
            Combiner::Pearson,
            Combiner::Edgington,
            Combiner::Stouffer,
            Combiner::Tippett,
        ] {
            let r = classic_combine(&[0.03], c, 0.05).unwrap();
            assert!((r.p_value - 0.03).abs() < 1e-9, "{c:?}: {}", r.p_value);
            assert!(r.reject);
        }
        let g = classic_combine(&[0.03], Combiner::George, 0.05).unwrap();
        assert!((g.p_value - 0.03).abs() < 0.01);
    }

    #[test]
    fn classic_combiners_detect_small_pvalues() {
        let small = [0.01, 0.02, 0.04, 0.03, 0.05];
        let large = [0.6, 0.7, 0.9, 0.8, 0.65];
        for c in [
            Combiner::Fisher,
            Combiner::Pearson,
            Combiner::George,
            Combiner::Edgington,
            Combiner::Stouffer,
            Combiner::Tippett,
        ] {
            let lo = classic_combine(&small, c, 0.05).unwrap();
            let hi = classic_combine(&large, c, 0.05).unwrap();
            assert!(lo.p_value < hi.p_value, "{c:?}");
            assert!(lo.reject && !hi.reject, "{c:?}");
        }
    }

    #[test]
    fn edgington_uses_normal_approximation_beyond_twelve() {
        let p = [0.5; 20];
        let r = classic_combine(&p, Combiner::Edgington, 0.05).unwrap();
        assert!((r.p_value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>(), Ok(m));
        }
        assert_eq!("LRT".parse::<Method>(), Ok(Method::Lrt));
        assert!("bonferroni".parse::<Method>().is_err());
        assert_eq!(Method::Fisher.combiner(), Some(Combiner::Fisher));
        assert_eq!(Method::Cauchy.combiner(), None);
    }
}
