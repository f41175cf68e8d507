//! Overflow-free logistic helpers.

use libm::{exp, log1p};

/// `1 / (1 + exp(-x))`, branching on the sign so `exp` only sees `-|x|`.
#[inline]
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + exp(-x))
    } else {
        let e = exp(x);
        e / (1.0 + e)
    }
}

/// `log(1 + exp(x))`.
#[inline]
pub fn log1p_exp(x: f64) -> f64 {
    if x > 0.0 {
        x + log1p(exp(-x))
    } else {
        log1p(exp(x))
    }
}

/// `p (1 - p)` for `p = logistic(x)`, i.e. `exp(x) / (1 + exp(x))^2`.
#[inline]
pub fn logistic_variance(x: f64) -> f64 {
    let e = exp(-x.abs());
    let denom = 1.0 + e;
    e / (denom * denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_tails_stay_finite() {
        assert_eq!(logistic(0.0), 0.5);
        let tiny = logistic(-100.0);
        assert!(tiny > 0.0 && (tiny / (-100.0f64).exp() - 1.0).abs() < 1e-12);
        assert_eq!(logistic(800.0), 1.0);
        assert!(logistic(-800.0) >= 0.0);
    }

    #[test]
    fn log1p_exp_matches_naive_in_safe_range() {
        for &x in &[-30.0, -2.5, -1e-3, 0.0, 0.7, 12.0, 30.0] {
            let naive = (1.0 + f64::exp(x)).ln();
            assert!((log1p_exp(x) - naive).abs() < 1e-12, "{x}");
        }
        assert_eq!(log1p_exp(1000.0), 1000.0);
    }

    #[test]
    fn variance_is_symmetric_and_peaks_at_zero() {
        assert_eq!(logistic_variance(0.0), 0.25);
        for &x in &[0.3, 1.0, 5.0, 40.0] {
            assert_eq!(logistic_variance(x), logistic_variance(-x));
            let p = logistic(x);
            assert!((logistic_variance(x) - p * (1.0 - p)).abs() < 1e-15);
        }
    }
}
