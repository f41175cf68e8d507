//! Independent reference solver for the likelihood equations: damped Newton
//! on the full system with the analytic Jacobian, plus an exact interior
//! test for the degree-sequence polytope. Test-only.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

fn prob(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Log-likelihood written directly from its definition.
pub fn loglik(beta: &[f64], d: &[u32]) -> f64 {
    let n = beta.len();
    let mut value = 0.0;
    for i in 0..n {
        value += beta[i] * d[i] as f64;
        for j in (i + 1)..n {
            value -= (1.0 + (beta[i] + beta[j]).exp()).ln();
        }
    }
    value
}

fn gradient(beta: &[f64], d: &[u32]) -> DVector<f64> {
    let n = beta.len();
    DVector::from_fn(n, |i, _| {
        let expected: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| prob(beta[i] + beta[j]))
            .sum();
        d[i] as f64 - expected
    })
}

/// Fisher information `V`: `v_ij = p_ij (1 − p_ij)`, `v_ii = Σ_j v_ij`.
pub fn fisher(beta: &[f64]) -> DMatrix<f64> {
    let n = beta.len();
    let mut v = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let p = prob(beta[i] + beta[j]);
                v[(i, j)] = p * (1.0 - p);
                v[(i, i)] += p * (1.0 - p);
            }
        }
    }
    v
}

/// Newton's method with step halving from `β = 0`. Returns `None` when the
/// gradient does not drop below `1e-12` within 200 steps.
pub fn newton_mle(d: &[u32]) -> Option<Vec<f64>> {
    let n = d.len();
    let mut beta = vec![0.0; n];
    for _ in 0..200 {
        let g = gradient(&beta, d);
        if g.amax() < 1e-12 {
            return Some(beta);
        }
        let step = fisher(&beta).lu().solve(&g)?;
        let current = loglik(&beta, d);
        let mut scale = 1.0;
        loop {
            let trial: Vec<f64> = beta
                .iter()
                .zip(step.iter())
                .map(|(b, s)| b + scale * s)
                .collect();
            if loglik(&trial, d) >= current - 1e-12 || scale < 1e-8 {
                beta = trial;
                break;
            }
            scale *= 0.5;
        }
        if beta.iter().any(|b| b.abs() > 40.0) {
            return None;
        }
    }
    None
}

/// Erdős–Gallai test.
pub fn is_graphical(d: &[u32]) -> bool {
    let mut s: Vec<u64> = d.iter().map(|&x| x as u64).collect();
    if s.iter().sum::<u64>() % 2 == 1 {
        return false;
    }
    s.sort_unstable_by(|a, b| b.cmp(a));
    let n = s.len();
    let mut prefix = 0;
    for k in 1..=n {
        prefix += s[k - 1];
        let tail: u64 = s[k..].iter().map(|&x| x.min(k as u64)).sum();
        if prefix > (k * (k - 1)) as u64 + tail {
            return false;
        }
    }
    true
}

/// Whether `d` lies in the interior of the degree-sequence polytope, i.e.
/// `Σ_S d − Σ_T d < |S| (n − 1 − |T|)` for every pair of disjoint node
/// sets `S`, `T` that are not both empty. This is exactly when the MLE exists.
pub fn is_polytope_interior(d: &[u32]) -> bool {
    let n = d.len();
    let mut labels = vec![0u8; n];
    loop {
        // Advance a base-3 counter: 0 = neither, 1 = in S, 2 = in T.
        let mut pos = 0;
        while pos < n && labels[pos] == 2 {
            labels[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return true;
        }
        labels[pos] += 1;
        let (mut lhs, mut s, mut t) = (0i64, 0i64, 0i64);
        for (l, &di) in labels.iter().zip(d) {
            match l {
                1 => {
                    lhs += di as i64;
                    s += 1;
                }
                2 => {
                    lhs -= di as i64;
                    t += 1;
                }
                _ => {}
            }
        }
        if lhs >= s * (n as i64 - 1 - t) {
            return false;
        }
    }
}

/// Every degree sequence of length `n` with entries in `1..=n−2` that is
/// graphical and interior.
pub fn interior_sequences(n: usize) -> (Vec<Vec<u32>>, usize) {
    let mut interior = Vec::new();
    let mut boundary = 0;
    let mut d = vec![1u32; n];
    loop {
        if is_graphical(&d) {
            if is_polytope_interior(&d) {
                interior.push(d.clone());
            } else {
                boundary += 1;
            }
        }
        let mut pos = 0;
        while pos < n && d[pos] == n as u32 - 2 {
            d[pos] = 1;
            pos += 1;
        }
        if pos == n {
            break;
        }
        d[pos] += 1;
    }
    (interior, boundary)
}
