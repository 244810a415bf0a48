//! Quantiles and sample moments.
//!
//! One quantile convention is used everywhere in this crate: linear
//! interpolation between order statistics with plotting position
//! h = (n−1)·q (the "inclusive" convention). Historical VaR, filtered
//! historical simulation, the EVT threshold, and Monte-Carlo VaR all route
//! through [`quantile`], so estimates stay comparable across methods.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Empirical quantile of `xs` at probability `q` (inclusive convention).
///
/// Sorts a copy; use [`quantile_sorted`] when the data is already ordered.
pub fn quantile<F: Scalar>(xs: &[F], q: F) -> Result<F> {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    quantile_sorted(&sorted, q)
}

/// Empirical quantile of already-sorted data at probability `q`.
///
/// With h = (n−1)·q, k = ⌊h⌋: returns x_(k) + (h−k)·(x_(k+1) − x_(k)).
pub fn quantile_sorted<F: Scalar>(sorted: &[F], q: F) -> Result<F> {
    if sorted.is_empty() {
        return Err(Error::InsufficientData(
            "quantile of an empty sample".into(),
        ));
    }
    if !(q >= F::zero() && q <= F::one()) {
        return Err(Error::invalid("q", format!("probability {q} not in [0,1]")));
    }
    let n = sorted.len();
    if n == 1 {
        return Ok(sorted[0]);
    }
    let h = F::of_usize(n - 1) * q;
    let k = h.floor();
    let idx = k.to_usize().unwrap_or(0).min(n - 2);
    let frac = h - F::of_usize(idx);
    Ok(sorted[idx] + frac * (sorted[idx + 1] - sorted[idx]))
}

/// Adjusted Fisher–Pearson sample skewness
/// G1 = n/((n−1)(n−2)) · Σ((x−x̄)/s)³; needs n ≥ 3 and s > 0.
pub fn sample_skewness<F: Scalar>(xs: &[F]) -> Option<F> {
    let n = xs.len();
    if n < 3 {
        return None;
    }
    let (m, s2) = mean_var(xs);
    if s2 <= F::zero() {
        return None;
    }
    let s = s2.sqrt();
    let sum3 = xs.iter().fold(F::zero(), |acc, &x| {
        let z = (x - m) / s;
        acc + z * z * z
    });
    let nf = F::of_usize(n);
    Some(nf / ((nf - F::one()) * (nf - F::cst(2.0))) * sum3)
}

/// Sample excess kurtosis
/// G2 = n(n+1)/((n−1)(n−2)(n−3)) · Σ((x−x̄)/s)⁴ − 3(n−1)²/((n−2)(n−3));
/// needs n ≥ 4 and s > 0. Zero for the normal distribution in expectation.
pub fn sample_excess_kurtosis<F: Scalar>(xs: &[F]) -> Option<F> {
    let n = xs.len();
    if n < 4 {
        return None;
    }
    let (m, s2) = mean_var(xs);
    if s2 <= F::zero() {
        return None;
    }
    let sum4 = xs.iter().fold(F::zero(), |acc, &x| {
        let z2 = (x - m) * (x - m) / s2;
        acc + z2 * z2
    });
    let nf = F::of_usize(n);
    let one = F::one();
    let term = nf * (nf + one) / ((nf - one) * (nf - F::cst(2.0)) * (nf - F::cst(3.0))) * sum4;
    let correction =
        F::cst(3.0) * (nf - one) * (nf - one) / ((nf - F::cst(2.0)) * (nf - F::cst(3.0)));
    Some(term - correction)
}

fn mean_var<F: Scalar>(xs: &[F]) -> (F, F) {
    (crate::scalar::mean(xs), crate::scalar::sample_variance(xs))
}
