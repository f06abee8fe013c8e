//! Cronbach's alpha, respondent reliability and zero-variation diagnostics.
//!
//! Sums of squares are accumulated in exact integer arithmetic as
//! `n * sum(x^2) - (sum x)^2`, which is `n` times the centered sum of squares.
//! The common `n` (and the `n - 1` variance divisor) cancels in the alpha
//! ratio, so alpha is a single rounding of an exact rational: matrices with
//! identical columns give exactly `1.0`, and computing alpha on a transposed
//! copy is bit-identical to any other evaluation order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ResponseMatrix;

/// Which respondents answered every item with the same level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroVariationReport {
    /// `flags[i]` is true when respondent `i` is single-minded.
    pub flags: Vec<bool>,
    /// Sample variance of each respondent's row, divisor `p - 1`.
    pub respondent_variances: Vec<f64>,
    /// Number of respondents with nonzero variation.
    pub m: usize,
    /// `m / n`.
    pub ratio: f64,
}

/// Column sums `Z_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemTotals {
    pub totals: Vec<u64>,
}

/// `k * sum(x^2) - (sum x)^2` for `k` observations.
#[inline]
fn scaled_ss(count: usize, sum: i128, sum_sq: i128) -> i128 {
    count as i128 * sum_sq - sum * sum
}

/// Empirical Cronbach's alpha over the items (columns) of `m`.
///
/// Returned unclamped; it may be negative and is at most `p / (p - 1)`.
pub fn cronbach_alpha(m: &ResponseMatrix) -> Result<f64> {
    let (n, p) = (m.n(), m.p());
    if p < 2 {
        return Err(Error::TooFewItems(p));
    }

    let mut col_sum = vec![0i128; p];
    let mut col_sq = vec![0i128; p];
    let (mut tot_sum, mut tot_sq) = (0i128, 0i128);
    for row in m.rows() {
        let mut t = 0i128;
        for (j, &x) in row.iter().enumerate() {
            let x = x as i128;
            col_sum[j] += x;
            col_sq[j] += x * x;
            t += x;
        }
        tot_sum += t;
        tot_sq += t * t;
    }

    let ss_total = scaled_ss(n, tot_sum, tot_sq);
    if ss_total == 0 {
        return Err(Error::DegenerateTotalVariance);
    }
    let ss_items: i128 = col_sum
        .iter()
        .zip(&col_sq)
        .map(|(&s, &q)| scaled_ss(n, s, q))
        .sum();

    let p = p as i128;
    let numerator = p * (ss_total - ss_items);
    let denominator = (p - 1) * ss_total;
    Ok(numerator as f64 / denominator as f64)
}

/// Alpha of the transposed matrix: consistency across respondents.
pub fn respondent_reliability(m: &ResponseMatrix) -> Result<f64> {
    if m.n() < 2 {
        return Err(Error::TooFewRespondents(m.n()));
    }
    cronbach_alpha(&m.transpose())
}

/// Flags single-minded respondents and reports per-row variances.
pub fn zero_variation_report(m: &ResponseMatrix) -> Result<ZeroVariationReport> {
    let p = m.p();
    if p < 2 {
        return Err(Error::TooFewItems(p));
    }
    let divisor = (p * (p - 1)) as f64;

    let mut flags = Vec::with_capacity(m.n());
    let mut respondent_variances = Vec::with_capacity(m.n());
    for row in m.rows() {
        let (s, q) = row.iter().fold((0i128, 0i128), |(s, q), &x| {
            let x = x as i128;
            (s + x, q + x * x)
        });
        let ss = scaled_ss(p, s, q);
        flags.push(ss == 0);
        respondent_variances.push(ss as f64 / divisor);
    }
    let m_count = flags.iter().filter(|&&f| !f).count();
    Ok(ZeroVariationReport {
        ratio: m_count as f64 / m.n() as f64,
        m: m_count,
        flags,
        respondent_variances,
    })
}

pub fn item_totals(m: &ResponseMatrix) -> ItemTotals {
    let mut totals = vec![0u64; m.p()];
    for row in m.rows() {
        for (t, &x) in totals.iter_mut().zip(row) {
            *t += x as u64;
        }
    }
    ItemTotals { totals }
}
