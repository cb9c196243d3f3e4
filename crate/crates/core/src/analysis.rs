//! Smoothing, discrete derivative and peak detection on LCS curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lcs::LcsCurve;

pub const DEFAULT_WINDOW: usize = 5;

/// Centered moving average of the curve lengths.
///
/// Near the ends the window shrinks symmetrically so it stays centered;
/// means are rounded half-up. Witnesses and member sets are kept as they are.
pub fn smooth(curve: &LcsCurve, window: usize) -> Result<LcsCurve> {
    Ok(curve.with_lengths(&smooth_lengths(&curve.lengths(), window)?))
}

pub fn smooth_lengths(lengths: &[usize], window: usize) -> Result<Vec<usize>> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::config(format!("smoothing window must be odd and positive, got {window}")));
    }
    let half = window / 2;
    let n = lengths.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0usize);
    for &l in lengths {
        prefix.push(prefix.last().unwrap() + l);
    }
    Ok((0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            let sum = prefix[i + h + 1] - prefix[i - h];
            let count = 2 * h + 1;
            (2 * sum + count) / (2 * count)
        })
        .collect())
}

/// First differences of an LCS curve, `LCS'[k] = LCS[k] - LCS[k-1]` for
/// k in `[3, M]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeSeries {
    first_k: usize,
    values: Vec<i64>,
}

impl DerivativeSeries {
    /// Builds a series directly from values, the first one sitting at `first_k`.
    pub fn from_values(first_k: usize, values: Vec<i64>) -> Self {
        DerivativeSeries { first_k, values }
    }

    pub fn first_k(&self) -> usize {
        self.first_k
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at `k`, `None` outside the series.
    pub fn at(&self, k: usize) -> Option<i64> {
        k.checked_sub(self.first_k).and_then(|i| self.values.get(i)).copied()
    }

    /// `(k, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.first_k + i, v))
    }

    /// `log10 |LCS'[k]|`, `None` where the derivative is zero.
    pub fn log_magnitude(&self) -> Vec<Option<f64>> {
        self.values.iter().map(|&v| if v == 0 { None } else { Some((v.unsigned_abs() as f64).log10()) }).collect()
    }
}

pub fn derivative(curve: &LcsCurve) -> Result<DerivativeSeries> {
    if curve.m() < 3 {
        return Err(Error::input(format!("derivative needs M >= 3, got {}", curve.m())));
    }
    Ok(derivative_of_lengths(&curve.lengths()))
}

/// `lengths[i]` is LCS at k = i + 2.
pub fn derivative_of_lengths(lengths: &[usize]) -> DerivativeSeries {
    let values = lengths.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    DerivativeSeries { first_k: 3, values }
}

/// A candidate splitting index found in the derivative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitCandidate {
    /// First k of the peak.
    pub k: usize,
    /// Last k of the peak; equal to `k` unless the minimum is a flat run.
    pub k_end: usize,
    pub magnitude: u64,
    /// 1-based rank by magnitude.
    pub rank: usize,
}

/// Negative peaks of the derivative.
///
/// A peak is a point (or a flat run of equal values) strictly below its
/// neighbors; points at the ends only have one neighbor to beat. Peaks with
/// `|LCS'| < min_prominence` are dropped. Output is sorted by magnitude,
/// larger first, ties by smaller k.
pub fn detect_peaks(series: &DerivativeSeries, min_prominence: f64) -> Vec<SplitCandidate> {
    let v = series.values();
    let mut out = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[i] {
            j += 1;
        }
        let below_left = i == 0 || v[i - 1] > v[i];
        let below_right = j + 1 == v.len() || v[j + 1] > v[i];
        let magnitude = v[i].unsigned_abs();
        if v[i] < 0 && below_left && below_right && magnitude as f64 >= min_prominence {
            out.push(SplitCandidate { k: series.first_k() + i, k_end: series.first_k() + j, magnitude, rank: 0 });
        }
        i = j + 1;
    }
    out.sort_by(|a, b| b.magnitude.cmp(&a.magnitude).then(a.k.cmp(&b.k)));
    for (r, c) in out.iter_mut().enumerate() {
        c.rank = r + 1;
    }
    out
}

/// `max(1, 2 * median(|LCS'|))` over the nonzero entries.
pub fn default_min_prominence(series: &DerivativeSeries) -> f64 {
    let mut mags: Vec<u64> = series.values().iter().filter(|&&v| v != 0).map(|v| v.unsigned_abs()).collect();
    if mags.is_empty() {
        return 1.0;
    }
    mags.sort_unstable();
    let n = mags.len();
    let median = if n % 2 == 1 { mags[n / 2] as f64 } else { (mags[n / 2 - 1] + mags[n / 2]) as f64 / 2.0 };
    (2.0 * median).max(1.0)
}
