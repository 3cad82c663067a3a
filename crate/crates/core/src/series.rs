//! Power-series logarithm and exponential of probability generating
//! functions.
//!
//! For a law with `p0 > 0`, `L(s) = log Q(s)` is computed coefficient-wise
//! from `Q' = L' Q`, which gives
//!
//! ```text
//! m l_m p0 = m p_m - sum_{j=1}^{m-1} j l_j p_{m-j}
//! ```
//!
//! and the exponential runs the same identity the other way. Both are
//! O(N^2). The logarithm also carries a first-order forward error estimate
//! per coefficient, obtained by pushing each step's rounding residual
//! through the coefficients of `1 / Q`. Verdicts use it to separate genuine
//! negativity from rounding noise.

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::tolerance::Tolerances;

/// Coefficients `l_0..l_N` of `log Q(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSeries {
    coeffs: Vec<f64>,
    error_bounds: Vec<f64>,
    source_tail_bound: f64,
}

impl LogSeries {
    /// Series with externally supplied coefficients and zero error estimate.
    pub fn from_coeffs(coeffs: Vec<f64>, source_tail_bound: f64) -> Self {
        let error_bounds = vec![0.0; coeffs.len()];
        LogSeries { coeffs, error_bounds, source_tail_bound }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Estimated absolute rounding error of each coefficient.
    pub fn error_bounds(&self) -> &[f64] {
        &self.error_bounds
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn source_tail_bound(&self) -> f64 {
        self.source_tail_bound
    }

    /// Multiplies every coefficient by `factor`. Dividing by `n` gives the
    /// exponent of the `n`-th convolution root.
    pub fn scale(&self, factor: f64) -> LogSeries {
        LogSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            error_bounds: self.error_bounds.iter().map(|e| e * factor.abs()).collect(),
            source_tail_bound: self.source_tail_bound,
        }
    }

    /// Coefficient-wise sum over the shared indices; the exponent of a
    /// convolution.
    pub fn add(&self, other: &LogSeries) -> LogSeries {
        let zip = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        LogSeries {
            coeffs: zip(&self.coeffs, &other.coeffs),
            error_bounds: zip(&self.error_bounds, &other.error_bounds),
            source_tail_bound: self.source_tail_bound + other.source_tail_bound,
        }
    }
}

pub fn log_pgf(p: &Pmf) -> Result<LogSeries> {
    log_pgf_with(p, &Tolerances::DEFAULT)
}

pub fn log_pgf_with(p: &Pmf, tol: &Tolerances) -> Result<LogSeries> {
    let probs = p.probs();
    let p0 = probs[0];
    if p0 <= tol.eps_neg {
        return Err(Error::ZeroAtOrigin { p0 });
    }
    let n = probs.len();
    let mut coeffs = vec![0.0; n];
    // rounding residual of each step of the triangular solve
    let mut residual = vec![0.0; n];
    coeffs[0] = p0.ln();

    for m in 1..n {
        let mf = m as f64;
        let mut acc = mf * probs[m];
        let mut magnitude = acc.abs();
        for j in 1..m {
            let t = j as f64 * probs[m - j] * coeffs[j];
            acc -= t;
            magnitude += t.abs();
        }
        coeffs[m] = acc / (mf * p0);
        residual[m] = (mf + 2.0) * f64::EPSILON * magnitude;
    }

    // With u_j = j l_j the recursion solves u * p = (m p_m), so a residual
    // reaches u_m through the coefficients of 1/Q.
    let inverse = reciprocal_coefficients(probs);
    let mut err = vec![0.0; n];
    err[0] = f64::EPSILON * coeffs[0].abs();
    for m in 1..n {
        let spread: f64 = (1..=m).map(|k| residual[k] * inverse[m - k].abs()).sum();
        err[m] = spread / m as f64 + f64::EPSILON * coeffs[m].abs();
    }
    Ok(LogSeries { coeffs, error_bounds: err, source_tail_bound: p.tail_bound() })
}

/// Coefficients of `1 / Q(s)`; requires `probs[0] > 0`.
fn reciprocal_coefficients(probs: &[f64]) -> Vec<f64> {
    let p0 = probs[0];
    let mut inv = vec![0.0; probs.len()];
    inv[0] = 1.0 / p0;
    for m in 1..probs.len() {
        let acc: f64 = (1..=m).map(|j| probs[j] * inv[m - j]).sum();
        inv[m] = -acc / p0;
    }
    inv
}

/// Raw coefficients of `exp(L(s))`. These need not form a pmf when `L` is
/// not the exponent of an infinitely divisible law.
pub fn exp_coefficients(l: &LogSeries) -> Vec<f64> {
    let c = &l.coeffs;
    let mut out = vec![0.0; c.len()];
    out[0] = c[0].exp();
    for m in 1..c.len() {
        let acc: f64 = (1..=m).map(|j| j as f64 * c[j] * out[m - j]).sum();
        out[m] = acc / m as f64;
    }
    out
}

/// `exp(L(s))` as a pmf. The tail bound absorbs the normalization deficit.
///
/// Fails with [`Error::NegativeWeight`] when some coefficient is below
/// `-eps_neg`, i.e. when the exponential is not a probability law.
pub fn exp_series(l: &LogSeries) -> Result<Pmf> {
    exp_series_with(l, &Tolerances::DEFAULT)
}

pub fn exp_series_with(l: &LogSeries, tol: &Tolerances) -> Result<Pmf> {
    let coeffs = exp_coefficients(l);
    let stored: f64 = coeffs.iter().map(|c| c.max(0.0)).sum();
    let tail = (1.0 - stored).max(0.0);
    Pmf::from_weights_with(coeffs, tail, tol)
}
