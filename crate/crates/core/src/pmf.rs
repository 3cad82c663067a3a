//! Truncated probability mass functions on the non-negative integers.
//!
//! A [`Pmf`] stores the masses at indices `0..=N` together with an upper
//! bound on the mass beyond `N`. Every operation keeps that bound valid, so
//! downstream code can tell "this mass is zero" apart from "this mass was
//! never examined".

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::tolerance::Tolerances;

/// Output length above which [`convolve`] spreads its output indices over
/// the thread pool.
pub const PARALLEL_CONVOLVE_THRESHOLD: usize = 2048;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
    tail_bound: f64,
}

impl Pmf {
    /// Builds a pmf from caller-supplied masses. Nothing is normalized.
    pub fn from_weights(weights: impl Into<Vec<f64>>, tail_bound: f64) -> Result<Self> {
        Self::from_weights_with(weights, tail_bound, &Tolerances::DEFAULT)
    }

    pub fn from_weights_with(
        weights: impl Into<Vec<f64>>,
        tail_bound: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        let mut probs = weights.into();
        if probs.is_empty() {
            return Err(Error::domain("a pmf needs at least one stored index"));
        }
        if !tail_bound.is_finite() || tail_bound < 0.0 {
            return Err(Error::domain(format!("invalid tail bound {tail_bound}")));
        }
        for (index, w) in probs.iter_mut().enumerate() {
            if !w.is_finite() {
                return Err(Error::domain(format!("non-finite weight at index {index}")));
            }
            if *w < -tol.eps_neg {
                return Err(Error::NegativeWeight { index, value: *w });
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let total = probs.iter().sum::<f64>() + tail_bound;
        if total > 1.0 + tol.eps_mass {
            return Err(Error::MassExceedsOne { total });
        }
        Ok(Pmf { probs, tail_bound })
    }

    /// Point mass at `at`, stored with truncation `max(at, truncation)`.
    pub fn point_mass(at: usize, truncation: usize) -> Self {
        let mut probs = vec![0.0; truncation.max(at) + 1];
        probs[at] = 1.0;
        Pmf { probs, tail_bound: 0.0 }
    }

    /// Internal constructor for values computed by this crate. Clamps
    /// negative dust and rejects nothing.
    pub(crate) fn from_parts(mut probs: Vec<f64>, tail_bound: f64) -> Self {
        debug_assert!(!probs.is_empty());
        for p in probs.iter_mut() {
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        Pmf { probs, tail_bound: tail_bound.max(0.0) }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Mass at `i`, zero beyond the truncation.
    pub fn prob(&self, i: usize) -> f64 {
        self.probs.get(i).copied().unwrap_or(0.0)
    }

    /// Largest stored index.
    pub fn truncation(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn stored_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Stored mass plus tail bound.
    pub fn total_mass(&self) -> f64 {
        self.stored_mass() + self.tail_bound
    }

    pub fn is_normalized(&self, tol: &Tolerances) -> bool {
        (self.total_mass() - 1.0).abs() <= tol.eps_mass
    }

    /// Re-truncates at `truncation`. Padding adds zeros; cutting moves the
    /// dropped mass into the tail bound.
    pub fn with_truncation(&self, truncation: usize) -> Pmf {
        let len = truncation + 1;
        if len >= self.probs.len() {
            let mut probs = self.probs.clone();
            probs.resize(len, 0.0);
            Pmf { probs, tail_bound: self.tail_bound }
        } else {
            let dropped: f64 = self.probs[len..].iter().sum();
            Pmf { probs: self.probs[..len].to_vec(), tail_bound: self.tail_bound + dropped }
        }
    }

    /// Translates the law up by `by` indices, keeping the truncation.
    /// Mass pushed past the truncation joins the tail bound.
    pub fn translate(&self, by: usize) -> Pmf {
        let n = self.probs.len();
        let keep = n.saturating_sub(by);
        let mut probs = vec![0.0; n];
        probs[by.min(n)..].copy_from_slice(&self.probs[..keep]);
        let pushed: f64 = self.probs[keep..].iter().sum();
        Pmf { probs, tail_bound: self.tail_bound + pushed }
    }
}

/// Enclosure `[lower, upper]` of a PGF value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgfEnclosure {
    pub lower: f64,
    pub upper: f64,
}

impl PgfEnclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Evaluates the PGF at `s`. The unseen tail contributes between zero and
/// `tail_bound * s^(N+1)`.
pub fn pgf_eval(p: &Pmf, s: f64) -> Result<PgfEnclosure> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain(format!("pgf argument {s} outside [0, 1]")));
    }
    let lower = p.probs.iter().rev().fold(0.0, |acc, &c| acc * s + c);
    let tail = p.tail_bound * s.powi(p.probs.len() as i32);
    Ok(PgfEnclosure { lower, upper: lower + tail })
}

/// Convolution of two laws, truncated at the smaller truncation.
pub fn convolve(p: &Pmf, q: &Pmf) -> Pmf {
    let exec = if p.probs.len().min(q.probs.len()) >= PARALLEL_CONVOLVE_THRESHOLD {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    convolve_with(p, q, exec)
}

/// [`convolve`] with an explicit execution strategy. Both strategies give
/// bit-identical results.
pub fn convolve_with(p: &Pmf, q: &Pmf, exec: Execution) -> Pmf {
    let len = p.probs.len().min(q.probs.len());
    let (a, b) = (&p.probs, &q.probs);
    let mut out = vec![0.0; len];
    exec::fill_indexed(&mut out, exec, |m| {
        let lo = m.saturating_sub(b.len() - 1);
        let hi = m.min(a.len() - 1);
        (lo..=hi).map(|j| a[j] * b[m - j]).sum()
    });

    let (sp, sq) = (p.stored_mass(), q.stored_mass());
    let kept: f64 = out.iter().sum();
    // Stored products that landed beyond the truncation.
    let discarded = (sp * sq - kept).max(0.0);
    let tail = p.tail_bound * (sq + q.tail_bound) + sp * q.tail_bound + discarded;
    Pmf { probs: out, tail_bound: tail }
}

/// `n`-fold self-convolution by repeated squaring.
pub fn convolve_power(p: &Pmf, n: usize) -> Result<Pmf> {
    if n == 0 {
        return Err(Error::domain("convolution power needs n >= 1"));
    }
    let mut base = p.clone();
    let mut acc: Option<Pmf> = None;
    let mut k = n;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => convolve(&a, &base),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = convolve(&base, &base);
    }
    Ok(acc.expect("n >= 1 sets at least one bit"))
}

/// Total variation distance over the shared indices, with the mass that
/// could not be compared reported separately as `slack`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalVariation {
    pub distance: f64,
    pub slack: f64,
}

pub fn total_variation_distance(p: &Pmf, q: &Pmf) -> TotalVariation {
    let shared = p.probs.len().min(q.probs.len());
    let l1: f64 = p.probs[..shared]
        .iter()
        .zip(&q.probs[..shared])
        .map(|(a, b)| (a - b).abs())
        .sum();
    let unshared: f64 =
        p.probs[shared..].iter().sum::<f64>() + q.probs[shared..].iter().sum::<f64>();
    TotalVariation {
        distance: 0.5 * l1,
        slack: 0.5 * (p.tail_bound + q.tail_bound + unshared),
    }
}
