//! Closed-form constructors for reference families.

use crate::error::{Error, Result};
use crate::pmf::Pmf;

fn check_probability(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("success probability must lie in (0, 1), got {p}")))
    }
}

/// Poisson(`lambda`) stored up to `truncation`.
pub fn poisson(lambda: f64, truncation: usize) -> Result<Pmf> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain(format!("Poisson rate must be positive, got {lambda}")));
    }
    let mut probs = Vec::with_capacity(truncation + 1);
    let mut term = (-lambda).exp();
    probs.push(term);
    for m in 1..=truncation {
        term *= lambda / m as f64;
        probs.push(term);
    }
    let stored: f64 = probs.iter().sum();
    Ok(Pmf::from_parts(probs, (1.0 - stored).max(0.0)))
}

/// Geometric law with success probability `p`, on `{0, 1, ...}` when
/// `start = 0` and on `{1, 2, ...}` when `start = 1`.
pub fn geometric(p: f64, start: usize, truncation: usize) -> Result<Pmf> {
    check_probability(p)?;
    if start > 1 {
        return Err(Error::domain(format!("geometric start must be 0 or 1, got {start}")));
    }
    let q = 1.0 - p;
    let mut probs = vec![0.0; truncation + 1];
    let mut term = p;
    for slot in probs.iter_mut().skip(start) {
        *slot = term;
        term *= q;
    }
    let tail = q.powi((truncation + 1 - start.min(truncation + 1)) as i32);
    Ok(Pmf::from_parts(probs, tail))
}

/// Law with PGF `(p / (1 - q s^k))^t`: a negative-binomial number of jumps
/// of size `k`. Only multiples of `k` carry mass.
pub fn negbin_lattice(p: f64, k: usize, t: f64, truncation: usize) -> Result<Pmf> {
    check_probability(p)?;
    if k == 0 {
        return Err(Error::domain("lattice step k must be at least 1"));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("negative binomial index t must be positive, got {t}")));
    }
    let q = 1.0 - p;
    let mut probs = vec![0.0; truncation + 1];
    // C(t+n-1, n) p^t q^n as a running product; no gamma functions.
    let mut term = p.powf(t);
    let mut n = 0usize;
    while n * k <= truncation {
        probs[n * k] = term;
        n += 1;
        term *= (t + n as f64 - 1.0) / n as f64 * q;
    }
    let stored: f64 = probs.iter().sum();
    Ok(Pmf::from_parts(probs, (1.0 - stored).max(0.0)))
}

/// Law with PGF `s (p / (1 - q s^k))^t`, i.e. [`negbin_lattice`]
/// translated up by one.
pub fn shifted_negbin_lattice(p: f64, k: usize, t: f64, truncation: usize) -> Result<Pmf> {
    if k < 2 {
        return Err(Error::domain("the shifted lattice family needs k > 1"));
    }
    Ok(negbin_lattice(p, k, t, truncation)?.translate(1))
}

/// Law with PGF `Q(s^k)` where `Q` is the PGF of `p`.
pub fn lattice_embed(p: &Pmf, k: usize) -> Result<Pmf> {
    if k == 0 {
        return Err(Error::domain("lattice step k must be at least 1"));
    }
    let mut probs = vec![0.0; k * p.truncation() + 1];
    for (i, &x) in p.probs().iter().enumerate() {
        probs[k * i] = x;
    }
    Ok(Pmf::from_parts(probs, p.tail_bound()))
}

/// Binomial(`n`, `p`), stored exactly with truncation `n`.
pub fn binomial(n: usize, p: f64) -> Result<Pmf> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::domain("binomial needs at least one trial"));
    }
    let q = 1.0 - p;
    let mut probs = Vec::with_capacity(n + 1);
    let mut coef = 1.0;
    for m in 0..=n {
        if m > 0 {
            coef *= (n + 1 - m) as f64 / m as f64;
        }
        probs.push(coef * p.powi(m as i32) * q.powi((n - m) as i32));
    }
    Ok(Pmf::from_parts(probs, 0.0))
}
