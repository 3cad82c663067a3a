//! Infinite divisibility with integer-valued components.
//!
//! A law on the non-negative integers with `p0 > 0` has this property iff
//! every coefficient `l_m`, `m >= 1`, of `log Q(s)` is non-negative; it is
//! then the compound Poisson law with rate `-l_0` and jump law
//! `l_m / (-l_0)`. Laws with `p0 = 0` never have integer-valued components;
//! when their translate to the origin does, they are reported as shifted.
//!
//! Floating point forces a three-way answer. A coefficient below
//! `-max(negativity_floor, error estimate)` is a definite witness against
//! divisibility; anything the error estimate or an unexamined tail could
//! flip is [`IdVerdict::Inconclusive`].

use std::fmt;

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::series::{self, LogSeries};
use crate::tolerance::Tolerances;

/// Poisson compound with rate `rate` and jump law `jump` on `{1, 2, ...}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundPoissonForm {
    rate: f64,
    jump: Pmf,
}

impl CompoundPoissonForm {
    pub fn new(rate: f64, jump: Pmf) -> Result<Self> {
        Self::new_with(rate, jump, &Tolerances::DEFAULT)
    }

    pub fn new_with(rate: f64, jump: Pmf, tol: &Tolerances) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::domain(format!("compound Poisson rate must be positive, got {rate}")));
        }
        if jump.prob(0) != 0.0 {
            return Err(Error::domain("jump law must put no mass at 0"));
        }
        if !jump.is_normalized(tol) {
            return Err(Error::NotNormalized { total: jump.total_mass() });
        }
        Ok(CompoundPoissonForm { rate, jump })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn jump(&self) -> &Pmf {
        &self.jump
    }

    /// The exponent `-rate + rate * omega(s)` up to index `truncation`.
    pub fn log_series(&self, truncation: usize) -> LogSeries {
        let mut coeffs: Vec<f64> =
            (0..=truncation).map(|m| self.rate * self.jump.prob(m)).collect();
        coeffs[0] = -self.rate;
        LogSeries::from_coeffs(coeffs, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconclusiveReason {
    TruncationTooShort,
    ErrorAmplification,
    TailTooHeavy,
}

impl InconclusiveReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InconclusiveReason::TruncationTooShort => "truncation-too-short",
            InconclusiveReason::ErrorAmplification => "error-amplification",
            InconclusiveReason::TailTooHeavy => "tail-too-heavy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdVerdict {
    /// Divisible with integer-valued components; carries the canonical form.
    IdIntegerComponents(CompoundPoissonForm),
    /// A translate by `shift > 0` of a law divisible with integer-valued
    /// components. Divisible, but its components are not integer-valued.
    IdShifted { shift: usize, inner: CompoundPoissonForm },
    /// `witness_index` is the first log-series coefficient (of the law
    /// translated to the origin) that is definitely negative.
    NotId { witness_index: usize, witness_value: f64 },
    /// Point mass.
    Degenerate { at: usize },
    Inconclusive(InconclusiveReason),
}

impl IdVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            IdVerdict::IdIntegerComponents(_) => "IdIntegerComponents",
            IdVerdict::IdShifted { .. } => "IdShifted",
            IdVerdict::NotId { .. } => "NotId",
            IdVerdict::Degenerate { .. } => "Degenerate",
            IdVerdict::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn form(&self) -> Option<&CompoundPoissonForm> {
        match self {
            IdVerdict::IdIntegerComponents(f) | IdVerdict::IdShifted { inner: f, .. } => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for IdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdVerdict::IdIntegerComponents(form) => {
                write!(f, "IdIntegerComponents(rate={})", form.rate)
            }
            IdVerdict::IdShifted { shift, inner } => {
                write!(f, "IdShifted(shift={shift}, rate={})", inner.rate)
            }
            IdVerdict::NotId { witness_index, witness_value } => {
                write!(f, "NotId(witness l_{witness_index} = {witness_value})")
            }
            IdVerdict::Degenerate { at } => write!(f, "Degenerate(at={at})"),
            IdVerdict::Inconclusive(r) => write!(f, "Inconclusive({})", r.as_str()),
        }
    }
}

pub fn test_id(p: &Pmf) -> Result<IdVerdict> {
    test_id_with(p, &Tolerances::DEFAULT)
}

pub fn test_id_with(p: &Pmf, tol: &Tolerances) -> Result<IdVerdict> {
    if !p.is_normalized(tol) {
        return Err(Error::NotNormalized { total: p.total_mass() });
    }
    let (shift, origin) = match detect_shift_with(p, tol) {
        Ok(found) => found,
        Err(Error::AllMassInTail) => {
            return Ok(IdVerdict::Inconclusive(InconclusiveReason::TailTooHeavy))
        }
        Err(e) => return Err(e),
    };
    let verdict = test_at_origin(&origin, tol)?;
    Ok(match verdict {
        IdVerdict::Degenerate { .. } => IdVerdict::Degenerate { at: shift },
        IdVerdict::IdIntegerComponents(inner) if shift > 0 => IdVerdict::IdShifted { shift, inner },
        other => other,
    })
}

/// Verdict for a law with an atom at 0.
fn test_at_origin(p: &Pmf, tol: &Tolerances) -> Result<IdVerdict> {
    let atoms = p.probs().iter().filter(|&&x| x > tol.eps_neg).count();
    if atoms == 1 && p.tail_bound() <= tol.eps_mass {
        return Ok(IdVerdict::Degenerate { at: 0 });
    }
    let n = p.truncation();
    if n == 0 {
        return Ok(IdVerdict::Inconclusive(InconclusiveReason::TruncationTooShort));
    }

    // A zero tail bound means the support is known to end at N; the series
    // can then be continued past N to look for a witness.
    let examined = if p.tail_bound() == 0.0 {
        p.with_truncation((2 * (n + 1)).max(64))
    } else {
        p.clone()
    };
    let l = series::log_pgf_with(&examined, tol)?;
    let coeffs = l.coeffs();
    let errs = l.error_bounds();

    for m in 1..coeffs.len() {
        let c = coeffs[m];
        if !c.is_finite() {
            return Ok(IdVerdict::Inconclusive(InconclusiveReason::ErrorAmplification));
        }
        if c < -tol.negativity_floor.max(errs[m]) {
            return Ok(IdVerdict::NotId { witness_index: m, witness_value: c });
        }
    }
    if coeffs[1..=n]
        .iter()
        .zip(&errs[1..=n])
        .any(|(&c, &e)| c < -tol.negativity_floor || e > tol.negativity_floor)
    {
        return Ok(IdVerdict::Inconclusive(InconclusiveReason::ErrorAmplification));
    }
    if p.tail_bound() > tol.heavy_tail {
        return Ok(IdVerdict::Inconclusive(InconclusiveReason::TailTooHeavy));
    }

    let rate = -coeffs[0];
    let mut jump: Vec<f64> = coeffs[..=n].iter().map(|&c| c.max(0.0) / rate).collect();
    jump[0] = 0.0;
    let jump_mass: f64 = jump.iter().sum();
    let jump = Pmf::from_weights_with(jump, (1.0 - jump_mass).max(0.0), tol)?;
    Ok(IdVerdict::IdIntegerComponents(CompoundPoissonForm::new_with(rate, jump, tol)?))
}

/// Canonical compound Poisson form of a law divisible with integer-valued
/// components.
pub fn factorize(p: &Pmf) -> Result<CompoundPoissonForm> {
    factorize_with(p, &Tolerances::DEFAULT)
}

pub fn factorize_with(p: &Pmf, tol: &Tolerances) -> Result<CompoundPoissonForm> {
    match test_id_with(p, tol)? {
        IdVerdict::IdIntegerComponents(form) => Ok(form),
        other => Err(Error::NotFactorizable(Box::new(other))),
    }
}

/// Poisson compound of `form`, stored up to `truncation`.
///
/// Runs `m p_m = rate * sum_{j=1}^{m} j w_j p_{m-j}` from `p_0 = e^{-rate}`.
pub fn compose(form: &CompoundPoissonForm, truncation: usize) -> Pmf {
    let w = form.jump.probs();
    let support: Vec<(usize, f64)> = w
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &x)| x > 0.0)
        .map(|(j, &x)| (j, j as f64 * x))
        .collect();
    let mut probs = vec![0.0; truncation + 1];
    probs[0] = (-form.rate).exp();
    for m in 1..=truncation {
        let acc: f64 = support
            .iter()
            .take_while(|(j, _)| *j <= m)
            .map(|&(j, jw)| jw * probs[m - j])
            .sum();
        probs[m] = form.rate * acc / m as f64;
    }
    let stored: f64 = probs.iter().sum();
    Pmf::from_parts(probs, (1.0 - stored).max(0.0))
}

/// The common law of the `n` i.i.d. components summing to `p`.
pub fn convolution_root(p: &Pmf, n: usize) -> Result<Pmf> {
    convolution_root_with(p, n, &Tolerances::DEFAULT)
}

pub fn convolution_root_with(p: &Pmf, n: usize, tol: &Tolerances) -> Result<Pmf> {
    if n == 0 {
        return Err(Error::domain("convolution root needs n >= 1"));
    }
    match test_id_with(p, tol)? {
        IdVerdict::IdIntegerComponents(_) => {
            let l = series::log_pgf_with(p, tol)?;
            series::exp_series_with(&l.scale(1.0 / n as f64), tol)
        }
        IdVerdict::Degenerate { at: 0 } => Ok(p.clone()),
        other => Err(Error::NotFactorizable(Box::new(other))),
    }
}

/// Smallest index carrying mass above `eps_neg`, and the law translated
/// down by it. Dust below the shift is moved into the tail bound.
pub fn detect_shift(p: &Pmf) -> Result<(usize, Pmf)> {
    detect_shift_with(p, &Tolerances::DEFAULT)
}

pub fn detect_shift_with(p: &Pmf, tol: &Tolerances) -> Result<(usize, Pmf)> {
    let probs = p.probs();
    let shift = probs.iter().position(|&x| x > tol.eps_neg).ok_or(Error::AllMassInTail)?;
    if shift == 0 {
        return Ok((0, p.clone()));
    }
    let dust: f64 = probs[..shift].iter().sum();
    Ok((shift, Pmf::from_parts(probs[shift..].to_vec(), p.tail_bound() + dust)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::pmf::{convolve_power, total_variation_distance};
    use approx::assert_abs_diff_eq;

    fn form_of(v: IdVerdict) -> CompoundPoissonForm {
        match v {
            IdVerdict::IdIntegerComponents(f) => f,
            other => panic!("expected IdIntegerComponents, got {other}"),
        }
    }

    #[test]
    fn poisson_is_its_own_form() {
        let form = form_of(test_id(&families::poisson(2.0, 60).unwrap()).unwrap());
        assert_abs_diff_eq!(form.rate(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(form.jump().prob(1), 1.0, epsilon = 1e-14);
        assert!(form.jump().probs()[2..].iter().all(|&x| x < 1e-14));
    }

    #[test]
    fn binomial_witness() {
        let v = test_id(&families::binomial(2, 0.5).unwrap()).unwrap();
        match v {
            IdVerdict::NotId { witness_index, witness_value } => {
                assert_eq!(witness_index, 2);
                assert_abs_diff_eq!(witness_value, -1.0, epsilon = 1e-12);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn bernoulli_needs_the_extended_series() {
        // truncation 1: the witness l_2 = -q^2/2 lies past the stored range
        let v = test_id(&families::binomial(1, 0.3).unwrap()).unwrap();
        match v {
            IdVerdict::NotId { witness_index, witness_value } => {
                assert_eq!(witness_index, 2);
                // log(q + p s): l_2 = -(p/q)^2 / 2
                assert_abs_diff_eq!(witness_value, -(0.3f64 / 0.7).powi(2) / 2.0, epsilon = 1e-14);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn geometric_on_one_is_shifted() {
        let g1 = families::geometric(0.5, 1, 256).unwrap();
        match test_id(&g1).unwrap() {
            IdVerdict::IdShifted { shift, inner } => {
                assert_eq!(shift, 1);
                assert_abs_diff_eq!(inner.rate(), 2f64.ln(), epsilon = 1e-12);
                for m in 1..40 {
                    let w = 0.5f64.powi(m as i32) / (m as f64 * 2f64.ln());
                    assert_abs_diff_eq!(inner.jump().prob(m), w, epsilon = 1e-13);
                }
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn lattice_law_has_lattice_jumps() {
        let p = families::negbin_lattice(0.5, 2, 1.0, 256).unwrap();
        let form = form_of(test_id(&p).unwrap());
        for m in (1..=256).step_by(2) {
            assert!(form.jump().prob(m).abs() < 1e-15, "odd jump mass at {m}");
        }
        assert!(form.jump().prob(2) > 0.5);
    }

    #[test]
    fn degenerate_and_shifted_point_masses() {
        assert_eq!(test_id(&Pmf::point_mass(0, 10)).unwrap(), IdVerdict::Degenerate { at: 0 });
        assert_eq!(test_id(&Pmf::point_mass(5, 10)).unwrap(), IdVerdict::Degenerate { at: 5 });
        let err = factorize(&Pmf::point_mass(0, 10)).unwrap_err();
        assert!(matches!(err, Error::NotFactorizable(v) if *v == IdVerdict::Degenerate { at: 0 }));
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let p = Pmf::from_weights(vec![0.3, 0.3], 0.0).unwrap();
        assert!(matches!(test_id(&p), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn heavy_tail_is_inconclusive() {
        let g = families::geometric(0.1, 0, 20).unwrap();
        assert!(g.tail_bound() > 1e-6);
        assert_eq!(
            test_id(&g).unwrap(),
            IdVerdict::Inconclusive(InconclusiveReason::TailTooHeavy)
        );
    }

    #[test]
    fn heavy_tail_does_not_hide_a_witness() {
        // l_m for m <= N depends only on p_0..p_m
        let p = Pmf::from_weights(vec![0.25, 0.5, 0.125], 0.125).unwrap();
        assert!(matches!(test_id(&p).unwrap(), IdVerdict::NotId { witness_index: 2, .. }));
    }

    #[test]
    fn tiny_atom_at_zero_amplifies_error() {
        // Poisson(30): p0 ~ 1e-13 is below eps_neg, so the law is read as
        // shifted; Poisson(25) keeps p0 ~ 1.4e-11 and inflates the error
        // estimate past the floor.
        let p = families::poisson(25.0, 256).unwrap();
        assert_eq!(
            test_id(&p).unwrap(),
            IdVerdict::Inconclusive(InconclusiveReason::ErrorAmplification)
        );
    }

    #[test]
    fn compose_examples() {
        let unit = Pmf::from_weights(vec![0.0, 1.0], 0.0).unwrap();
        let form = CompoundPoissonForm::new(2.0, unit).unwrap();
        let p = compose(&form, 40);
        let mut expect = (-2.0f64).exp();
        for k in 0..=40 {
            if k > 0 {
                expect *= 2.0 / k as f64;
            }
            assert_abs_diff_eq!(p.prob(k), expect, epsilon = 1e-14);
        }

        let n = 256;
        let log2 = 2f64.ln();
        let w: Vec<f64> =
            (0..=n).map(|m| if m == 0 { 0.0 } else { 0.5f64.powi(m as i32) / (m as f64 * log2) }).collect();
        let mass: f64 = w.iter().sum();
        let jump = Pmf::from_weights(w, 1.0 - mass).unwrap();
        let g = compose(&CompoundPoissonForm::new(log2, jump).unwrap(), n);
        for m in 0..=n {
            assert_abs_diff_eq!(g.prob(m), 0.5f64.powi(m as i32 + 1), epsilon = 1e-12);
        }
    }

    #[test]
    fn form_invariants_enforced() {
        let unit = Pmf::from_weights(vec![0.0, 1.0], 0.0).unwrap();
        assert!(CompoundPoissonForm::new(0.0, unit.clone()).is_err());
        assert!(CompoundPoissonForm::new(-1.0, unit).is_err());
        let at_zero = Pmf::from_weights(vec![0.5, 0.5], 0.0).unwrap();
        assert!(CompoundPoissonForm::new(1.0, at_zero).is_err());
    }

    #[test]
    fn roots() {
        let p = families::poisson(6.0, 80).unwrap();
        let r = convolution_root(&p, 3).unwrap();
        let two = families::poisson(2.0, 80).unwrap();
        assert!(total_variation_distance(&r, &two).distance < 1e-12);
        assert_eq!(convolution_root(&p, 1).unwrap().probs().len(), p.probs().len());

        let nb = families::negbin_lattice(0.5, 1, 3.0, 256).unwrap();
        let r = convolution_root(&nb, 3).unwrap();
        let g = families::geometric(0.5, 0, 256).unwrap();
        assert!(total_variation_distance(&r, &g).distance < 1e-12);
        let back = convolve_power(&r, 3).unwrap();
        assert!(total_variation_distance(&back, &nb).distance < 1e-10);

        let b = families::binomial(4, 0.5).unwrap();
        assert!(matches!(convolution_root(&b, 2), Err(Error::NotFactorizable(_))));
        assert!(convolution_root(&p, 0).is_err());
    }

    #[test]
    fn shift_examples() {
        let g = families::geometric(0.5, 0, 30).unwrap();
        let (s, same) = detect_shift(&g).unwrap();
        assert_eq!(s, 0);
        assert_eq!(same, g);

        let (s, d) = detect_shift(&Pmf::point_mass(5, 8)).unwrap();
        assert_eq!(s, 5);
        assert_eq!(d.probs(), &[1.0, 0.0, 0.0, 0.0]);

        for (p, k, t) in [(0.5, 2, 1.0), (0.4, 3, 2.0), (0.7, 5, 0.5)] {
            let ex2 = families::shifted_negbin_lattice(p, k, t, 200).unwrap();
            let ex1 = families::negbin_lattice(p, k, t, 200).unwrap();
            let (s, down) = detect_shift(&ex2).unwrap();
            assert_eq!(s, 1);
            assert_eq!(down.probs(), &ex1.probs()[..200]);
        }

        let empty = Pmf::from_weights(vec![0.0, 0.0], 1.0).unwrap();
        assert!(matches!(detect_shift(&empty), Err(Error::AllMassInTail)));
    }

    #[test]
    fn compose_agrees_with_exp_series() {
        let jump = Pmf::from_weights(vec![0.0, 0.2, 0.0, 0.5, 0.3], 0.0).unwrap();
        let form = CompoundPoissonForm::new(1.7, jump).unwrap();
        let a = compose(&form, 100);
        let b = series::exp_series(&form.log_series(100)).unwrap();
        for (x, y) in a.probs().iter().zip(b.probs()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-14);
        }
    }
}
