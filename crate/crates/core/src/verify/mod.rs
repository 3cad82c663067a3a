//! Randomized and constructed property sweeps.
//!
//! Each [`Suite`] checks one structural property of laws on the
//! non-negative integers over many independent instances and reports every
//! violation with enough detail to reproduce it. Instances draw from their
//! own seeded stream, so a sweep gives the same verdicts whether it runs on
//! one thread or many.

pub mod random;
pub mod visibility;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    compose, convolution_root_with, factorize_with, test_id_with, CompoundPoissonForm, IdVerdict,
};
use crate::exec::{map_indexed, Execution};
use crate::families;
use crate::pmf::{convolve_power, total_variation_distance, Pmf};
use crate::series::{exp_coefficients, exp_series_with, log_pgf_with};
use crate::support::{
    check_gap_theorem_with, jump_support_with, semigroup_closure, support_report_with, GapCheck,
};
use crate::tolerance::Tolerances;

use random::instance_rng;
use visibility::{certified_horizon, representable_multiples};

/// Relative tolerance on a recovered compound Poisson rate.
pub const RATE_REL_TOL: f64 = 1e-9;
/// Total variation tolerance on a recovered jump law.
pub const JUMP_TV_TOL: f64 = 1e-10;
/// Total variation tolerance on every round trip.
pub const ROUND_TRIP_TV_TOL: f64 = 1e-10;
/// Degrees of the convolution roots examined.
pub const ROOT_DEGREES: [usize; 3] = [2, 3, 5];
/// A reachable index counts as certified visible when its lower bound
/// exceeds this multiple of the support threshold.
pub const VISIBILITY_MARGIN: f64 = 10.0;
/// Smallest positive mass the unbounded-support sweep relies on.
pub const REPRESENTABLE_FLOOR: f64 = 1e-300;

const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Every compound Poisson law has an atom at zero and is recognized,
    /// with its rate and jump law recovered.
    AtomAtZero,
    /// Multiples of every jump atom stay in the support far into the tail.
    UnboundedSupport,
    /// Convolution roots have the same support as the law.
    SupportCoincidence,
    /// Recognition agrees with "atom at zero and roots of degree 2, 3, 5
    /// exist".
    RootCharacterization,
    /// With an atom at zero: gap-free iff atom at one.
    GapCriterion,
    /// Support equals the additive closure of the jump support.
    SemigroupSupport,
    /// Non-degenerate laws with bounded support are never recognized.
    BoundedSupport,
    /// Translates of recognized laws are reported as shifted.
    TranslationShift,
    /// The negative-binomial lattice family and its unit translate.
    LatticeExamples,
    /// compose/factorize, exp/log and power/root round trips.
    RoundTrip,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::AtomAtZero,
        Suite::UnboundedSupport,
        Suite::SupportCoincidence,
        Suite::RootCharacterization,
        Suite::GapCriterion,
        Suite::SemigroupSupport,
        Suite::BoundedSupport,
        Suite::TranslationShift,
        Suite::LatticeExamples,
        Suite::RoundTrip,
    ];

    /// Name accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Suite::AtomAtZero => "theorem1",
            Suite::UnboundedSupport => "theorem2",
            Suite::SupportCoincidence => "theorem3",
            Suite::RootCharacterization => "theorem4",
            Suite::GapCriterion => "theorem5",
            Suite::SemigroupSupport => "remark1",
            Suite::BoundedSupport => "corollary3",
            Suite::TranslationShift => "property1",
            Suite::LatticeExamples => "examples",
            Suite::RoundTrip => "roundtrip",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::AtomAtZero => "compound Poisson laws have p0 = e^-rate > 0 and are recognized",
            Suite::UnboundedSupport => "multiples of each jump atom carry mass",
            Suite::SupportCoincidence => "roots of degree 2, 3, 5 share the support of the law",
            Suite::RootCharacterization => "recognition <=> p0 > 0 and roots of degree 2, 3, 5 exist",
            Suite::GapCriterion => "with p0 > 0: gap-free <=> p1 > 0",
            Suite::SemigroupSupport => "support = additive closure of the jump support",
            Suite::BoundedSupport => "bounded non-degenerate support => not divisible",
            Suite::TranslationShift => "translates are divisible only with shifted components",
            Suite::LatticeExamples => "lattice negative binomial family and its unit translate",
            Suite::RoundTrip => "compose/factorize, exp/log, power/root round trips",
        }
    }

    /// Number of instances run when no override is given.
    pub fn default_count(self) -> usize {
        match self {
            Suite::AtomAtZero => 1000,
            Suite::UnboundedSupport => 200,
            Suite::SupportCoincidence => 200,
            Suite::RootCharacterization => 200,
            // 500 laws with a unit jump, then 500 lattice laws
            Suite::GapCriterion => 1000,
            Suite::SemigroupSupport => 100,
            // 90 binomial grid points, then random finite laws
            Suite::BoundedSupport => 590,
            Suite::TranslationShift => 200,
            Suite::LatticeExamples => LATTICE_TRIPLES.len() * 2,
            Suite::RoundTrip => 500,
        }
    }

    fn salt(self) -> u64 {
        (self as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub execution: Execution,
    pub tolerances: Tolerances,
    /// Overrides every suite's instance count.
    pub count: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20_040_801,
            execution: Execution::default(),
            tolerances: Tolerances::DEFAULT,
            count: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub suite: Suite,
    pub instances: usize,
    pub failures: usize,
    /// The first few failures, each with the offending instance.
    pub counterexamples: Vec<String>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Outcome = Result<(), String>;

pub fn run(suite: Suite, cfg: &VerifyConfig) -> SweepReport {
    let count = cfg.count.unwrap_or_else(|| suite.default_count());
    let tol = cfg.tolerances;
    let start = Instant::now();
    let seed = cfg.seed ^ suite.salt();
    let outcomes: Vec<Outcome> = map_indexed(count, cfg.execution, |i| {
        let mut rng = instance_rng(seed, i);
        let outcome = match suite {
            Suite::AtomAtZero => atom_at_zero(&mut rng, &tol),
            Suite::UnboundedSupport => unbounded_support(&mut rng),
            Suite::SupportCoincidence => support_coincidence(&mut rng, &tol),
            Suite::RootCharacterization => root_characterization(i, &mut rng, &tol),
            Suite::GapCriterion => gap_criterion(i < count / 2, &mut rng, &tol),
            Suite::SemigroupSupport => semigroup_support(&mut rng, &tol),
            Suite::BoundedSupport => bounded_support(i, &mut rng, &tol),
            Suite::TranslationShift => translation_shift(i, &mut rng, &tol),
            Suite::LatticeExamples => {
                let (p, k, t) = LATTICE_TRIPLES[(i / 2) % LATTICE_TRIPLES.len()];
                if i % 2 == 0 {
                    check_lattice_law(p, k, t, &tol)
                } else {
                    check_shifted_lattice_law(p, k, t, &tol)
                }
            }
            Suite::RoundTrip => round_trip(&mut rng, &tol),
        };
        outcome.map_err(|e| format!("instance {i}: {e}"))
    });
    let failures: Vec<String> = outcomes.into_iter().filter_map(Result::err).collect();
    SweepReport {
        suite,
        instances: count,
        failures: failures.len(),
        counterexamples: failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SweepReport> {
    Suite::ALL.iter().map(|&s| run(s, cfg)).collect()
}

/// Parameter triples `(p, k, t)` of the lattice family checks.
pub const LATTICE_TRIPLES: [(f64, usize, f64); 3] = [(0.5, 2, 1.0), (0.4, 3, 2.0), (0.7, 5, 0.5)];

fn describe(form: &CompoundPoissonForm) -> String {
    let jumps: Vec<String> = form
        .jump()
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(j, w)| format!("{j}:{w:.6}"))
        .collect();
    format!("rate={:.17} jump={{{}}}", form.rate(), jumps.join(", "))
}

fn atoms_upto(p: &Pmf, h: usize, tol: &Tolerances) -> Vec<usize> {
    support_report_with(p, tol).atoms.into_iter().filter(|&a| a <= h).collect()
}

fn expect_form(verdict: IdVerdict, form: &CompoundPoissonForm) -> Result<CompoundPoissonForm, String> {
    match verdict {
        IdVerdict::IdIntegerComponents(f) => Ok(f),
        other => Err(format!("{}: verdict {other}", describe(form))),
    }
}

/// Checks a recovered form against the generating one.
fn compare_forms(found: &CompoundPoissonForm, truth: &CompoundPoissonForm) -> Outcome {
    let rel = (found.rate() - truth.rate()).abs() / truth.rate();
    if rel > RATE_REL_TOL {
        return Err(format!("{}: rate recovered as {} (rel err {rel:e})", describe(truth), found.rate()));
    }
    let n = found.jump().truncation().max(truth.jump().truncation());
    let tv = total_variation_distance(&found.jump().with_truncation(n), &truth.jump().with_truncation(n));
    if tv.distance > JUMP_TV_TOL {
        return Err(format!("{}: jump law off by {:e} in total variation", describe(truth), tv.distance));
    }
    Ok(())
}

fn atom_at_zero(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let form = random::random_form(rng, 5.0, 20);
    let p = compose(&form, 512);
    let p0 = p.prob(0);
    if !(p0 > 0.0 && p0 == (-form.rate()).exp()) {
        return Err(format!("{}: p0 = {p0}", describe(&form)));
    }
    let verdict = test_id_with(&p, tol).map_err(|e| e.to_string())?;
    let found = expect_form(verdict, &form)?;
    compare_forms(&found, &form)
}

fn unbounded_support(rng: &mut ChaCha8Rng) -> Outcome {
    let form = random::random_form(rng, 5.0, 20);
    for step in (1..=form.jump().truncation()).filter(|&j| form.jump().prob(j) > 0.0) {
        let count = representable_multiples(&form, step, 1024, REPRESENTABLE_FLOOR);
        if count == 0 {
            return Err(format!("{}: jump {step} itself not representable", describe(&form)));
        }
        let p = compose(&form, count * step);
        if let Some(j) = (1..=count).find(|&j| p.prob(j * step) <= 0.0) {
            return Err(format!("{}: no mass at {} = {j} x {step}", describe(&form), j * step));
        }
    }
    Ok(())
}

fn support_coincidence(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let form = random::random_form(rng, 5.0, 10);
    let n_max = 256;
    let p = compose(&form, n_max);
    let verdict = test_id_with(&p, tol).map_err(|e| e.to_string())?;
    let found = expect_form(verdict, &form)?;
    let closure: BTreeSet<usize> =
        semigroup_closure(&jump_support_with(&found, tol).atoms, n_max).into_iter().collect();
    let threshold = VISIBILITY_MARGIN * tol.support_threshold;
    let law_atoms = support_report_with(&p, tol).atoms;
    if let Some(a) = law_atoms.iter().find(|a| !closure.contains(a)) {
        return Err(format!("{}: atom {a} outside the jump closure", describe(&form)));
    }
    for n in ROOT_DEGREES {
        let root = convolution_root_with(&p, n, tol).map_err(|e| format!("{}: {e}", describe(&form)))?;
        let root_form = CompoundPoissonForm::new(form.rate() / n as f64, form.jump().clone())
            .map_err(|e| e.to_string())?;
        let h = certified_horizon(&form, n_max, threshold)
            .min(certified_horizon(&root_form, n_max, threshold));
        let a = atoms_upto(&p, h, tol);
        let b = atoms_upto(&root, h, tol);
        if a != b {
            return Err(format!("{}: n={n}: supports differ below {h}: {a:?} vs {b:?}", describe(&form)));
        }
        let root_atoms = support_report_with(&root, tol).atoms;
        if let Some(x) = root_atoms.iter().find(|x| !closure.contains(x)) {
            return Err(format!("{}: n={n}: root atom {x} outside the jump closure", describe(&form)));
        }
        let back = convolve_power(&root, n).map_err(|e| e.to_string())?;
        let tv = total_variation_distance(&back, &p).distance;
        if tv > ROUND_TRIP_TV_TOL {
            return Err(format!("{}: n={n}: root^n off by {tv:e}", describe(&form)));
        }
    }
    Ok(())
}

/// Whether `p` has an atom at zero and roots of every degree in
/// [`ROOT_DEGREES`] whose powers reproduce it. Runs on the raw series and
/// never consults the verdict engine.
pub fn has_integer_roots(p: &Pmf, tol: &Tolerances) -> bool {
    if p.prob(0) <= tol.eps_neg {
        return false;
    }
    let q = if p.tail_bound() == 0.0 {
        p.with_truncation((2 * (p.truncation() + 1)).max(64))
    } else {
        p.clone()
    };
    let Ok(l) = log_pgf_with(&q, tol) else {
        return false;
    };
    ROOT_DEGREES.iter().all(|&n| {
        let raw = exp_coefficients(&l.scale(1.0 / n as f64));
        if raw.iter().any(|&c| !c.is_finite() || c < -tol.eps_neg) {
            return false;
        }
        let mass: f64 = raw.iter().map(|c| c.max(0.0)).sum();
        let Ok(root) = Pmf::from_weights_with(raw, (1.0 - mass).max(0.0), tol) else {
            return false;
        };
        convolve_power(&root, n)
            .map(|back| total_variation_distance(&back, &q).distance <= ROUND_TRIP_TV_TOL)
            .unwrap_or(false)
    })
}

fn root_characterization(i: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let (p, expected, label) = match i % 4 {
        0 | 2 => {
            let form = random::random_form(rng, 5.0, 10);
            (compose(&form, 256), true, describe(&form))
        }
        1 => {
            let p = random::random_finite_pmf(rng, 15);
            let label = format!("finite law {:?}", p.probs());
            (p, false, label)
        }
        _ => {
            let form = random::random_form(rng, 5.0, 10);
            let shift = rand::Rng::random_range(rng, 1..=3usize);
            (compose(&form, 256).translate(shift), false, format!("{} shifted by {shift}", describe(&form)))
        }
    };
    let verdict = test_id_with(&p, tol).map_err(|e| e.to_string())?;
    let recognized = matches!(verdict, IdVerdict::IdIntegerComponents(_));
    let roots = has_integer_roots(&p, tol);
    if recognized != roots || recognized != expected {
        return Err(format!("{label}: verdict {verdict}, roots exist = {roots}, expected {expected}"));
    }
    Ok(())
}

fn gap_criterion(with_unit_jump: bool, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let n_max = 256;
    if with_unit_jump {
        let form = random::random_form_with_unit_jump(rng, 5.0, 10, 0.05);
        let p = compose(&form, n_max);
        let verdict = test_id_with(&p, tol).map_err(|e| e.to_string())?;
        expect_form(verdict.clone(), &form)?;
        let h = certified_horizon(&form, n_max, VISIBILITY_MARGIN * tol.support_threshold);
        if h == 0 {
            return Err(format!("{}: nothing certified beyond 0", describe(&form)));
        }
        let seen = p.with_truncation(h);
        match check_gap_theorem_with(&seen, &verdict, tol) {
            Ok(GapCheck::Consistent { atom_at_one: true, gap_free: true }) => Ok(()),
            other => Err(format!("{}: horizon {h}: {other:?}", describe(&form))),
        }
    } else {
        let form = random::random_lattice_form(rng, 5.0, 10);
        let p = compose(&form, n_max);
        let verdict = test_id_with(&p, tol).map_err(|e| e.to_string())?;
        expect_form(verdict.clone(), &form)?;
        let report = support_report_with(&p, tol);
        if p.prob(1) != 0.0 || !report.has_gaps() || report.lattice_gcd < 2 {
            return Err(format!("{}: p1 = {}, report {report:?}", describe(&form), p.prob(1)));
        }
        match check_gap_theorem_with(&p, &verdict, tol) {
            Ok(GapCheck::Consistent { atom_at_one: false, gap_free: false }) => Ok(()),
            other => Err(format!("{}: {other:?}", describe(&form))),
        }
    }
}

fn semigroup_support(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let n_max = 256;
    let form = random::random_form(rng, 5.0, 10);
    let p = compose(&form, n_max);
    let found = factorize_with(&p, tol).map_err(|e| format!("{}: {e}", describe(&form)))?;
    let jumps = jump_support_with(&found, tol).atoms;
    let truth: Vec<usize> =
        (1..=form.jump().truncation()).filter(|&j| form.jump().prob(j) > 0.0).collect();
    if jumps != truth {
        return Err(format!("{}: recovered jump atoms {jumps:?}", describe(&form)));
    }
    let closure = semigroup_closure(&jumps, n_max);
    let atoms = support_report_with(&p, tol).atoms;
    let closure_set: BTreeSet<usize> = closure.iter().copied().collect();
    if let Some(a) = atoms.iter().find(|a| !closure_set.contains(a)) {
        return Err(format!("{}: atom {a} outside the closure", describe(&form)));
    }
    let h = certified_horizon(&form, n_max, VISIBILITY_MARGIN * tol.support_threshold);
    let expected: Vec<usize> = closure.into_iter().filter(|&x| x <= h).collect();
    let seen: Vec<usize> = atoms.into_iter().filter(|&x| x <= h).collect();
    if seen != expected {
        return Err(format!("{}: below {h}: atoms {seen:?} vs closure {expected:?}", describe(&form)));
    }
    Ok(())
}

fn bounded_support(i: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let (p, label) = if i < 90 {
        let trials = i / 9 + 1;
        let prob = (i % 9 + 1) as f64 / 10.0;
        (families::binomial(trials, prob).map_err(|e| e.to_string())?, format!("binomial({trials}, {prob})"))
    } else {
        let p = random::random_finite_pmf(rng, 15);
        let label = format!("finite law {:?}", p.probs());
        (p, label)
    };
    match test_id_with(&p, tol).map_err(|e| e.to_string())? {
        IdVerdict::NotId { .. } => Ok(()),
        other => Err(format!("{label}: verdict {other}")),
    }
}

fn translation_shift(i: usize, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let n_max = 256;
    let (law, shift, truth) = match i {
        0 => {
            let g0 = families::geometric(0.5, 0, n_max).map_err(|e| e.to_string())?;
            let g1 = families::geometric(0.5, 1, n_max).map_err(|e| e.to_string())?;
            let truth = factorize_with(&g0, tol).map_err(|e| e.to_string())?;
            (g1, 1, truth)
        }
        1..=3 => {
            let (p, k, t) = LATTICE_TRIPLES[i - 1];
            let base = families::negbin_lattice(p, k, t, n_max).map_err(|e| e.to_string())?;
            let truth = factorize_with(&base, tol).map_err(|e| e.to_string())?;
            let law = families::shifted_negbin_lattice(p, k, t, n_max).map_err(|e| e.to_string())?;
            (law, 1, truth)
        }
        _ => {
            let form = random::random_form(rng, 5.0, 10);
            let shift = rand::Rng::random_range(rng, 1..=5usize);
            (compose(&form, n_max).translate(shift), shift, form)
        }
    };
    match test_id_with(&law, tol).map_err(|e| e.to_string())? {
        IdVerdict::IdShifted { shift: s, inner } if s == shift => compare_forms(&inner, &truth),
        other => Err(format!("{} shifted by {shift}: verdict {other}", describe(&truth))),
    }
}

/// The lattice law with PGF `(p / (1 - q s^k))^t`: recognized, jumps only on
/// multiples of `k`, atoms exactly the multiples of `k` up to the horizon,
/// no atom at one, and consistent with the gap criterion.
pub fn check_lattice_law(p: f64, k: usize, t: f64, tol: &Tolerances) -> Outcome {
    let label = format!("lattice law p={p} k={k} t={t}");
    let law = families::negbin_lattice(p, k, t, 256).map_err(|e| e.to_string())?;
    let verdict = test_id_with(&law, tol).map_err(|e| e.to_string())?;
    let IdVerdict::IdIntegerComponents(form) = &verdict else {
        return Err(format!("{label}: verdict {verdict}"));
    };
    let jumps = jump_support_with(form, tol).atoms;
    if jumps.iter().any(|j| j % k != 0) {
        return Err(format!("{label}: jump atoms off the lattice {jumps:?}"));
    }
    let report = support_report_with(&law, tol);
    let lattice: Vec<usize> = (0..=report.horizon / k).map(|n| n * k).collect();
    if report.atoms != lattice || report.lattice_gcd != k {
        return Err(format!("{label}: atoms {:?}, gcd {}", report.atoms, report.lattice_gcd));
    }
    if law.prob(1) != 0.0 {
        return Err(format!("{label}: p1 = {}", law.prob(1)));
    }
    match check_gap_theorem_with(&law, &verdict, tol) {
        Ok(GapCheck::Consistent { atom_at_one: false, gap_free: false }) => Ok(()),
        other => Err(format!("{label}: gap check {other:?}")),
    }
}

/// The unit translate of [`check_lattice_law`]'s law: no atom at zero, an
/// atom at one, gaps, and a shifted verdict carrying the untranslated form.
pub fn check_shifted_lattice_law(p: f64, k: usize, t: f64, tol: &Tolerances) -> Outcome {
    let label = format!("shifted lattice law p={p} k={k} t={t}");
    let law = families::shifted_negbin_lattice(p, k, t, 256).map_err(|e| e.to_string())?;
    let p1 = p.powf(t);
    if law.prob(0) != 0.0 || (law.prob(1) - p1).abs() > 1e-15 * p1 {
        return Err(format!("{label}: p0 = {}, p1 = {}", law.prob(0), law.prob(1)));
    }
    let report = support_report_with(&law, tol);
    if !report.has_gaps() {
        return Err(format!("{label}: no gaps in {:?}", report.atoms));
    }
    let base = families::negbin_lattice(p, k, t, 255).map_err(|e| e.to_string())?;
    let truth = factorize_with(&base, tol).map_err(|e| e.to_string())?;
    let verdict = test_id_with(&law, tol).map_err(|e| e.to_string())?;
    match &verdict {
        IdVerdict::IdShifted { shift: 1, inner } => compare_forms(inner, &truth),
        other => Err(format!("{label}: verdict {other}")),
    }?;
    match check_gap_theorem_with(&law, &verdict, tol) {
        Ok(GapCheck::OutsideHypothesis { atom_at_one: true, has_gaps: true }) => Ok(()),
        other => Err(format!("{label}: gap check {other:?}")),
    }
}

fn round_trip(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let n_max = 128;
    let form = random::random_form(rng, 5.0, 5);
    let p = compose(&form, n_max);
    let found = factorize_with(&p, tol).map_err(|e| format!("{}: {e}", describe(&form)))?;
    let tv = total_variation_distance(&compose(&found, n_max), &p).distance;
    if tv > ROUND_TRIP_TV_TOL {
        return Err(format!("{}: compose(factorize) off by {tv:e}", describe(&form)));
    }

    // exp(log) on a law that need not be divisible: either a dense law with
    // a dominant atom at zero, or a compound law with p0 >= 0.01
    let dense = if rand::Rng::random_bool(rng, 0.5) {
        random::random_dense_pmf(rng, n_max)
    } else {
        compose(&random::random_form(rng, 0.01f64.ln().abs(), 5), n_max)
    };
    let l = log_pgf_with(&dense, tol).map_err(|e| e.to_string())?;
    let back = exp_series_with(&l, tol).map_err(|e| format!("law {:?}: {e}", dense.probs()))?;
    let tv = total_variation_distance(&back, &dense).distance;
    if tv > ROUND_TRIP_TV_TOL {
        return Err(format!("law {:?}: exp(log) off by {tv:e}", dense.probs()));
    }

    let n = rand::Rng::random_range(rng, 2..=5usize);
    let root = convolution_root_with(&p, n, tol).map_err(|e| format!("{}: {e}", describe(&form)))?;
    let back = convolve_power(&root, n).map_err(|e| e.to_string())?;
    let tv = total_variation_distance(&back, &p).distance;
    if tv > ROUND_TRIP_TV_TOL {
        return Err(format!("{}: root({n})^{n} off by {tv:e}", describe(&form)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("theorem9"), None);
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = VerifyConfig { count: Some(12), ..VerifyConfig::default() };
        for s in Suite::ALL {
            let r = run(s, &cfg);
            assert!(r.passed(), "{s}: {:?}", r.counterexamples);
        }
    }

    #[test]
    fn execution_strategy_does_not_change_outcomes() {
        let par = VerifyConfig { count: Some(20), ..VerifyConfig::default() };
        let seq = VerifyConfig { execution: Execution::Sequential, ..par.clone() };
        for s in [Suite::AtomAtZero, Suite::RoundTrip] {
            let a = run(s, &par);
            let b = run(s, &seq);
            assert_eq!((a.instances, a.failures), (b.instances, b.failures));
        }
    }

    #[test]
    fn root_surrogate_rejects_non_divisible_laws() {
        let tol = Tolerances::DEFAULT;
        assert!(!has_integer_roots(&families::binomial(3, 0.4).unwrap(), &tol));
        assert!(has_integer_roots(&families::poisson(2.0, 100).unwrap(), &tol));
        assert!(!has_integer_roots(&families::geometric(0.5, 1, 100).unwrap(), &tol));
    }
}
