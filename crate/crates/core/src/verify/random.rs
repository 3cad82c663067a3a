//! Random instances for the property sweeps.

use rand::seq::index;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::CompoundPoissonForm;
use crate::pmf::Pmf;

/// Generator for instance `index` of a sweep seeded with `seed`. Each
/// instance has its own stream, so results do not depend on scheduling.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Rate drawn uniformly from `(0, max_rate]`.
fn rate(rng: &mut impl Rng, max_rate: f64) -> f64 {
    max_rate * (1.0 - rng.random::<f64>())
}

fn form_from(rate: f64, atoms: &[usize], weights: &[f64]) -> CompoundPoissonForm {
    let top = *atoms.iter().max().expect("non-empty jump support");
    let total: f64 = weights.iter().sum();
    let mut probs = vec![0.0; top + 1];
    for (&a, &w) in atoms.iter().zip(weights) {
        probs[a] += w / total;
    }
    let mass: f64 = probs.iter().sum();
    let jump = Pmf::from_weights(probs, (1.0 - mass).max(0.0)).expect("normalized weights");
    CompoundPoissonForm::new(rate, jump).expect("valid random form")
}

fn distinct(rng: &mut impl Rng, from: usize, to: usize, amount: usize) -> Vec<usize> {
    let span = to - from + 1;
    let mut picked: Vec<usize> =
        index::sample(rng, span, amount.min(span)).into_iter().map(|i| from + i).collect();
    picked.sort_unstable();
    picked
}

/// Rate in `(0, max_rate]`, one to five jump atoms in `1..=max_jump`, each
/// with weight at least `0.04`.
pub fn random_form(rng: &mut impl Rng, max_rate: f64, max_jump: usize) -> CompoundPoissonForm {
    let lambda = rate(rng, max_rate);
    let size = rng.random_range(1..=5usize.min(max_jump));
    let atoms = distinct(rng, 1, max_jump, size);
    let weights: Vec<f64> = atoms.iter().map(|_| rng.random_range(0.2..1.0)).collect();
    form_from(lambda, &atoms, &weights)
}

/// Like [`random_form`] but with a unit jump of weight at least `min_unit`.
pub fn random_form_with_unit_jump(
    rng: &mut impl Rng,
    max_rate: f64,
    max_jump: usize,
    min_unit: f64,
) -> CompoundPoissonForm {
    let lambda = rate(rng, max_rate);
    let others = rng.random_range(0..=4usize.min(max_jump - 1));
    let mut atoms = vec![1];
    atoms.extend(distinct(rng, 2, max_jump, others));
    let unit = rng.random_range(min_unit..1.0);
    let raw: Vec<f64> = atoms[1..].iter().map(|_| rng.random_range(0.2..1.0)).collect();
    let raw_total: f64 = raw.iter().sum();
    let mut weights = vec![unit];
    weights.extend(raw.iter().map(|w| (1.0 - unit) * w / raw_total));
    form_from(lambda, &atoms, &weights)
}

/// Jump atoms all multiples of a step in `2..=5`, so the jump support has
/// gcd at least two and no unit jump.
pub fn random_lattice_form(rng: &mut impl Rng, max_rate: f64, max_jump: usize) -> CompoundPoissonForm {
    let lambda = rate(rng, max_rate);
    let step = rng.random_range(2..=5usize.min(max_jump));
    let multiples = max_jump / step;
    let size = rng.random_range(1..=4usize.min(multiples));
    let atoms: Vec<usize> = distinct(rng, 1, multiples, size).into_iter().map(|i| i * step).collect();
    let weights: Vec<f64> = atoms.iter().map(|_| rng.random_range(0.2..1.0)).collect();
    form_from(lambda, &atoms, &weights)
}

/// Finite-support law with an atom at 0 and one to five further atoms in
/// `1..=max_index`. Stored exactly, tail bound 0.
pub fn random_finite_pmf(rng: &mut impl Rng, max_index: usize) -> Pmf {
    let size = rng.random_range(1..=5usize.min(max_index));
    let mut atoms = vec![0];
    atoms.extend(distinct(rng, 1, max_index, size));
    let weights: Vec<f64> = atoms.iter().map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut probs = vec![0.0; atoms[atoms.len() - 1] + 1];
    for (&a, &w) in atoms.iter().zip(&weights) {
        probs[a] = w / total;
    }
    // rounding can leave the sum a hair above one
    let excess = (probs.iter().sum::<f64>() - 1.0).max(0.0);
    probs[0] -= excess;
    Pmf::from_weights(probs, 0.0).expect("normalized weights")
}

/// Dense random law on `0..=truncation` whose atom at zero outweighs all
/// other mass, so its PGF has no zeros on the closed unit disk and its log
/// series is well conditioned. Not necessarily divisible. The tail bound
/// takes up the remainder of a random stored total in `[0.9, 1]`.
pub fn random_dense_pmf(rng: &mut impl Rng, truncation: usize) -> Pmf {
    let len = rng.random_range(2..=truncation + 1);
    let decay: f64 = rng.random_range(0.5..0.97);
    let stored: f64 = rng.random_range(0.9..=1.0);
    let p0: f64 = rng.random_range(0.55..0.95);
    let w: Vec<f64> =
        (1..len).map(|i| rng.random_range(0.0..1.0) * decay.powi(i as i32)).collect();
    let w_total: f64 = w.iter().sum();
    let mut probs = vec![p0];
    probs.extend(w.iter().map(|x| (stored - p0).max(0.0) * x / w_total));
    let mass: f64 = probs.iter().sum();
    Pmf::from_weights(probs, (1.0 - mass).max(0.0))
        .expect("sub-probability weights")
        .with_truncation(truncation)
}
