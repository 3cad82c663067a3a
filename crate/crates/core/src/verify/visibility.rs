//! Certified lower bounds on the mass of a compound Poisson law.
//!
//! For a sum of `r` jumps, `P(X = x) >= P(N = r) * prod w_{j_i}` for any
//! ordered jump sequence `j_1 + ... + j_r = x`. Maximizing over `r` and the
//! sequence (a max-product dynamic program, run in log space) bounds each
//! mass from below without running the compound recursion. The sweeps use
//! it to decide up to which index every reachable integer must be visible
//! above the support threshold.

use crate::analysis::CompoundPoissonForm;

/// Log of a lower bound on `P(X = x)` for `x = 0..=horizon`; `-inf` off the
/// support.
pub fn log_mass_lower_bounds(form: &CompoundPoissonForm, horizon: usize) -> Vec<f64> {
    let lambda = form.rate();
    let jumps: Vec<(usize, f64)> = form
        .jump()
        .probs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(j, &w)| w > 0.0 && *j <= horizon)
        .map(|(j, &w)| (j, w.ln()))
        .collect();

    let mut best = vec![f64::NEG_INFINITY; horizon + 1];
    // exactly r jumps, best log product of weights
    let mut layer = vec![f64::NEG_INFINITY; horizon + 1];
    layer[0] = 0.0;
    let mut log_poisson = -lambda;
    best[0] = log_poisson;
    for r in 1..=horizon {
        log_poisson += lambda.ln() - (r as f64).ln();
        let mut next = vec![f64::NEG_INFINITY; horizon + 1];
        let mut any = false;
        for x in r..=horizon {
            let mut top = f64::NEG_INFINITY;
            for &(j, lw) in &jumps {
                if j <= x && layer[x - j] > f64::NEG_INFINITY {
                    top = top.max(lw + layer[x - j]);
                }
            }
            if top > f64::NEG_INFINITY {
                next[x] = top;
                best[x] = best[x].max(log_poisson + top);
                any = true;
            }
        }
        if !any {
            break;
        }
        layer = next;
    }
    best
}

/// Largest `h <= horizon` such that every reachable `x <= h` has certified
/// mass above `threshold`.
pub fn certified_horizon(form: &CompoundPoissonForm, horizon: usize, threshold: f64) -> usize {
    let bounds = log_mass_lower_bounds(form, horizon);
    let floor = threshold.ln();
    bounds
        .iter()
        .position(|&b| b > f64::NEG_INFINITY && b <= floor)
        .map(|first_faint| first_faint.saturating_sub(1))
        .unwrap_or(horizon)
}

/// Largest `count` with `count * step <= cap` whose certified mass along
/// the path of `count` jumps of size `step` stays above `floor`.
pub fn representable_multiples(
    form: &CompoundPoissonForm,
    step: usize,
    cap: usize,
    floor: f64,
) -> usize {
    let lambda = form.rate();
    let lw = (lambda * form.jump().prob(step)).ln();
    let log_floor = floor.ln();
    let mut log_mass = -lambda;
    let mut count = 0;
    while (count + 1) * step <= cap {
        let next = log_mass + lw - ((count + 1) as f64).ln();
        if next <= log_floor {
            break;
        }
        log_mass = next;
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::compose;
    use crate::pmf::Pmf;

    fn form(rate: f64, w: Vec<f64>) -> CompoundPoissonForm {
        CompoundPoissonForm::new(rate, Pmf::from_weights(w, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn bounds_never_exceed_the_composed_mass() {
        let f = form(2.5, vec![0.0, 0.3, 0.0, 0.5, 0.0, 0.0, 0.0, 0.2]);
        let p = compose(&f, 120);
        let lb = log_mass_lower_bounds(&f, 120);
        for (x, &b) in lb.iter().enumerate() {
            if b > f64::NEG_INFINITY {
                assert!(b.exp() <= p.prob(x) * (1.0 + 1e-12), "x = {x}");
            } else {
                assert_eq!(p.prob(x), 0.0);
            }
        }
    }

    #[test]
    fn poisson_bound_is_exact() {
        let f = form(3.0, vec![0.0, 1.0]);
        let p = compose(&f, 30);
        let lb = log_mass_lower_bounds(&f, 30);
        for (x, &b) in lb.iter().enumerate() {
            assert!((b.exp() - p.prob(x)).abs() <= 1e-15);
        }
    }

    #[test]
    fn horizon_stops_at_first_faint_point() {
        // small rate: the k-th point carries about rate^k / k!
        let f = form(0.01, vec![0.0, 1.0]);
        let h = certified_horizon(&f, 50, 1e-12);
        let p = compose(&f, 50);
        assert!(p.prob(h) > 1e-12);
        assert!(p.prob(h + 1) <= 1e-12 * 10.0);
    }

    #[test]
    fn multiples_stay_representable() {
        let f = form(1.0, vec![0.0, 0.5, 0.5]);
        let count = representable_multiples(&f, 2, 1000, 1e-300);
        assert!(count > 10);
        let p = compose(&f, count * 2);
        assert!(p.prob(count * 2) > 0.0);
    }
}
