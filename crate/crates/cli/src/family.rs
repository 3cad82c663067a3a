//! `name:arg1,arg2,...` specs for the built-in families.

use anyhow::{anyhow, bail, Context, Result};
use idlattice::{families, Pmf};

pub const FAMILIES: &str = "poisson:rate | geometric:p[,start] | binomial:n,p | negbin:p,k,t | ex1:p,k,t | ex2:p,k,t";

fn real(name: &str, s: &str) -> Result<f64> {
    s.trim().parse().with_context(|| format!("{name}: expected a number, got {s:?}"))
}

fn whole(name: &str, s: &str) -> Result<usize> {
    s.trim().parse().with_context(|| format!("{name}: expected a non-negative integer, got {s:?}"))
}

/// Builds the law named by `spec`, stored up to `truncation`. Binomial laws
/// are exact and are stored up to `max(n, truncation)`.
pub fn build(spec: &str, truncation: usize) -> Result<Pmf> {
    let (name, args) = spec.split_once(':').ok_or_else(|| anyhow!("family spec {spec:?} needs name:args ({FAMILIES})"))?;
    let args: Vec<&str> = args.split(',').collect();
    let arity = |allowed: &[usize]| -> Result<()> {
        if allowed.contains(&args.len()) {
            Ok(())
        } else {
            bail!("{name} takes {allowed:?} arguments, got {}", args.len())
        }
    };
    let law = match name {
        "poisson" => {
            arity(&[1])?;
            families::poisson(real("rate", args[0])?, truncation)?
        }
        "geometric" => {
            arity(&[1, 2])?;
            let start = match args.get(1) {
                Some(s) => whole("start", s)?,
                None => 0,
            };
            families::geometric(real("p", args[0])?, start, truncation)?
        }
        "binomial" => {
            arity(&[2])?;
            let n = whole("n", args[0])?;
            families::binomial(n, real("p", args[1])?)?.with_truncation(n.max(truncation))
        }
        "negbin" | "ex1" | "ex2" => {
            arity(&[3])?;
            let p = real("p", args[0])?;
            let k = whole("k", args[1])?;
            let t = real("t", args[2])?;
            match name {
                "negbin" => families::negbin_lattice(p, k, t, truncation)?,
                "ex1" if k < 2 => bail!("ex1 needs k > 1, got {k}"),
                "ex1" => families::negbin_lattice(p, k, t, truncation)?,
                _ => families::shifted_negbin_lattice(p, k, t, truncation)?,
            }
        }
        other => bail!("unknown family {other:?} ({FAMILIES})"),
    };
    Ok(law)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(build("poisson:2", 40).unwrap(), families::poisson(2.0, 40).unwrap());
        assert_eq!(build("geometric:0.5,1", 10).unwrap().prob(1), 0.5);
        assert_eq!(build("binomial:2,0.5", 8).unwrap().truncation(), 8);
        assert_eq!(build("ex2:0.5,2,1", 6).unwrap().probs(), &[0.0, 0.5, 0.0, 0.25, 0.0, 0.125, 0.0]);
        assert_eq!(build("negbin:0.5,1,3", 50).unwrap(), build("negbin:0.5,1,3", 50).unwrap());
        for bad in ["poisson", "poisson:x", "poisson:1,2", "ex1:0.5,1,1", "zeta:2", "geometric:2", "binomial:-1,0.5"] {
            assert!(build(bad, 10).is_err(), "{bad}");
        }
    }
}
