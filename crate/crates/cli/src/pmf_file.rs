//! JSON pmf files: `{"truncation": N, "probs": [...], "tail_bound": x}`.
//!
//! Reals are written with 17 significant digits, so a saved pmf loads back
//! bit-identically.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use idlattice::{Pmf, Tolerances};
use serde_json::Value;

pub fn to_string(p: &Pmf) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"truncation\": {},", p.truncation()).unwrap();
    writeln!(out, "  \"probs\": [").unwrap();
    let last = p.probs().len() - 1;
    for (i, x) in p.probs().iter().enumerate() {
        let sep = if i == last { "" } else { "," };
        writeln!(out, "    {x:.16e}{sep}").unwrap();
    }
    writeln!(out, "  ],").unwrap();
    writeln!(out, "  \"tail_bound\": {:.16e}", p.tail_bound()).unwrap();
    writeln!(out, "}}").unwrap();
    out
}

/// Parses a pmf file. A missing `tail_bound` defaults to `1 - sum(probs)`.
/// The result must be normalized within `eps_mass`.
pub fn from_str(text: &str, tol: &Tolerances) -> Result<Pmf> {
    let doc: Value = serde_json::from_str(text).context("pmf file is not valid JSON")?;
    let obj = doc.as_object().ok_or_else(|| anyhow!("pmf file must hold a JSON object"))?;
    let probs: Vec<f64> = obj
        .get("probs")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("pmf file needs a \"probs\" array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_f64().ok_or_else(|| anyhow!("probs[{i}] is not a number")))
        .collect::<Result<_>>()?;
    if probs.is_empty() {
        bail!("\"probs\" is empty");
    }
    let truncation = obj
        .get("truncation")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("pmf file needs a non-negative integer \"truncation\""))?;
    if truncation as usize != probs.len() - 1 {
        bail!("truncation {truncation} does not match {} stored probabilities", probs.len());
    }
    let tail = match obj.get("tail_bound") {
        None | Some(Value::Null) => (1.0 - probs.iter().sum::<f64>()).max(0.0),
        Some(v) => v.as_f64().ok_or_else(|| anyhow!("\"tail_bound\" is not a number"))?,
    };
    let pmf = Pmf::from_weights_with(probs, tail, tol)?;
    if !pmf.is_normalized(tol) {
        bail!("probabilities plus tail bound sum to {}, not 1", pmf.total_mass());
    }
    Ok(pmf)
}

pub fn load(path: &Path, tol: &Tolerances) -> Result<Pmf> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_str(&text, tol).with_context(|| format!("loading {}", path.display()))
}

pub fn save(path: &Path, p: &Pmf) -> Result<()> {
    std::fs::write(path, to_string(p)).with_context(|| format!("writing {}", path.display()))
}
