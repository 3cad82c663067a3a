use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use idlattice::verify::{self, Suite, SweepReport, VerifyConfig};
use idlattice::{
    compose, convolution_root_with, factorize_with, support_report_with, test_id_with,
    CompoundPoissonForm, Error, Execution, IdVerdict, Pmf, SupportReport, Tolerances,
    DEFAULT_TRUNCATION,
};
use idlattice_cli::{family, pmf_file};

const EXIT_INPUT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

/// Infinite divisibility of laws on the non-negative integers.
#[derive(Parser)]
#[command(name = "idlattice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation index for constructed laws (files keep their own unless given).
    #[arg(long, global = true)]
    truncation: Option<usize>,

    /// Threshold override, e.g. `eps_neg=1e-13`. Repeatable.
    #[arg(long = "tolerance", global = true, value_name = "NAME=VALUE")]
    tolerances: Vec<String>,

    /// Seed of the verification sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Instance count for every verification sweep.
    #[arg(long, global = true)]
    count: Option<usize>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Run the sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Built-in family, e.g. `poisson:2` or `ex1:0.5,3,1`.
    #[arg(long, value_name = "NAME:ARGS")]
    family: Option<String>,

    /// Pmf file with fields truncation, probs, tail_bound.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide divisibility with integer-valued components.
    TestId(Input),
    /// Extract the compound Poisson form.
    Factorize(Input),
    /// Write the n-th convolution root to a pmf file.
    Root {
        n: usize,
        #[command(flatten)]
        input: Input,
        #[arg(short, long, default_value = "root.json")]
        output: PathBuf,
    },
    /// Report atoms, gaps and lattice span.
    Support(Input),
    /// Build the compound Poisson law of a rate and a jump law.
    Compose {
        #[arg(long, requires = "jump", conflicts_with = "form")]
        rate: Option<f64>,
        /// Weights of jumps 1, 2, ...; normalized to sum to one.
        #[arg(long, value_delimiter = ',', requires = "rate")]
        jump: Option<Vec<f64>>,
        /// JSON file `{"rate": r, "jump": [w0, w1, ...]}` with `w0 = 0`.
        #[arg(long, value_name = "PATH", required_unless_present = "rate")]
        form: Option<PathBuf>,
        #[arg(short, long, default_value = "compose.json")]
        output: PathBuf,
    },
    /// Run property sweeps: a suite name or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

struct Session {
    tol: Tolerances,
    truncation: Option<usize>,
    json: bool,
}

impl Session {
    fn load(&self, input: &Input) -> Result<Pmf> {
        match (&input.family, &input.input) {
            (Some(spec), _) => family::build(spec, self.truncation.unwrap_or(DEFAULT_TRUNCATION)),
            (None, Some(path)) => {
                let p = pmf_file::load(path, &self.tol)?;
                Ok(match self.truncation {
                    Some(n) => p.with_truncation(n),
                    None => p,
                })
            }
            (None, None) => bail!("give --family or --input"),
        }
    }

    fn emit(&self, human: String, machine: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&machine).expect("serializable report"));
        } else {
            print!("{human}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut tol = Tolerances::DEFAULT;
    for spec in &cli.tolerances {
        let (name, value) = spec.split_once('=').ok_or_else(|| anyhow!("--tolerance expects NAME=VALUE, got {spec:?}"))?;
        let value: f64 = value.parse().with_context(|| format!("tolerance {name}: bad value {value:?}"))?;
        if !(value.is_finite() && value >= 0.0) {
            bail!("tolerance {name} must be a non-negative number");
        }
        tol.set(name, value).ok_or_else(|| anyhow!("unknown tolerance {name:?}"))?;
    }
    let ctx = Session { tol, truncation: cli.truncation, json: cli.json };

    match cli.command {
        Command::TestId(input) => {
            let p = ctx.load(&input)?;
            let verdict = test_id_with(&p, &ctx.tol)?;
            ctx.emit(verdict_text(&verdict), verdict_json(&verdict));
            Ok(exit_for(&verdict))
        }
        Command::Factorize(input) => {
            let p = ctx.load(&input)?;
            match factorize_with(&p, &ctx.tol) {
                Ok(form) => {
                    ctx.emit(form_text(&form, &ctx.tol), form_json(&form));
                    Ok(0)
                }
                Err(Error::NotFactorizable(v)) => not_factorizable(&ctx, &v),
                Err(e) => Err(e.into()),
            }
        }
        Command::Root { n, input, output } => {
            let p = ctx.load(&input)?;
            match convolution_root_with(&p, n, &ctx.tol) {
                Ok(root) => {
                    pmf_file::save(&output, &root)?;
                    let human = format!(
                        "wrote the convolution root of degree {n} to {} (truncation {}, tail bound {:e})\n",
                        output.display(),
                        root.truncation(),
                        root.tail_bound()
                    );
                    let machine = json!({
                        "n": n,
                        "output": output.display().to_string(),
                        "truncation": root.truncation(),
                        "tail_bound": root.tail_bound(),
                    });
                    ctx.emit(human, machine);
                    Ok(0)
                }
                Err(Error::NotFactorizable(v)) => not_factorizable(&ctx, &v),
                Err(e) => Err(e.into()),
            }
        }
        Command::Support(input) => {
            let p = ctx.load(&input)?;
            let report = support_report_with(&p, &ctx.tol);
            ctx.emit(support_text(&report), support_json(&report));
            Ok(0)
        }
        Command::Compose { rate, jump, form, output } => {
            let form = match (rate, jump, form) {
                (Some(rate), Some(weights), _) => {
                    let mut w = vec![0.0];
                    w.extend(weights);
                    form_from_weights(rate, w, &ctx.tol)?
                }
                (_, _, Some(path)) => read_form(&path, &ctx.tol)?,
                _ => bail!("give --rate with --jump, or --form"),
            };
            let n = ctx.truncation.unwrap_or(DEFAULT_TRUNCATION);
            let p = compose(&form, n);
            pmf_file::save(&output, &p)?;
            let human = format!(
                "wrote the compound law (rate {}) to {} (truncation {n}, tail bound {:e})\n",
                form.rate(),
                output.display(),
                p.tail_bound()
            );
            let machine = json!({
                "rate": form.rate(),
                "output": output.display().to_string(),
                "truncation": n,
                "tail_bound": p.tail_bound(),
            });
            ctx.emit(human, machine);
            Ok(0)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                vec![Suite::from_name(&suite)
                    .ok_or_else(|| anyhow!("unknown suite {suite:?}; expected all or one of {}", names.join(", ")))?]
            };
            let defaults = VerifyConfig::default();
            let cfg = VerifyConfig {
                seed: cli.seed.unwrap_or(defaults.seed),
                execution: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
                tolerances: ctx.tol,
                count: cli.count,
            };
            let reports: Vec<SweepReport> = suites.iter().map(|&s| verify::run(s, &cfg)).collect();
            let human: String = reports.iter().map(sweep_text).collect();
            let machine = json!({
                "seed": cfg.seed,
                "suites": reports.iter().map(sweep_json).collect::<Vec<_>>(),
            });
            ctx.emit(human, machine);
            Ok(if reports.iter().all(SweepReport::passed) { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn exit_for(verdict: &IdVerdict) -> u8 {
    match verdict {
        IdVerdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
        _ => 0,
    }
}

fn not_factorizable(ctx: &Session, verdict: &IdVerdict) -> Result<u8> {
    eprintln!("law has no compound Poisson form");
    ctx.emit(verdict_text(verdict), verdict_json(verdict));
    match verdict {
        IdVerdict::Inconclusive(_) => Ok(EXIT_INCONCLUSIVE),
        _ => Ok(EXIT_INPUT),
    }
}

fn form_from_weights(rate: f64, weights: Vec<f64>, tol: &Tolerances) -> Result<CompoundPoissonForm> {
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        bail!("jump weights must be non-negative numbers");
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        bail!("jump weights must not all be zero");
    }
    let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mass: f64 = probs.iter().sum();
    let jump = Pmf::from_weights_with(probs, (1.0 - mass).max(0.0), tol)?;
    Ok(CompoundPoissonForm::new_with(rate, jump, tol)?)
}

fn read_form(path: &std::path::Path, tol: &Tolerances) -> Result<CompoundPoissonForm> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: Value = serde_json::from_str(&text).context("form file is not valid JSON")?;
    let rate = doc.get("rate").and_then(Value::as_f64).ok_or_else(|| anyhow!("form file needs a numeric \"rate\""))?;
    let weights: Vec<f64> = doc
        .get("jump")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("form file needs a \"jump\" array"))?
        .iter()
        .map(|v| v.as_f64().ok_or_else(|| anyhow!("jump weights must be numbers")))
        .collect::<Result<_>>()?;
    form_from_weights(rate, weights, tol)
}

/// Atoms of a jump law as `index: weight` pairs.
fn jump_atoms(form: &CompoundPoissonForm, tol: &Tolerances) -> Vec<(usize, f64)> {
    form.jump()
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > tol.support_threshold)
        .map(|(i, &w)| (i, w))
        .collect()
}

const SHOWN: usize = 12;

fn form_text(form: &CompoundPoissonForm, tol: &Tolerances) -> String {
    let atoms = jump_atoms(form, tol);
    let mut out = format!("rate: {:.15}\njump law ({} atoms):\n", form.rate(), atoms.len());
    for (i, w) in atoms.iter().take(SHOWN) {
        out.push_str(&format!("  {i}: {w:.15}\n"));
    }
    if atoms.len() > SHOWN {
        out.push_str(&format!("  ... {} more\n", atoms.len() - SHOWN));
    }
    out
}

fn form_json(form: &CompoundPoissonForm) -> Value {
    json!({
        "rate": form.rate(),
        "jump": {
            "truncation": form.jump().truncation(),
            "probs": form.jump().probs(),
            "tail_bound": form.jump().tail_bound(),
        },
    })
}

fn verdict_text(v: &IdVerdict) -> String {
    let tol = Tolerances::DEFAULT;
    match v {
        IdVerdict::IdIntegerComponents(form) => format!("verdict: IdIntegerComponents\n{}", form_text(form, &tol)),
        IdVerdict::IdShifted { shift, inner } => {
            format!("verdict: IdShifted\nshift: {shift}\n{}", form_text(inner, &tol))
        }
        IdVerdict::NotId { witness_index, witness_value } => {
            format!("verdict: NotId\nwitness: l_{witness_index} = {witness_value:.15}\n")
        }
        IdVerdict::Degenerate { at } => format!("verdict: Degenerate\nat: {at}\n"),
        IdVerdict::Inconclusive(r) => format!("verdict: Inconclusive\nreason: {}\n", r.as_str()),
    }
}

fn verdict_json(v: &IdVerdict) -> Value {
    match v {
        IdVerdict::IdIntegerComponents(form) => json!({ "verdict": v.name(), "form": form_json(form) }),
        IdVerdict::IdShifted { shift, inner } => {
            json!({ "verdict": v.name(), "shift": shift, "form": form_json(inner) })
        }
        IdVerdict::NotId { witness_index, witness_value } => {
            json!({ "verdict": v.name(), "witness_index": witness_index, "witness_value": witness_value })
        }
        IdVerdict::Degenerate { at } => json!({ "verdict": v.name(), "at": at }),
        IdVerdict::Inconclusive(r) => json!({ "verdict": v.name(), "reason": r.as_str() }),
    }
}

fn support_text(r: &SupportReport) -> String {
    let shown: Vec<String> = r.atoms.iter().take(SHOWN).map(usize::to_string).collect();
    let more = if r.atoms.len() > SHOWN { ", ..." } else { "" };
    let gaps: Vec<String> = r
        .gaps
        .iter()
        .take(SHOWN)
        .map(|g| if g.start == g.end { g.start.to_string() } else { format!("{}-{}", g.start, g.end) })
        .collect();
    let more_gaps = if r.gaps.len() > SHOWN { format!(", ... ({} in total)", r.gaps.len()) } else { String::new() };
    format!(
        "atoms ({}): {{{}{more}}}\nmin_point: {}\ngaps: [{}{more_gaps}]\nlattice_gcd: {}\ngap_free: {}\nhorizon: {}\n",
        r.atoms.len(),
        shown.join(", "),
        r.min_point.map_or("none".to_string(), |m| m.to_string()),
        gaps.join(", "),
        r.lattice_gcd,
        r.gap_free,
        r.horizon,
    )
}

fn support_json(r: &SupportReport) -> Value {
    json!({
        "atoms": r.atoms,
        "min_point": r.min_point,
        "gaps": r.gaps.iter().map(|g| [g.start, g.end]).collect::<Vec<_>>(),
        "lattice_gcd": r.lattice_gcd,
        "gap_free": r.gap_free,
        "horizon": r.horizon,
    })
}

fn sweep_text(r: &SweepReport) -> String {
    let mut out = format!(
        "{} {:<10} {:>5} instances {:>8.2?}  {}\n",
        if r.passed() { "PASS" } else { "FAIL" },
        r.suite.name(),
        r.instances,
        r.elapsed,
        r.suite.description()
    );
    if !r.passed() {
        out.push_str(&format!("  {} failures; first counterexamples:\n", r.failures));
        for c in &r.counterexamples {
            out.push_str(&format!("  - {c}\n"));
        }
    }
    out
}

fn sweep_json(r: &SweepReport) -> Value {
    json!({
        "suite": r.suite.name(),
        "passed": r.passed(),
        "instances": r.instances,
        "failures": r.failures,
        "counterexamples": r.counterexamples,
        "elapsed_seconds": r.elapsed.as_secs_f64(),
    })
}
