//! The `f2lab` command.
//!
//! Results go to stdout, diagnostics to stderr. Files are only written when
//! a flag names them. Every subcommand is deterministic: randomness comes
//! from `--seed`, which defaults to 0.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use f2lab_core::adversary::{
    epsilon_bound, min_guarantee_n_with_horizon, run_adversary, verify_certificate, AdversaryConfig, AdversaryError,
    AdversaryOutcome, AdversaryReport, Mode, DEFAULT_HORIZON,
};
use f2lab_core::bench::{default_budget, fit_exponent, run_family, BenchError, FamilyKind, DEFAULT_SIZES};
use f2lab_core::free_group::{family_alpha, free_reduce, gen_lemma_family, GrowthBase, Word, WordError};
use f2lab_core::machines::Correctness;
use f2lab_core::simulator::{run_traced, Machine, Verdict};

use crate::certificate::{self, CertificateParseError};
use crate::csv::{fit_comments, samples_to_csv};
use crate::load::{self, LoadError, LoadedMachine};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Success, or the machine accepted.
    Success,
    /// The machine rejected, or no refutation was found.
    Rejected,
    BudgetExceeded,
    /// Bad flags or unreadable input.
    Usage,
    /// A refutation certificate was produced.
    Refuted,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Rejected => 1,
            ExitStatus::BudgetExceeded => 2,
            ExitStatus::Usage => 3,
            ExitStatus::Refuted => 4,
        }
    }

    fn of_verdict(v: Verdict) -> ExitStatus {
        match v {
            Verdict::Accepted => ExitStatus::Success,
            Verdict::Rejected => ExitStatus::Rejected,
            Verdict::BudgetExceeded => ExitStatus::BudgetExceeded,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "f2lab", version, about = "One-tape Turing machines and the word problem of the free group F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct MachineArgs {
    /// Machine description file.
    #[arg(long, value_name = "FILE")]
    machine: Option<PathBuf>,
    /// Bundled machine: quad_cancel, twotape_linear, always_accept, parity_cheat.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalMachineArgs {
    /// Machine description file.
    #[arg(long, value_name = "FILE")]
    machine: Option<PathBuf>,
    /// Bundled machine.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Guaranteed,
    Empirical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Worstcase,
    #[value(name = "lemma-random")]
    LemmaRandom,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Freely reduce a word and say whether it is trivial.
    Reduce {
        /// Word over a, b, A, B (capitals are inverses).
        word: String,
    },
    /// Print the witness family of length n, one word per line.
    Genwords {
        #[arg(long)]
        n: usize,
        /// Print a seeded sample of at most this many words.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a machine on one input.
    Run {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Step budget [default: 64 max(n,1)^2].
        #[arg(long)]
        budget: Option<u64>,
        /// Print visit counts and crossing sequences.
        #[arg(long)]
        trace: bool,
        /// Print crossing data at the boundary between cells c and c+1.
        #[arg(long, value_name = "c", allow_negative_numbers = true)]
        boundary: Option<i64>,
    },
    /// Search for a counterexample certificate against a one-tape machine.
    Adversary {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Empirical)]
        mode: ModeArg,
        /// Time coefficient for guaranteed mode [default: half the bound].
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 8)]
        nmin: usize,
        #[arg(long, default_value_t = 32)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest family to trace.
        #[arg(long)]
        cap: Option<usize>,
        /// Crossing constant C in the bound log(alpha) / (C log K).
        #[arg(long, default_value_t = 8.0)]
        constant: f64,
        /// Per-run step budget in empirical mode [default: 64 n^2].
        #[arg(long)]
        budget: Option<u64>,
        /// Write the certificate here when the machine is refuted.
        #[arg(long, value_name = "FILE")]
        cert_out: Option<PathBuf>,
    },
    /// Step counts on a family of inputs, as CSV with a power-law fit.
    Bench {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::Worstcase)]
        family: FamilyArg,
        /// Comma-separated input lengths, strictly increasing.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES.to_vec())]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step budget per run [default: 64 n^2].
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the CSV here.
        #[arg(long, value_name = "FILE")]
        csv_out: Option<PathBuf>,
    },
    /// Smallest length from which the counting argument forces a collision.
    Threshold {
        /// Number of machine states K.
        #[arg(long)]
        states: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 8.0)]
        constant: f64,
        /// Family growth base [default: 2^(1/4)].
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// Re-check a certificate file from scratch.
    Verify {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        /// Defaults to the builtin named in the certificate.
        #[command(flatten)]
        machine: OptionalMachineArgs,
        /// Step budget per run [default: 128 n^2].
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("{path}: {source}")]
    Certificate {
        path: PathBuf,
        source: CertificateParseError,
    },
    #[error("{0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

type Outcome = Result<ExitStatus, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if help {
                let _ = write!(out, "{rendered}");
                return ExitStatus::Success;
            }
            let _ = write!(err, "{rendered}");
            return ExitStatus::Usage;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::Usage
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Reduce { word } => cmd_reduce(&word, out),
        Command::Genwords { n, cap, seed } => cmd_genwords(n, cap, seed, out),
        Command::Run {
            machine,
            input,
            budget,
            trace,
            boundary,
        } => cmd_run(resolve(&machine)?, &input, budget, trace, boundary, out),
        Command::Adversary {
            machine,
            mode,
            epsilon,
            nmin,
            nmax,
            seed,
            cap,
            constant,
            budget,
            cert_out,
        } => {
            let cfg = AdversaryConfig {
                epsilon,
                mode: match mode {
                    ModeArg::Guaranteed => Mode::Guaranteed,
                    ModeArg::Empirical => Mode::Empirical,
                },
                n_min: nmin,
                n_max: nmax,
                cap,
                seed,
                crossing_constant: constant,
                budget_override: budget,
                ..AdversaryConfig::default()
            };
            cmd_adversary(resolve(&machine)?, &cfg, cert_out.as_deref(), out, err)
        }
        Command::Bench {
            machine,
            family,
            sizes,
            seed,
            budget,
            csv_out,
        } => {
            let kind = match family {
                FamilyArg::Worstcase => FamilyKind::WorstCase,
                FamilyArg::LemmaRandom => FamilyKind::LemmaRandom,
                FamilyArg::Random => FamilyKind::Random,
            };
            cmd_bench(resolve(&machine)?, kind, &sizes, seed, budget, csv_out.as_deref(), out, err)
        }
        Command::Threshold {
            states,
            epsilon,
            constant,
            alpha,
            horizon,
        } => cmd_threshold(states, epsilon, constant, alpha, horizon, out, err),
        Command::Verify { cert, machine, budget } => cmd_verify(&cert, &machine, budget, out),
    }
}

fn resolve(m: &MachineArgs) -> Result<LoadedMachine, Failure> {
    match (&m.machine, &m.builtin) {
        (Some(p), _) => Ok(load::from_file(p)?),
        (None, Some(b)) => Ok(load::builtin(b)?),
        (None, None) => Err(Failure::Input("pass --machine FILE or --builtin NAME".into())),
    }
}

fn warn_if_incorrect(m: &LoadedMachine, err: &mut dyn Write) -> std::io::Result<()> {
    if m.entry.is_some_and(|e| e.correctness == Correctness::IncorrectByDesign) {
        writeln!(err, "note: {} is incorrect by design", m.name)?;
    }
    Ok(())
}

fn cmd_reduce(word: &str, out: &mut dyn Write) -> Outcome {
    let w: Word = word.parse()?;
    let r = free_reduce(&w);
    writeln!(out, "{r}")?;
    writeln!(out, "{}", if r.is_identity() { "trivial" } else { "non-trivial" })?;
    Ok(ExitStatus::Success)
}

fn cmd_genwords(n: usize, cap: Option<usize>, seed: u64, out: &mut dyn Write) -> Outcome {
    let f = gen_lemma_family(n, cap, Some(seed))?;
    out.write_all(f.to_lines().as_bytes())?;
    Ok(ExitStatus::Success)
}

fn cmd_run(
    m: LoadedMachine,
    input: &str,
    budget: Option<u64>,
    trace: bool,
    boundary: Option<i64>,
    out: &mut dyn Write,
) -> Outcome {
    let w: Word = input.parse()?;
    let budget = budget.unwrap_or_else(|| default_budget(w.len().max(1)));
    if !trace && boundary.is_none() {
        let o = m.machine.run(&w, budget);
        writeln!(out, "{}", o.verdict.label())?;
        writeln!(out, "steps: {}", o.steps)?;
        writeln!(out, "final_head: {}", o.final_head)?;
        return Ok(ExitStatus::of_verdict(o.verdict));
    }
    let Machine::OneTape(spec) = &m.machine else {
        return Err(Failure::Input("--trace and --boundary need a one-tape machine".into()));
    };
    let t = run_traced(spec, &w, budget);
    let h = spec.header();
    writeln!(out, "{}", t.outcome.verdict.label())?;
    writeln!(out, "steps: {}", t.outcome.steps)?;
    writeln!(out, "final_head: {}", t.outcome.final_head)?;
    if trace {
        let (lo, hi) = t.visited_range();
        for cell in lo..=hi {
            writeln!(out, "visits {cell}: {}", t.visits(cell))?;
        }
        for c in t.touched_boundaries() {
            writeln!(out, "crossing {c}: {}", t.crossing_sequence_at(c).render(h))?;
        }
    }
    if let Some(c) = boundary {
        writeln!(out, "boundary: {c}")?;
        writeln!(out, "crossing: {}", t.crossing_sequence_at(c).render(h))?;
        writeln!(out, "visits: {}", t.visits(c))?;
        writeln!(out, "left_steps: {}", t.left_steps(c))?;
        writeln!(out, "right_steps: {}", t.right_steps(c))?;
    }
    Ok(ExitStatus::of_verdict(t.outcome.verdict))
}

fn print_report(r: &AdversaryReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "machine: {} ({} states, sha256:{})", r.machine_name, r.state_count, r.machine_digest)?;
    writeln!(out, "mode: {}", r.mode.as_str())?;
    writeln!(out, "epsilon_bound: {}", r.epsilon_bound)?;
    if let Some(e) = r.epsilon {
        writeln!(out, "epsilon: {e}")?;
        match r.guarantee_n {
            Some(n) => writeln!(out, "guarantee_n: {n}")?,
            None => writeln!(out, "guarantee_n: none below the horizon")?,
        }
    }
    for l in &r.per_n {
        let s = &l.search;
        writeln!(
            out,
            "n={} family={} budget={} halted={} majority={}/{} buckets={} largest_bucket={} collisions={} attempts={} status={:?}",
            s.n,
            s.family_size,
            s.budget,
            s.halted,
            s.majority_side.as_str(),
            s.majority_size,
            s.bucket_count,
            s.largest_bucket,
            s.collision_count,
            l.attempts,
            s.status,
        )?;
    }
    writeln!(out, "outcome: {}", r.outcome.as_str())?;
    if let Some(c) = &r.certificate {
        writeln!(out, "pair: {} {} at c={} ({})", c.word1, c.word2, c.checkpoint, c.side.as_str())?;
        writeln!(out, "hybrid: {} reduces to {}", c.hybrid, c.hybrid_reduced)?;
    }
    Ok(())
}

fn cmd_adversary(
    m: LoadedMachine,
    cfg: &AdversaryConfig,
    cert_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let Machine::OneTape(spec) = &m.machine else {
        return Err(Failure::Input(format!("{} is not a one-tape machine", m.name)));
    };
    warn_if_incorrect(&m, err)?;
    let r = run_adversary(spec, &m.name, cfg)?;
    print_report(&r, out)?;
    Ok(match r.outcome {
        AdversaryOutcome::Refuted => {
            let cert = r.certificate.as_ref().expect("refuted reports carry a certificate");
            match cert_out {
                Some(p) => {
                    std::fs::write(p, certificate::to_text(cert))?;
                    writeln!(err, "certificate written to {}", p.display())?;
                }
                None => writeln!(err, "pass --cert-out FILE to save the certificate")?,
            }
            ExitStatus::Refuted
        }
        AdversaryOutcome::BudgetExceeded => ExitStatus::BudgetExceeded,
        AdversaryOutcome::NoCollisionFound => ExitStatus::Rejected,
        AdversaryOutcome::GuaranteeInfeasible => {
            match r.guarantee_n {
                Some(n) => writeln!(
                    err,
                    "guaranteed mode needs n >= {n}, a family of 2^{} words, beyond the cap",
                    n / 4
                )?,
                None => writeln!(err, "the counting argument gives no length below the horizon")?,
            }
            ExitStatus::Rejected
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    m: LoadedMachine,
    kind: FamilyKind,
    sizes: &[usize],
    seed: u64,
    budget: Option<u64>,
    csv_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let samples = run_family(&m.machine, kind, sizes, seed, budget)?;
    let mut text = samples_to_csv(&samples);
    let fit = fit_exponent(&samples);
    match &fit {
        Ok(f) => text.push_str(&fit_comments(f)),
        Err(e) => text.push_str(&format!("# fit unavailable: {e}\n")),
    }
    out.write_all(text.as_bytes())?;
    if let Some(p) = csv_out {
        std::fs::write(p, &text)?;
    }
    if samples.iter().any(|s| s.verdict == Verdict::BudgetExceeded) {
        writeln!(err, "some runs exceeded the budget; the fit is unreliable")?;
        return Ok(ExitStatus::BudgetExceeded);
    }
    fit?;
    Ok(ExitStatus::Success)
}

fn cmd_threshold(
    states: usize,
    epsilon: f64,
    constant: f64,
    alpha: Option<f64>,
    horizon: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let alpha = match alpha {
        None => family_alpha(),
        Some(a) => GrowthBase::new(a).ok_or_else(|| Failure::Input("alpha must be a finite number > 1".into()))?,
    };
    let bound = epsilon_bound(states, alpha, constant)?;
    writeln!(err, "epsilon_bound: {bound}")?;
    match min_guarantee_n_with_horizon(states, epsilon, alpha, constant, horizon)? {
        Some(n) => {
            writeln!(out, "{n}")?;
            Ok(ExitStatus::Success)
        }
        None => {
            writeln!(out, "none")?;
            Ok(ExitStatus::Rejected)
        }
    }
}

fn cmd_verify(path: &Path, m: &OptionalMachineArgs, budget: Option<u64>, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let cert = certificate::from_text(&text).map_err(|source| Failure::Certificate {
        path: path.into(),
        source,
    })?;
    let loaded = match (&m.machine, &m.builtin) {
        (Some(p), _) => load::from_file(p)?,
        (None, Some(b)) => load::builtin(b)?,
        (None, None) => load::builtin(&cert.machine_name).map_err(|_| {
            Failure::Input(format!(
                "certificate names machine `{}`, which is not bundled; pass --machine FILE",
                cert.machine_name
            ))
        })?,
    };
    let Machine::OneTape(spec) = &loaded.machine else {
        return Err(Failure::Input(format!("{} is not a one-tape machine", loaded.name)));
    };
    let n = cert.n as u64;
    let budget = budget.unwrap_or_else(|| 128u64.saturating_mul(n).saturating_mul(n));
    match verify_certificate(spec, &cert, budget) {
        Ok(()) => {
            writeln!(out, "VERIFIED: {} accepts the non-trivial word {}", loaded.name, cert.hybrid)?;
            Ok(ExitStatus::Success)
        }
        Err(e) => {
            writeln!(out, "FAILED: {e}")?;
            Ok(ExitStatus::Rejected)
        }
    }
}
