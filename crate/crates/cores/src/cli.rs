//! Argument parsing, dispatch, rendering and exit codes.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use cores_core::families::{odd_diag_gf, odd_diag_terms, repeats_gf, repeats_terms};
use cores_core::guess::{guess_algebraic, DEFAULT_MARGIN};
use cores_core::oracle::{anderson_count, count_filtered_with_budget, enumerate_st_cores, EnumerationBudget};
use cores_core::profiledp::{sister_closed_form, SequenceEngine};
use cores_core::{CoreFilter, CountSequence, GuessSpec, OrderIdeal};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::bfile::{self, BFileError};
use crate::budget::{arm_watchdog, parse_bytes, parse_seconds, Budget};
use crate::diagram::{render_svg, MAX_DIAGRAM_N};
use crate::output::{EquationOutput, GfOutput, OutputEnvelope, Provenance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Largest Anderson count the brute-force enumeration will attempt.
pub const MAX_ANDERSON_CORES: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "cores", version, about = "Exact counts of simultaneous (s,t)-core partitions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "CORES_FORMAT", default_value_t = Format::Plain)]
    pub format: Format,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "CORES_THREADS")]
    pub threads: Option<usize>,
    /// Memory budget in bytes (suffixes K, M, G, T).
    #[arg(long, global = true, env = "CORES_MEMORY_BUDGET", value_parser = parse_bytes)]
    pub memory_budget: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, env = "CORES_TIME_BUDGET", value_parser = parse_seconds)]
    pub time_budget: Option<Duration>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Bfile,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (s,t)-cores by brute force and check the closed formula.
    Anderson {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
    },
    /// (n+1,n+2)-cores into odd parts, n = 0..=max-n.
    Straub {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = StraubMethod::Dp)]
        method: StraubMethod,
    },
    /// The companion sequence with the opposite colouring, n = 0..=max-n.
    Sister {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = SisterMethod::Dp)]
        method: SisterMethod,
    },
    /// Restricted families with rational generating functions.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Guess an algebraic equation P(x, Y) = 0 for a sequence.
    #[command(group(ArgGroup::new("input").required(true).args(["terms_file", "terms"])))]
    Guess {
        #[arg(long)]
        degx: usize,
        #[arg(long)]
        degy: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
        /// b-file with the terms.
        #[arg(long)]
        terms_file: Option<PathBuf>,
        /// Comma-separated terms.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        terms: Option<Vec<String>>,
    },
    /// Write an SVG drawing of A_n, optionally with an order ideal.
    Diagram {
        #[arg(long)]
        n: usize,
        /// Colouring parameter; defaults to n mod 2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        c: Option<u8>,
        /// Comma-separated labels of the ideal's points.
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<u64>>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StraubMethod {
    Dp,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SisterMethod {
    Dp,
    ClosedForm,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// No part repeated more than k times.
    Repeats(FamilyArgs),
    /// Odd parts, ideal within the k outermost diagonals.
    OddDiagonals(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub terms: usize,
    /// Also emit the generating function.
    #[arg(long)]
    pub gf: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cores_core::Error),
    #[error(transparent)]
    BFile(#[from] BFileError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        use cores_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::BFile(_) | CliError::Write { .. } => "usage",
            CliError::Core(E::Domain(_)) => "domain",
            CliError::Core(E::Resource(_)) => "resource",
            CliError::Core(E::Contract(_)) => "contract",
            CliError::Core(E::Singular { .. }) => "singular",
            CliError::Core(E::Internal(_)) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "usage" | "domain" => EXIT_USAGE,
            "resource" => EXIT_RESOURCE,
            _ => EXIT_INTERNAL,
        }
    }
}

/// Rendered result of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub envelope: OutputEnvelope,
    pub plain: String,
}

impl Report {
    fn terms(envelope: OutputEnvelope) -> Self {
        let plain = envelope.to_plain_terms();
        Self { envelope, plain }
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Plain => self.plain.clone(),
            Format::Json => self.envelope.to_json(),
            Format::Bfile => self.envelope.to_bfile(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

/// One line on stderr: JSON when `format` is JSON, text otherwise.
pub fn render_error(format: Format, kind: &str, code: i32, message: &str) -> String {
    match format {
        Format::Json => serde_json::json!({ "error": { "kind": kind, "exit_code": code, "message": message } })
            .to_string(),
        _ => format!("cores: {kind} error: {message}"),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = cli.format;
    if let Some(limit) = cli.time_budget {
        let msg = format!("time budget of {} s exceeded", limit.as_secs_f64());
        arm_watchdog(limit, render_error(format, "resource", EXIT_RESOURCE, &msg));
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("{}", render_error(format, "internal", EXIT_INTERNAL, &e.to_string()));
            return EXIT_INTERNAL;
        }
    };
    let budget = Budget { memory_bytes: cli.memory_budget, time: cli.time_budget };
    match pool.install(|| execute(&cli.command, &budget)) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(format).as_bytes());
            let _ = out.flush();
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", render_error(format, e.kind(), e.exit_code(), &e.to_string()));
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, budget: &Budget) -> Result<Report, CliError> {
    match command {
        Command::Anderson { s, t } => anderson(*s, *t),
        Command::Straub { max_n, method } => {
            let seq = match method {
                StraubMethod::Dp => dp_sequence(*max_n, budget, Parity::Straub)?,
                StraubMethod::Oracle => straub_by_oracle(*max_n)?,
            };
            let provenance = if *method == StraubMethod::Dp { Provenance::Dp } else { Provenance::Oracle };
            Ok(Report::terms(OutputEnvelope::from_sequence(&seq, provenance).with_note(
                "a(n) = number of (n+1,n+2)-cores with all parts odd; offset 0, a(0) = 1 counts the empty partition",
            )))
        }
        Command::Sister { max_n, method } => {
            let (seq, provenance) = match method {
                SisterMethod::Dp => (dp_sequence(*max_n, budget, Parity::Sister)?, Provenance::Dp),
                SisterMethod::ClosedForm => {
                    let terms = (0..=*max_n).map(sister_closed_form).collect::<Result<Vec<_>, _>>()?;
                    (CountSequence::new("sister", 0, terms), Provenance::ClosedForm)
                }
            };
            Ok(Report::terms(OutputEnvelope::from_sequence(&seq, provenance).with_note(
                "a(n) = alternating ideals of A_n under the colouring opposite to label parity; offset 0, a(n) = A047749(n+2)",
            )))
        }
        Command::Family { family } => family_report(family),
        Command::Guess { degx, degy, margin, terms_file, terms } => {
            let (offset, terms) = match (terms_file, terms) {
                (Some(path), _) => {
                    let b = bfile::read(path)?;
                    (b.offset, b.terms)
                }
                (None, Some(csv)) => (0, parse_terms(csv)?),
                (None, None) => return Err(CliError::Usage("either --terms-file or --terms is required".into())),
            };
            guess(offset, terms, *degx, *degy, *margin)
        }
        Command::Diagram { n, c, ideal, out } => diagram(*n, *c, ideal.as_deref(), out),
    }
}

fn anderson(s: u64, t: u64) -> Result<Report, CliError> {
    if s == 0 || t == 0 || gcd(s, t) != 1 {
        return Err(cores_core::Error::Domain(format!("s = {s} and t = {t} must be positive and coprime")).into());
    }
    let expected = anderson_count(s, t);
    if expected > BigUint::from(MAX_ANDERSON_CORES) {
        return Err(cores_core::Error::Resource(format!(
            "({s},{t}) has {expected} cores, above the enumeration cap of {MAX_ANDERSON_CORES}"
        ))
        .into());
    }
    let found = BigUint::from(enumerate_st_cores(s, t)?.len());
    if found != expected {
        return Err(cores_core::Error::Internal(format!(
            "brute force found {found} ({s},{t})-cores, the closed formula gives {expected}"
        ))
        .into());
    }
    Ok(Report::terms(
        OutputEnvelope::new(format!("anderson_{s}_{t}"), 0, vec![found.to_string()], Provenance::Oracle)
            .with_note("brute-force count over the gap poset, equal to (s+t-1)!/(s!t!)"),
    ))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy)]
enum Parity {
    Straub,
    Sister,
}

impl Parity {
    fn coloring(self, n: usize) -> u8 {
        match self {
            Parity::Straub => (n & 1) as u8,
            Parity::Sister => ((n + 1) & 1) as u8,
        }
    }
}

/// Builds the two colourings' tables concurrently, then reads off the terms.
fn dp_sequence(max_n: usize, budget: &Budget, parity: Parity) -> Result<CountSequence, CliError> {
    let mut engine = SequenceEngine::new(max_n).with_max_entries(budget.dp_max_entries());
    let top = |c: u8| (1..=max_n).rev().find(|&n| parity.coloring(n) == c);
    let (top0, top1) = (top(0), top(1));
    let (e0, e1) = engine.engines_mut();
    let (r0, r1) = rayon::join(
        || top0.map_or(Ok(()), |n| e0.extend_to(n)),
        || top1.map_or(Ok(()), |n| e1.extend_to(n)),
    );
    r0?;
    r1?;
    Ok(match parity {
        Parity::Straub => engine.straub(max_n)?,
        Parity::Sister => engine.sister(max_n)?,
    })
}

fn straub_by_oracle(max_n: usize) -> Result<CountSequence, CliError> {
    let budget = EnumerationBudget::default();
    budget.check(max_n)?;
    let terms = (0..=max_n)
        .into_par_iter()
        .map(|n| count_filtered_with_budget(n, &CoreFilter::OddParts, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CountSequence::new("straub", 0, terms))
}

fn family_report(family: &FamilyCommand) -> Result<Report, CliError> {
    let (args, seq, gf, note) = match family {
        FamilyCommand::Repeats(a) => (
            a,
            repeats_terms(a.k, a.terms)?,
            a.gf.then(|| repeats_gf(a.k)).transpose()?,
            format!("a(n) = number of (n+1,n+2)-cores with no part repeated more than {} times", a.k),
        ),
        FamilyCommand::OddDiagonals(a) => (
            a,
            odd_diag_terms(a.k, a.terms)?,
            a.gf.then(|| odd_diag_gf(a.k)).transpose()?,
            format!("a(n) = number of (n+1,n+2)-cores into odd parts whose ideal lies in the {} outermost diagonals", a.k),
        ),
    };
    let mut envelope = OutputEnvelope::from_sequence(&seq, Provenance::Gf).with_note(note);
    let mut plain = envelope.to_plain_terms();
    if let Some(f) = &gf {
        plain.push_str(&format!("\ngf({}) = {}", args.k, f.to_expression()));
        envelope.gf = Some(GfOutput::from(f));
    }
    Ok(Report { envelope, plain })
}

fn parse_terms(csv: &[String]) -> Result<Vec<BigInt>, CliError> {
    csv.iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigInt>().map_err(|_| CliError::Usage(format!("invalid term {s:?}"))))
        .collect()
}

fn guess(offset: i64, terms: Vec<BigInt>, dx: usize, dy: usize, margin: usize) -> Result<Report, CliError> {
    let spec = GuessSpec::new(terms, dx, dy, margin)?;
    let found = guess_algebraic(&spec)?;
    let mut envelope = OutputEnvelope::new("guess", offset, crate::output::strings(&spec.terms), Provenance::Guess);
    let plain = match &found {
        Some(eq) => {
            envelope.equation = Some(EquationOutput::from(eq));
            envelope.note = format!("verified on all {} terms, {} withheld from the solve", spec.terms.len(), margin);
            eq.to_expression()
        }
        None => {
            envelope.note = format!("no equation with deg_x <= {dx}, deg_Y <= {dy} annihilates all {} terms", spec.terms.len());
            "none".to_owned()
        }
    };
    Ok(Report { envelope, plain })
}

fn diagram(n: usize, c: Option<u8>, labels: Option<&[u64]>, out: &PathBuf) -> Result<Report, CliError> {
    if n > MAX_DIAGRAM_N {
        return Err(CliError::Usage(format!("diagrams are limited to n <= {MAX_DIAGRAM_N}")));
    }
    let c = c.unwrap_or((n % 2) as u8);
    let ideal = labels
        .map(|l| OrderIdeal::from_labels(n, l))
        .transpose()
        .map_err(|e| CliError::Usage(format!("--ideal: {e}")))?;
    let svg = render_svg(n, c, ideal.as_ref());
    std::fs::write(out, svg).map_err(|source| CliError::Write { path: out.display().to_string(), source })?;
    let mut occupied = ideal.as_ref().map(OrderIdeal::labels).unwrap_or_default();
    occupied.sort_unstable();
    let envelope = OutputEnvelope::new(format!("diagram_A_{n}"), 0, crate::output::strings(&occupied), Provenance::Input)
        .with_note(format!("c = {c}; svg written to {}", out.display()));
    Ok(Report { envelope, plain: format!("wrote {}", out.display()) })
}
