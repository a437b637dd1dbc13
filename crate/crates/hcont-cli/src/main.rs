//! `hcont`: command-line front door for the interval-function calculus.
//!
//! Every subcommand is a thin adapter over the library: it loads JSON
//! files, calls exactly one pipeline of library functions, and writes the
//! library's output back out unchanged, so results are byte-identical to
//! direct library calls with the same configuration.
//!
//! Exit codes, chosen so the binary can drive scripted theorem-checking
//! pipelines:
//!
//! * `0` — success (and, for checks, a *true* verdict);
//! * `1` — the operation ran but the verdict is false (a failed
//!   H-continuity check, an oracle disagreement, a convergence study whose
//!   deviations grew under refinement);
//! * `2` — usage error: bad flags, unreadable or unparsable input files,
//!   or refusing to overwrite an output without `--force`;
//! * `3` — budget or precondition error reported by the library (wrong
//!   backend, enumeration too large, bound violated, ...).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hcont::envelope;
use hcont::funcs::make_example;
use hcont::hausdorff;
use hcont::io;
use hcont::lattice::{self, HcmStatus};
use hcont::oracle::{self, EnumerationBudget};
use hcont::plot;
use hcont::report::{CheckReport, Witness};
use hcont::space::Space;
use hcont::{baire, convergence};
use hcont::{Error, ExtReal, FunctionFamily, IntervalFunction};

#[derive(Parser)]
#[command(
    name = "hcont",
    version,
    about = "Calculus of interval-valued functions: Baire operators, Hausdorff \
             continuity, Dedekind suprema and infima, continuous envelopes, \
             brute-force oracles, convergence studies, and plots.",
    after_help = "Exit codes: 0 success, 1 verdict false, 2 usage error, \
                  3 budget/precondition error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a Baire operator: I (lower envelope), S (upper envelope), or
    /// the graph completion F(f) = [I(f), S(f)]
    Baire(BaireArgs),
    /// Regularize into the Hausdorff-continuous class: F(S(I(f))) for
    /// --mode lower, F(I(S(f))) for --mode upper
    Regularize(RegularizeArgs),
    /// Test Hausdorff continuity; prints a JSON report and exits 1 when
    /// the verdict is false
    Check(CheckArgs),
    /// Least upper bound of a family of H-continuous functions
    Sup(SupInfArgs),
    /// Greatest lower bound of a family of H-continuous functions
    Inf(SupInfArgs),
    /// Classify an H-continuous function: finite endpoints, uniform bound,
    /// continuous sandwich
    Classify(ClassifyArgs),
    /// Continuous minorant or majorant with its transform-space certificate
    Envelope(EnvelopeArgs),
    /// Approximating family of continuous bump minorants
    Family(FamilyArgs),
    /// Run a brute-force oracle on a small space; exits 1 when it fails
    Oracle(OracleArgs),
    /// Instantiate a builtin example function on a space
    Example(ExampleArgs),
    /// Grid-refinement convergence study; exits 1 if deviations grow
    Converge(ConvergeArgs),
    /// Emit CSV or SVG plot data for a function on a 1D or 2D space
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    /// Lower Baire operator (lower semicontinuous envelope)
    #[value(name = "I", alias = "i")]
    Lower,
    /// Upper Baire operator (upper semicontinuous envelope)
    #[value(name = "S", alias = "s")]
    Upper,
    /// Graph completion [I(f), S(f)]
    #[value(name = "F", alias = "f")]
    Completion,
}

#[derive(Args)]
struct BaireArgs {
    /// Operator to apply
    #[arg(long, value_enum)]
    op: OpName,
    /// Input function file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output function file
    #[arg(long)]
    out: PathBuf,
    /// Run the ball stencil at this radius instead of the schedule's finest
    /// (sampled backend only)
    #[arg(long)]
    radius: Option<f64>,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegularizeMode {
    Lower,
    Upper,
}

#[derive(Args)]
struct RegularizeArgs {
    /// lower = F(S(I(f))), upper = F(I(S(f)))
    #[arg(long, value_enum)]
    mode: RegularizeMode,
    /// Input function file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output function file
    #[arg(long)]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckBy {
    /// S(f_lo) = f_hi and I(f_hi) = f_lo
    Exchange,
    /// F(f_lo) = F(f_hi) = f
    Endpoints,
    /// Every inscribed function graph-completes back to f (exhaustive;
    /// finite topologies only; needs --chain)
    Definition,
}

#[derive(Args)]
struct CheckArgs {
    /// Input function file
    #[arg(long = "in")]
    input: PathBuf,
    /// Criterion to test with
    #[arg(long, value_enum, default_value = "exchange")]
    by: CheckBy,
    /// Comma-separated endpoint chain for --by definition, e.g. 0,1,2;
    /// must contain every endpoint value of the function
    #[arg(long)]
    chain: Option<String>,
}

#[derive(Args)]
struct SupInfArgs {
    /// Member function files (one or more)
    #[arg(long = "family", num_args = 1.., required = true)]
    family: Vec<PathBuf>,
    /// Function file bounding the family (above for sup, below for inf)
    #[arg(long)]
    bound: PathBuf,
    /// Output function file
    #[arg(long)]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input function file (must be H-continuous)
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnvelopeMode {
    Minorant,
    Majorant,
}

#[derive(Args)]
struct EnvelopeArgs {
    /// Which continuous envelope to build
    #[arg(long, value_enum)]
    mode: EnvelopeMode,
    /// Input function file (sampled backend, finite endpoints)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output function file for the envelope
    #[arg(long)]
    out: PathBuf,
    /// Also write the 1-Lipschitz transform-space certificate psi here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Overwrite existing output files
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyMode {
    /// Bump family below a uniformly bounded function
    Hb,
    /// Bump family interpolating down to a continuous minorant
    Hcm,
}

#[derive(Args)]
struct FamilyArgs {
    /// Which construction to run
    #[arg(long, value_enum)]
    mode: FamilyMode,
    /// Input function file (sampled backend, finite endpoints)
    #[arg(long = "in")]
    input: PathBuf,
    /// Accuracy: the family's pointwise supremum must reach f_lo - eps
    #[arg(long)]
    eps: f64,
    /// Uniform bound on |f| for --mode hb; defaults to the largest endpoint
    /// magnitude of the input
    #[arg(long)]
    bound: Option<f64>,
    /// Output family file
    #[arg(long)]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleTest {
    /// Compare production I/S/F against the literal all-opens scan on every
    /// chain-valued function
    Baire,
    /// Enumerate all H-continuous chain-valued functions
    Enumerate,
    /// Verify suprema/infima of every subset of the H-continuous lattice
    Dedekind,
}

#[derive(Args)]
struct OracleArgs {
    /// Which oracle to run
    #[arg(long, value_enum)]
    test: OracleTest,
    /// Space: inline JSON (starts with '{') or a space file path
    #[arg(long)]
    space: String,
    /// Comma-separated endpoint chain, e.g. 0,1
    #[arg(long)]
    chain: String,
    /// Cap on enumerated candidates (default 1000000)
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct ExampleArgs {
    /// Builtin name: step (1D), sin-reciprocal (2D), shock (2D over (x,t)),
    /// or constant:c
    #[arg(long)]
    name: String,
    /// Space: inline JSON (starts with '{') or a space file path
    #[arg(long)]
    space: String,
    /// Output function file
    #[arg(long)]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Builtin example to study
    #[arg(long)]
    example: String,
    /// Comma-separated grid sizes, e.g. 101,201,401
    #[arg(long)]
    sizes: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Csv,
    Svg,
}

#[derive(Args)]
struct PlotArgs {
    /// Input function file (sampled backend)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output format
    #[arg(long, value_enum)]
    format: PlotFormat,
    /// Output file; written to stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

/// What a finished subcommand reports back to `main`.
enum Outcome {
    /// Plain success.
    Done,
    /// A check ran to completion; `false` exits with code 1.
    Verdict(bool),
}

/// A failed subcommand: usage problems exit 2, library errors exit 3,
/// except that file I/O and JSON parse failures also count as usage.
enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(Error::Io(_)) | Failure::Lib(Error::Json(_)) => 2,
            Failure::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Done) | Ok(Outcome::Verdict(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict(false)) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cmd: Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Baire(a) => run_baire(a),
        Cmd::Regularize(a) => run_regularize(a),
        Cmd::Check(a) => run_check(a),
        Cmd::Sup(a) => run_sup_inf(a, true),
        Cmd::Inf(a) => run_sup_inf(a, false),
        Cmd::Classify(a) => run_classify(a),
        Cmd::Envelope(a) => run_envelope(a),
        Cmd::Family(a) => run_family(a),
        Cmd::Oracle(a) => run_oracle(a),
        Cmd::Example(a) => run_example(a),
        Cmd::Converge(a) => run_converge(a),
        Cmd::Plot(a) => run_plot(a),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing.
// ---------------------------------------------------------------------------

/// Refuses to overwrite an existing file unless `--force` was passed.
fn guard(path: &Path, force: bool) -> Result<(), Failure> {
    if path.exists() && !force {
        return Err(Failure::Usage(format!(
            "refusing to overwrite {}; pass --force",
            path.display()
        )));
    }
    Ok(())
}

/// `--space` accepts inline JSON (first non-space character `{`) or a path.
fn read_space(arg: &str) -> Result<Arc<Space>, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(io::space_from_str(arg)?)
    } else {
        Ok(io::load_space(arg)?)
    }
}

fn parse_chain(s: &str) -> Result<Vec<ExtReal>, Failure> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v: f64 = t
                .parse()
                .map_err(|_| Failure::Usage(format!("bad chain value '{t}'")))?;
            ExtReal::new(v).map_err(|_| Failure::Usage(format!("bad chain value '{t}'")))
        })
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse()
                .map_err(|_| Failure::Usage(format!("bad grid size '{t}'")))
        })
        .collect()
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    println!(
        "{}",
        serde_json::to_string_pretty(value).map_err(Error::from)?
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

fn run_baire(a: BaireArgs) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    let mut f = io::load_function(&a.input)?;
    if let Some(r) = a.radius {
        let m = f
            .space()
            .as_metric()
            .ok_or(Failure::Lib(Error::WrongBackend {
                op: "radius override",
                needs: "sampled metric",
            }))?;
        let rebuilt = Space::metric(m.with_radii(vec![r])?);
        f = IntervalFunction::new(rebuilt, f.values().to_vec())?;
    }
    let (name, result) = match a.op {
        OpName::Lower => ("I", baire::lower_baire(&f)?),
        OpName::Upper => ("S", baire::upper_baire(&f)?),
        OpName::Completion => ("F", baire::graph_completion(&f)?),
    };
    io::save_function(&result.output, &a.out)?;
    print_json(&json!({
        "op": name,
        "backend": result.backend,
        "radius_used": result.radius_used,
        "out": a.out,
    }))?;
    Ok(Outcome::Done)
}

fn run_regularize(a: RegularizeArgs) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    let f = io::load_function(&a.input)?;
    let (name, result) = match a.mode {
        RegularizeMode::Lower => ("lower", hausdorff::regularize_lower(&f)?),
        RegularizeMode::Upper => ("upper", hausdorff::regularize_upper(&f)?),
    };
    io::save_function(&result.output, &a.out)?;
    print_json(&json!({
        "mode": name,
        "backend": result.backend,
        "radius_used": result.radius_used,
        "out": a.out,
    }))?;
    Ok(Outcome::Done)
}

fn run_check(a: CheckArgs) -> Result<Outcome, Failure> {
    let f = io::load_function(&a.input)?;
    let report = match a.by {
        CheckBy::Exchange => hausdorff::is_h_continuous(&f)?,
        CheckBy::Endpoints => hausdorff::is_h_continuous_by_endpoint_completion(&f)?,
        CheckBy::Definition => {
            let chain = a
                .chain
                .as_deref()
                .ok_or_else(|| Failure::Usage("--by definition requires --chain".to_string()))?;
            hausdorff::is_h_continuous_by_definition(&f, &parse_chain(chain)?)?
        }
    };
    print_json(&serde_json::to_value(&report).map_err(Error::from)?)?;
    Ok(Outcome::Verdict(report.verdict))
}

fn run_sup_inf(a: SupInfArgs, sup: bool) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    let members = a
        .family
        .iter()
        .map(io::load_function)
        .collect::<hcont::Result<Vec<_>>>()?;
    let family = FunctionFamily::new(members)?;
    let bound = io::load_function(&a.bound)?;
    let result = if sup {
        lattice::family_sup(&family, &bound)?
    } else {
        lattice::family_inf(&family, &bound)?
    };
    io::save_function(&result, &a.out)?;
    print_json(&json!({
        "bound_of": if sup { "supremum" } else { "infimum" },
        "members": family.len(),
        "out": a.out,
    }))?;
    Ok(Outcome::Done)
}

fn run_classify(a: ClassifyArgs) -> Result<Outcome, Failure> {
    let f = io::load_function(&a.input)?;
    let c = lattice::classify(&f)?;
    let hcm = match &c.hcm {
        HcmStatus::NotApplicable => "not-applicable",
        HcmStatus::No => "no",
        HcmStatus::Witnessed { .. } => "witnessed",
    };
    print_json(&json!({
        "hft": c.hft,
        "hb": c.hb,
        "hcm": hcm,
    }))?;
    Ok(Outcome::Done)
}

fn run_envelope(a: EnvelopeArgs) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    if let Some(report) = &a.report {
        guard(report, a.force)?;
    }
    let f = io::load_function(&a.input)?;
    let result = match a.mode {
        EnvelopeMode::Minorant => envelope::continuous_minorant(&f)?,
        EnvelopeMode::Majorant => envelope::continuous_majorant(&f)?,
    };
    io::save_function(&result.envelope, &a.out)?;
    if let Some(report) = &a.report {
        io::save_function(&result.psi, report)?;
    }
    print_json(&json!({
        "out": a.out,
        "report": a.report,
        "lipschitz_bound": result.lipschitz_bound,
    }))?;
    Ok(Outcome::Done)
}

fn run_family(a: FamilyArgs) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    let f = io::load_function(&a.input)?;
    let fam = match a.mode {
        FamilyMode::Hb => {
            let bound = a.bound.unwrap_or_else(|| largest_magnitude(&f));
            envelope::approximating_family_bounded(&f, bound, a.eps)?
        }
        FamilyMode::Hcm => {
            let minorant = envelope::continuous_minorant(&f)?.envelope;
            envelope::approximating_family_cm(&f, &minorant, a.eps)?
        }
    };
    io::save_family(&fam, &a.out)?;
    print_json(&json!({
        "members": fam.family.len(),
        "eps": fam.eps,
        "out": a.out,
    }))?;
    Ok(Outcome::Done)
}

/// Largest endpoint magnitude, the tightest valid default for `--bound`.
/// Zero when an endpoint is infinite: no finite bound works, and zero lets
/// the library report the infinite witness point instead.
fn largest_magnitude(f: &IntervalFunction) -> f64 {
    let mut m = 0.0f64;
    for x in 0..f.len() {
        let (lo, hi) = (f.lower(x), f.upper(x));
        if !lo.is_finite() || !hi.is_finite() {
            return 0.0;
        }
        m = m.max(lo.get().abs()).max(hi.get().abs());
    }
    m
}

fn run_oracle(a: OracleArgs) -> Result<Outcome, Failure> {
    let space = read_space(&a.space)?;
    let chain = parse_chain(&a.chain)?;
    let budget = match a.budget {
        Some(n) => EnumerationBudget {
            max_candidates: n,
            ..EnumerationBudget::default()
        },
        None => EnumerationBudget::default(),
    };
    match a.test {
        OracleTest::Baire => {
            let candidates = oracle::all_chain_functions(&space, &chain, &budget)?;
            let report = baire_agreement(&candidates)?;
            print_json(&json!({
                "test": "baire",
                "functions_checked": candidates.len(),
                "report": serde_json::to_value(&report).map_err(Error::from)?,
            }))?;
            Ok(Outcome::Verdict(report.passed))
        }
        OracleTest::Enumerate => {
            let hs = oracle::enumerate_h_continuous(&space, &chain, &budget)?;
            let functions: Vec<_> = hs.iter().map(|h| h.values()).collect();
            print_json(&json!({
                "test": "enumerate",
                "points": space.len(),
                "chain": chain,
                "count": hs.len(),
                "functions": functions,
            }))?;
            Ok(Outcome::Done)
        }
        OracleTest::Dedekind => {
            let report = oracle::verify_dedekind_completeness(&space, &chain, &budget)?;
            print_json(&serde_json::to_value(&report).map_err(Error::from)?)?;
            Ok(Outcome::Verdict(report.passed))
        }
    }
}

/// Checks production I/S/F against the literal all-opens oracle on every
/// candidate, reporting each pointwise mismatch.
fn baire_agreement(candidates: &[IntervalFunction]) -> Result<CheckReport, Failure> {
    let mut failures = Vec::new();
    for (k, f) in candidates.iter().enumerate() {
        let lower = baire::lower_baire(f)?.output;
        let upper = baire::upper_baire(f)?.output;
        let completion = baire::graph_completion(f)?.output;
        let oracle_lower = oracle::oracle_lower_baire(f)?;
        let oracle_upper = oracle::oracle_upper_baire(f)?;
        let oracle_completion = oracle::oracle_graph_completion(f)?;
        for x in 0..f.len() {
            if lower.lower(x) != oracle_lower[x] {
                failures.push(Witness::at(x, format!("I mismatch on candidate {k}")));
            }
            if upper.upper(x) != oracle_upper[x] {
                failures.push(Witness::at(x, format!("S mismatch on candidate {k}")));
            }
            if completion.value(x) != oracle_completion.value(x) {
                failures.push(Witness::at(x, format!("F mismatch on candidate {k}")));
            }
        }
    }
    Ok(CheckReport::new("baire-oracle-agreement", failures))
}

fn run_example(a: ExampleArgs) -> Result<Outcome, Failure> {
    guard(&a.out, a.force)?;
    let space = read_space(&a.space)?;
    let f = make_example(&a.name, &space)?;
    io::save_function(&f, &a.out)?;
    print_json(&json!({
        "name": a.name,
        "points": f.len(),
        "out": a.out,
    }))?;
    Ok(Outcome::Done)
}

fn run_converge(a: ConvergeArgs) -> Result<Outcome, Failure> {
    let sizes = parse_sizes(&a.sizes)?;
    let study = convergence::run_convergence_study(&a.example, &sizes)?;
    print!("{study}");
    Ok(Outcome::Verdict(study.deviations_non_increasing()))
}

fn run_plot(a: PlotArgs) -> Result<Outcome, Failure> {
    let f = io::load_function(&a.input)?;
    let rendered = match a.format {
        PlotFormat::Csv => plot::csv_string(&f)?,
        PlotFormat::Svg => plot::svg_string(&f)?,
    };
    match &a.out {
        Some(path) => {
            guard(path, a.force)?;
            fs::write(path, &rendered).map_err(Error::from)?;
            print_json(&json!({
                "format": match a.format { PlotFormat::Csv => "csv", PlotFormat::Svg => "svg" },
                "bytes": rendered.len(),
                "out": path,
            }))?;
        }
        None => print!("{rendered}"),
    }
    Ok(Outcome::Done)
}
