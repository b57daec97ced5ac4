//! `bdt`: command-line front end for the discrete Bayesian toolkit.
//!
//! Exit codes: 0 success, 1 fixture failure, 2 usage error, 3 degenerate
//! computation (zero-probability conditioning or likelihood), 4 I/O error.

mod fixtures;
mod svg;

use std::fmt;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bdt_core::diagnostics::{DiagError, DiagnosticTest};
use bdt_core::distributions::{
    Binomial, DiscreteDistribution, DiscreteUniform, NegativeBinomial, Poisson,
};
use bdt_core::evidence::{self, Direction, Scale};
use bdt_core::grid::{GridError, ProblemSpec};
use bdt_core::mle::{self, Method};
use bdt_core::network::{self, ConvergenceGroup};
use bdt_core::probability::odds;

const EXIT_FIXTURE_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Degenerate(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Degenerate(msg) | CliError::Io(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<GridError> for CliError {
    fn from(err: GridError) -> Self {
        match err {
            GridError::AllZeroLikelihood => CliError::Degenerate(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<DiagError> for CliError {
    fn from(err: DiagError) -> Self {
        match err {
            DiagError::InvalidProbability(_) => CliError::Usage(err.to_string()),
            DiagError::DegenerateTest | DiagError::InfiniteBayesFactor => {
                CliError::Degenerate(err.to_string())
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "bdt",
    version,
    about = "Discrete Bayesian inference toolkit: distributions, grid posteriors, \
             diagnostic-test calculus, evidence classification, MLE, and network simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a distribution pmf or its moments
    Dist(DistArgs),
    /// Solve a grid-posterior problem file and emit the table as CSV
    Posterior(PosteriorArgs),
    /// Screening-test report: PPV, NPV, Bayes factors, posterior odds
    Diagnostic(DiagnosticArgs),
    /// Classify a Bayes factor into an evidence category
    Bf(BfArgs),
    /// Binomial maximum likelihood estimate
    Mle(MleArgs),
    /// Generate a seeded random DAG and export it as DOT
    Dag(DagArgs),
    /// Prior-strength convergence curves as CSV
    Converge(ConvergeArgs),
    /// Run the golden fixture suite
    PaperFixtures(FixturesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Uniform,
    Binomial,
    Poisson,
    Negbinomial,
}

#[derive(Args)]
struct DistArgs {
    /// Distribution family
    #[arg(long, value_enum)]
    family: Family,
    /// Support size (uniform)
    #[arg(long = "M")]
    m_max: Option<u64>,
    /// Trial count (binomial)
    #[arg(long)]
    n: Option<u64>,
    /// Success probability (binomial, negbinomial)
    #[arg(long)]
    p: Option<f64>,
    /// Rate (poisson)
    #[arg(long)]
    lambda: Option<f64>,
    /// Success target (negbinomial)
    #[arg(long)]
    kappa: Option<u64>,
    /// Outcome count to evaluate the pmf at
    #[arg(long)]
    m: Option<u64>,
    /// Print mean and variance instead of a pmf value
    #[arg(long)]
    moments: bool,
}

#[derive(Args)]
struct PosteriorArgs {
    /// Problem file: JSON with a prior grid, observations, and an optional
    /// "normalized" flag
    file: PathBuf,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagnosticArgs {
    /// Sensitivity P(T+ | D+)
    #[arg(long)]
    sens: f64,
    /// Specificity P(T- | D-)
    #[arg(long = "spec")]
    specificity: f64,
    /// Prevalence P(D+)
    #[arg(long)]
    prev: f64,
    /// Write a prior-vs-posterior bar chart SVG here
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct BfArgs {
    /// Bayes factor to classify
    #[arg(long)]
    bf: f64,
    /// Use the 2·ln(BF) bands instead of the raw bands
    #[arg(long)]
    log_scale: bool,
}

#[derive(Args)]
struct MleArgs {
    /// Observed successes
    #[arg(long)]
    m: u64,
    /// Trial count
    #[arg(long)]
    n: u64,
    /// Bracket tolerance for the numeric search
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Use golden-section search instead of the closed form
    #[arg(long)]
    numeric: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DagPreset {
    /// 100 nodes, edge probability 0.01
    Fig2,
    /// 500 nodes, edge probability 0.01
    Fig3,
}

#[derive(Args)]
struct DagArgs {
    /// Named node-count preset
    #[arg(long, value_enum)]
    preset: Option<DagPreset>,
    /// Node count (with --edge-prob)
    #[arg(long)]
    nodes: Option<usize>,
    /// Independent inclusion probability per forward pair
    #[arg(long)]
    edge_prob: Option<f64>,
    /// RNG seed; the same seed always yields the same graph
    #[arg(long)]
    seed: u64,
    /// Write DOT here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the edge list as from,to CSV
    #[arg(long)]
    adjacency: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvergePreset {
    /// HighRisk 0.9 and LowRisk 0.1 toward 0.5, rate 50
    Fig4,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Named two-group preset
    #[arg(long, value_enum)]
    preset: Option<ConvergePreset>,
    /// Starting positive probability (single custom group)
    #[arg(long)]
    start: Option<f64>,
    /// Limiting positive probability
    #[arg(long)]
    end: Option<f64>,
    /// Convergence rate (imaginary samples per e-fold)
    #[arg(long)]
    rate: Option<f64>,
    /// Comma-separated sample sizes
    #[arg(long, value_delimiter = ',')]
    samples: Option<Vec<u64>>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a stacked-panel SVG here
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct FixturesArgs {
    /// Run only fixtures whose id contains this substring
    #[arg(long)]
    only: Option<String>,
    /// Emit machine-readable JSON instead of the table
    #[arg(long)]
    json: bool,
}

const FIG4_SAMPLES: [u64; 9] = [1, 2, 5, 10, 20, 50, 100, 200, 500];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Dist(args) => run_dist(args)?,
        Command::Posterior(args) => run_posterior(args)?,
        Command::Diagnostic(args) => run_diagnostic(args)?,
        Command::Bf(args) => run_bf(args)?,
        Command::Mle(args) => run_mle(args)?,
        Command::Dag(args) => run_dag(args)?,
        Command::Converge(args) => run_converge(args)?,
        Command::PaperFixtures(args) => return run_fixtures(args),
    }
    Ok(0)
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for the {family} family")))
}

fn run_dist(args: DistArgs) -> Result<(), CliError> {
    let dist = match args.family {
        Family::Uniform => DiscreteDistribution::Uniform(
            DiscreteUniform::new(require(args.m_max, "M", "uniform")?)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        Family::Binomial => DiscreteDistribution::Binomial(
            Binomial::new(
                require(args.n, "n", "binomial")?,
                require(args.p, "p", "binomial")?,
            )
            .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        Family::Poisson => DiscreteDistribution::Poisson(
            Poisson::new(require(args.lambda, "lambda", "poisson")?)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        Family::Negbinomial => DiscreteDistribution::NegativeBinomial(
            NegativeBinomial::new(
                require(args.kappa, "kappa", "negbinomial")?,
                require(args.p, "p", "negbinomial")?,
            )
            .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
    };
    if args.moments {
        println!("mean={:.6} variance={:.6}", dist.mean(), dist.variance());
        return Ok(());
    }
    let m = args
        .m
        .ok_or_else(|| CliError::Usage("--m is required unless --moments is given".into()))?;
    println!("{:.6}", dist.pmf(m));
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn run_posterior(args: PosteriorArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.file.display())))?;
    let spec = ProblemSpec::from_json(&text)?;
    let table = spec.solve()?;
    let csv = table.to_csv();
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    println!(
        "marginal={:.6} mean={:.3} mode={:.3} nearest={:.3}",
        table.marginal_likelihood(),
        table.mean(),
        table.mode().0,
        table.nearest_grid_estimate()
    );
    Ok(())
}

fn fmt6(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        format!("{value:.6}")
    }
}

fn run_diagnostic(args: DiagnosticArgs) -> Result<(), CliError> {
    let test = DiagnosticTest::new(args.sens, args.specificity, args.prev)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let ppv = test.ppv()?;
    let npv = test.npv()?;
    let bf_pos = match test.bayes_factor_positive() {
        Ok(bf) => bf,
        Err(DiagError::InfiniteBayesFactor) => f64::INFINITY,
        Err(err) => return Err(err.into()),
    };
    let bf_neg = match test.bayes_factor_negative() {
        Ok(bf) => bf,
        Err(DiagError::InfiniteBayesFactor) => f64::INFINITY,
        Err(err) => return Err(err.into()),
    };
    let post_odds = match odds(test.prevalence()) {
        Ok(prior_odds) => prior_odds * bf_pos,
        Err(_) => f64::INFINITY, // prevalence 1: certainty stays certainty
    };
    let category = if bf_pos.is_infinite() {
        evidence::infinite_evidence(Scale::Raw).category
    } else if bf_pos == 0.0 {
        evidence::Category::Decisive
    } else {
        evidence::classify_bf(bf_pos)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .category
    };
    println!(
        "ppv={} npv={} bf={} bf_neg={} posterior_odds={} evidence={}",
        fmt6(ppv),
        fmt6(npv),
        fmt6(bf_pos),
        fmt6(bf_neg),
        fmt6(post_odds),
        category
    );
    if let Some(path) = &args.plot {
        let chart = svg::grouped_bar(
            "Prior vs posterior probability of disease",
            &["disease-positive", "disease-negative"],
            &[
                ("prior", vec![test.prevalence(), 1.0 - test.prevalence()]),
                ("posterior", vec![ppv, 1.0 - ppv]),
            ],
        );
        write_file(path, &chart)?;
    }
    Ok(())
}

fn run_bf(args: BfArgs) -> Result<(), CliError> {
    let report = if args.log_scale {
        evidence::classify_two_ln_bf(args.bf)
    } else {
        evidence::classify_bf(args.bf)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    match report.direction {
        Direction::Neutral => println!("{}", report.category),
        direction => println!("{} ({})", report.category, direction),
    }
    println!("2ln_bf={:.6}", report.two_ln_bf);
    Ok(())
}

fn run_mle(args: MleArgs) -> Result<(), CliError> {
    let result = if args.numeric {
        mle::binomial_mle_numeric(args.m, args.n, args.tolerance)
    } else {
        mle::binomial_mle_closed(args.m, args.n)
    }
    .map_err(|e| match e {
        mle::MleError::NonConvergence { .. } => CliError::Degenerate(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let method = match result.method {
        Method::ClosedForm => "closed-form",
        Method::Numeric => "numeric",
    };
    println!(
        "theta_hat={:.6} log_likelihood={:.6} method={} iterations={}",
        result.theta_hat, result.log_likelihood_at_max, method, result.iterations
    );
    Ok(())
}

fn run_dag(args: DagArgs) -> Result<(), CliError> {
    let (nodes, edge_prob) = match (args.preset, args.nodes, args.edge_prob) {
        (Some(DagPreset::Fig2), None, None) => (100, 0.01),
        (Some(DagPreset::Fig3), None, None) => (500, 0.01),
        (None, Some(nodes), Some(edge_prob)) => (nodes, edge_prob),
        _ => {
            return Err(CliError::Usage(
                "give either --preset or both --nodes and --edge-prob".into(),
            ))
        }
    };
    let dag = network::random_dag(nodes, edge_prob, args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let dot = dag.to_dot();
    match &args.out {
        Some(path) => write_file(path, &dot)?,
        None => print!("{dot}"),
    }
    if let Some(path) = &args.adjacency {
        write_file(path, &dag.adjacency_csv())?;
    }
    Ok(())
}

fn run_converge(args: ConvergeArgs) -> Result<(), CliError> {
    let samples = args.samples.unwrap_or_else(|| FIG4_SAMPLES.to_vec());
    if samples.is_empty() {
        return Err(CliError::Usage("--samples must not be empty".into()));
    }
    let (groups, end, rate) = match (args.preset, args.start, args.end, args.rate) {
        (Some(ConvergePreset::Fig4), None, None, None) => (
            vec![
                ConvergenceGroup::new("HighRisk", 0.9),
                ConvergenceGroup::new("LowRisk", 0.1),
            ],
            0.5,
            50.0,
        ),
        (None, Some(start), Some(end), Some(rate)) => {
            (vec![ConvergenceGroup::new("custom", start)], end, rate)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --preset or all of --start, --end, --rate".into(),
            ))
        }
    };
    let curves = network::convergence_table(&groups, end, rate, &samples)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let csv = network::convergence_csv(&curves);
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.plot {
        write_file(path, &svg::convergence_panels(&curves))?;
    }
    Ok(())
}

fn run_fixtures(args: FixturesArgs) -> Result<u8, CliError> {
    let outcomes = fixtures::run(args.only.as_deref());
    if outcomes.is_empty() {
        return Err(CliError::Usage(format!(
            "no fixtures match {:?}",
            args.only.unwrap_or_default()
        )));
    }
    let all_pass = outcomes.iter().all(|o| o.pass);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcomes).expect("outcomes serialize")
        );
    } else {
        let color = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
        let id_width = outcomes.iter().map(|o| o.id.len()).max().unwrap_or(8);
        println!(
            "{:<id_width$}  {:>12}  {:>15}  {:>9}  status",
            "fixture", "expected", "computed", "tolerance"
        );
        for outcome in &outcomes {
            let status = match (outcome.pass, color) {
                (true, true) => "\x1b[32mPASS\x1b[0m",
                (true, false) => "PASS",
                (false, true) => "\x1b[31mFAIL\x1b[0m",
                (false, false) => "FAIL",
            };
            let tolerance = outcome
                .tolerance
                .map_or_else(|| "-".to_string(), |t| format!("{t:.0e}"));
            println!(
                "{:<id_width$}  {:>12}  {:>15}  {:>9}  {}",
                outcome.id, outcome.expected, outcome.computed, tolerance, status
            );
        }
        let passed = outcomes.iter().filter(|o| o.pass).count();
        println!("{passed}/{} fixtures passed", outcomes.len());
    }
    Ok(if all_pass { 0 } else { EXIT_FIXTURE_FAILURE })
}
