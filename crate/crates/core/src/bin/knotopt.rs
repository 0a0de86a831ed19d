use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotopt::harness::{self, Concavity, Filter, MeasureChoice, OutputFormat, Table};
use knotopt::{
    kkt_check, spg, Backtrack, BbRule, Catalog, CatalogEntry, KnotError, KnotVector, Result,
    SpgConfig,
};

#[derive(Parser)]
#[command(
    name = "knotopt",
    version,
    about = "Optimal knot placement for piecewise-linear approximation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog experiments (equal spacing vs. optimized knots).
    Run(RunArgs),
    /// Optimize knots for a single curve and print the report.
    Solve(SolveArgs),
    /// KKT diagnostic at given knot positions.
    Check(CheckArgs),
    /// Write (x, f, fhat) samples and knot rows as CSV.
    PlotData(PlotArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog CSV (defaults to the built-in 20-curve catalog).
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MeasureArg::Auto)]
    measure: MeasureArg,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, env = "KNOTOPT_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BbArg::Bb1)]
    bb: BbArg,
    #[arg(long, value_enum, default_value_t = BacktrackArg::Random)]
    backtrack: BacktrackArg,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated curve names (default: all).
    #[arg(long, value_delimiter = ',')]
    curves: Vec<String>,
    /// Keep only concave or only non-concave rows.
    #[arg(long, value_enum)]
    only: Option<OnlyArg>,
    /// Knot counts to run.
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8])]
    knots: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    curves: String,
    /// Number of interior knots.
    #[arg(long, default_value_t = 4)]
    knots: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    curves: String,
    /// Comma-separated interior knot positions.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    knots: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    curves: String,
    /// Comma-separated interior knot positions.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        conflicts_with = "optimize"
    )]
    knots: Vec<f64>,
    /// Optimize this many knots first and plot the result.
    #[arg(long)]
    optimize: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Auto,
    Concave,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum BbArg {
    Bb1,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum BacktrackArg {
    Random,
    Halving,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnlyArg {
    Concave,
    Nonconcave,
}

impl From<MeasureArg> for MeasureChoice {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Auto => MeasureChoice::Auto,
            MeasureArg::Concave => MeasureChoice::Concave,
            MeasureArg::General => MeasureChoice::General,
        }
    }
}

impl SolverArgs {
    fn config(&self) -> SpgConfig {
        SpgConfig {
            seed: self.seed,
            bb_rule: match self.bb {
                BbArg::Bb1 => BbRule::Bb1,
                BbArg::Paper => BbRule::PaperLiteral,
            },
            backtrack: match self.backtrack {
                BacktrackArg::Random => Backtrack::SeededRandom,
                BacktrackArg::Halving => Backtrack::Halving,
            },
            ..SpgConfig::default()
        }
    }
}

impl CommonArgs {
    fn catalog(&self) -> Result<Catalog> {
        match &self.catalog {
            Some(p) => Catalog::from_path(p),
            None => Ok(Catalog::builtin()),
        }
    }
}

fn lookup<'c>(catalog: &'c Catalog, name: &str) -> Result<&'c CatalogEntry> {
    catalog
        .get(name)
        .ok_or_else(|| KnotError::Catalog(format!("no curve named `{name}` in catalog")))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let catalog = args.common.catalog()?;
    let filter = Filter {
        names: args.curves,
        only: args.only.map(|o| match o {
            OnlyArg::Concave => Concavity::Concave,
            OnlyArg::Nonconcave => Concavity::NonConcave,
        }),
    };
    let specs = harness::plan(
        &catalog,
        &filter,
        &args.knots,
        args.common.measure.into(),
        &args.solver.config(),
    )?;
    let rows = harness::run_catalog(&catalog, &specs)?;
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    let text = harness::render(&rows, format)?;
    match &args.out {
        Some(p) => {
            fs::write(p, text)?;
            eprint!("{}", Table(&rows));
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<()> {
    let catalog = args.common.catalog()?;
    let entry = lookup(&catalog, &args.curves)?;
    let kind = MeasureChoice::from(args.common.measure).resolve(entry.concave);
    let report = spg::solve(
        &entry.curve,
        kind,
        entry.a,
        entry.b,
        args.knots,
        &args.solver.config(),
    )?;
    eprintln!("knots: {:?}", report.final_knots.interior());
    eprintln!(
        "{} error {} -> {} after {} iterations ({})",
        kind.label(),
        harness::format_sci(report.initial_error),
        harness::format_sci(report.final_error),
        report.iterations,
        report.termination.label()
    );
    emit(
        &(serde_json::to_string_pretty(&report)? + "\n"),
        args.out.as_ref(),
    )
}

fn check(args: CheckArgs) -> Result<()> {
    let catalog = args.common.catalog()?;
    let entry = lookup(&catalog, &args.curves)?;
    let kind = MeasureChoice::from(args.common.measure).resolve(entry.concave);
    let knots = KnotVector::new(entry.a, entry.b, args.knots)?;
    let report = kkt_check(&entry.curve, &knots, kind)?;
    emit(
        &(serde_json::to_string_pretty(&report)? + "\n"),
        args.out.as_ref(),
    )
}

fn plot_data(args: PlotArgs) -> Result<()> {
    let catalog = args.common.catalog()?;
    let entry = lookup(&catalog, &args.curves)?;
    let knots = match args.optimize {
        Some(n) => {
            let kind = MeasureChoice::from(args.common.measure).resolve(entry.concave);
            spg::solve(
                &entry.curve,
                kind,
                entry.a,
                entry.b,
                n,
                &args.solver.config(),
            )?
            .final_knots
        }
        None => KnotVector::new(entry.a, entry.b, args.knots)?,
    };
    harness::emit_plot_data(&entry.curve, &knots, &args.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
        Command::PlotData(a) => plot_data(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
