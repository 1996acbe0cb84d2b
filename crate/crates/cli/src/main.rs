//! `ctwalk`: continuous-time quantum and classical walks on 1-D lattices.
//!
//! Subcommands compute carpets, return/crossing probability series, limiting
//! distributions, and revival reports, writing CSV, PGM, and gnuplot-script
//! artifacts. Node labels on the command line and in artifacts are 1-based;
//! all times are in units of the inverse transmission rate 1/γ.

mod output;

use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctwalk::{
    bessel_j, build_adjacency, classical_carpet, eigendecompose_symmetric, first_revival_search,
    generate_carpet, limiting_distribution, quantum_amplitude_infinite, quantum_amplitude_spectral,
    transition_probability, Boundary, CarpetMethod, LatticeSpec, LatticeSpec64, TimeGrid,
    TimeGrid64, DEFAULT_DEGENERACY_TOLERANCE, DEFAULT_TOLERANCE,
};
use output::{ArtifactKind, PgmScale};

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "ctwalk",
    version,
    about = "Continuous-time quantum and classical walks on 1-D lattices",
    after_help = "Times are in units of 1/gamma; node labels are 1-based."
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spacetime probability carpet of the quantum walk
    Carpet(CarpetArgs),
    /// Return probability at the start node over time
    ReturnProb(SeriesArgs),
    /// Probability to cross from the start node to a target node over time
    Crossing(CrossingArgs),
    /// Limiting (long-time averaged) distribution over nodes
    Limdist(LimdistArgs),
    /// Per-mode revival times and first-revival detection
    Revival(RevivalArgs),
    /// Spacetime carpet of the classical random walk
    Classical(ClassicalArgs),
    /// Run the Bessel self-checks and report max residuals
    BesselCheck,
}

#[derive(Args)]
struct LatticeArgs {
    /// Number of lattice nodes N
    #[arg(long)]
    nodes: usize,
    /// Boundary condition
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
    /// Transmission rate gamma of every bond (inverse time units)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
}

impl LatticeArgs {
    fn spec(&self) -> CliResult<LatticeSpec64> {
        Ok(LatticeSpec::new(
            self.nodes,
            self.boundary.into(),
            self.gamma,
        )?)
    }
}

#[derive(Args)]
struct WindowArgs {
    /// Start of the time window
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t_min: f64,
    /// End of the time window
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    /// Number of uniformly spaced time samples
    #[arg(long, default_value_t = 400)]
    samples: usize,
}

impl WindowArgs {
    fn grid(&self) -> CliResult<TimeGrid64> {
        Ok(TimeGrid::new(self.t_min, self.t_max, self.samples)?)
    }
}

#[derive(Args)]
struct CarpetArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Start node (1-based)
    #[arg(long, default_value_t = 1)]
    start: usize,
    #[command(flatten)]
    window: WindowArgs,
    /// Propagation route
    #[arg(long, value_enum, default_value_t = CarpetMethodArg::Spectral)]
    method: CarpetMethodArg,
    /// Output path (defaults to carpet.csv / carpet.pgm)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifact format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Gray mapping for PGM output
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    scale: ScaleArg,
    /// Also write a gnuplot script next to the CSV artifact
    #[arg(long)]
    emit_plot: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Start node (1-based)
    #[arg(long, default_value_t = 1)]
    start: usize,
    #[command(flatten)]
    window: WindowArgs,
    /// Propagation route
    #[arg(long, value_enum, default_value_t = SeriesMethodArg::Spectral)]
    method: SeriesMethodArg,
    /// Output path (defaults to <subcommand>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV artifact
    #[arg(long)]
    emit_plot: bool,
}

#[derive(Args)]
struct CrossingArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Target node (1-based)
    #[arg(long)]
    target: usize,
}

#[derive(Args)]
struct LimdistArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Start node (1-based)
    #[arg(long, default_value_t = 1)]
    start: usize,
    /// Output path (defaults to limdist.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV artifact
    #[arg(long)]
    emit_plot: bool,
}

#[derive(Args)]
struct RevivalArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Search window start (defaults to N/2, the earliest possible revival)
    #[arg(long)]
    t_min: Option<f64>,
    /// Search window end (defaults to max(100, N^2/2pi + 25))
    #[arg(long)]
    t_max: Option<f64>,
    /// Output path (defaults to revival.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV artifact
    #[arg(long)]
    emit_plot: bool,
}

#[derive(Args)]
struct ClassicalArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Start node (1-based)
    #[arg(long, default_value_t = 1)]
    start: usize,
    #[command(flatten)]
    window: WindowArgs,
    /// Output path (defaults to classical.csv / classical.pgm)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifact format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Gray mapping for PGM output
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    scale: ScaleArg,
    /// Also write a gnuplot script next to the CSV artifact
    #[arg(long)]
    emit_plot: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BoundaryArg {
    Periodic,
    Reflecting,
}

impl From<BoundaryArg> for Boundary {
    fn from(value: BoundaryArg) -> Self {
        match value {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Reflecting => Boundary::Reflecting,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CarpetMethodArg {
    Spectral,
    Bloch,
}

impl From<CarpetMethodArg> for CarpetMethod {
    fn from(value: CarpetMethodArg) -> Self {
        match value {
            CarpetMethodArg::Spectral => CarpetMethod::Spectral,
            CarpetMethodArg::Bloch => CarpetMethod::Bloch,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SeriesMethodArg {
    Spectral,
    Bloch,
    Infinite,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Csv,
    Pgm,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ScaleArg {
    Linear,
    Log,
}

impl From<ScaleArg> for PgmScale {
    fn from(value: ScaleArg) -> Self {
        match value {
            ScaleArg::Linear => PgmScale::Linear,
            ScaleArg::Log => PgmScale::Log,
        }
    }
}

/// 1-based command-line label to 0-based internal index.
fn to_internal(label: usize, n_nodes: usize, what: &str) -> CliResult<usize> {
    if label == 0 || label > n_nodes {
        return Err(format!(
            "{what} node {label} out of range: labels are 1-based, valid range 1..={n_nodes}"
        )
        .into());
    }
    Ok(label - 1)
}

fn default_out(stem: &str, format: FormatArg) -> PathBuf {
    match format {
        FormatArg::Csv => PathBuf::from(format!("{stem}.csv")),
        FormatArg::Pgm => PathBuf::from(format!("{stem}.pgm")),
    }
}

fn check_plot_format(emit_plot: bool, format: FormatArg) -> CliResult<()> {
    if emit_plot && format != FormatArg::Csv {
        return Err("plot scripts render CSV artifacts; use --format csv with --emit-plot".into());
    }
    Ok(())
}

fn plot_path(artifact: &Path) -> PathBuf {
    artifact.with_extension("gp")
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}

fn run(config: RunConfig) -> CliResult<()> {
    match config.command {
        Command::Carpet(args) => run_carpet(args),
        Command::ReturnProb(args) => run_series(args, None, "return-prob"),
        Command::Crossing(args) => {
            let target = args.target;
            run_series(args.series, Some(target), "crossing")
        }
        Command::Limdist(args) => run_limdist(args),
        Command::Revival(args) => run_revival(args),
        Command::Classical(args) => run_classical(args),
        Command::BesselCheck => run_bessel_check(),
    }
}

fn run_carpet(args: CarpetArgs) -> CliResult<()> {
    check_plot_format(args.emit_plot, args.format)?;
    let spec = args.lattice.spec()?;
    let start = to_internal(args.start, spec.n_nodes(), "start")?;
    let grid = args.window.grid()?;
    let carpet = generate_carpet(&spec, start, &grid, args.method.into())?;
    let out = args
        .out
        .unwrap_or_else(|| default_out("carpet", args.format));
    match args.format {
        FormatArg::Csv => output::write_carpet_csv(&carpet, &out)?,
        FormatArg::Pgm => output::write_carpet_pgm(&carpet, &out, args.scale.into())?,
    }
    if args.emit_plot {
        output::write_plot_script(ArtifactKind::Carpet, &out, &plot_path(&out))?;
    }
    println!(
        "wrote {} ({} samples x {} nodes)",
        out.display(),
        carpet.n_samples(),
        carpet.n_nodes()
    );
    Ok(())
}

fn run_series(args: SeriesArgs, target: Option<usize>, stem: &str) -> CliResult<()> {
    let spec = args.lattice.spec()?;
    let start = to_internal(args.start, spec.n_nodes(), "start")?;
    let end = match target {
        Some(label) => to_internal(label, spec.n_nodes(), "target")?,
        None => start,
    };
    let grid = args.window.grid()?;

    let points: Vec<(f64, f64)> = match args.method {
        SeriesMethodArg::Spectral => {
            let adjacency = build_adjacency(&spec)?;
            let decomp = eigendecompose_symmetric(&adjacency, DEFAULT_TOLERANCE)?;
            grid.times()
                .map(|t| {
                    let amplitude =
                        quantum_amplitude_spectral(&decomp, spec.gamma(), t, end, start)?;
                    Ok((t, transition_probability(amplitude)?))
                })
                .collect::<ctwalk::Result<_>>()?
        }
        SeriesMethodArg::Bloch => grid
            .times()
            .map(|t| {
                let amplitude = ctwalk::quantum_amplitude_bloch(&spec, t, end, start)?;
                Ok((t, transition_probability(amplitude)?))
            })
            .collect::<ctwalk::Result<_>>()?,
        SeriesMethodArg::Infinite => {
            let offset = end as i64 - start as i64;
            grid.times()
                .map(|t| {
                    let amplitude = quantum_amplitude_infinite(spec.gamma(), t, offset)?;
                    Ok((t, transition_probability(amplitude)?))
                })
                .collect::<ctwalk::Result<_>>()?
        }
    };

    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{stem}.csv")));
    output::write_series_csv(&points, &out)?;
    if args.emit_plot {
        output::write_plot_script(ArtifactKind::Series, &out, &plot_path(&out))?;
    }
    println!("wrote {} ({} samples)", out.display(), points.len());
    Ok(())
}

fn run_limdist(args: LimdistArgs) -> CliResult<()> {
    let spec = args.lattice.spec()?;
    let start = to_internal(args.start, spec.n_nodes(), "start")?;
    let adjacency = build_adjacency(&spec)?;
    let decomp = eigendecompose_symmetric(&adjacency, DEFAULT_TOLERANCE)?;
    let dist = limiting_distribution(&decomp, start, DEFAULT_DEGENERACY_TOLERANCE)?;
    let out = args.out.unwrap_or_else(|| PathBuf::from("limdist.csv"));
    output::write_limdist_csv(&dist, &out)?;
    if args.emit_plot {
        output::write_plot_script(ArtifactKind::Limdist, &out, &plot_path(&out))?;
    }
    println!("wrote {} ({} nodes)", out.display(), dist.values().len());
    Ok(())
}

fn run_revival(args: RevivalArgs) -> CliResult<()> {
    let spec = args.lattice.spec()?;
    let n = spec.n_nodes() as f64;
    let tau0 = n * n / std::f64::consts::TAU;
    let t_min = args.t_min.unwrap_or(n / 2.0);
    let t_max = args.t_max.unwrap_or_else(|| 100.0f64.max(tau0 + 25.0));
    let window = TimeGrid::new(t_min, t_max, 2)?;
    let report = first_revival_search(&spec, &window)?;
    let out = args.out.unwrap_or_else(|| PathBuf::from("revival.csv"));
    output::write_revival_csv(&report, &out)?;
    if args.emit_plot {
        output::write_plot_script(ArtifactKind::Revival, &out, &plot_path(&out))?;
    }
    println!(
        "wrote {} ({} modes)",
        out.display(),
        report.mode_times.len()
    );
    println!("tau0 = {}", report.tau0);
    println!(
        "first revival detected at t = {} (peak return probability {})",
        report.detected_first_revival, report.detected_peak_probability
    );
    Ok(())
}

fn run_classical(args: ClassicalArgs) -> CliResult<()> {
    check_plot_format(args.emit_plot, args.format)?;
    let spec = args.lattice.spec()?;
    let start = to_internal(args.start, spec.n_nodes(), "start")?;
    let grid = args.window.grid()?;
    let carpet = classical_carpet(&spec, start, &grid)?;
    let out = args
        .out
        .unwrap_or_else(|| default_out("classical", args.format));
    match args.format {
        FormatArg::Csv => output::write_carpet_csv(&carpet, &out)?,
        FormatArg::Pgm => output::write_carpet_pgm(&carpet, &out, args.scale.into())?,
    }
    if args.emit_plot {
        output::write_plot_script(ArtifactKind::Carpet, &out, &plot_path(&out))?;
    }
    println!(
        "wrote {} ({} samples x {} nodes)",
        out.display(),
        carpet.n_samples(),
        carpet.n_nodes()
    );
    Ok(())
}

/// Recurrence, even-order normalization, and propagator-normalization
/// residual suites; nonzero exit if any bound is exceeded.
fn run_bessel_check() -> CliResult<()> {
    let mut failures = Vec::new();

    // Three-term recurrence over the working domain.
    let mut recurrence: f64 = 0.0;
    let mut x = 0.1;
    while x <= 50.0 {
        for n in 1..=40i64 {
            let jm = bessel_j::<f64>(n - 1, x)?;
            let jp = bessel_j::<f64>(n + 1, x)?;
            let jn = bessel_j::<f64>(n, x)?;
            recurrence = recurrence.max((jm + jp - 2.0 * n as f64 / x * jn).abs());
        }
        x += 0.1;
    }
    println!("recurrence residual:            {recurrence:.3e} (bound 1e-9)");
    if recurrence >= 1e-9 {
        failures.push("recurrence");
    }

    // J_0 + 2 sum of even orders = 1.
    let mut normalization: f64 = 0.0;
    let mut x = 0.0;
    while x <= 50.0 {
        let mut sum = bessel_j::<f64>(0, x)?;
        let terms = (x.ceil() as i64) + 60;
        for k in 1..=terms / 2 {
            sum += 2.0 * bessel_j::<f64>(2 * k, x)?;
        }
        normalization = normalization.max((sum - 1.0).abs());
        x += 0.5;
    }
    println!("even-order normalization:       {normalization:.3e} (bound 1e-10)");
    if normalization >= 1e-10 {
        failures.push("normalization");
    }

    // Infinite-lattice propagator conserves probability.
    let mut propagator: f64 = 0.0;
    for i in 0..=20 {
        let t = i as f64;
        let d_max = (4.0 * t).ceil() as i64 + 30;
        let mut sum = 0.0;
        for d in -d_max..=d_max {
            let j = bessel_j::<f64>(d, 2.0 * t)?;
            sum += j * j;
        }
        propagator = propagator.max((sum - 1.0).abs());
    }
    println!("propagator normalization:       {propagator:.3e} (bound 1e-8)");
    if propagator >= 1e-8 {
        failures.push("propagator normalization");
    }

    if failures.is_empty() {
        println!("bessel-check: all residuals within bounds");
        Ok(())
    } else {
        Err(format!("bessel-check failed: {}", failures.join(", ")).into())
    }
}
