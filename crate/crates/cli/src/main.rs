use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use udc::bench::{run_bench, shuffle_points, solve_timed, BenchConfig, BenchError, Source};
use udc::gen::{GenError, GenSpec, Shape};
use udc::io::{read_tsplib, read_xy, write_csv, write_svg, write_xy, ParseError, SvgOptions};
use udc::oracle::{optimal_cover, DEFAULT_EPS};
use udc::{verify_cover, Algorithm, Cover, Point};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INVALID: u8 = 4;

#[derive(Parser)]
#[command(
    name = "udc",
    version,
    about = "Unit disk cover algorithms and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated point set as `x y` lines.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one algorithm (or all) on a point set and report cover size and time.
    Cover {
        #[command(flatten)]
        source: SourceArgs,
        /// Algorithm name, a comma-separated list, or `all`.
        #[arg(short, long, default_value = "fastcover")]
        algorithm: String,
        /// Check every point is covered; exits with status 4 otherwise.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Seeded permutation of the input before solving.
        #[arg(long)]
        shuffle_seed: Option<u64>,
        /// Render points and disks (single algorithm only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the disk centers as `x y` lines (single algorithm only).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Drop this many centers from each cover before verification.
        #[arg(long, hide = true, default_value_t = 0)]
        drop_centers: usize,
    },
    /// Timed, verified trials written as CSV.
    Bench {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short, long, default_value = "all")]
        algorithm: String,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        shuffle_seed: Option<u64>,
        /// CSV output file; stdout if omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads for (algorithm, trial) pairs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that a set of centers covers a point set.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Disk centers as `x y` lines.
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Exact minimum cover for small inputs (at most 12 points).
    Optimal {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Square,
    Disk,
    Convex,
    Annulus,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "square")]
    shape: ShapeArg,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Region area; defaults to `n` (density 1).
    #[arg(long)]
    area: Option<f64>,
    #[arg(long, default_value_t = 1000.0)]
    router: f64,
    #[arg(long, default_value_t = 750.0)]
    rinner: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        let area = self.area.unwrap_or(self.n as f64);
        let shape = match self.shape {
            ShapeArg::Square => Shape::Square { area },
            ShapeArg::Disk => Shape::Disk { area },
            ShapeArg::Convex => Shape::Convex { area },
            ShapeArg::Annulus => Shape::Annulus {
                r_outer: self.router,
                r_inner: self.rinner,
            },
        };
        GenSpec::new(shape, self.n, self.seed)
    }
}

#[derive(Args)]
struct SourceArgs {
    /// Point file: `x y` lines, or TSPLIB when the name ends in `.tsp`.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
}

/// An error together with the process exit status it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    fn new(code: u8, err: impl Into<anyhow::Error>) -> Self {
        Failure {
            code,
            err: err.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e)
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::new(EXIT_USAGE, e)
    }
}

type Result<T, E = Failure> = std::result::Result<T, E>;

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    let code = if matches!(e, ParseError::Io(_)) {
        EXIT_IO
    } else {
        EXIT_PARSE
    };
    Failure::new(
        code,
        anyhow!(e).context(format!("reading {}", path.display())),
    )
}

fn read_points(path: &Path) -> Result<Vec<Point>> {
    let file = File::open(path)
        .with_context(|| format!("opening {}", path.display()))
        .map_err(|e| Failure::new(EXIT_IO, e))?;
    let reader = BufReader::new(file);
    let is_tsp = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("tsp"));
    let parsed = if is_tsp {
        read_tsplib(reader)
    } else {
        read_xy(reader)
    };
    parsed.map_err(|e| parse_failure(path, e))
}

fn load(source: &SourceArgs) -> Result<(String, Vec<Point>)> {
    match &source.input {
        Some(path) => Ok((path.display().to_string(), read_points(path)?)),
        None => {
            let spec = source.gen.spec();
            Ok((spec.instance_name(), spec.generate()?))
        }
    }
}

fn parse_algorithms(sel: &str) -> Result<Vec<Algorithm>> {
    if sel.eq_ignore_ascii_case("all") {
        return Ok(Algorithm::ALL.to_vec());
    }
    sel.split(',')
        .map(|s| s.trim().parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::new(EXIT_USAGE, e))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_USAGE,
            anyhow!("--eps must be finite and non-negative, got {eps}"),
        ))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("creating {}", path.display()))
        .map_err(|e| Failure::new(EXIT_IO, e))
}

/// `path` or stdout.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_generate(gen: &GenArgs, output: Option<&Path>) -> Result<()> {
    let points = gen.spec().generate()?;
    let mut out = sink(output)?;
    write_xy(&points, &mut out)?;
    out.flush()?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_cover(
    source: &SourceArgs,
    algorithm: &str,
    verify: bool,
    eps: f64,
    shuffle_seed: Option<u64>,
    svg: Option<&Path>,
    output: Option<&Path>,
    drop_centers: usize,
) -> Result<()> {
    let algorithms = parse_algorithms(algorithm)?;
    check_eps(eps)?;
    if algorithms.len() > 1 && (svg.is_some() || output.is_some()) {
        return Err(Failure::new(
            EXIT_USAGE,
            anyhow!("--svg and --output need a single algorithm"),
        ));
    }
    let (name, mut points) = load(source)?;
    if let Some(s) = shuffle_seed {
        shuffle_points(&mut points, s);
    }

    let mut invalid = Vec::new();
    for alg in algorithms {
        let (cover, elapsed) = solve_timed(alg, &points);
        let mut centers = cover.centers;
        centers.truncate(centers.len().saturating_sub(drop_centers));
        let cover = Cover::new(centers);

        let mut line = format!(
            "{alg}\tinstance={name}\tn={}\tsize={}\ttime_s={:.6}",
            points.len(),
            cover.len(),
            elapsed.as_secs_f64()
        );
        if verify {
            let report = verify_cover(&points, &cover, eps);
            if report.valid {
                line.push_str("\tverified=ok");
            } else {
                line.push_str(&format!(
                    "\tverified=FAILED ({} uncovered)",
                    report.uncovered.len()
                ));
                invalid.push(alg);
            }
        }
        println!("{line}");

        if let Some(path) = svg {
            let mut w = create(path)?;
            write_svg(&points, &cover, &mut w, &SvgOptions::default())?;
            w.flush()?;
        }
        if let Some(path) = output {
            let mut w = create(path)?;
            write_xy(&cover.centers, &mut w)?;
            w.flush()?;
        }
    }
    if invalid.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = invalid.iter().map(|a| a.name()).collect();
        Err(Failure::new(
            EXIT_INVALID,
            anyhow!("invalid cover from {}", names.join(", ")),
        ))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    source: &SourceArgs,
    algorithm: &str,
    trials: u32,
    eps: f64,
    shuffle_seed: Option<u64>,
    csv: Option<&Path>,
    jobs: usize,
) -> Result<()> {
    let algorithms = parse_algorithms(algorithm)?;
    check_eps(eps)?;
    if trials == 0 {
        return Err(Failure::new(EXIT_USAGE, BenchError::NoTrials));
    }
    if jobs == 0 {
        return Err(Failure::new(
            EXIT_USAGE,
            anyhow!("--jobs must be at least 1"),
        ));
    }
    let src = match &source.input {
        Some(path) => Source::Points {
            name: path.display().to_string(),
            points: read_points(path)?,
        },
        None => Source::Generated(source.gen.spec()),
    };
    let cfg = BenchConfig {
        trials,
        shuffle_seed,
        eps,
        jobs,
        ..BenchConfig::new(algorithms, src)
    };
    let records = run_bench(&cfg).map_err(|e| {
        let code = match e {
            BenchError::InvalidCover { .. } => EXIT_INVALID,
            BenchError::NoTrials | BenchError::Gen(_) => EXIT_USAGE,
            #[allow(unreachable_patterns)]
            _ => EXIT_IO,
        };
        Failure::new(code, e)
    })?;
    let out = sink(csv)?;
    write_csv(&records, out).map_err(|e| Failure::new(EXIT_IO, e))?;
    Ok(())
}

fn cmd_verify(input: &Path, cover: &Path, eps: f64) -> Result<()> {
    check_eps(eps)?;
    let points = read_points(input)?;
    let cover = Cover::new(read_points(cover)?);
    let report = verify_cover(&points, &cover, eps);
    if report.valid {
        println!("valid: {} disks cover {} points", cover.len(), points.len());
        return Ok(());
    }
    for u in report.uncovered.iter().take(10) {
        let p = points[u.index];
        eprintln!(
            "uncovered: point {} ({}) at distance {}",
            u.index,
            p,
            u.min_dist_sq.sqrt()
        );
    }
    Err(Failure::new(
        EXIT_INVALID,
        anyhow!(
            "{} of {} points uncovered",
            report.uncovered.len(),
            points.len()
        ),
    ))
}

fn cmd_optimal(source: &SourceArgs, output: Option<&Path>) -> Result<()> {
    let (name, points) = load(source)?;
    let opt = optimal_cover(&points).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    println!(
        "optimal\tinstance={name}\tn={}\tsize={}",
        points.len(),
        opt.size
    );
    if let Some(path) = output {
        let mut w = create(path)?;
        write_xy(&opt.centers.centers, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Generate { gen, output } => cmd_generate(gen, output.as_deref()),
        Command::Cover {
            source,
            algorithm,
            verify,
            eps,
            shuffle_seed,
            svg,
            output,
            drop_centers,
        } => cmd_cover(
            source,
            algorithm,
            *verify,
            *eps,
            *shuffle_seed,
            svg.as_deref(),
            output.as_deref(),
            *drop_centers,
        ),
        Command::Bench {
            source,
            algorithm,
            trials,
            eps,
            shuffle_seed,
            csv,
            jobs,
        } => cmd_bench(
            source,
            algorithm,
            *trials,
            *eps,
            *shuffle_seed,
            csv.as_deref(),
            *jobs,
        ),
        Command::Verify { input, cover, eps } => cmd_verify(input, cover, *eps),
        Command::Optimal { source, output } => cmd_optimal(source, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
