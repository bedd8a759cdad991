//! The `gbc` command line. [`run_command`] does all the work so the binary is
//! a one-liner and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 a checked bound was
//! violated (`audit`, `bench`, `adversary`).

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::adversary::{gen_instance, simulate_missing, verify, MAX_SIMULATED_K};
use crate::audit::audit_stream;
use crate::cover::{check_epsilon, max_ball_bound, Cover};
use crate::error::Error;
use crate::geometry::Point;
use crate::io::{parse_csv_point, Format, PointReader};
use crate::queries::{approx_meb, coreset, farthest_neighbor, DiameterState};
use crate::sketch;
use crate::workload::{run_bench, BenchConfig, Distribution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gbc", version, about = "Guarded ball cover sketch for streaming extent queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistArg {
    Gaussian,
    Sphere,
    Clustered,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Gaussian => Distribution::Gaussian,
            DistArg::Sphere => Distribution::Sphere,
            DistArg::Clustered => Distribution::Clustered,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Baseline {
    Gonzalez,
}

#[derive(clap::Args, Debug)]
struct StreamArgs {
    #[arg(long)]
    epsilon: f64,
    /// Input file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a sketch from a point stream and save it as JSON.
    Build {
        #[command(flatten)]
        stream: StreamArgs,
        #[arg(long)]
        save: PathBuf,
    },
    /// Answer a query from a saved sketch.
    Query {
        #[command(subcommand)]
        kind: QueryKind,
    },
    /// Maintain the approximate farthest pair over a stream.
    Diameter {
        #[command(flatten)]
        stream: StreamArgs,
    },
    /// Approximate minimum enclosing ball of a saved sketch.
    Meb {
        #[arg(long)]
        sketch: PathBuf,
    },
    /// Print the coreset (guard set) of a saved sketch as CSV.
    Coreset {
        #[arg(long)]
        sketch: PathBuf,
    },
    /// Print sketch statistics.
    Stats {
        #[arg(long)]
        sketch: PathBuf,
    },
    /// Replay a stream, retaining every point, and check each sketch invariant.
    Audit {
        #[command(flatten)]
        stream: StreamArgs,
    },
    /// Generate and verify the lower-bound instance.
    Adversary {
        #[arg(long)]
        epsilon: f64,
        /// Dimension (defaults to the basis size k).
        #[arg(long)]
        dim: Option<usize>,
        /// Write the instance as CSV (queries as comment lines).
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Measure approximation ratios on a seeded synthetic stream (JSON output).
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum)]
        dist: DistArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        baseline: Option<Baseline>,
    },
}

#[derive(Subcommand, Debug)]
enum QueryKind {
    /// Approximate farthest neighbor of a point.
    Fn {
        #[arg(long)]
        sketch: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
        Err(Failure::Violation) => EXIT_VIOLATION,
    }
}

fn usage_epsilon(epsilon: f64) -> CmdResult {
    check_epsilon(epsilon).map_err(|e| Failure::Usage(e.to_string()))
}

fn open_input(path: &Path) -> std::result::Result<Box<dyn BufRead>, Failure> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(std::io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn read_stream(args: &StreamArgs) -> std::result::Result<PointReader<Box<dyn BufRead>>, Failure> {
    usage_epsilon(args.epsilon)?;
    Ok(PointReader::new(open_input(&args.input)?, args.format.into()))
}

fn load_sketch(path: &Path) -> std::result::Result<Cover, Failure> {
    Ok(sketch::load(File::open(path)?)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Build { stream, save } => {
            let mut points = read_stream(&stream)?;
            let p1 = points.next().ok_or(Error::EmptyInput)??;
            let mut cover = Cover::new(stream.epsilon, p1)?;
            for p in points {
                cover.insert(p?)?;
            }
            sketch::save(&cover, File::create(&save)?)?;
            writeln!(
                out,
                "points_seen {} live_balls {} stored_points {}",
                cover.stats().points_seen,
                cover.balls().len(),
                cover.guards().len()
            )?;
        }
        Command::Query {
            kind: QueryKind::Fn { sketch, point },
        } => {
            let cover = load_sketch(&sketch)?;
            let x = parse_csv_point(&point).map_err(|message| Error::Parse { line: 1, message })?;
            let far = farthest_neighbor(&cover, &x)?;
            writeln!(out, "{}", far.to_csv())?;
            writeln!(out, "distance {}", x.dist(far)?)?;
        }
        Command::Diameter { stream } => {
            let mut state = DiameterState::new(stream.epsilon).map_err(|e| Failure::Usage(e.to_string()))?;
            for p in read_stream(&stream)? {
                state.observe(p?)?;
            }
            let (a, b) = state.best_pair().ok_or(Error::EmptyInput)?;
            writeln!(out, "{}", a.to_csv())?;
            writeln!(out, "{}", b.to_csv())?;
            writeln!(out, "distance {}", state.best_dist())?;
        }
        Command::Meb { sketch } => {
            let ball = approx_meb(&load_sketch(&sketch)?)?;
            writeln!(out, "center {}", ball.center().to_csv())?;
            writeln!(out, "radius {}", ball.radius())?;
        }
        Command::Coreset { sketch } => {
            for p in coreset(&load_sketch(&sketch)?) {
                writeln!(out, "{}", p.to_csv())?;
            }
        }
        Command::Stats { sketch } => {
            let cover = load_sketch(&sketch)?;
            let s = cover.stats();
            writeln!(out, "epsilon {}", cover.epsilon())?;
            writeln!(out, "dim {}", cover.dim())?;
            writeln!(out, "points_seen {}", s.points_seen)?;
            writeln!(out, "points_discarded {}", s.points_discarded)?;
            writeln!(out, "balls_created {}", s.balls_created)?;
            writeln!(out, "balls_deleted {}", s.balls_deleted)?;
            writeln!(out, "live_balls {}", cover.balls().len())?;
            writeln!(out, "stored_points {}", cover.guards().len())?;
            writeln!(out, "r_max {}", s.r_max)?;
            writeln!(out, "max_ball_bound {}", max_ball_bound(cover.epsilon())?)?;
        }
        Command::Audit { stream } => {
            let points = read_stream(&stream)?.collect::<Result<Vec<Point>, _>>()?;
            let report = audit_stream(stream.epsilon, points)?;
            write!(out, "{report}")?;
            if !report.passed() {
                return Err(Failure::Violation);
            }
        }
        Command::Adversary { epsilon, dim, export } => {
            usage_epsilon(epsilon)?;
            let instance = gen_instance(epsilon, dim).map_err(|e| Failure::Usage(e.to_string()))?;
            let report = verify(&instance)?;
            writeln!(out, "epsilon={} k={} d={}", instance.epsilon, instance.k, instance.d)?;
            writeln!(out, "d_far={} (sqrt {})", instance.d_far, 4.0 + 2.0 * epsilon)?;
            writeln!(out, "d_near={} (sqrt {})", instance.d_near, 2.0 - 2.0 * epsilon)?;
            writeln!(out, "ratio={} target=sqrt(2)+epsilon={}", report.ratio, report.target)?;
            writeln!(out, "max_rel_error={:e}", report.max_rel_error)?;
            let mut pass = report.pass;
            if instance.k <= MAX_SIMULATED_K {
                let sim = simulate_missing(&instance)?;
                writeln!(
                    out,
                    "simulation: {} stored subsets, {} missing-answer queries, min ratio {}",
                    sim.subsets_checked, sim.queries_checked, sim.min_ratio
                )?;
                pass &= sim.pass;
            }
            if let Some(path) = export {
                instance.write_csv(File::create(&path)?)?;
                writeln!(out, "exported {}", path.display())?;
            }
            writeln!(out, "verdict {}", if pass { "PASS" } else { "FAIL" })?;
            if !pass {
                return Err(Failure::Violation);
            }
        }
        Command::Bench {
            n,
            d,
            epsilon,
            dist,
            seed,
            baseline,
        } => {
            let config = BenchConfig {
                n,
                d,
                epsilon,
                distribution: dist.into(),
                seed,
            };
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let entries = run_bench(&config, baseline.is_some())?;
            writeln!(out, "{}", serde_json::to_string_pretty(&entries).map_err(Error::from)?)?;
            if entries.iter().any(|e| !e.pass) {
                return Err(Failure::Violation);
            }
        }
    }
    Ok(())
}
