use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use relbat::bench::{bench_all, render_csv, render_table, BenchConfig};
use relbat::compare::{compare, render_compare};
use relbat::render::{compute_record, compute_table, trace_csv};
use relbat::Generator;
use relbat_core::{
    bat_reliability, parse_network, reduce_arcs, total_probability_check, write_network,
    BatOptions, BinaryStateNetwork, Error,
};

const EXIT_INVALID: u8 = 1;
const EXIT_DISAGREE: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

/// Exact two-terminal reliability of directed binary-state networks.
///
/// Exit status: 0 success, 1 invalid input or refused work, 2 usage error,
/// 3 numerical disagreement, 4 time limit exceeded.
#[derive(Parser)]
#[command(name = "relbat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reliability of a network file ("-" for stdin).
    Compute {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Print one CSV line per enumerated vector before the report.
        #[arg(long)]
        trace: bool,
        /// Give up after this many seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Refuse networks that would enumerate more than 2^max_arcs vectors.
        #[arg(long, default_value_t = 30)]
        max_arcs: usize,
    },
    /// Run the engine and every applicable oracle and compare the results.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a generated network (fig1, fig2, bridge4, chain, grid, complete, random).
    Gen {
        kind: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        len: Option<String>,
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One row per network: structure, connected-vector count, reliability, timings.
    Bench {
        files: Vec<PathBuf>,
        /// Generator spec such as `grid:rows=3,cols=3` (repeatable).
        #[arg(long = "gen", value_name = "SPEC")]
        generators: Vec<String>,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Per-network time limit in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
    },
    /// Check that the probabilities of all state vectors sum to one.
    Check { file: PathBuf },
}

#[derive(Args)]
struct EngineArgs {
    /// Enumerate the network as given, without dropping useless arcs.
    #[arg(long)]
    no_reduction: bool,
    /// Test every vector instead of classifying by popcount bounds.
    #[arg(long)]
    no_bounds: bool,
    /// Number of sub-ranges scanned concurrently (a power of two).
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Comma-separated output.
    #[arg(long)]
    machine: bool,
    /// Omit timing fields.
    #[arg(long)]
    no_timing: bool,
}

impl EngineArgs {
    fn options(&self) -> BatOptions {
        BatOptions {
            apply_reduction: !self.no_reduction,
            use_bounds: !self.no_bounds,
            emit_trace: false,
            parallel_ranges: self.parallel,
            deadline: None,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e == Error::Timeout {
            EXIT_TIMEOUT
        } else {
            EXIT_INVALID
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<BinaryStateNetwork, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::invalid(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?
    };
    parse_network(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn secs(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|_| Failure::invalid(format!("bad timeout {s}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            file,
            engine,
            output,
            trace,
            timeout,
            max_arcs,
        } => {
            let net = load(&file)?;
            let mut opts = engine.options();
            opts.emit_trace = trace;
            let m = if opts.apply_reduction {
                reduce_arcs(&net).0.arc_count()
            } else {
                net.arc_count()
            };
            if m > max_arcs {
                let vectors = 2f64.powi(m as i32);
                return Err(Failure::invalid(format!(
                    "refusing to enumerate 2^{m} = {vectors:.3e} state vectors \
                     (about {:.1e} s at 1e8 vectors/s); raise --max-arcs to proceed",
                    vectors / 1e8
                )));
            }
            if let Some(t) = timeout {
                opts.deadline = Some(Instant::now() + secs(t)?);
            }
            let report = bat_reliability(&net, &opts)?;
            let name = file.display().to_string();
            let timing = !output.no_timing;
            if trace {
                print!("{}", trace_csv(&report.trace));
            }
            if output.machine {
                println!("{}", compute_record(&name, &net, &report, timing));
            } else {
                print!("{}", compute_table(&name, &net, &report, timing));
            }
            Ok(())
        }
        Command::Compare {
            file,
            engine,
            output,
        } => {
            let net = load(&file)?;
            let c = compare(&net, &engine.options())?;
            print!("{}", render_compare(&c, !output.no_timing, output.machine));
            if c.agrees() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_DISAGREE,
                    message: format!("methods disagree by {:e}", c.max_diff()),
                })
            }
        }
        Command::Gen {
            kind,
            p,
            len,
            rows,
            cols,
            n,
            m,
            seed,
            output,
        } => {
            let named = [
                ("p", p),
                ("len", len),
                ("rows", rows),
                ("cols", cols),
                ("n", n),
                ("m", m),
                ("seed", seed),
            ];
            let params: Vec<(&str, &str)> = named
                .iter()
                .filter_map(|(k, v)| v.as_deref().map(|v| (*k, v)))
                .collect();
            let gen = Generator::from_params(&kind, &params)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let text = write_network(&gen.generate());
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Bench {
            files,
            generators,
            engine,
            output,
            timeout,
        } => {
            let mut inputs = Vec::with_capacity(files.len() + generators.len());
            for f in &files {
                inputs.push((f.display().to_string(), load(f)?));
            }
            for spec in &generators {
                let gen: Generator = spec
                    .parse()
                    .map_err(|e: relbat::GenError| Failure::invalid(format!("{spec}: {e}")))?;
                inputs.push((gen.label(), gen.generate()));
            }
            let timing = !output.no_timing;
            let cfg = BenchConfig {
                timeout: secs(timeout)?,
                apply_reduction: !engine.no_reduction,
                use_bounds: !engine.no_bounds,
                parallel_ranges: engine.parallel,
                concurrent: !timing,
            };
            let rows = bench_all(&inputs, &cfg);
            if output.machine {
                print!("{}", render_csv(&rows, timing));
            } else {
                print!("{}", render_table(&rows, timing));
            }
            Ok(())
        }
        Command::Check { file } => {
            let net = load(&file)?;
            let total = total_probability_check(&net)?;
            let off = (total - 1.0).abs();
            println!("total {total:.15}  |1 - total| = {off:e}");
            if off <= 1e-12 {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_DISAGREE,
                    message: "probabilities do not sum to 1".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("relbat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
