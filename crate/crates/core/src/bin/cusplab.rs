use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cusplab::harness::{run, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(name = "cusplab", version, about = "Cusp excursions, digit sets and their dimensions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` settings file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for the CSV (and SVG) output; stdout if absent.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    horizon: Option<usize>,
    /// Bisection tolerance.
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
    /// Collocation nodes.
    #[arg(long, global = true, value_name = "K")]
    nodes: Option<usize>,
    /// Also write a figure (needs --out).
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Digits and convergents of a number.
    Cf {
        /// `p/q`, `sqrt:D±r/s`, a digit list like `1,1,(100,1)`, or a decimal.
        x: Option<String>,
    },
    /// Cusp excursions of the ray from i towards a number in (0, 1).
    Excursions {
        /// Same forms as for `cf`; needs `horizon + 2` exact digits
        x: Option<String>,
        /// Good-set depth threshold, `d_n > log τ`
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Dimension of the digit sets {a_n ≥ N} for several N.
    DimFn {
        /// Lower digit bounds, comma-separated.
        #[arg(value_delimiter = ',')]
        n: Vec<u64>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Digits summed directly past N before the analytic tail.
        #[arg(long)]
        truncation: Option<u64>,
    },
    /// Growth exponents of a digit sequence.
    DimSeq {
        /// `loggeo:α[:b]`, `geo:c`, `poly:p`, `lacunary:ω` or `list:s1,s2,…`.
        generator: Option<String>,
        #[arg(long)]
        inflation: Option<f64>,
    },
    /// Strict and comparison multifractal spectra.
    Spectrum {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Ball measures of a digit product measure at sampled points.
    Frostman {
        /// `good:τ:κ`, `reciprocal:lo:hi`, `single:a` or `list:lo:w1,w2,…`.
        weights: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        radii: Option<usize>,
    },
}

fn push<T: ToString>(o: &mut Vec<(&'static str, String)>, key: &'static str, v: Option<T>) {
    if let Some(v) = v {
        o.push((key, v.to_string()));
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("CUSPLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(CliError::Usage(format!("CUSPLAB_THREADS = {raw:?} is not a positive integer"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn main_inner(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let c = cli.common;
    let mut o = Vec::new();
    push(&mut o, "seed", c.seed);
    push(&mut o, "horizon", c.horizon);
    push(&mut o, "tol", c.tol);
    push(&mut o, "nodes", c.nodes);
    let command = match cli.command {
        Cmd::Cf { x } => {
            push(&mut o, "x", x);
            Command::Cf
        }
        Cmd::Excursions { x, tau, kappa } => {
            push(&mut o, "x", x);
            push(&mut o, "tau", tau);
            push(&mut o, "kappa", kappa);
            Command::Excursions
        }
        Cmd::DimFn { n, kappa, truncation } => {
            if !n.is_empty() {
                let list: Vec<String> = n.iter().map(u64::to_string).collect();
                o.push(("n_list", list.join(",")));
            }
            push(&mut o, "kappa", kappa);
            push(&mut o, "truncation", truncation);
            Command::DimFn
        }
        Cmd::DimSeq { generator, inflation } => {
            push(&mut o, "generator", generator);
            push(&mut o, "inflation", inflation);
            Command::DimSeq
        }
        Cmd::Spectrum { delta, grid } => {
            push(&mut o, "delta", delta);
            push(&mut o, "grid", grid);
            Command::Spectrum
        }
        Cmd::Frostman { weights, samples, radii } => {
            push(&mut o, "weights", weights);
            push(&mut o, "samples", samples);
            push(&mut o, "radii", radii);
            Command::Frostman
        }
    };
    if c.svg && c.out.is_none() {
        return Err(CliError::Usage("--svg needs --out".into()));
    }
    let cfg = RunConfig::new(c.config.as_deref(), &o, c.out.clone(), c.svg)?;
    let output = run(command, &cfg)?;
    match &c.out {
        None => print!("{}", output.csv),
        Some(dir) => {
            let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
            std::fs::create_dir_all(dir).map_err(io)?;
            std::fs::write(dir.join(format!("{}.csv", command.name())), &output.csv).map_err(io)?;
            if let Some(svg) = &output.svg {
                std::fs::write(dir.join(format!("{}.svg", command.name())), svg).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cusplab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
