use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use qldpc::cayley::dump_cycles;
use qldpc::config::{build_code, Family};
use qldpc::decoder::{Algorithm, DecoderConfig};
use qldpc::qpc;
use qldpc::sim::{run_sweep, write_csv, SweepSpec};
use qldpc::stabilizer::{find_omega_cycle_error, logical_count, verify_orthogonality};
use qldpc::tanner::{four_cycle_graph, TannerGraph};
use qldpc::{Error, Result};

#[derive(Parser)]
#[command(name = "qldpc", version, about = "Quantum LDPC codes from finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a TOML config and write it as QPC.
    Build {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the check cycles (cayley family only).
        #[arg(long)]
        dump_cycles: Option<PathBuf>,
    },
    /// Check orthogonality, regularity, k, 4-cycle degrees and the ω-cycle witness.
    Validate {
        qpc: PathBuf,
        /// Skip the witness search.
        #[arg(long)]
        no_witness: bool,
    },
    /// Estimate the block error rate at one channel parameter.
    Simulate {
        qpc: PathBuf,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Estimate the block error rate over a list of channel parameters.
    Sweep {
        qpc: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "min_sum")]
    algo: Algorithm,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Min-sum normalization factor.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build(family: Family, config: PathBuf, out: PathBuf, cycles_out: Option<PathBuf>) -> Result<()> {
    let text = fs::read_to_string(&config)?;
    let start = Instant::now();
    let built = build_code(family, &text)?;
    eprintln!(
        "built {family} code: n={} m={} in {:.2?}",
        built.parity.n(),
        built.parity.m(),
        start.elapsed()
    );
    qpc::write_file(&built.parity, &out)?;
    if let Some(path) = cycles_out {
        let cycles = built.cycles.as_deref().ok_or_else(|| {
            Error::Config("--dump-cycles is only available for the cayley family".into())
        })?;
        fs::write(path, dump_cycles(cycles))?;
    }
    Ok(())
}

fn validate(path: PathBuf, no_witness: bool) -> Result<bool> {
    let m = qpc::read_file(&path)?;
    let violations = verify_orthogonality(&m);
    println!("n = {}", m.n());
    println!("checks = {}", m.m());
    println!("orthogonality violations = {}", violations.len());
    for (i, j) in violations.iter().take(10) {
        println!("  rows {i} and {j} anticommute");
    }
    let tanner = TannerGraph::from_parity_check(&m);
    match tanner.regular_degrees() {
        Some((a, b)) => println!("regular = ({a},{b})"),
        None => println!("regular = no"),
    }
    let lc = logical_count(&m);
    println!("rank = {}", lc.rank);
    println!("dependencies = {}", lc.dependencies);
    println!("k = {}", lc.k);
    let fc = four_cycle_graph(&tanner);
    println!(
        "4-cycle graph: min degree {}, max degree {}, edges {}",
        fc.min_degree,
        fc.max_degree,
        fc.edge_count()
    );
    if !no_witness {
        match find_omega_cycle_error(&m) {
            Some(w) => println!("omega-cycle witness weight = {}", w.weight),
            None => println!("omega-cycle witness = none"),
        }
    }
    Ok(violations.is_empty())
}

fn simulate(path: PathBuf, p_list: Vec<f64>, run: RunArgs) -> Result<()> {
    let m = qpc::read_file(&path)?;
    let spec = SweepSpec {
        p_list,
        trials: run.trials,
        decoder: DecoderConfig {
            algorithm: run.algo,
            max_iterations: run.max_iter,
            min_sum_scale: run.scale,
            ..DecoderConfig::default()
        },
        master_seed: run.seed,
    };
    let workers = run
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let rows = run_sweep(&m, &spec, workers)?;
    match run.out {
        Some(path) => write_csv(&rows, fs::File::create(path)?),
        None => write_csv(&rows, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            family,
            config,
            out,
            dump_cycles,
        } => build(family, config, out, dump_cycles).map(|_| true),
        Command::Validate { qpc, no_witness } => validate(qpc, no_witness),
        Command::Simulate { qpc, p, run } => simulate(qpc, vec![p], run).map(|_| true),
        Command::Sweep { qpc, p_list, run } => simulate(qpc, p_list, run).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
