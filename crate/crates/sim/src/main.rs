use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use onebit_mimo::block::Detector;
use onebit_mimo_sim::config::{ExperimentConfig, NoiseSetting};
use onebit_mimo_sim::estimate::{estimate_rows, write_estimate_csv};
use onebit_mimo_sim::experiment::run_experiment;
use onebit_mimo_sim::results::{write_csv, write_results, Format};
use onebit_mimo_sim::SimError;

#[derive(Parser)]
#[command(name = "onebit-sim", version, about = "BER simulation of SL, SSL and genie ML detectors with one-bit ADCs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep SNR and pilot length and write aggregated BER records.
    Simulate(SimulateArgs),
    /// Dump estimated and true (codeword, crossover) pairs for one block as CSV.
    Estimate(EstimateArgs),
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 2)]
    users: usize,
    #[arg(long, default_value_t = 4)]
    rx_antennas: usize,
    /// Constellation size: 2 (BPSK) or 4 (QPSK).
    #[arg(long, default_value_t = 4)]
    mod_order: usize,
    /// Unlabeled slots as a multiple of the pilot slots.
    #[arg(long, default_value_t = 10.0)]
    tu_factor: f64,
    #[arg(long, default_value_t = 512)]
    data_slots: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// EM stopping threshold on the log-likelihood improvement, in nats.
    #[arg(long, default_value_t = 1e-4)]
    em_tol: f64,
    #[arg(long, default_value_t = 50)]
    em_max_iters: usize,
    /// Floor for estimated crossover probabilities.
    #[arg(long, default_value_t = 1e-4)]
    eps_min: f64,
    /// complex-unit (CN(0,1) noise) or literal-eq8 (unit-variance real components).
    #[arg(long, default_value = "complex-unit")]
    noise_convention: String,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// SNR points in dB.
    #[arg(long, value_delimiter = ',', default_value = "0,2.5,5,7.5,10,12.5,15")]
    snr_db: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    pilots_per_class: Vec<usize>,
    /// Coherence blocks per (SNR, pilot length) point.
    #[arg(long, default_value_t = 1000)]
    blocks: usize,
    /// Any of SL, SSL, MLD-CSIR.
    #[arg(long, value_delimiter = ',', default_value = "SL,SSL,MLD-CSIR")]
    detectors: Vec<String>,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 5.0)]
    snr_db: f64,
    #[arg(long, default_value_t = 1)]
    pilots_per_class: usize,
    /// Coherence block index.
    #[arg(long, default_value_t = 0)]
    block: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn base_config(model: &ModelArgs) -> Result<ExperimentConfig, SimError> {
    Ok(ExperimentConfig {
        users: model.users,
        rx_antennas: model.rx_antennas,
        mod_order: model.mod_order,
        tu_factor: model.tu_factor,
        data_slots: model.data_slots,
        seed: model.seed,
        em_tol: model.em_tol,
        em_max_iters: model.em_max_iters,
        eps_min: model.eps_min,
        noise_convention: NoiseSetting::parse(&model.noise_convention)?,
        ..ExperimentConfig::default()
    })
}

fn simulate(args: SimulateArgs) -> Result<(), SimError> {
    let detectors = args
        .detectors
        .iter()
        .map(|name| {
            Detector::from_name(name.trim())
                .ok_or_else(|| SimError::Config(format!("unknown detector '{name}' (expected SL, SSL or MLD-CSIR)")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let config = ExperimentConfig {
        snr_db: args.snr_db,
        pilots_per_class: args.pilots_per_class,
        blocks: args.blocks,
        detectors,
        ..base_config(&args.model)?
    };
    let format = Format::parse(&args.format)?;
    config.validate()?;
    for w in config.warnings() {
        eprintln!("warning: {w}");
    }
    let records = run_experiment(&config, args.workers)?;
    match args.out {
        Some(path) => write_results(&records, &config, &path, format),
        None => match format {
            Format::Csv => write_csv(&records, &config, io::stdout().lock()),
            Format::Json => {
                let mut out = io::stdout().lock();
                serde_json::to_writer_pretty(&mut out, &serde_json::json!({ "config": config, "records": records }))?;
                writeln!(out)?;
                Ok(())
            }
        },
    }
}

fn estimate(args: EstimateArgs) -> Result<(), SimError> {
    let config = ExperimentConfig {
        snr_db: vec![args.snr_db],
        pilots_per_class: vec![args.pilots_per_class],
        ..base_config(&args.model)?
    };
    config.validate()?;
    let rows = estimate_rows(&config, args.snr_db, args.pilots_per_class, args.block)?;
    match args.out {
        Some(path) => {
            let file = File::create(&path).map_err(|e| SimError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            write_estimate_csv(&rows, BufWriter::new(file)).map_err(|e| e.with_path(&path))
        }
        None => write_estimate_csv(&rows, io::stdout().lock()),
    }
}

fn run(cli: Cli) -> Result<(), SimError> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Estimate(args) => estimate(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
