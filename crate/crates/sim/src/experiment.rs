//! Parallel BER sweep over SNR and pilot length.
//!
//! Work is split per coherence block. Block `b` always uses stream `b` of the
//! master seed, and all counters are integers, so the records do not depend on
//! the number of workers or on scheduling.

use std::time::Instant;

use onebit_mimo::block::{BlockRealization, Detector, DetectorTally};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{detector_serde, ExperimentConfig};
use crate::SimError;

/// Aggregated bit errors of one detector at one `(SNR, T)` point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerRecord {
    pub snr_db: f64,
    #[serde(with = "detector_serde")]
    pub detector: Detector,
    #[serde(rename = "T")]
    pub pilots_per_class: usize,
    pub blocks: usize,
    pub total_bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub mean_em_iterations: Option<f64>,
    /// Time spent inside this detector, summed over blocks.
    pub wall_seconds: f64,
}

impl BerRecord {
    /// One binomial standard deviation of the BER estimate.
    pub fn std_error(&self) -> f64 {
        if self.total_bits == 0 {
            return 0.0;
        }
        (self.ber * (1.0 - self.ber) / self.total_bits as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    bit_errors: u64,
    total_bits: u64,
    em_iterations: u64,
    has_em: bool,
    seconds: f64,
}

impl Accumulator {
    fn add(&mut self, tally: &DetectorTally, seconds: f64) {
        self.bit_errors += tally.bit_errors;
        self.total_bits += tally.total_bits;
        if let Some(it) = tally.em_iterations {
            self.em_iterations += it as u64;
            self.has_em = true;
        }
        self.seconds += seconds;
    }
}

/// Run every detector of `config` on one block and time each of them.
pub fn run_block(
    config: &ExperimentConfig,
    snr_db: f64,
    pilots_per_class: usize,
    block_index: u64,
) -> Result<Vec<(Detector, DetectorTally, f64)>, SimError> {
    let block_cfg = config.block_config(pilots_per_class)?;
    let block = BlockRealization::generate(&block_cfg, snr_db, config.seed, block_index)?;
    config
        .detectors
        .iter()
        .map(|&d| {
            let start = Instant::now();
            let tally = block.evaluate(d)?;
            Ok((d, tally, start.elapsed().as_secs_f64()))
        })
        .collect()
}

/// Run the full sweep on `workers` threads (0 picks rayon's default).
///
/// Records are ordered by SNR, then pilot length, then detector, following
/// the order given in the configuration.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<Vec<BerRecord>, SimError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::Config(format!("cannot start worker pool: {e}")))?;

    let cells: Vec<(f64, usize)> = config
        .snr_db
        .iter()
        .flat_map(|&s| config.pilots_per_class.iter().map(move |&t| (s, t)))
        .collect();
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|c| (0..config.blocks as u64).map(move |b| (c, b)))
        .collect();

    let outcomes: Vec<Vec<(Detector, DetectorTally, f64)>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, b)| run_block(config, cells[c].0, cells[c].1, b))
            .collect::<Result<_, _>>()
    })?;

    let per_cell = config.detectors.len();
    let mut acc = vec![Accumulator::default(); cells.len() * per_cell];
    for (&(c, _), outcome) in jobs.iter().zip(&outcomes) {
        for (i, (_, tally, secs)) in outcome.iter().enumerate() {
            acc[c * per_cell + i].add(tally, *secs);
        }
    }

    let records = cells
        .iter()
        .enumerate()
        .flat_map(|(c, &(snr_db, t))| {
            let acc = &acc;
            config.detectors.iter().enumerate().map(move |(i, &detector)| {
                let a = acc[c * per_cell + i];
                BerRecord {
                    snr_db,
                    detector,
                    pilots_per_class: t,
                    blocks: config.blocks,
                    total_bits: a.total_bits,
                    bit_errors: a.bit_errors,
                    ber: if a.total_bits == 0 {
                        0.0
                    } else {
                        a.bit_errors as f64 / a.total_bits as f64
                    },
                    mean_em_iterations: a
                        .has_em
                        .then(|| a.em_iterations as f64 / config.blocks as f64),
                    wall_seconds: a.seconds,
                }
            })
        })
        .collect();
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> ExperimentConfig {
        ExperimentConfig {
            snr_db: vec![0.0, 6.0],
            pilots_per_class: vec![1],
            data_slots: 32,
            blocks: 6,
            tu_factor: 2.0,
            ..Default::default()
        }
    }

    #[test]
    fn one_block_matches_block_aggregation() {
        let cfg = ExperimentConfig { blocks: 1, ..quick() };
        let records = run_experiment(&cfg, 2).unwrap();
        assert_eq!(records.len(), 2 * 3);
        let direct = run_block(&cfg, 6.0, 1, 0).unwrap();
        for (d, tally, _) in direct {
            let r = records
                .iter()
                .find(|r| r.snr_db == 6.0 && r.detector == d)
                .unwrap();
            assert_eq!(r.bit_errors, tally.bit_errors);
            assert_eq!(r.total_bits, tally.total_bits);
            assert_eq!(r.mean_em_iterations, tally.em_iterations.map(|i| i as f64));
        }
    }

    #[test]
    fn records_are_consistent() {
        let records = run_experiment(&quick(), 0).unwrap();
        for r in &records {
            assert_eq!(r.total_bits, 6 * (32 + 32) * 4);
            assert_eq!(r.ber, r.bit_errors as f64 / r.total_bits as f64);
            assert!((0.0..=1.0).contains(&r.ber));
            assert_eq!(r.mean_em_iterations.is_some(), r.detector == Detector::Ssl);
        }
        let order: Vec<_> = records.iter().map(|r| (r.snr_db, r.detector)).collect();
        assert_eq!(order[0], (0.0, Detector::Sl));
        assert_eq!(order[5], (6.0, Detector::MldCsir));
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let strip = |v: Vec<BerRecord>| -> Vec<(u64, u64, Option<f64>)> {
            v.into_iter()
                .map(|r| (r.bit_errors, r.total_bits, r.mean_em_iterations))
                .collect()
        };
        let one = strip(run_experiment(&quick(), 1).unwrap());
        let four = strip(run_experiment(&quick(), 4).unwrap());
        assert_eq!(one, four);
    }

    #[test]
    fn invalid_config_is_reported() {
        let cfg = ExperimentConfig { mod_order: 3, ..quick() };
        assert!(matches!(run_experiment(&cfg, 1), Err(SimError::Config(_))));
    }
}
