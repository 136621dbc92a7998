//! Per-component comparison of estimated and true model parameters for one
//! coherence block.

use std::io::Write;

use onebit_mimo::block::BlockRealization;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::SimError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub class: usize,
    pub component: usize,
    pub true_c: i8,
    pub true_eps: f64,
    pub sl_c: i8,
    pub sl_eps: f64,
    pub ssl_c: i8,
    pub ssl_eps: f64,
}

/// True, supervised and EM-refined parameters of block `block_index`.
pub fn estimate_rows(
    config: &ExperimentConfig,
    snr_db: f64,
    pilots_per_class: usize,
    block_index: u64,
) -> Result<Vec<EstimateRow>, SimError> {
    let block_cfg = config.block_config(pilots_per_class)?;
    let block = BlockRealization::generate(&block_cfg, snr_db, config.seed, block_index)?;
    let truth = block.true_params()?;
    let sl = block.sl_params()?;
    let ssl = block.ssl_outcome()?.params;
    let n = truth.components();
    Ok((0..truth.classes())
        .flat_map(|j| (0..n).map(move |c| (j, c)))
        .map(|(j, c)| EstimateRow {
            class: j,
            component: c,
            true_c: truth.codeword(j)[c],
            true_eps: truth.epsilon(j, c),
            sl_c: sl.codeword(j)[c],
            sl_eps: sl.epsilon(j, c),
            ssl_c: ssl.codeword(j)[c],
            ssl_eps: ssl.epsilon(j, c),
        })
        .collect())
}

pub fn write_estimate_csv<W: Write>(rows: &[EstimateRow], out: W) -> Result<(), SimError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if rows.is_empty() {
        w.write_record(["class", "component", "true_c", "true_eps", "sl_c", "sl_eps", "ssl_c", "ssl_eps"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
