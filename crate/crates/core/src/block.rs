//! One coherence block end to end.
//!
//! A block draws one channel and then transmits, in order, `T_t = T m^K`
//! pilots (class `t / T` at pilot slot `t`), `T_u` unlabeled slots and `T_d`
//! data slots with uniformly random classes. Every detector is evaluated on
//! the same realization, and bit errors are counted over the `T_u + T_d`
//! non-pilot slots.

use alloc::vec::Vec;

use crate::channel::{
    self, build_psk_constellation, db_to_linear, draw_rayleigh_channel, modulate, realify,
    transmit_and_quantize, BinaryObservation, Constellation, RealChannel,
};
use crate::detector::{class_to_messages, sl_estimate, LabeledSet, LogModel, ModelParams};
use crate::em::{run_em, ssl_detect_window, EmConfig, EmOutcome, ObservedData};
use crate::numeric::{num_classes, RngStream};
use crate::{Error, Result};

/// Lane of the block stream used for the channel draw.
const CHANNEL_LANE: u64 = 0;
/// Lane used for messages and noise.
const TRAFFIC_LANE: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Detector {
    /// Supervised: parameters from pilots only.
    Sl,
    /// Semi-supervised: parameters refined by EM over pilots and the
    /// unlabeled window.
    Ssl,
    /// Genie ML detection with parameters from the true channel.
    MldCsir,
}

impl Detector {
    pub const ALL: [Detector; 3] = [Detector::Sl, Detector::Ssl, Detector::MldCsir];

    pub fn name(self) -> &'static str {
        match self {
            Detector::Sl => "SL",
            Detector::Ssl => "SSL",
            Detector::MldCsir => "MLD-CSIR",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(name))
    }
}

impl core::fmt::Display for Detector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockConfig {
    pub users: usize,
    pub rx_antennas: usize,
    /// Constellation size, 2 or 4.
    pub m: usize,
    pub pilots_per_class: usize,
    /// `T_u`.
    pub unlabeled_slots: usize,
    /// `T_d`.
    pub data_slots: usize,
    pub noise_std: f64,
    pub em: EmConfig,
    pub class_cap: usize,
}

impl BlockConfig {
    pub fn classes(&self) -> usize {
        num_classes(self.m, self.users).unwrap_or(usize::MAX)
    }

    /// `T_t = T m^K`.
    pub fn pilot_slots(&self) -> usize {
        self.pilots_per_class * self.classes()
    }

    /// Bits per slot: `K log2 m`.
    pub fn bits_per_slot(&self) -> u64 {
        (self.users as u64) * u64::from(self.m.trailing_zeros())
    }

    pub fn validate(&self) -> Result<()> {
        if self.users == 0 || self.rx_antennas == 0 {
            return Err(Error::Config("users and rx_antennas must be positive"));
        }
        if self.m != 2 && self.m != 4 {
            return Err(Error::UnsupportedModulation(self.m));
        }
        if self.pilots_per_class == 0 {
            return Err(Error::Config("pilots per class must be positive"));
        }
        if !(self.noise_std > 0.0) || !self.noise_std.is_finite() {
            return Err(Error::NonPositiveStd(self.noise_std));
        }
        let classes = num_classes(self.m, self.users)?;
        if classes > self.class_cap {
            return Err(Error::TooManyClasses {
                classes,
                cap: self.class_cap,
            });
        }
        self.em.validate()
    }
}

/// Error counts of one detector on one block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DetectorTally {
    pub bit_errors: u64,
    pub total_bits: u64,
    /// EM iterations, for the semi-supervised detector.
    pub em_iterations: Option<usize>,
}

/// Mismatched bits between two classes, each user digit mapped to its
/// natural `log2 m`-bit binary label.
pub fn class_bit_errors(sent: usize, detected: usize, m: usize, users: usize) -> u32 {
    let (mut a, mut b) = (sent, detected);
    let mut errors = 0;
    for _ in 0..users {
        errors += ((a % m) ^ (b % m)).count_ones();
        a /= m;
        b /= m;
    }
    errors
}

/// Everything transmitted and received in one coherence block.
#[derive(Debug, Clone)]
pub struct BlockRealization {
    config: BlockConfig,
    constellation: Constellation,
    channel: RealChannel,
    data: ObservedData,
    window_classes: Vec<usize>,
    payload: Vec<BinaryObservation>,
    payload_classes: Vec<usize>,
}

impl BlockRealization {
    /// Draw block `block_index` at `snr_db`. The channel depends only on
    /// `(seed, block_index)`; messages and noise come from a separate lane of
    /// the same stream.
    pub fn generate(config: &BlockConfig, snr_db: f64, seed: u64, block_index: u64) -> Result<Self> {
        config.validate()?;
        if !snr_db.is_finite() {
            return Err(Error::NonFinite);
        }
        let stream = RngStream::new(seed, block_index);
        let mut channel_rng = stream.fork(CHANNEL_LANE);
        let mut traffic = stream.fork(TRAFFIC_LANE);

        let constellation = build_psk_constellation(config.m, db_to_linear(snr_db))?;
        let channel = realify(&draw_rayleigh_channel(
            config.users,
            config.rx_antennas,
            &mut channel_rng,
        )?);
        let classes = config.classes();
        let symbols = (0..classes)
            .map(|j| modulate(&class_to_messages(j, config.m, config.users)?, &constellation))
            .collect::<Result<Vec<_>>>()?;

        let mut slot = 0;
        let mut send = |class: usize, traffic: &mut RngStream| -> Result<BinaryObservation> {
            let obs = transmit_and_quantize(&channel, &symbols[class], config.noise_std, traffic, slot)?;
            slot += 1;
            Ok(obs)
        };

        let t = config.pilots_per_class;
        let pilots = (0..classes * t)
            .map(|p| send(p / t, &mut traffic))
            .collect::<Result<Vec<_>>>()?;
        let mut random_slots = |count: usize| -> Result<(Vec<usize>, Vec<BinaryObservation>)> {
            let mut labels = Vec::with_capacity(count);
            let mut observations = Vec::with_capacity(count);
            for _ in 0..count {
                let j = traffic.uniform_index(classes);
                observations.push(send(j, &mut traffic)?);
                labels.push(j);
            }
            Ok((labels, observations))
        };
        let (window_classes, window) = random_slots(config.unlabeled_slots)?;
        let (payload_classes, payload) = random_slots(config.data_slots)?;

        let labeled = LabeledSet::new(pilots, t, classes)?;
        Ok(Self {
            config: *config,
            constellation,
            channel,
            data: ObservedData::new(labeled, window)?,
            window_classes,
            payload,
            payload_classes,
        })
    }

    pub fn config(&self) -> &BlockConfig {
        &self.config
    }

    pub fn channel(&self) -> &RealChannel {
        &self.channel
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    /// Pilots and the unlabeled window.
    pub fn observed(&self) -> &ObservedData {
        &self.data
    }

    /// True classes sent in the unlabeled window.
    pub fn window_classes(&self) -> &[usize] {
        &self.window_classes
    }

    /// Data-phase observations after the unlabeled window.
    pub fn payload(&self) -> &[BinaryObservation] {
        &self.payload
    }

    pub fn payload_classes(&self) -> &[usize] {
        &self.payload_classes
    }

    pub fn true_params(&self) -> Result<ModelParams> {
        channel::true_code_and_epsilons(
            &self.channel,
            &self.constellation,
            self.config.users,
            self.config.noise_std,
            self.config.class_cap,
        )
    }

    pub fn sl_params(&self) -> Result<ModelParams> {
        sl_estimate(self.data.labeled(), self.config.em.eps_min, self.config.m, self.config.users)
    }

    pub fn ssl_outcome(&self) -> Result<EmOutcome> {
        run_em(&self.data, self.config.m, self.config.users, &self.config.em)
    }

    fn tally(&self, mut detect: impl FnMut(usize, &BinaryObservation) -> Result<usize>) -> Result<DetectorTally> {
        let (m, users) = (self.config.m, self.config.users);
        let offset = self.data.labeled().len();
        let sent = self.window_classes.iter().chain(&self.payload_classes);
        let received = self.data.unlabeled().iter().chain(&self.payload);
        let mut tally = DetectorTally::default();
        for (i, (&class, obs)) in sent.zip(received).enumerate() {
            let detected = detect(offset + i, obs)?;
            tally.bit_errors += u64::from(class_bit_errors(class, detected, m, users));
            tally.total_bits += self.config.bits_per_slot();
        }
        Ok(tally)
    }

    /// Run one detector over every non-pilot slot.
    pub fn evaluate(&self, detector: Detector) -> Result<DetectorTally> {
        match detector {
            Detector::Sl => {
                let params = self.sl_params()?;
                let model = LogModel::new(&params);
                self.tally(|_, obs| Ok(model.detect(&obs.bits)))
            }
            Detector::MldCsir => {
                let params = self.true_params()?;
                let model = LogModel::new(&params);
                self.tally(|_, obs| Ok(model.detect(&obs.bits)))
            }
            Detector::Ssl => {
                let outcome = self.ssl_outcome()?;
                let model = LogModel::new(&outcome.params);
                let window_end = self.data.len();
                let mut tally = self.tally(|slot, obs| {
                    if slot < window_end {
                        ssl_detect_window(&outcome.responsibilities, slot)
                    } else {
                        Ok(model.detect(&obs.bits))
                    }
                })?;
                tally.em_iterations = Some(outcome.trace.iterations_run);
                Ok(tally)
            }
        }
    }
}

/// Generate block `block_index` and evaluate each listed detector on it.
pub fn run_coherence_block(
    config: &BlockConfig,
    snr_db: f64,
    seed: u64,
    block_index: u64,
    detectors: &[Detector],
) -> Result<Vec<(Detector, DetectorTally)>> {
    let block = BlockRealization::generate(config, snr_db, seed, block_index)?;
    detectors
        .iter()
        .map(|&d| Ok((d, block.evaluate(d)?)))
        .collect()
}
