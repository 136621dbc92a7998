use onebit_mimo::block::{BlockConfig, Detector};
use onebit_mimo::channel::{NoiseConvention, DEFAULT_CLASS_CAP};
use onebit_mimo::em::EmConfig;
use serde::{Deserialize, Serialize};

use crate::SimError;

/// Noise normalization, as named on the command line and in result files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseSetting {
    /// CN(0, 1) complex noise, per-component standard deviation `1/sqrt 2`.
    #[default]
    ComplexUnit,
    /// Unit-variance real components.
    #[serde(alias = "literal-eq8")]
    UnitReal,
}

impl NoiseSetting {
    pub fn parse(s: &str) -> Result<Self, SimError> {
        match s {
            "complex-unit" => Ok(Self::ComplexUnit),
            "unit-real" | "literal-eq8" => Ok(Self::UnitReal),
            other => Err(SimError::Config(format!(
                "unknown noise convention '{other}' (expected complex-unit or literal-eq8)"
            ))),
        }
    }

    pub fn convention(self) -> NoiseConvention {
        match self {
            Self::ComplexUnit => NoiseConvention::ComplexUnit,
            Self::UnitReal => NoiseConvention::UnitReal,
        }
    }
}

pub(crate) mod detector_serde {
    use onebit_mimo::block::Detector;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Detector, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(d.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Detector, D::Error> {
        let name = String::deserialize(d)?;
        Detector::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown detector '{name}'")))
    }

    pub mod list {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(ds: &[Detector], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(ds.len()))?;
            for d in ds {
                seq.serialize_element(d.name())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Detector>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|n| Detector::from_name(n).ok_or_else(|| D::Error::custom(format!("unknown detector '{n}'"))))
                .collect()
        }
    }
}

/// Full description of a BER sweep. Together with `seed` it determines every
/// output record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub users: usize,
    pub rx_antennas: usize,
    pub mod_order: usize,
    pub snr_db: Vec<f64>,
    pub pilots_per_class: Vec<usize>,
    /// `T_u = round(tu_factor * T_t)`.
    pub tu_factor: f64,
    pub data_slots: usize,
    pub blocks: usize,
    pub seed: u64,
    #[serde(with = "detector_serde::list")]
    pub detectors: Vec<Detector>,
    pub em_tol: f64,
    pub em_max_iters: usize,
    pub eps_min: f64,
    pub noise_convention: NoiseSetting,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let em = EmConfig::default();
        Self {
            users: 2,
            rx_antennas: 4,
            mod_order: 4,
            snr_db: (0..=6).map(|i| 2.5 * i as f64).collect(),
            pilots_per_class: vec![1, 2, 4],
            tu_factor: 10.0,
            data_slots: 512,
            blocks: 1000,
            seed: 0x5eed,
            detectors: Detector::ALL.to_vec(),
            em_tol: em.stop_tol,
            em_max_iters: em.max_iters,
            eps_min: em.eps_min,
            noise_convention: NoiseSetting::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn em(&self) -> EmConfig {
        EmConfig {
            stop_tol: self.em_tol,
            max_iters: self.em_max_iters,
            eps_min: self.eps_min,
        }
    }

    pub fn classes(&self) -> Result<usize, SimError> {
        Ok(onebit_mimo::numeric::num_classes(self.mod_order, self.users)?)
    }

    /// Per-block configuration for pilot length `pilots_per_class`.
    pub fn block_config(&self, pilots_per_class: usize) -> Result<BlockConfig, SimError> {
        let pilot_slots = pilots_per_class * self.classes()?;
        let cfg = BlockConfig {
            users: self.users,
            rx_antennas: self.rx_antennas,
            m: self.mod_order,
            pilots_per_class,
            unlabeled_slots: (self.tu_factor * pilot_slots as f64).round() as usize,
            data_slots: self.data_slots,
            noise_std: self.noise_convention.convention().noise_std(),
            em: self.em(),
            class_cap: DEFAULT_CLASS_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |msg: &str| Err(SimError::Config(msg.to_string()));
        if self.users == 0 || self.rx_antennas == 0 {
            return fail("--users and --rx-antennas must be positive");
        }
        if self.mod_order != 2 && self.mod_order != 4 {
            return fail("--mod-order must be 2 or 4");
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return fail("--snr-db must be a non-empty list of finite values");
        }
        if self.pilots_per_class.is_empty() || self.pilots_per_class.contains(&0) {
            return fail("--pilots-per-class must be a non-empty list of positive counts");
        }
        if !(self.tu_factor >= 0.0) || !self.tu_factor.is_finite() {
            return fail("--tu-factor must be non-negative");
        }
        if self.blocks == 0 {
            return fail("--blocks must be positive");
        }
        if self.detectors.is_empty() {
            return fail("--detectors must name at least one detector");
        }
        for &t in &self.pilots_per_class {
            self.block_config(t)?;
        }
        Ok(())
    }

    /// Non-fatal remarks about the configuration.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rx_antennas <= self.users {
            out.push(format!(
                "rx antennas ({}) should exceed users ({})",
                self.rx_antennas, self.users
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let b = cfg.block_config(1).unwrap();
        assert_eq!(b.pilot_slots(), 16);
        assert_eq!(b.unlabeled_slots, 160);
        assert!((b.noise_std - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(cfg.warnings().is_empty());
    }

    #[test]
    fn rejects_bad_values() {
        let base = ExperimentConfig::default();
        for bad in [
            ExperimentConfig { mod_order: 8, ..base.clone() },
            ExperimentConfig { snr_db: vec![], ..base.clone() },
            ExperimentConfig { pilots_per_class: vec![1, 0], ..base.clone() },
            ExperimentConfig { blocks: 0, ..base.clone() },
            ExperimentConfig { eps_min: 0.7, ..base.clone() },
            ExperimentConfig { em_max_iters: 0, ..base.clone() },
            ExperimentConfig { users: 7, ..base.clone() },
            ExperimentConfig { detectors: vec![], ..base.clone() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn noise_settings() {
        assert_eq!(NoiseSetting::parse("literal-eq8").unwrap(), NoiseSetting::UnitReal);
        assert_eq!(NoiseSetting::parse("complex-unit").unwrap(), NoiseSetting::ComplexUnit);
        assert!(NoiseSetting::parse("other").is_err());
        assert_eq!(NoiseSetting::UnitReal.convention().noise_std(), 1.0);
    }

    #[test]
    fn json_round_trip() {
        let cfg = ExperimentConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"MLD-CSIR\""));
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn warns_on_small_array() {
        let cfg = ExperimentConfig { rx_antennas: 2, ..Default::default() };
        assert_eq!(cfg.warnings().len(), 1);
    }
}
