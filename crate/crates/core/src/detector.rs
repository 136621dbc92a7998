//! Product-of-Bernoullis class model, supervised estimation from pilots and
//! maximum-likelihood detection.
//!
//! Every class `j` (a joint message of all users) owns a codeword
//! `c_j in {-1,+1}^N` and per-component crossover probabilities `eps_j`.
//! An observation `r` has likelihood
//! `prod_n (r_n != c_jn ? eps_jn : 1 - eps_jn)`; all evaluation happens in the
//! log domain.

use alloc::vec::Vec;

use crate::channel::{self, BinaryObservation, Constellation, RealChannel};
use crate::numeric;
use crate::{Error, Result};

/// Default floor for estimated crossover probabilities.
pub const DEFAULT_EPS_MIN: f64 = 1e-4;

/// Codewords and crossover probabilities for all `m^K` classes.
///
/// Storage is class-major: entries `j * N .. (j + 1) * N` belong to class `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    m: usize,
    users: usize,
    components: usize,
    codewords: Vec<i8>,
    epsilons: Vec<f64>,
}

impl ModelParams {
    pub fn new(
        m: usize,
        users: usize,
        components: usize,
        codewords: Vec<i8>,
        epsilons: Vec<f64>,
    ) -> Result<Self> {
        let classes = numeric::num_classes(m, users)?;
        let expected = classes * components;
        for len in [codewords.len(), epsilons.len()] {
            if len != expected {
                return Err(Error::DimensionMismatch { expected, got: len });
            }
        }
        if codewords.iter().any(|&c| c != 1 && c != -1) {
            return Err(Error::Config("codeword entries must be -1 or +1"));
        }
        if epsilons.iter().any(|e| !(0.0..=1.0).contains(e)) {
            return Err(Error::Config("crossover probabilities must lie in [0, 1]"));
        }
        Ok(Self {
            m,
            users,
            components,
            codewords,
            epsilons,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn users(&self) -> usize {
        self.users
    }

    /// Number of real receive components `N`.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn classes(&self) -> usize {
        self.codewords.len() / self.components.max(1)
    }

    pub fn codeword(&self, class: usize) -> &[i8] {
        &self.codewords[class * self.components..(class + 1) * self.components]
    }

    pub fn class_epsilons(&self, class: usize) -> &[f64] {
        &self.epsilons[class * self.components..(class + 1) * self.components]
    }

    pub fn epsilon(&self, class: usize, component: usize) -> f64 {
        self.epsilons[class * self.components + component]
    }

    pub fn codewords(&self) -> &[i8] {
        &self.codewords
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub(crate) fn set_class(&mut self, class: usize, codeword: &[i8], epsilons: &[f64]) {
        let range = class * self.components..(class + 1) * self.components;
        self.codewords[range.clone()].copy_from_slice(codeword);
        self.epsilons[range].copy_from_slice(epsilons);
    }

    fn check_class(&self, class: usize) -> Result<()> {
        let classes = self.classes();
        if class >= classes {
            return Err(Error::ClassOutOfRange { index: class, classes });
        }
        Ok(())
    }
}

/// Pilot observations with their class labels.
///
/// Pilots are sent class by class, `T` per class, so slot `t` (0-based)
/// carries label `t / T` and the set holds exactly `T * m^K` observations.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSet {
    observations: Vec<BinaryObservation>,
    labels: Vec<usize>,
    pilots_per_class: usize,
    classes: usize,
}

impl LabeledSet {
    /// Label `observations` with the pilot schedule `t / T`.
    pub fn new(
        observations: Vec<BinaryObservation>,
        pilots_per_class: usize,
        classes: usize,
    ) -> Result<Self> {
        let labels = (0..observations.len())
            .map(|t| t / pilots_per_class.max(1))
            .collect();
        Self::from_parts(observations, labels, pilots_per_class, classes)
    }

    /// Validate externally supplied labels against the pilot schedule.
    pub fn from_parts(
        observations: Vec<BinaryObservation>,
        labels: Vec<usize>,
        pilots_per_class: usize,
        classes: usize,
    ) -> Result<Self> {
        if pilots_per_class == 0 || classes == 0 {
            return Err(Error::MalformedLabels("empty pilot schedule"));
        }
        if observations.len() != pilots_per_class * classes {
            return Err(Error::MalformedLabels("expected T pilots for every class"));
        }
        if labels.len() != observations.len() {
            return Err(Error::MalformedLabels("one label per observation"));
        }
        if labels
            .iter()
            .enumerate()
            .any(|(t, &j)| j != t / pilots_per_class)
        {
            return Err(Error::MalformedLabels("labels must follow t / T"));
        }
        let n = observations[0].len();
        if n == 0 || observations.iter().any(|o| o.len() != n) {
            return Err(Error::MalformedLabels("observations must share a non-zero length"));
        }
        Ok(Self {
            observations,
            labels,
            pilots_per_class,
            classes,
        })
    }

    pub fn observations(&self) -> &[BinaryObservation] {
        &self.observations
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn pilots_per_class(&self) -> usize {
        self.pilots_per_class
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Total pilot slots `T_t`.
    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn components(&self) -> usize {
        self.observations[0].len()
    }
}

/// Best `(codeword entry, crossover)` for one component given the
/// (possibly weighted) mass voting `+1` and `-1`.
///
/// The entry follows the majority with `+1` on ties, and the crossover is the
/// minority share of the total, clamped into `[eps_min, 1 - eps_min]`.
/// Callers guarantee `plus + minus > 0`.
#[inline]
pub(crate) fn fit_component(plus: f64, minus: f64, eps_min: f64) -> (i8, f64) {
    let total = plus + minus;
    let (sign, mismatch) = if plus >= minus { (1, minus) } else { (-1, plus) };
    let eps = (mismatch / total).clamp(eps_min, 1.0 - eps_min);
    (sign, eps)
}

pub(crate) fn check_eps_min(eps_min: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eps_min) {
        return Err(Error::Config("eps_min must lie in [0, 0.5)"));
    }
    Ok(())
}

/// Supervised estimate from pilots: per class and component, majority vote
/// for the codeword and the disagreement fraction for the crossover.
pub fn sl_estimate(labeled: &LabeledSet, eps_min: f64, m: usize, users: usize) -> Result<ModelParams> {
    check_eps_min(eps_min)?;
    let classes = numeric::num_classes(m, users)?;
    if classes != labeled.classes() {
        return Err(Error::MalformedLabels("class count does not match m^K"));
    }
    let n = labeled.components();
    let mut plus = alloc::vec![0usize; classes * n];
    for (obs, &j) in labeled.observations().iter().zip(labeled.labels()) {
        let row = &mut plus[j * n..(j + 1) * n];
        for (p, &bit) in row.iter_mut().zip(&obs.bits) {
            *p += (bit == 1) as usize;
        }
    }
    let t = labeled.pilots_per_class();
    let (codewords, epsilons) = plus
        .iter()
        .map(|&p| fit_component(p as f64, (t - p) as f64, eps_min))
        .unzip();
    ModelParams::new(m, users, n, codewords, epsilons)
}

/// Log-likelihood of `obs` under class `class`.
pub fn log_likelihood_class(obs: &BinaryObservation, params: &ModelParams, class: usize) -> Result<f64> {
    params.check_class(class)?;
    if obs.len() != params.components() {
        return Err(Error::DimensionMismatch {
            expected: params.components(),
            got: obs.len(),
        });
    }
    Ok(obs
        .bits
        .iter()
        .zip(params.codeword(class))
        .zip(params.class_epsilons(class))
        .map(|((&r, &c), &e)| if r != c { libm::log(e) } else { libm::log(1.0 - e) })
        .sum())
}

/// Precomputed logarithms of a [`ModelParams`] for repeated evaluation.
///
/// Produces the same values, term for term and in the same order, as
/// [`log_likelihood_class`].
#[derive(Debug, Clone)]
pub struct LogModel<'a> {
    params: &'a ModelParams,
    log_flip: Vec<f64>,
    log_keep: Vec<f64>,
}

impl<'a> LogModel<'a> {
    pub fn new(params: &'a ModelParams) -> Self {
        let log_flip = params.epsilons.iter().map(|&e| libm::log(e)).collect();
        let log_keep = params.epsilons.iter().map(|&e| libm::log(1.0 - e)).collect();
        Self {
            params,
            log_flip,
            log_keep,
        }
    }

    pub fn params(&self) -> &ModelParams {
        self.params
    }

    #[inline]
    pub fn log_likelihood(&self, bits: &[i8], class: usize) -> f64 {
        let n = self.params.components;
        let range = class * n..(class + 1) * n;
        bits.iter()
            .zip(&self.params.codewords[range.clone()])
            .zip(self.log_flip[range.clone()].iter().zip(&self.log_keep[range]))
            .map(|((&r, &c), (&flip, &keep))| if r != c { flip } else { keep })
            .sum()
    }

    /// Fill `out` with the log-likelihood of every class.
    pub fn class_log_likelihoods(&self, bits: &[i8], out: &mut Vec<f64>) {
        out.clear();
        out.extend((0..self.params.classes()).map(|j| self.log_likelihood(bits, j)));
    }

    /// Most likely class; ties go to the smallest index.
    pub fn detect(&self, bits: &[i8]) -> usize {
        assert_eq!(bits.len(), self.params.components, "observation length");
        argmax_first((0..self.params.classes()).map(|j| self.log_likelihood(bits, j)))
    }
}

/// Index of the largest value, first one on ties.
pub(crate) fn argmax_first(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Maximum-likelihood class for `obs`, smallest index on ties.
///
/// # Panics
/// If the observation length differs from the model's `N`.
pub fn ml_detect(obs: &BinaryObservation, params: &ModelParams) -> usize {
    LogModel::new(params).detect(&obs.bits)
}

/// Genie detector: ML detection with the crossover probabilities computed
/// from the true channel.
pub fn mld_csir(
    obs: &BinaryObservation,
    channel: &RealChannel,
    constellation: &Constellation,
    users: usize,
    noise_std: f64,
) -> Result<usize> {
    let params = channel::true_code_and_epsilons(
        channel,
        constellation,
        users,
        noise_std,
        channel::DEFAULT_CLASS_CAP,
    )?;
    Ok(ml_detect(obs, &params))
}

/// Per-user messages of class `class`.
pub fn class_to_messages(class: usize, m: usize, users: usize) -> Result<Vec<usize>> {
    numeric::m_ary_expand(class, m, users)
}
