//! Semi-supervised refinement of the class model with EM.
//!
//! Pilots (labeled) and an unlabeled window of data slots are pooled. The
//! E-step fixes labeled responsibilities to indicators and sets unlabeled ones
//! to the normalized class likelihoods; the M-step is the closed-form
//! maximizer of the expected complete-data log-likelihood, a weighted majority
//! vote for each codeword entry and a weighted disagreement fraction for each
//! crossover probability. Slot indices here are 0-based: pilots occupy
//! `0..T_t` and the unlabeled window `T_t..T_t + T_u`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::channel::BinaryObservation;
use crate::detector::{self, argmax_first, fit_component, LabeledSet, LogModel, ModelParams};
use crate::numeric::log_sum_exp;
use crate::{Error, Result};

/// Pilots plus the unlabeled window used for parameter refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedData {
    labeled: LabeledSet,
    unlabeled: Vec<BinaryObservation>,
    // distinct unlabeled bit patterns in sorted order, their multiplicities,
    // and the pattern index of every unlabeled slot
    patterns: Vec<Vec<i8>>,
    counts: Vec<usize>,
    pattern_of: Vec<usize>,
}

impl ObservedData {
    pub fn new(labeled: LabeledSet, unlabeled: Vec<BinaryObservation>) -> Result<Self> {
        let n = labeled.components();
        if let Some(bad) = unlabeled.iter().find(|o| o.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        let mut index: BTreeMap<&[i8], usize> = BTreeMap::new();
        for o in &unlabeled {
            *index.entry(o.bits.as_slice()).or_insert(0) += 1;
        }
        let mut patterns = Vec::with_capacity(index.len());
        let mut counts = Vec::with_capacity(index.len());
        for (p, (bits, count)) in index.iter_mut().enumerate() {
            patterns.push(bits.to_vec());
            counts.push(*count);
            *count = p;
        }
        let pattern_of = unlabeled.iter().map(|o| index[o.bits.as_slice()]).collect();
        Ok(Self {
            labeled,
            unlabeled,
            patterns,
            counts,
            pattern_of,
        })
    }

    pub fn labeled(&self) -> &LabeledSet {
        &self.labeled
    }

    pub fn unlabeled(&self) -> &[BinaryObservation] {
        &self.unlabeled
    }

    /// `T_t + T_u`.
    pub fn len(&self) -> usize {
        self.labeled.len() + self.unlabeled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Observation at 0-based slot `t` of the pooled data.
    pub fn observation(&self, t: usize) -> &BinaryObservation {
        let tt = self.labeled.len();
        if t < tt {
            &self.labeled.observations()[t]
        } else {
            &self.unlabeled[t - tt]
        }
    }

}

/// Posterior class probabilities per slot, row-major `(T_t + T_u) x m^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Responsibilities {
    classes: usize,
    labeled_rows: usize,
    gamma: Vec<f64>,
}

impl Responsibilities {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn rows(&self) -> usize {
        self.gamma.len() / self.classes
    }

    pub fn labeled_rows(&self) -> usize {
        self.labeled_rows
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.gamma[t * self.classes..(t + 1) * self.classes]
    }

    /// Build from raw rows; every row must be a probability vector.
    pub fn from_rows(classes: usize, labeled_rows: usize, gamma: Vec<f64>) -> Result<Self> {
        if classes == 0 || !gamma.len().is_multiple_of(classes) || labeled_rows * classes > gamma.len() {
            return Err(Error::DimensionMismatch {
                expected: classes,
                got: gamma.len(),
            });
        }
        for row in gamma.chunks_exact(classes) {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|g| !(0.0..=1.0).contains(g)) || (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Config("responsibility rows must be probability vectors"));
            }
        }
        Ok(Self {
            classes,
            labeled_rows,
            gamma,
        })
    }
}

/// Stopping rule and clamping floor for [`run_em`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    /// Stop once an iteration improves the log-likelihood by at most this
    /// many nats.
    pub stop_tol: f64,
    pub max_iters: usize,
    pub eps_min: f64,
}

impl Default for EmConfig {
    fn default() -> Self {
        Self {
            stop_tol: 1e-4,
            max_iters: 50,
            eps_min: detector::DEFAULT_EPS_MIN,
        }
    }
}

impl EmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.stop_tol >= 0.0) {
            return Err(Error::Config("stop_tol must be non-negative"));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1"));
        }
        detector::check_eps_min(self.eps_min)
    }
}

/// Per-iteration diagnostics of an EM run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmTrace {
    /// Data log-likelihood of the initial estimate followed by one entry per
    /// iteration.
    pub log_likelihoods: Vec<f64>,
    pub iterations_run: usize,
    /// Whether the stopping tolerance was met before `max_iters`.
    pub converged: bool,
    /// Classes whose parameters were carried over at least once because they
    /// received no responsibility mass.
    pub carried_over: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmOutcome {
    pub params: ModelParams,
    /// Responsibilities under the returned parameters.
    pub responsibilities: Responsibilities,
    pub trace: EmTrace,
}

/// Output of [`m_step`]: the updated parameters and the classes that kept
/// their previous values.
#[derive(Debug, Clone, PartialEq)]
pub struct MStep {
    pub params: ModelParams,
    pub carried_over: Vec<usize>,
}

fn check_dims(data: &ObservedData, params: &ModelParams) -> Result<()> {
    if params.classes() != data.labeled().classes() {
        return Err(Error::DimensionMismatch {
            expected: data.labeled().classes(),
            got: params.classes(),
        });
    }
    if params.components() != data.labeled().components() {
        return Err(Error::DimensionMismatch {
            expected: data.labeled().components(),
            got: params.components(),
        });
    }
    Ok(())
}

/// Responsibilities under `params`: indicators on the pilots, normalized
/// class likelihoods on the unlabeled window.
pub fn e_step(data: &ObservedData, params: &ModelParams) -> Result<Responsibilities> {
    Ok(posterior_pass(data, params)?.0)
}

/// E-step together with the data log-likelihood under the same parameters.
fn posterior_pass(data: &ObservedData, params: &ModelParams) -> Result<(Responsibilities, f64)> {
    check_dims(data, params)?;
    let classes = params.classes();
    let log_prior = -libm::log(classes as f64);
    let model = LogModel::new(params);

    let mut labeled_ll = 0.0;
    let mut gamma = alloc::vec![0.0; data.len() * classes];
    for (t, (obs, &j)) in data.labeled().observations().iter().zip(data.labeled().labels()).enumerate() {
        gamma[t * classes + j] = 1.0;
        labeled_ll += log_prior + model.log_likelihood(&obs.bits, j);
    }

    let mut unlabeled_ll = 0.0;
    let mut posteriors = alloc::vec![0.0; data.patterns.len() * classes];
    let mut lls = Vec::with_capacity(classes);
    for ((bits, &count), row) in data.patterns.iter().zip(&data.counts).zip(posteriors.chunks_exact_mut(classes)) {
        model.class_log_likelihoods(bits, &mut lls);
        let norm = normalize_log_row(&lls, row);
        unlabeled_ll += count as f64 * (log_prior + norm);
    }
    let offset = data.labeled().len();
    for (u, &p) in data.pattern_of.iter().enumerate() {
        gamma[(offset + u) * classes..(offset + u + 1) * classes]
            .copy_from_slice(&posteriors[p * classes..(p + 1) * classes]);
    }
    let gamma = Responsibilities {
        classes,
        labeled_rows: offset,
        gamma,
    };
    Ok((gamma, labeled_ll + unlabeled_ll))
}

fn normalize_log_row(lls: &[f64], row: &mut [f64]) -> f64 {
    let norm = log_sum_exp(lls);
    if norm == f64::NEG_INFINITY {
        row.fill(1.0 / row.len() as f64);
        return norm;
    }
    for (g, &ll) in row.iter_mut().zip(lls) {
        *g = libm::exp(ll - norm);
    }
    norm
}

/// Closed-form maximizer of the expected complete-data log-likelihood.
///
/// Per class and component the codeword entry is the sign of the weighted
/// vote and the crossover is the weighted share of disagreeing slots, clamped
/// into `[eps_min, 1 - eps_min]`. A class with zero total weight keeps its
/// parameters from `previous`.
pub fn m_step(
    data: &ObservedData,
    gamma: &Responsibilities,
    eps_min: f64,
    previous: &ModelParams,
) -> Result<MStep> {
    detector::check_eps_min(eps_min)?;
    check_dims(data, previous)?;
    if gamma.rows() != data.len() || gamma.classes() != previous.classes() {
        return Err(Error::DimensionMismatch {
            expected: data.len() * previous.classes(),
            got: gamma.gamma.len(),
        });
    }
    let classes = previous.classes();
    let n = previous.components();
    // weighted mass voting +1 and -1, per (class, component)
    let mut plus = alloc::vec![0.0; classes * n];
    let mut minus = alloc::vec![0.0; classes * n];
    let mut accumulate = |bits: &[i8], row: &[f64]| {
        for (j, &g) in row.iter().enumerate() {
            if g == 0.0 {
                continue;
            }
            let range = j * n..(j + 1) * n;
            for ((p, q), &bit) in plus[range.clone()].iter_mut().zip(&mut minus[range]).zip(bits) {
                if bit == 1 {
                    *p += g;
                } else {
                    *q += g;
                }
            }
        }
    };
    for (t, obs) in data.labeled().observations().iter().enumerate() {
        accumulate(&obs.bits, gamma.row(t));
    }
    // unlabeled slots sharing a bit pattern are pooled first
    let mut pooled = alloc::vec![0.0; data.patterns.len() * classes];
    let offset = data.labeled().len();
    for (u, &p) in data.pattern_of.iter().enumerate() {
        for (acc, &g) in pooled[p * classes..(p + 1) * classes].iter_mut().zip(gamma.row(offset + u)) {
            *acc += g;
        }
    }
    for (bits, row) in data.patterns.iter().zip(pooled.chunks_exact(classes)) {
        accumulate(bits, row);
    }

    let mut params = previous.clone();
    let mut carried_over = Vec::new();
    let mut codeword = alloc::vec![0i8; n];
    let mut eps = alloc::vec![0.0; n];
    for j in 0..classes {
        let range = j * n..(j + 1) * n;
        if plus[range.start] + minus[range.start] == 0.0 {
            carried_over.push(j);
            continue;
        }
        for (i, (&p, &q)) in plus[range.clone()].iter().zip(&minus[range]).enumerate() {
            (codeword[i], eps[i]) = fit_component(p, q, eps_min);
        }
        params.set_class(j, &codeword, &eps);
    }
    Ok(MStep {
        params,
        carried_over,
    })
}

/// Log-likelihood of the pooled data under a uniform class prior.
pub fn data_log_likelihood(data: &ObservedData, params: &ModelParams) -> Result<f64> {
    Ok(posterior_pass(data, params)?.1)
}

/// Initialize from the pilots alone, then alternate E- and M-steps until the
/// log-likelihood improves by at most `stop_tol` or `max_iters` is reached.
pub fn run_em(data: &ObservedData, m: usize, users: usize, config: &EmConfig) -> Result<EmOutcome> {
    config.validate()?;
    let mut params = detector::sl_estimate(data.labeled(), config.eps_min, m, users)?;
    let mut trace = EmTrace::default();
    let (mut responsibilities, mut current) = posterior_pass(data, &params)?;
    trace.log_likelihoods.push(current);
    for _ in 0..config.max_iters {
        let step = m_step(data, &responsibilities, config.eps_min, &params)?;
        for j in step.carried_over {
            if !trace.carried_over.contains(&j) {
                trace.carried_over.push(j);
            }
        }
        params = step.params;
        let (next_gamma, next) = posterior_pass(data, &params)?;
        responsibilities = next_gamma;
        trace.log_likelihoods.push(next);
        trace.iterations_run += 1;
        let improvement = next - current;
        current = next;
        if improvement <= config.stop_tol {
            trace.converged = true;
            break;
        }
    }
    Ok(EmOutcome {
        params,
        responsibilities,
        trace,
    })
}

/// Class with the largest responsibility at unlabeled slot `slot` (0-based,
/// in `T_t..T_t + T_u`); smallest index on ties.
pub fn ssl_detect_window(gamma: &Responsibilities, slot: usize) -> Result<usize> {
    let (start, end) = (gamma.labeled_rows, gamma.rows());
    if slot < start || slot >= end {
        return Err(Error::SlotOutsideWindow { slot, start, end });
    }
    Ok(argmax_first(gamma.row(slot).iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{ml_detect, sl_estimate};
    use crate::numeric::RngStream;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn obs(bits: &[i8], t: usize) -> BinaryObservation {
        BinaryObservation::new(bits.to_vec(), t).unwrap()
    }

    /// Two classes, N = 2. On r = [+1, +1] class 0 has likelihood
    /// 0.9 * 0.2 = 0.18 and class 1 has 0.2 * 0.1 = 0.02.
    fn two_class_params() -> ModelParams {
        ModelParams::new(2, 1, 2, vec![1, -1, -1, -1], vec![0.1, 0.2, 0.2, 0.1]).unwrap()
    }

    fn pilots_two_class() -> LabeledSet {
        LabeledSet::new(vec![obs(&[1, -1], 0), obs(&[-1, 1], 1)], 1, 2).unwrap()
    }

    #[test]
    fn e_step_labeled_rows_are_indicators() {
        let observations = (0..8).map(|t| obs(&[1, -1, 1], t)).collect();
        let labeled = LabeledSet::new(observations, 2, 4).unwrap();
        let data = ObservedData::new(labeled, vec![obs(&[1, 1, 1], 8)]).unwrap();
        let params = ModelParams::new(2, 2, 3, vec![1; 12], vec![0.3; 12]).unwrap();
        let g = e_step(&data, &params).unwrap();
        assert_eq!(g.row(4), &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(g.row(5), &[0.0, 0.0, 1.0, 0.0]);
        // identical parameters for all classes: uniform posterior
        for &v in g.row(8) {
            assert_abs_diff_eq!(v, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn e_step_normalizes_likelihoods() {
        let params = two_class_params();
        let data = ObservedData::new(pilots_two_class(), vec![obs(&[1, 1], 2)]).unwrap();
        let g = e_step(&data, &params).unwrap();
        assert_abs_diff_eq!(g.row(2)[0], 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(g.row(2)[1], 0.1, epsilon = 1e-12);
        assert_eq!(ssl_detect_window(&g, 2).unwrap(), 0);
    }

    #[test]
    fn data_log_likelihood_examples() {
        let params = two_class_params();
        let data = ObservedData::new(pilots_two_class(), vec![obs(&[1, 1], 2)]).unwrap();
        let pilots_only = ObservedData::new(pilots_two_class(), vec![]).unwrap();
        let ll = data_log_likelihood(&data, &params).unwrap();
        let base = data_log_likelihood(&pilots_only, &params).unwrap();
        assert_abs_diff_eq!(ll - base, libm::log(0.5 * 0.20), epsilon = 1e-12);

        let labeled = LabeledSet::new(
            vec![obs(&[1, 1, -1, 1], 0), obs(&[1, 1, 1, 1], 1), obs(&[1; 4], 2), obs(&[1; 4], 3)],
            1,
            4,
        )
        .unwrap();
        let mut cw = vec![1i8; 16];
        cw[2] = -1;
        let p = ModelParams::new(2, 2, 4, cw, vec![0.25; 16]).unwrap();
        let d = ObservedData::new(labeled, vec![]).unwrap();
        let expected = 4.0 * (libm::log(0.25) + 4.0 * libm::log(0.75));
        assert_abs_diff_eq!(data_log_likelihood(&d, &p).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn data_log_likelihood_permutation_invariant() {
        let params = two_class_params();
        let window = vec![obs(&[1, 1], 2), obs(&[-1, 1], 3), obs(&[-1, -1], 4)];
        let mut reversed = window.clone();
        reversed.reverse();
        let a = data_log_likelihood(&ObservedData::new(pilots_two_class(), window).unwrap(), &params).unwrap();
        let b = data_log_likelihood(&ObservedData::new(pilots_two_class(), reversed).unwrap(), &params).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn m_step_weighted_example() {
        // class 0 has pilot [+1] (weight 1) and an unlabeled [-1] with weight 0.5
        let labeled = LabeledSet::new(vec![obs(&[1], 0), obs(&[1], 1)], 1, 2).unwrap();
        let data = ObservedData::new(labeled, vec![obs(&[-1], 2)]).unwrap();
        let gamma = Responsibilities::from_rows(2, 2, vec![1.0, 0.0, 0.0, 1.0, 0.5, 0.5]).unwrap();
        let prev = ModelParams::new(2, 1, 1, vec![1, 1], vec![0.3, 0.3]).unwrap();
        let out = m_step(&data, &gamma, 1e-4, &prev).unwrap();
        assert_eq!(out.params.codeword(0), &[1]);
        assert_abs_diff_eq!(out.params.epsilon(0, 0), 1.0 / 3.0, epsilon = 1e-15);
        assert!(out.carried_over.is_empty());
    }

    #[test]
    fn m_step_all_agree_clamps() {
        let labeled = LabeledSet::new(vec![obs(&[1, -1], 0), obs(&[-1, 1], 1)], 1, 2).unwrap();
        let data = ObservedData::new(labeled, vec![]).unwrap();
        let g = e_step(&data, &two_class_params()).unwrap();
        let out = m_step(&data, &g, 1e-4, &two_class_params()).unwrap();
        assert_eq!(out.params.epsilons(), &[1e-4; 4]);
        assert_eq!(out.params.codeword(1), &[-1, 1]);
    }

    #[test]
    fn m_step_carries_over_starved_class() {
        // responsibilities built by hand with no mass on class 1
        let labeled = LabeledSet::new(vec![obs(&[1], 0), obs(&[-1], 1)], 1, 2).unwrap();
        let data = ObservedData::new(labeled, vec![]).unwrap();
        let gamma = Responsibilities::from_rows(2, 0, vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let prev = ModelParams::new(2, 1, 1, vec![1, -1], vec![0.3, 0.07]).unwrap();
        let out = m_step(&data, &gamma, 1e-4, &prev).unwrap();
        assert_eq!(out.carried_over, vec![1]);
        assert_eq!(out.params.codeword(1), &[-1]);
        assert_eq!(out.params.epsilon(1, 0), 0.07);
        assert_eq!(out.params.epsilon(0, 0), 0.5);
    }

    fn random_block(seed: u64, t: usize, tu: usize, n: usize) -> ObservedData {
        let mut s = RngStream::new(seed, 0);
        let classes = 4;
        let truth: Vec<i8> = (0..classes * n).map(|_| if s.uniform_index(2) == 0 { 1 } else { -1 }).collect();
        let draw = |j: usize, slot: usize, s: &mut RngStream| {
            let bits: Vec<i8> = truth[j * n..(j + 1) * n]
                .iter()
                .map(|&c| if s.uniform_index(5) == 0 { -c } else { c })
                .collect();
            obs(&bits, slot)
        };
        let pilots = (0..classes * t).map(|slot| draw(slot / t, slot, &mut s)).collect();
        let window = (0..tu)
            .map(|u| {
                let j = s.uniform_index(classes);
                draw(j, classes * t + u, &mut s)
            })
            .collect();
        ObservedData::new(LabeledSet::new(pilots, t, classes).unwrap(), window).unwrap()
    }

    #[test]
    fn m_step_with_indicators_equals_sl() {
        for seed in 0..20 {
            let data = random_block(seed, 3, 0, 6);
            let sl = sl_estimate(data.labeled(), 1e-4, 2, 2).unwrap();
            let gamma = e_step(&data, &sl).unwrap();
            let m = m_step(&data, &gamma, 1e-4, &sl).unwrap();
            assert_eq!(m.params, sl);
        }
    }

    #[test]
    fn run_em_without_unlabeled_is_sl() {
        let data = random_block(3, 2, 0, 6);
        let out = run_em(&data, 2, 2, &EmConfig::default()).unwrap();
        assert_eq!(out.params, sl_estimate(data.labeled(), 1e-4, 2, 2).unwrap());
        assert!(out.trace.log_likelihoods.len() <= 2);
        assert!(out.trace.converged);
    }

    #[test]
    fn run_em_infinite_tolerance_runs_once() {
        let data = random_block(4, 1, 40, 6);
        let cfg = EmConfig {
            stop_tol: f64::INFINITY,
            ..EmConfig::default()
        };
        let out = run_em(&data, 2, 2, &cfg).unwrap();
        assert_eq!(out.trace.iterations_run, 1);
        assert_eq!(out.trace.log_likelihoods.len(), 2);
    }

    #[test]
    fn run_em_reports_non_convergence() {
        let data = random_block(5, 1, 80, 6);
        let cfg = EmConfig {
            stop_tol: 0.0,
            max_iters: 1,
            ..EmConfig::default()
        };
        let out = run_em(&data, 2, 2, &cfg).unwrap();
        assert_eq!(out.trace.iterations_run, 1);
        if out.trace.log_likelihoods[1] > out.trace.log_likelihoods[0] {
            assert!(!out.trace.converged);
        }
    }

    #[test]
    fn run_em_monotone_and_rows_normalized() {
        for seed in 0..30 {
            let data = random_block(100 + seed, 1, 60, 8);
            let out = run_em(&data, 2, 2, &EmConfig::default()).unwrap();
            for w in out.trace.log_likelihoods.windows(2) {
                assert!(w[1] >= w[0] - 1e-9, "seed {seed}: {w:?}");
            }
            let g = &out.responsibilities;
            for t in 0..g.rows() {
                let sum: f64 = g.row(t).iter().sum();
                assert!((sum - 1.0).abs() < 1e-9);
            }
            for (t, &j) in data.labeled().labels().iter().enumerate() {
                assert_eq!(g.row(t)[j], 1.0);
            }
        }
    }

    #[test]
    fn ssl_detect_window_rules() {
        let g = Responsibilities::from_rows(2, 1, vec![1.0, 0.0, 0.9, 0.1, 0.5, 0.5]).unwrap();
        assert_eq!(ssl_detect_window(&g, 1).unwrap(), 0);
        assert_eq!(ssl_detect_window(&g, 2).unwrap(), 0);
        assert_eq!(
            ssl_detect_window(&g, 0),
            Err(Error::SlotOutsideWindow { slot: 0, start: 1, end: 3 })
        );
        assert!(ssl_detect_window(&g, 3).is_err());
        let g = Responsibilities::from_rows(2, 0, vec![0.3, 0.7]).unwrap();
        assert_eq!(ssl_detect_window(&g, 0).unwrap(), 1);
    }

    #[test]
    fn window_detection_matches_ml_with_same_params() {
        let data = random_block(9, 1, 50, 8);
        let params = sl_estimate(data.labeled(), 1e-4, 2, 2).unwrap();
        let g = e_step(&data, &params).unwrap();
        for t in data.labeled().len()..data.len() {
            assert_eq!(ssl_detect_window(&g, t).unwrap(), ml_detect(data.observation(t), &params));
        }
    }

    #[test]
    fn config_validation() {
        assert!(EmConfig { max_iters: 0, ..EmConfig::default() }.validate().is_err());
        assert!(EmConfig { stop_tol: -1.0, ..EmConfig::default() }.validate().is_err());
        assert!(EmConfig { stop_tol: f64::NAN, ..EmConfig::default() }.validate().is_err());
        assert!(EmConfig::default().validate().is_ok());
        assert!(Responsibilities::from_rows(2, 0, vec![0.3, 0.3]).is_err());
    }
}
