//! Numeric kernels shared by the rest of the crate.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;
/// ln(sqrt(2 pi))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
/// Beyond this magnitude the tail is evaluated with its asymptotic series.
const TAIL_SERIES_THRESHOLD: f64 = 8.0;

/// Upper tail of the standard normal, `P(Z > x)`.
///
/// Inside `[-8, 8]` this is `erfc(x / sqrt 2) / 2`. Above 8 it switches to the
/// asymptotic series `phi(x)/x * (1 - 1/x^2 + 3/x^4 - ...)` and never returns
/// exactly zero: the result is floored at `f64::MIN_POSITIVE` so logarithms
/// of crossover probabilities stay finite. Below -8 the value is
/// `1 - q_tail(-x)`, which rounds to 1 in double precision.
pub fn q_tail(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(if x > TAIL_SERIES_THRESHOLD {
        upper_tail_series(x)
    } else if x < -TAIL_SERIES_THRESHOLD {
        1.0 - upper_tail_series(-x)
    } else {
        0.5 * libm::erfc(x * FRAC_1_SQRT_2)
    })
}

fn upper_tail_series(x: f64) -> f64 {
    let inv_x2 = 1.0 / (x * x);
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..64 {
        let next = -term * (2 * k - 1) as f64 * inv_x2;
        // asymptotic: stop once the terms start growing again
        if libm::fabs(next) >= libm::fabs(term) || libm::fabs(next) < 1e-18 {
            break;
        }
        sum += next;
        term = next;
    }
    let log_tail = -0.5 * x * x - LN_SQRT_2PI - libm::log(x) + libm::log(sum);
    libm::exp(log_tail).max(f64::MIN_POSITIVE)
}

/// One-bit ADC: `+1` for `x >= 0`, `-1` otherwise.
#[inline]
pub fn sign_quantize(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Element-wise [`sign_quantize`].
pub fn sign_quantize_all(values: &[f64]) -> Vec<i8> {
    values.iter().map(|&v| sign_quantize(v)).collect()
}

fn class_count(base: usize, digits: usize) -> Result<usize> {
    if base < 2 || digits == 0 {
        return Err(Error::InvalidRadix { base, digits });
    }
    u32::try_from(digits)
        .ok()
        .and_then(|d| base.checked_pow(d))
        .ok_or(Error::InvalidRadix { base, digits })
}

/// Number of joint classes `base^digits`, or an error when it overflows.
pub fn num_classes(base: usize, digits: usize) -> Result<usize> {
    class_count(base, digits)
}

/// Base-`m` expansion of `index` into `digits` digits, least significant first.
pub fn m_ary_expand(index: usize, base: usize, digits: usize) -> Result<Vec<usize>> {
    let classes = class_count(base, digits)?;
    if index >= classes {
        return Err(Error::ClassOutOfRange { index, classes });
    }
    let mut rest = index;
    let out = (0..digits)
        .map(|_| {
            let d = rest % base;
            rest /= base;
            d
        })
        .collect();
    Ok(out)
}

/// Inverse of [`m_ary_expand`].
pub fn m_ary_compress(digits: &[usize], base: usize) -> Result<usize> {
    class_count(base, digits.len())?;
    digits.iter().rev().try_fold(0usize, |acc, &d| {
        if d >= base {
            Err(Error::DigitOutOfRange { digit: d, base })
        } else {
            Ok(acc * base + d)
        }
    })
}

/// `ln(sum(exp(v)))` without overflow. Entries may be `-inf`; if all are, the
/// result is `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|&v| libm::exp(v - max)).sum();
    max + libm::log(sum)
}

/// Seeded random stream.
///
/// A stream is identified by `(master_seed, stream_index)`; the harness uses
/// one stream per coherence block so results do not depend on how blocks are
/// scheduled. [`RngStream::fork`] derives further independent streams that
/// share the same index (used to separate the channel draw from the traffic).
#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        Self {
            master_seed,
            stream_index,
            rng,
        }
    }

    /// Independent sub-stream number `lane` of this stream. Forking does not
    /// advance `self`.
    pub fn fork(&self, lane: u64) -> Self {
        let seed = splitmix64(self.master_seed ^ splitmix64(lane.wrapping_add(1)));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.stream_index);
        Self {
            master_seed: self.master_seed,
            stream_index: self.stream_index,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// `count` i.i.d. zero-mean Gaussian draws with standard deviation `std`.
    pub fn sample_gaussian(&mut self, count: usize, std: f64) -> Result<Vec<f64>> {
        if !(std > 0.0) || !std.is_finite() {
            return Err(Error::NonPositiveStd(std));
        }
        Ok((0..count).map(|_| std * self.standard_normal()).collect())
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    #[inline]
    pub fn uniform_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}
