//! System model: constellation, Rayleigh channel, real lifting and one-bit
//! quantized reception.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::detector::ModelParams;
use crate::numeric::{self, q_tail, sign_quantize, RngStream};
use crate::{Error, Result};

/// Default cap on `m^K`, the number of joint classes.
pub const DEFAULT_CLASS_CAP: usize = 4096;

/// Convert an SNR in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// How the per-component noise standard deviation is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseConvention {
    /// Complex noise is CN(0, 1): each real component has variance 1/2.
    #[default]
    ComplexUnit,
    /// Each real component has unit variance.
    UnitReal,
}

impl NoiseConvention {
    pub fn noise_std(self) -> f64 {
        match self {
            NoiseConvention::ComplexUnit => core::f64::consts::FRAC_1_SQRT_2,
            NoiseConvention::UnitReal => 1.0,
        }
    }
}

/// PSK symbol set whose average power equals the SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<Complex64>,
    snr: f64,
}

impl Constellation {
    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    /// Bits carried by one symbol.
    pub fn bits_per_symbol(&self) -> u32 {
        self.points.len().trailing_zeros()
    }
}

/// BPSK (`m = 2`) or QPSK (`m = 4`) with every point at power `snr`.
///
/// QPSK points sit at phases `pi/4 + k pi/2`, so both real components are
/// `+-sqrt(snr/2)` and no component of the lifted signal is identically zero.
pub fn build_psk_constellation(m: usize, snr: f64) -> Result<Constellation> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::Config("snr must be positive and finite"));
    }
    let points = match m {
        2 => {
            let a = libm::sqrt(snr);
            alloc::vec![Complex64::new(a, 0.0), Complex64::new(-a, 0.0)]
        }
        4 => {
            let a = libm::sqrt(snr / 2.0);
            alloc::vec![
                Complex64::new(a, a),
                Complex64::new(-a, a),
                Complex64::new(-a, -a),
                Complex64::new(a, -a),
            ]
        }
        other => return Err(Error::UnsupportedModulation(other)),
    };
    Ok(Constellation { points, snr })
}

/// Real transmit vector `[Re(x); Im(x)]` for the per-user messages.
pub fn modulate(messages: &[usize], constellation: &Constellation) -> Result<Vec<f64>> {
    let m = constellation.m();
    let k = messages.len();
    let mut x = alloc::vec![0.0; 2 * k];
    for (i, &w) in messages.iter().enumerate() {
        let s = constellation
            .points
            .get(w)
            .ok_or(Error::DigitOutOfRange { digit: w, base: m })?;
        x[i] = s.re;
        x[k + i] = s.im;
    }
    Ok(x)
}

/// `N_r x K` complex channel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChannel {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexChannel {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rx_antennas(&self) -> usize {
        self.rows
    }

    pub fn users(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(h, s)| h * s).sum())
            .collect()
    }
}

/// Real lifting `[Re H, -Im H; Im H, Re H]` of a complex channel, `N x 2K`
/// row-major with `N = 2 N_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealChannel {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl RealChannel {
    /// Number of real receive components `N`.
    pub fn components(&self) -> usize {
        self.rows
    }

    /// Real input dimension `2K`.
    pub fn input_dim(&self) -> usize {
        self.cols
    }

    pub fn users(&self) -> usize {
        self.cols / 2
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.entries[n * self.cols..(n + 1) * self.cols]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(h, v)| h * v).sum())
            .collect())
    }
}

/// Quantized receive vector `r[t]` with entries in `{-1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryObservation {
    pub bits: Vec<i8>,
    pub time_slot: usize,
}

impl BinaryObservation {
    pub fn new(bits: Vec<i8>, time_slot: usize) -> Result<Self> {
        if bits.iter().any(|&b| b != 1 && b != -1) {
            return Err(Error::Config("observation entries must be -1 or +1"));
        }
        Ok(Self { bits, time_slot })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// I.i.d. CN(0, 1) channel: real and imaginary parts each have variance 1/2.
/// Entries are drawn row by row, real part first.
pub fn draw_rayleigh_channel(
    users: usize,
    rx_antennas: usize,
    stream: &mut RngStream,
) -> Result<ComplexChannel> {
    if users == 0 || rx_antennas == 0 {
        return Err(Error::Config("users and rx_antennas must be positive"));
    }
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let entries = (0..users * rx_antennas)
        .map(|_| {
            let re = s * stream.standard_normal();
            let im = s * stream.standard_normal();
            Complex64::new(re, im)
        })
        .collect();
    ComplexChannel::new(rx_antennas, users, entries)
}

pub fn realify(channel: &ComplexChannel) -> RealChannel {
    let (nr, k) = (channel.rows, channel.cols);
    let cols = 2 * k;
    let mut entries = alloc::vec![0.0; 2 * nr * cols];
    for i in 0..nr {
        for j in 0..k {
            let h = channel.get(i, j);
            entries[i * cols + j] = h.re;
            entries[i * cols + k + j] = -h.im;
            entries[(nr + i) * cols + j] = h.im;
            entries[(nr + i) * cols + k + j] = h.re;
        }
    }
    RealChannel {
        rows: 2 * nr,
        cols,
        entries,
    }
}

/// `sign(H x + z)` with `z` drawn i.i.d. with standard deviation `noise_std`.
pub fn transmit_and_quantize(
    channel: &RealChannel,
    x: &[f64],
    noise_std: f64,
    stream: &mut RngStream,
    time_slot: usize,
) -> Result<BinaryObservation> {
    let clean = channel.mul_vec(x)?;
    let noise = stream.sample_gaussian(clean.len(), noise_std)?;
    let bits = clean
        .iter()
        .zip(&noise)
        .map(|(s, z)| sign_quantize(s + z))
        .collect();
    Ok(BinaryObservation { bits, time_slot })
}

/// Noiseless codewords and exact crossover probabilities of every class.
///
/// For class `j` with messages `g(j)`: `c[j][n] = sign(h_n . x)` and
/// `eps[j][n] = Q(|h_n . x| / noise_std)`.
pub fn true_code_and_epsilons(
    channel: &RealChannel,
    constellation: &Constellation,
    users: usize,
    noise_std: f64,
    class_cap: usize,
) -> Result<ModelParams> {
    if !(noise_std > 0.0) || !noise_std.is_finite() {
        return Err(Error::NonPositiveStd(noise_std));
    }
    if channel.users() != users {
        return Err(Error::DimensionMismatch {
            expected: channel.input_dim(),
            got: 2 * users,
        });
    }
    let m = constellation.m();
    let classes = numeric::num_classes(m, users)?;
    if classes > class_cap {
        return Err(Error::TooManyClasses {
            classes,
            cap: class_cap,
        });
    }
    let n = channel.components();
    let mut codewords = Vec::with_capacity(classes * n);
    let mut epsilons = Vec::with_capacity(classes * n);
    for j in 0..classes {
        let messages = numeric::m_ary_expand(j, m, users)?;
        let x = modulate(&messages, constellation)?;
        for v in channel.mul_vec(&x)? {
            codewords.push(sign_quantize(v));
            epsilons.push(q_tail(libm::fabs(v) / noise_std)?);
        }
    }
    ModelParams::new(m, users, n, codewords, epsilons)
}
