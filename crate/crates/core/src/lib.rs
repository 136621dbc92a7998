//! Detection for uplink multi-user MIMO receivers with one-bit ADCs.
//!
//! The receiver sees only the signs of the in-phase and quadrature
//! components at each antenna. Every joint user message (a *class*) then maps
//! to a noiseless sign pattern, its codeword, and each of the `N` real
//! components behaves like a binary symmetric channel with a class-dependent
//! crossover probability. This crate provides:
//!
//! - [`channel`]: PSK constellations, Rayleigh channels, the real-valued
//!   lifting of the complex system and one-bit quantized reception.
//! - [`detector`]: the product-of-Bernoullis class model, the supervised
//!   estimator driven by labeled pilots, and maximum-likelihood detection
//!   (including the genie detector that knows the channel).
//! - [`em`]: semi-supervised refinement of the model with EM over labeled
//!   pilots plus unlabeled data slots.
//! - [`block`]: one coherence block end to end (training, parameter update
//!   and data phases) with paired bit-error accounting across detectors.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod block;
pub mod channel;
pub mod detector;
pub mod em;
mod error;
pub mod numeric;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
