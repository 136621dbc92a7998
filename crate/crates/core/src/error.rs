use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input")]
    NonFinite,
    #[error("standard deviation must be positive, got {0}")]
    NonPositiveStd(f64),
    #[error("invalid radix: base {base}, {digits} digits")]
    InvalidRadix { base: usize, digits: usize },
    #[error("index {index} out of range for {classes} classes")]
    ClassOutOfRange { index: usize, classes: usize },
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: usize, base: usize },
    #[error("unsupported constellation size {0} (expected 2 or 4)")]
    UnsupportedModulation(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{classes} classes exceeds the cap of {cap}")]
    TooManyClasses { classes: usize, cap: usize },
    #[error("malformed labeled set: {0}")]
    MalformedLabels(&'static str),
    #[error("slot {slot} outside the unlabeled window {start}..{end}")]
    SlotOutsideWindow { slot: usize, start: usize, end: usize },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}
