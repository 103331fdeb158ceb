//! Error type shared across the laboratory.

use thiserror::Error;

/// Every failure mode a construction or verification can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TqError {
    #[error("q - 1/q vanishes (|lambda| = {0:e}); q must stay away from +-1")]
    DegenerateQ(f64),
    #[error("series did not converge: {0}")]
    SeriesNotConverged(String),
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("Fock truncation did not converge up to cutoff {cap} (last change {last_change:e})")]
    TruncationNotConverged { cap: usize, last_change: f64 },
    #[error("Fock trace diverges: level weights grow from {from:e} to {to:e} over the top quartile")]
    TraceDiverging { from: f64, to: f64 },
    #[error("no consistent solution: {0}")]
    NoSolution(String),
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("product tail too large: last factor deviates from identity by {0:e}")]
    TailTooLarge(f64),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

/// Result alias used throughout the workspace.
pub type TqResult<T> = Result<T, TqError>;
