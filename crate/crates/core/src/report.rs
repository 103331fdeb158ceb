//! Residual metric and verification records.

use crate::params::Params;
use crate::scalar::Real;
use std::time::Duration;

/// Relative residual `||A - B||_F / max(1, ||B||_F)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Residual {
    pub value: f64,
}

impl Residual {
    /// Wraps a computed residual; NaN is mapped to infinity so it never passes.
    pub fn new(value: f64) -> Self {
        Self { value: if value.is_nan() { f64::INFINITY } else { value } }
    }

    /// Residual from the Frobenius norms of the difference and the reference.
    pub fn from_norms(diff: f64, reference: f64) -> Self {
        Self::new(diff / reference.max(1.0))
    }

    /// Componentwise maximum.
    pub fn max(self, other: Self) -> Self {
        if other.value > self.value {
            other
        } else {
            self
        }
    }
}

/// One verification record.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: String,
    pub params_digest: String,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub wall_time_ms: u64,
}

impl IdentityReport {
    /// Builds a record; `pass` is derived as `max_residual < threshold`.
    pub fn new<T: Real>(
        id: impl Into<String>,
        params: &Params<T>,
        residuals: &[Residual],
        threshold: f64,
        elapsed: Duration,
    ) -> Self {
        let max_residual = if residuals.is_empty() {
            f64::INFINITY
        } else {
            residuals.iter().fold(0.0_f64, |m, r| m.max(r.value))
        };
        Self {
            id: id.into(),
            params_digest: params.digest(),
            samples: residuals.len(),
            max_residual,
            threshold,
            pass: max_residual < threshold,
            wall_time_ms: elapsed.as_millis() as u64,
        }
    }

    /// Tab-separated record: id, digest, samples, max_residual, threshold,
    /// pass, ms.  With `timing == false` the ms column is written as `-`
    /// so repeated runs are byte-identical.
    pub fn tsv(&self, timing: bool) -> String {
        let ms = if timing { self.wall_time_ms.to_string() } else { "-".to_string() };
        format!(
            "{}\t{}\t{}\t{:.6e}\t{:.1e}\t{}\t{}",
            self.id,
            self.params_digest,
            self.samples,
            self.max_residual,
            self.threshold,
            if self.pass { "pass" } else { "FAIL" },
            ms
        )
    }

    /// Header line matching [`IdentityReport::tsv`].
    pub fn tsv_header() -> &'static str {
        "id\tdigest\tsamples\tmax_residual\tthreshold\tpass\tms"
    }
}
