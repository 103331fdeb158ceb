//! Seeded spectral-parameter sampling for randomized identity testing.
//!
//! Every identity draws from its own ChaCha stream derived from the global
//! seed and the identity id, so reports do not depend on execution order.

use crate::params::Params;
use crate::scalar::{Cx, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Radial sampling window `|x|` in `[RADIUS_MIN, RADIUS_MAX]`.
pub const RADIUS_MIN: f64 = 0.8;
pub const RADIUS_MAX: f64 = 1.25;
/// Points closer than this to a declared pole are redrawn.
pub const POLE_MARGIN: f64 = 1e-6;
/// Redraw budget per requested point.
const MAX_REDRAWS: usize = 1000;

/// Deterministic source of spectral points.
pub struct SpectralSampler {
    rng: ChaCha8Rng,
}

impl SpectralSampler {
    /// Stream keyed by `(seed, stream)`.
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(seed.to_le_bytes());
        hasher.update(stream.as_bytes());
        let digest = hasher.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest[..32]);
        Self { rng: ChaCha8Rng::from_seed(key) }
    }

    /// Stream for an identity under the given parameters.
    pub fn for_identity<T: Real>(params: &Params<T>, id: &str) -> Self {
        Self::new(params.rng_seed, id)
    }

    /// Raw uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// One point with log-uniform modulus in the window and uniform phase.
    pub fn point<T: Real>(&mut self) -> Cx<T> {
        let lr = RADIUS_MIN.ln() + (RADIUS_MAX.ln() - RADIUS_MIN.ln()) * self.uniform();
        let th = std::f64::consts::PI * (2.0 * self.uniform() - 1.0);
        let z = num_complex::Complex::from_polar(lr.exp(), th);
        crate::scalar::narrow(z)
    }

    /// `n` points for which `distance_to_pole` stays above [`POLE_MARGIN`].
    ///
    /// `distance_to_pole` returns the smallest distance of any vanishing
    /// factor at the candidate point (use `f64::INFINITY` when none applies).
    pub fn points<T: Real>(&mut self, n: usize, distance_to_pole: impl Fn(Cx<T>) -> f64) -> Vec<Cx<T>> {
        let mut out = Vec::with_capacity(n);
        let mut budget = n * MAX_REDRAWS;
        while out.len() < n && budget > 0 {
            budget -= 1;
            let z = self.point::<T>();
            if distance_to_pole(z) > POLE_MARGIN {
                out.push(z);
            }
        }
        out
    }

    /// Uniform complex number in the square `[-r, r]^2`.
    pub fn square<T: Real>(&mut self, r: f64) -> Cx<T> {
        let a = r * (2.0 * self.uniform() - 1.0);
        let b = r * (2.0 * self.uniform() - 1.0);
        crate::scalar::cx(a, b)
    }
}
