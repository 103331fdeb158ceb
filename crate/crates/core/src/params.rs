//! Global parameter bundle and quantum-space description.

use crate::error::{TqError, TqResult};
use crate::scalar::{cx, ipow, widen, Cx, Real};
use sha2::{Digest, Sha256};

/// Minimum distance of `|q|` from the unit circle accepted by validation.
pub const UNIT_CIRCLE_MARGIN: f64 = 1e-6;

/// Parameters of the open XXZ construction.
///
/// The fundamental input is `p` with `q = p^s`, so that every fractional
/// power `q^{k/s}` appearing in shifted spectral parameters is the integer
/// power `p^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T: Real> {
    pub p: Cx<T>,
    pub s0: i32,
    pub s1: i32,
    pub eps_plus: Cx<T>,
    pub eps_minus: Cx<T>,
    pub epsbar_plus: Cx<T>,
    pub epsbar_minus: Cx<T>,
    /// Threshold for finite-matrix identities.
    pub tol_exact: T,
    /// Threshold for identities touched by Fock truncation or series.
    pub tol_trace: T,
    /// Maximal number of terms in any scalar series.
    pub series_cap: usize,
    pub rng_seed: u64,
    pub sample_count: usize,
    /// Accept negative gradation integers.
    pub allow_general_gradation: bool,
}

impl<T: Real> Default for Params<T> {
    fn default() -> Self {
        Self {
            p: cx(1.08, 0.12),
            s0: 1,
            s1: 1,
            eps_plus: cx(1.0, 0.0),
            eps_minus: cx(0.1, 0.05),
            epsbar_plus: cx(1.0, 0.0),
            epsbar_minus: cx(0.8, -0.3),
            tol_exact: T::lit(1e-10),
            tol_trace: T::lit(1e-8),
            series_cap: 4000,
            rng_seed: 20_181_119,
            sample_count: 5,
            allow_general_gradation: false,
        }
    }
}

impl<T: Real> Params<T> {
    /// `s = s0 + s1`.
    pub fn s(&self) -> i32 {
        self.s0 + self.s1
    }

    /// `q = p^s`.
    pub fn q(&self) -> Cx<T> {
        ipow(self.p, self.s() as i64)
    }

    /// `lambda = q - 1/q`.
    pub fn lambda(&self) -> Cx<T> {
        let q = self.q();
        q - q.inv()
    }

    /// `p^k`, i.e. `q^{k/s}`.
    pub fn pp(&self, k: i64) -> Cx<T> {
        ipow(self.p, k)
    }

    /// `q^k`.
    pub fn qp(&self, k: i64) -> Cx<T> {
        ipow(self.q(), k)
    }

    /// Checks the parameter invariants.
    pub fn validate(&self) -> TqResult<()> {
        let s = self.s();
        if s < 1 {
            return Err(TqError::InvalidParams(format!("s = s0 + s1 = {s} must be >= 1")));
        }
        if !self.allow_general_gradation && (self.s0 < 0 || self.s1 < 0) {
            return Err(TqError::InvalidParams(format!(
                "negative gradation (s0, s1) = ({}, {}) requires the general-gradation override",
                self.s0, self.s1
            )));
        }
        let p = widen(self.p);
        if !(p.re.is_finite() && p.im.is_finite()) || p.norm() == 0.0 {
            return Err(TqError::InvalidParams("p must be finite and nonzero".into()));
        }
        let qn = widen(self.q()).norm();
        if (qn - 1.0).abs() < UNIT_CIRCLE_MARGIN {
            return Err(TqError::InvalidParams(format!("|q| = {qn} lies on the unit circle")));
        }
        for (name, e) in [
            ("eps_plus", self.eps_plus),
            ("eps_minus", self.eps_minus),
            ("epsbar_plus", self.epsbar_plus),
            ("epsbar_minus", self.epsbar_minus),
        ] {
            let w = widen(e);
            if !(w.re.is_finite() && w.im.is_finite()) || w.norm() == 0.0 {
                return Err(TqError::InvalidParams(format!("{name} must be finite and nonzero")));
            }
        }
        if !(self.tol_exact > T::zero() && self.tol_trace > T::zero()) {
            return Err(TqError::InvalidParams("tolerances must be positive".into()));
        }
        if self.series_cap == 0 || self.sample_count == 0 {
            return Err(TqError::InvalidParams("series_cap and sample_count must be positive".into()));
        }
        Ok(())
    }

    /// Fock traces of the Q-operators converge only for `|q| > 1`.
    pub fn require_trace_regime(&self) -> TqResult<()> {
        let qn = widen(self.q()).norm();
        if qn > 1.0 {
            Ok(())
        } else {
            Err(TqError::UnsupportedRegime(format!(
                "Q-operator traces need |q| > 1, got |q| = {qn:.6}"
            )))
        }
    }

    /// The diagram-flip parameter swap: `s0 <-> s1`, `eps+ <-> eps-`,
    /// `epsbar+ <-> epsbar-`.
    pub fn zeta(&self) -> Self {
        Self {
            s0: self.s1,
            s1: self.s0,
            eps_plus: self.eps_minus,
            eps_minus: self.eps_plus,
            epsbar_plus: self.epsbar_minus,
            epsbar_minus: self.epsbar_plus,
            ..self.clone()
        }
    }

    /// Canonical text form hashed into report digests.
    pub fn canonical(&self) -> String {
        let c = |z: Cx<T>| {
            let w = widen(z);
            format!("{:.17e},{:.17e}", w.re, w.im)
        };
        format!(
            "p={};s0={};s1={};ep={};em={};ebp={};ebm={};tol_exact={:.17e};tol_trace={:.17e};cap={};seed={};samples={}",
            c(self.p),
            self.s0,
            self.s1,
            c(self.eps_plus),
            c(self.eps_minus),
            c(self.epsbar_plus),
            c(self.epsbar_minus),
            self.tol_exact.to_f64_lossy(),
            self.tol_trace.to_f64_lossy(),
            self.series_cap,
            self.rng_seed,
            self.sample_count
        )
    }

    /// First 16 hex digits of the SHA-256 of [`Params::canonical`].
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical().as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Converts the parameter bundle to another precision.
    pub fn cast<U: Real>(&self) -> Params<U> {
        let c = |z: Cx<T>| {
            let w = widen(z);
            cx::<U>(w.re, w.im)
        };
        Params {
            p: c(self.p),
            s0: self.s0,
            s1: self.s1,
            eps_plus: c(self.eps_plus),
            eps_minus: c(self.eps_minus),
            epsbar_plus: c(self.epsbar_plus),
            epsbar_minus: c(self.epsbar_minus),
            tol_exact: U::lit(self.tol_exact.to_f64_lossy()),
            tol_trace: U::lit(self.tol_trace.to_f64_lossy()),
            series_cap: self.series_cap,
            rng_seed: self.rng_seed,
            sample_count: self.sample_count,
            allow_general_gradation: self.allow_general_gradation,
        }
    }
}

/// Quantum space: `L` sites carrying the fundamental representation at
/// inhomogeneities `xi_1 .. xi_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec<T: Real> {
    pub xi: Vec<Cx<T>>,
}

/// Default length limit of a chain.
pub const MAX_CHAIN_LENGTH: usize = 5;

impl<T: Real> ChainSpec<T> {
    /// Validated constructor.
    pub fn new(xi: Vec<Cx<T>>) -> TqResult<Self> {
        let chain = Self { xi };
        chain.validate()?;
        Ok(chain)
    }

    /// Number of sites.
    pub fn len(&self) -> usize {
        self.xi.len()
    }

    /// True for the empty chain.
    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// Quantum-space dimension `2^L`.
    pub fn dim(&self) -> usize {
        1 << self.xi.len()
    }

    /// Generic inhomogeneities used by the default suites.
    pub fn generic(len: usize) -> Self {
        const XI: [(f64, f64); 5] = [(1.1, -0.1), (0.9, 0.05), (1.02, 0.07), (0.95, -0.12), (1.07, 0.11)];
        Self { xi: XI.iter().cycle().take(len).map(|&(a, b)| cx(a, b)).collect() }
    }

    /// `1 <= L <= 5`, `|xi_k|` in `[0.5, 2]`.
    pub fn validate(&self) -> TqResult<()> {
        if self.xi.is_empty() || self.xi.len() > MAX_CHAIN_LENGTH {
            return Err(TqError::InvalidParams(format!(
                "chain length {} outside 1..={MAX_CHAIN_LENGTH}",
                self.xi.len()
            )));
        }
        for (k, &x) in self.xi.iter().enumerate() {
            let n = widen(x).norm();
            if !(0.5..=2.0).contains(&n) {
                return Err(TqError::InvalidParams(format!("|xi_{}| = {n} outside [0.5, 2]", k + 1)));
            }
        }
        Ok(())
    }
}
