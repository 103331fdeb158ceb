//! Truncated Fock representations of the q-oscillator algebras `Osc_1` and
//! `Osc_2`, Cartan functions, and the matrix realization of the
//! anti-involution `t`.
//!
//! Basis `|n>`, `n = 0..N-1`.  Flavor 1: `f|n> = |n+1>`,
//! `e|n> = q (1 - q^{-2n}) / lambda^2 |n-1>`, `h|n> = -2n|n>`.  Flavor 2 is
//! realized inside flavor 1 as `e_2 = f_1`, `f_2 = e_1`, `h_2 = -h_1`.
//! Generators map the top state out of the space, so exactly one relation
//! (`e f` on level `N-1`) is broken by truncation.

use tqlab_core::scalar::{ipow, one, widen, zero};
use tqlab_core::{Cx, Params, Real, Residual, TqError, TqResult};
use tqlab_tensor::TensorOp;

/// Which oscillator algebra a representation realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    One,
    Two,
}

impl Flavor {
    /// `1` or `2`.
    pub fn index(self) -> u8 {
        match self {
            Flavor::One => 1,
            Flavor::Two => 2,
        }
    }

    /// Parses `1` or `2`.
    pub fn from_index(a: u8) -> TqResult<Self> {
        match a {
            1 => Ok(Flavor::One),
            2 => Ok(Flavor::Two),
            _ => Err(TqError::InvalidParams(format!("flavor must be 1 or 2, got {a}"))),
        }
    }
}

/// Truncated Fock representation.
#[derive(Debug, Clone)]
pub struct FockRep<T: Real> {
    pub flavor: Flavor,
    pub cutoff: usize,
    /// Image of `e`.
    pub e: TensorOp<T>,
    /// Image of `f`.
    pub f: TensorOp<T>,
    /// Eigenvalue of `h` on every basis state.
    pub levels: Vec<i64>,
    q: Cx<T>,
    p: Cx<T>,
}

/// Coefficient `a_n = q (1 - q^{-2n}) / lambda^2` of `e_1 |n> = a_n |n-1>`.
pub fn lowering_coefficient<T: Real>(q: Cx<T>, n: usize) -> Cx<T> {
    let lam = q - q.inv();
    q * (one::<T>() - ipow(q, -2 * n as i64)) / (lam * lam)
}

/// Builds the truncated representation of the given flavor with `n` levels.
pub fn build_fock<T: Real>(flavor: Flavor, n: usize, params: &Params<T>) -> TqResult<FockRep<T>> {
    if n < 2 {
        return Err(TqError::InvalidParams(format!("Fock cutoff must be >= 2, got {n}")));
    }
    let q = params.q();
    let lam = widen(params.lambda()).norm();
    if lam < 1e-14 {
        return Err(TqError::DegenerateQ(lam));
    }
    let mut e1 = TensorOp::zeros(&[n]);
    let mut f1 = TensorOp::zeros(&[n]);
    for k in 1..n {
        e1.set(k - 1, k, lowering_coefficient(q, k));
        f1.set(k, k - 1, one());
    }
    let (e, f, sign) = match flavor {
        Flavor::One => (e1, f1, -2),
        Flavor::Two => (f1, e1, 2),
    };
    let levels = (0..n as i64).map(|k| sign * k).collect();
    Ok(FockRep { flavor, cutoff: n, e, f, levels, q, p: params.p })
}

impl<T: Real> FockRep<T> {
    /// `q^{k h / 2}`; `h` is even on every level so the exponent is integral.
    pub fn q_half_h(&self, k: i64) -> TensorOp<T> {
        TensorOp::diagonal(&self.levels.iter().map(|&h| ipow(self.q, k * h / 2)).collect::<Vec<_>>())
    }

    /// `p^{k h / 2} = q^{k h / (2s)}`.
    pub fn p_half_h(&self, k: i64) -> TensorOp<T> {
        TensorOp::diagonal(&self.levels.iter().map(|&h| ipow(self.p, k * h / 2)).collect::<Vec<_>>())
    }

    /// Identity on the Fock space.
    pub fn identity(&self) -> TensorOp<T> {
        TensorOp::identity(&[self.cutoff])
    }

    /// Residuals of the defining relations on levels `0..N-2`.
    pub fn relation_residuals(&self) -> TqResult<Vec<(&'static str, Residual)>> {
        let q = self.q;
        let lam = q - q.inv();
        let lam2 = lam * lam;
        let keep = self.cutoff - 1;
        let fe = self.f.matmul(&self.e)?;
        let ef = self.e.matmul(&self.f)?;
        let diag = |g: &dyn Fn(i64) -> Cx<T>| TensorOp::diagonal(&self.levels.iter().map(|&h| g(h)).collect::<Vec<_>>());
        let (fe_ref, ef_ref, comm_ref, qcomm_base, qcomm_ref) = match self.flavor {
            Flavor::One => (
                diag(&|h| q * (one::<T>() - ipow(q, h)) / lam2),
                diag(&|h| q * (one::<T>() - ipow(q, h - 2)) / lam2),
                diag(&|h| ipow(q, h) / lam),
                ipow(q, -2),
                diag(&|_| lam.inv()),
            ),
            Flavor::Two => (
                diag(&|h| q * (one::<T>() - ipow(q, -h - 2)) / lam2),
                diag(&|h| q * (one::<T>() - ipow(q, -h)) / lam2),
                diag(&|h| -ipow(q, -h) / lam),
                ipow(q, 2),
                diag(&|_| -q * q / lam),
            ),
        };
        let comm = ef.sub(&fe)?;
        let qcomm = ef.sub(&fe.scale(qcomm_base))?;
        let conj_e = self.q_half_h(2).matmul(&self.e)?.matmul(&self.q_half_h(-2))?;
        let conj_f = self.q_half_h(2).matmul(&self.f)?.matmul(&self.q_half_h(-2))?;
        let q2 = ipow(q, 2);
        let r = |a: &TensorOp<T>, b: &TensorOp<T>| a.restrict_slot(0, keep)?.rel_residual(&b.restrict_slot(0, keep)?);
        Ok(vec![
            ("fe", r(&fe, &fe_ref)?),
            ("ef", r(&ef, &ef_ref)?),
            ("commutator", r(&comm, &comm_ref)?),
            ("q-commutator", r(&qcomm, &qcomm_ref)?),
            ("cartan-e", r(&conj_e, &self.e.scale(q2))?),
            ("cartan-f", r(&conj_f, &self.f.scale(q2.inv()))?),
        ])
    }
}

/// Diagonal operator `f(n, h_n)` over the levels of a representation.
///
/// Fails with `PoleHit` if any entry is not finite.
pub fn cartan_diag<T: Real>(rep: &FockRep<T>, f: impl Fn(usize, i64) -> Cx<T>) -> TqResult<TensorOp<T>> {
    let mut values = Vec::with_capacity(rep.cutoff);
    for (n, &h) in rep.levels.iter().enumerate() {
        let v = f(n, h);
        let w = widen(v);
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(TqError::PoleHit(format!("Cartan function not finite on level {n}")));
        }
        values.push(v);
    }
    Ok(TensorOp::diagonal(&values))
}

/// Diagonal `D` realizing `t` as `X -> D^{-1} X^T D`.
///
/// Stored through the logarithms of consecutive ratios so that far levels
/// never overflow; only ratios `d_m / d_n` are ever formed.
#[derive(Debug, Clone)]
pub struct TConjugator<T: Real> {
    /// `log d_n` (any consistent branch).
    pub log_d: Vec<Cx<T>>,
}

/// Solves for `D` from `D^{-1} e^T D = q^{-h-1} f` and verifies the
/// companion relation `D^{-1} f^T D = e q^{h+1}`.
pub fn t_conjugator<T: Real>(rep: &FockRep<T>) -> TqResult<TConjugator<T>> {
    let n = rep.cutoff;
    let q = rep.q;
    let mut log_d = vec![zero::<T>(); n];
    // Row n, column n-1 (flavor 1) or n, n+1 (flavor 2) of the e-relation fixes d ratios.
    for k in 1..n {
        let h_hi = rep.levels[k];
        let h_lo = rep.levels[k - 1];
        // (e^T)[k, k-1] = e[k-1, k] for flavor 1; flavor 2 has e lower-triangular.
        let ratio = match rep.flavor {
            // d_k / d_{k-1} from entry (k, k-1): e[k-1,k] d_{k-1}/d_k = q^{-h_k - 1} f[k, k-1]
            Flavor::One => rep.e.get(k - 1, k) / (ipow(q, -h_hi - 1) * rep.f.get(k, k - 1)),
            // entry (k-1, k): e[k,k-1] d_k/d_{k-1} = q^{-h_{k-1}-1} f[k-1,k]
            Flavor::Two => ipow(q, -h_lo - 1) * rep.f.get(k - 1, k) / rep.e.get(k, k - 1),
        };
        log_d[k] = log_d[k - 1] + ratio.ln();
    }
    let tc = TConjugator { log_d };
    let keep = n - 1;
    let lhs = tc.apply(&rep.f)?;
    let rhs = rep.e.matmul(&cartan_diag(rep, |_, h| ipow(q, h + 1))?)?;
    let res = lhs.restrict_slot(0, keep)?.rel_residual(&rhs.restrict_slot(0, keep)?)?;
    if res.value > 1e-10 {
        return Err(TqError::NoSolution(format!("t-conjugator inconsistent on f (residual {:e})", res.value)));
    }
    Ok(tc)
}

impl<T: Real> TConjugator<T> {
    /// Explicit diagonal of `D` (may underflow for large cutoffs).
    pub fn diagonal(&self) -> Vec<Cx<T>> {
        self.log_d.iter().map(|l| l.exp()).collect()
    }

    /// `d_m / d_n`.
    pub fn ratio(&self, m: usize, n: usize) -> Cx<T> {
        (self.log_d[m] - self.log_d[n]).exp()
    }

    /// `t` on a single-slot Fock operator.
    pub fn apply(&self, x: &TensorOp<T>) -> TqResult<TensorOp<T>> {
        self.apply_on_slot(x, 0)
    }

    /// `t` on the Fock slot `slot` of a multi-slot operator, leaving the
    /// other slots untouched.
    pub fn apply_on_slot(&self, x: &TensorOp<T>, slot: usize) -> TqResult<TensorOp<T>> {
        let d = *x.dims().get(slot).ok_or_else(|| TqError::ShapeMismatch(format!("slot {slot} missing")))?;
        if d != self.log_d.len() {
            return Err(TqError::ShapeMismatch(format!("Fock slot has {d} levels, conjugator {}", self.log_d.len())));
        }
        let st = tqlab_tensor::strides(x.dims())[slot];
        let mut out = x.slot_transpose(slot)?;
        let side = out.side();
        for r in 0..side {
            let lr = (r / st) % d;
            for c in 0..side {
                let v = out.get(r, c);
                if v != zero() {
                    let lc = (c / st) % d;
                    out.set(r, c, v * self.ratio(lc, lr));
                }
            }
        }
        Ok(out)
    }
}

/// `t` on both slots of a Fock x C^2 operator: Fock anti-involution on slot 0
/// and ordinary transposition on slot 1.
pub fn t12<T: Real>(tc: &TConjugator<T>, x: &TensorOp<T>) -> TqResult<TensorOp<T>> {
    tc.apply_on_slot(&x.slot_transpose(1)?, 0)
}
