//! q-special functions: q-numbers, q-exponentials, q-Pochhammer symbols and
//! the normalization functions of the R- and L-operators.

use crate::error::{TqError, TqResult};
use crate::params::Params;
use crate::scalar::{ipow, one, re, widen, zero, Cx, Real};

/// Factors closer to zero than this are reported as poles.
pub const POLE_EPS: f64 = 1e-12;
/// Relative size below which a series or product tail is dropped.
pub const TAIL_EPS: f64 = 1e-18;

fn norm<T: Real>(z: Cx<T>) -> f64 {
    widen(z).norm()
}

/// `q^x` for complex `x`, taken as `exp(s x log p)` so that integer `x`
/// reproduces integer powers of `q` exactly.
pub fn q_pow<T: Real>(x: Cx<T>, params: &Params<T>) -> Cx<T> {
    let s = re(T::lit(params.s() as f64));
    (x * s * params.p.ln()).exp()
}

/// q-number `[x]_q = (q^x - q^{-x}) / (q - q^{-1})`.
pub fn q_bracket<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    let lam = params.lambda();
    let ln = norm(lam);
    if ln < 1e-14 {
        return Err(TqError::DegenerateQ(ln));
    }
    Ok((q_pow(x, params) - q_pow(-x, params)) / lam)
}

/// q-Pochhammer symbol `(a; b)_n = prod_{j<n} (1 - a b^j)` with explicit base.
///
/// `n = None` is the infinite product, which needs `|b| < 1` and is cut once
/// `|a b^j|` drops below `1e-18`.
pub fn q_pochhammer<T: Real>(a: Cx<T>, n: Option<usize>, base: Cx<T>, cap: usize) -> TqResult<Cx<T>> {
    let mut acc = one::<T>();
    let mut term = a;
    match n {
        Some(n) => {
            for _ in 0..n {
                acc = acc * (one::<T>() - term);
                term = term * base;
            }
            Ok(acc)
        }
        None => {
            if norm(base) >= 1.0 {
                return Err(TqError::SeriesNotConverged(format!(
                    "infinite q-Pochhammer needs |base| < 1, got {}",
                    norm(base)
                )));
            }
            for _ in 0..cap {
                if norm(term) < TAIL_EPS {
                    return Ok(acc);
                }
                acc = acc * (one::<T>() - term);
                term = term * base;
            }
            Err(TqError::SeriesNotConverged(format!("q-Pochhammer tail still {:e} after {cap} factors", norm(term))))
        }
    }
}

/// Base of a q-exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpBase {
    /// `q^2`.
    QSquared,
    /// `q^{-2}`.
    QInvSquared,
}

impl ExpBase {
    /// Numerical value of the base.
    pub fn value<T: Real>(self, params: &Params<T>) -> Cx<T> {
        match self {
            ExpBase::QSquared => params.qp(2),
            ExpBase::QInvSquared => params.qp(-2),
        }
    }

    /// The inverted base.
    pub fn inverted(self) -> Self {
        match self {
            ExpBase::QSquared => ExpBase::QInvSquared,
            ExpBase::QInvSquared => ExpBase::QSquared,
        }
    }
}

/// Product form of `exp_b(z)`:
/// `1 / ((1-b) z; b)_inf` for `|b| < 1` and `((1/b - 1) z; 1/b)_inf` for `|b| > 1`.
pub fn q_exp_product<T: Real>(z: Cx<T>, b: Cx<T>, cap: usize) -> TqResult<Cx<T>> {
    let nb = norm(b);
    if (nb - 1.0).abs() < 1e-12 {
        return Err(TqError::SeriesNotConverged("q-exponential with base on the unit circle".into()));
    }
    let (mut term, step, invert) = if nb < 1.0 { ((one::<T>() - b) * z, b, true) } else { ((b.inv() - one::<T>()) * z, b.inv(), false) };
    let mut acc = one::<T>();
    for _ in 0..cap {
        if norm(term) < TAIL_EPS {
            return if invert { Ok(acc.inv()) } else { Ok(acc) };
        }
        let factor = one::<T>() - term;
        if norm(factor) < POLE_EPS {
            return Err(TqError::PoleHit(format!("q-exponential factor vanishes at z = {}", widen(z))));
        }
        acc = acc * factor;
        term = term * step;
    }
    Err(TqError::SeriesNotConverged(format!("q-exponential product not converged after {cap} factors")))
}

/// Defining series `sum_k z^k / (k)_b!` with `(k)_b = (1 - b^k)/(1 - b)`.
///
/// Returns `None` when the terms have not decayed below `1e-18` relative to
/// the partial sum within `cap` terms.
pub fn q_exp_series<T: Real>(z: Cx<T>, b: Cx<T>, cap: usize) -> Option<Cx<T>> {
    let mut sum = one::<T>();
    let mut term = one::<T>();
    let mut bk = one::<T>();
    for k in 1..=cap {
        bk = bk * b;
        let qk = (one::<T>() - bk) / (one::<T>() - b);
        term = term * z / qk;
        sum = sum + term;
        let nt = norm(term);
        if !nt.is_finite() {
            return None;
        }
        if k > 2 && nt < TAIL_EPS * norm(sum).max(1.0) {
            return Some(sum);
        }
    }
    None
}

/// `exp_b(z)` with `b` one of `q^{+-2}`; `inverse` returns `exp_{1/b}(-z)`,
/// which equals `exp_b(z)^{-1}`.
///
/// The product form is cross-checked against the series whenever the latter
/// converges within the series cap.
pub fn q_exp<T: Real>(z: Cx<T>, base: ExpBase, params: &Params<T>, inverse: bool) -> TqResult<Cx<T>> {
    let (z, base) = if inverse { (-z, base.inverted()) } else { (z, base) };
    let b = base.value(params);
    let value = q_exp_product(z, b, params.series_cap)?;
    if let Some(series) = q_exp_series(z, b, params.series_cap) {
        let scale = norm(value).max(1.0);
        let diff = norm(series - value);
        // 1e-9 in double precision, proportionally looser in single precision
        let tol = 1e-9_f64.max(1e7 * T::epsilon().to_f64_lossy());
        if diff > tol * scale {
            return Err(TqError::SeriesNotConverged(format!(
                "q-exponential product and series disagree by {diff:e}"
            )));
        }
    }
    Ok(value)
}

/// The three normalization factors of the R- and L-operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormFunctions<T: Real> {
    /// `phi(x) = exp(-Lambda(x^s / q))`.
    pub phi: Cx<T>,
    /// `phi1(x) = exp(-Phi(x^s))`.
    pub phi1: Cx<T>,
    /// `phi1_check(x) = -x^{-s} q^{-1} exp(-Phi(x^s q^2))`.
    pub phi1_check: Cx<T>,
}

/// `|q|` folded outside the unit disc; both series are symmetric in `q <-> 1/q`.
fn folded_q<T: Real>(params: &Params<T>) -> Cx<T> {
    let q = params.q();
    if norm(q) >= 1.0 {
        q
    } else {
        q.inv()
    }
}

fn sum_series<T: Real>(name: &str, ratio: Cx<T>, cap: usize, coeff: impl Fn(usize) -> Cx<T>) -> TqResult<Cx<T>> {
    if norm(ratio) >= 1.0 {
        return Err(TqError::SeriesNotConverged(format!(
            "{name}: geometric ratio {} outside the unit disc",
            norm(ratio)
        )));
    }
    let mut sum = zero::<T>();
    let mut pow = one::<T>();
    for k in 1..=cap {
        pow = pow * ratio;
        let term = pow * coeff(k);
        sum = sum + term;
        if norm(term) < 1e-17 * norm(sum).max(1e-300) || norm(pow) < 1e-300 {
            return Ok(sum);
        }
    }
    Err(TqError::SeriesNotConverged(format!("{name}: not converged after {cap} terms")))
}

/// `Phi(u) = sum_k u^k / (k (q^k + q^{-k}))`.
pub fn big_phi<T: Real>(u: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    let r = folded_q(params);
    let r2 = r * r;
    sum_series("Phi", u / r, params.series_cap, |k| {
        let kk = re(T::lit(k as f64));
        (kk * (one::<T>() + ipow(r2, -(k as i64)))).inv()
    })
}

/// `Lambda(u) = sum_k (q^{2k} + q^{-2k}) u^k / (k (q^k + q^{-k}))`.
pub fn big_lambda<T: Real>(u: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    let r = folded_q(params);
    let r2 = r * r;
    sum_series("Lambda", u * r, params.series_cap, |k| {
        let kk = re(T::lit(k as f64));
        let m2 = ipow(r2, -(k as i64));
        (one::<T>() + m2 * m2) / (kk * (one::<T>() + m2))
    })
}

/// `phi(x) = exp(-Lambda(x^s q^{-1}))`.
pub fn phi<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    let u = ipow(x, params.s() as i64) / params.q();
    Ok((-big_lambda(u, params)?).exp())
}

/// `phi1(x) = exp(-Phi(x^s))`.
pub fn phi1<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    Ok((-big_phi(ipow(x, params.s() as i64), params)?).exp())
}

/// `phi1_check(x) = -x^{-s} q^{-1} exp(-Phi(x^s q^2))`.
pub fn phi1_check<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<Cx<T>> {
    let xs = ipow(x, params.s() as i64);
    let pref = -(xs * params.q()).inv();
    Ok(pref * (-big_phi(xs * params.qp(2), params)?).exp())
}

/// All three normalization factors at `x`.
pub fn norm_functions<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<NormFunctions<T>> {
    Ok(NormFunctions { phi: phi(x, params)?, phi1: phi1(x, params)?, phi1_check: phi1_check(x, params)? })
}

/// Brute-force partial sum used as an independent oracle in tests.
pub fn direct_series<T: Real>(u: Cx<T>, terms: usize, coeff: impl Fn(usize) -> Cx<T>) -> Cx<T> {
    let mut sum = zero::<T>();
    for k in 1..=terms {
        sum = sum + ipow(u, k as i64) * coeff(k);
    }
    sum
}
