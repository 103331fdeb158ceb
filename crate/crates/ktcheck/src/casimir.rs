//! Casimir element, higher central elements and formal power-series
//! logarithms of commuting coefficients.

use tqlab_core::scalar::{ipow, one, re, zero};
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_tensor::{mat2, TensorOp};

/// `C = F E + (q^{H+1} + q^{-H-1}) / lambda^2` in the fundamental
/// representation, as a 2x2 matrix.
pub fn casimir_fe_form<T: Real>(params: &Params<T>) -> TensorOp<T> {
    let q = params.q();
    let l2 = params.lambda() * params.lambda();
    let fe = mat2(zero(), zero(), zero(), one());
    let shift = mat2((ipow(q, 2) + ipow(q, -2)) / l2, zero(), zero(), (one::<T>() + one::<T>()) / l2);
    fe.add(&shift).expect("2x2 sum")
}

/// `C = E F + (q^{H-1} + q^{-H+1}) / lambda^2` in the fundamental
/// representation, as a 2x2 matrix.
pub fn casimir_ef_form<T: Real>(params: &Params<T>) -> TensorOp<T> {
    let q = params.q();
    let l2 = params.lambda() * params.lambda();
    let ef = mat2(one(), zero(), zero(), zero());
    let shift = mat2((one::<T>() + one::<T>()) / l2, zero(), zero(), (ipow(q, 2) + ipow(q, -2)) / l2);
    ef.add(&shift).expect("2x2 sum")
}

/// Scalar value of the Casimir element in the fundamental representation,
/// `(q^2 + q^{-2}) / lambda^2`.
pub fn casimir_fundamental<T: Real>(params: &Params<T>) -> Cx<T> {
    casimir_fe_form(params).get(0, 0)
}

/// Logarithm of the formal series `1 + sum_{n>=1} f_n w^n` with scalar
/// coefficients: returns `g_1..g_len`.
pub fn scalar_series_log<T: Real>(f: &[Cx<T>]) -> Vec<Cx<T>> {
    let mut g: Vec<Cx<T>> = Vec::with_capacity(f.len());
    for n in 1..=f.len() {
        let mut acc = f[n - 1];
        for k in 1..n {
            acc = acc - re(T::lit(k as f64 / n as f64)) * g[k - 1] * f[n - k - 1];
        }
        g.push(acc);
    }
    g
}

/// Exponential of the formal series `sum_{n>=1} g_n w^n`: returns
/// `h_1..h_len` with `h_0 = 1` implied.
pub fn scalar_series_exp<T: Real>(g: &[Cx<T>]) -> Vec<Cx<T>> {
    let mut h: Vec<Cx<T>> = vec![one()];
    for n in 1..=g.len() {
        let mut acc = zero::<T>();
        for k in 1..=n {
            acc = acc + re(T::lit(k as f64)) * g[k - 1] * h[n - k];
        }
        h.push(acc / re(T::lit(n as f64)));
    }
    h.remove(0);
    h
}

/// Matrix version of [`scalar_series_log`]; the coefficients must commute
/// with each other (true for the imaginary root vectors, which are
/// functions of `H` and central elements).
pub fn series_log<T: Real>(f: &[TensorOp<T>]) -> Vec<TensorOp<T>> {
    let mut g: Vec<TensorOp<T>> = Vec::with_capacity(f.len());
    for n in 1..=f.len() {
        let mut acc = f[n - 1].clone();
        for k in 1..n {
            let term = g[k - 1].matmul(&f[n - k - 1]).expect("commuting coefficients");
            acc.axpy(re(T::lit(-(k as f64) / n as f64)), &term).expect("same shape");
        }
        g.push(acc);
    }
    g
}

/// Higher central element `C_k` in the fundamental representation, from
/// `sum_k (-1)^{k-1} C_k z^{-k} / k = log(1 + lambda^2 C z^{-1} + z^{-2})`.
pub fn central_ck<T: Real>(k: usize, params: &Params<T>) -> TqResult<Cx<T>> {
    if k == 0 {
        return Err(TqError::InvalidParams("C_k needs k >= 1".into()));
    }
    let l2c = params.lambda() * params.lambda() * casimir_fundamental(params);
    let mut f = vec![zero::<T>(); k];
    f[0] = l2c;
    if k >= 2 {
        f[1] = one();
    }
    let g = scalar_series_log(&f);
    let sign = if k % 2 == 1 { one::<T>() } else { -one::<T>() };
    Ok(sign * re(T::lit(k as f64)) * g[k - 1])
}
