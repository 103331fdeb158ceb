//! Reconstruction of the fundamental R-matrix and of the flavor-1
//! q-oscillator L-operator from the ordered product formula of the
//! universal R-matrix.

use crate::roots::{closed_image, q_int, Species};
use tqlab_core::scalar::{ipow, one, re, widen, zero};
use tqlab_core::special::{phi, phi1};
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_fock::{build_fock, Flavor};
use tqlab_tensor::{mat2, TensorOp};

/// Default number of factors kept in every ordered product.
pub const DEFAULT_KMAX: usize = 40;
/// Largest admissible deviation from the identity of the first omitted factor.
pub const TAIL_TOL: f64 = 1e-12;

fn require_small_x<T: Real>(x: Cx<T>, params: &Params<T>) -> TqResult<()> {
    let xs = widen(ipow(x, params.s() as i64)).norm();
    let qn = widen(params.q()).norm();
    if xs >= 1.0 || xs / qn >= 1.0 {
        return Err(TqError::SeriesNotConverged(format!("product formula needs |x^s| < 1 and |x^s/q| < 1, got |x^s| = {xs}")));
    }
    Ok(())
}

fn tail_check(deviation: f64) -> TqResult<()> {
    if deviation.is_finite() && deviation <= TAIL_TOL {
        Ok(())
    } else {
        Err(TqError::TailTooLarge(deviation))
    }
}

/// Exponent matrix of the Cartan factor, `lambda k / [2k]_q e_{k delta} (x) f_{k delta}`,
/// with the first slot at `x` and the second at `1`.
fn cartan_term<T: Real>(k: usize, x: Cx<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    let e = closed_image(Species::EDelta, k, x, params)?;
    let f = closed_image(Species::FDelta, k, one(), params)?;
    Ok(e.kron(&f).scale(params.lambda() * re(T::lit(k as f64)) / q_int(2 * k as i64, params)))
}

/// `lambda e_r (x) f_r` for a real root `r`; its square vanishes, so the
/// q-exponential of it is `1 +` itself.
fn real_root_term<T: Real>(e: Species, f: Species, k: usize, x: Cx<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    let a = closed_image(e, k, x, params)?;
    let b = closed_image(f, k, one(), params)?;
    Ok(a.kron(&b).scale(params.lambda()))
}

fn one_plus<T: Real>(m: &TensorOp<T>) -> TensorOp<T> {
    TensorOp::identity(m.dims()).add(m).expect("same shape")
}

/// Exponential of a diagonal operator.
fn exp_diagonal<T: Real>(m: &TensorOp<T>) -> TqResult<TensorOp<T>> {
    let n = m.side();
    for r in 0..n {
        for c in 0..n {
            if r != c && m.get(r, c) != zero() {
                return Err(TqError::ShapeMismatch("Cartan exponent is not diagonal".into()));
            }
        }
    }
    let d: Vec<Cx<T>> = (0..n).map(|i| m.get(i, i).exp()).collect();
    TensorOp::diagonal(&d).with_dims(m.dims())
}

/// `R(x) = q^{1/2} phi(x) Rbar^+ Rbar^0 Rbar^- q^{H (x) H / 2}` evaluated in
/// `ev_x (x) ev_1`, with every ordered product truncated after `kmax`
/// factors.  `q^{1/2} q^{H (x) H / 2} = diag(q, 1, 1, q)` involves integer
/// powers only.
pub fn reconstruct_r<T: Real>(x: Cx<T>, kmax: usize, params: &Params<T>) -> TqResult<TensorOp<T>> {
    let (r, deviation) = reconstruct_r_truncated(x, kmax, params)?;
    tail_check(deviation)?;
    Ok(r)
}

/// [`reconstruct_r`] without the tail check: the truncated product and the
/// deviation from the identity of the first omitted factor.
pub fn reconstruct_r_truncated<T: Real>(x: Cx<T>, kmax: usize, params: &Params<T>) -> TqResult<(TensorOp<T>, f64)> {
    require_small_x(x, params)?;
    let dims = [2, 2];
    let mut plus = TensorOp::identity(&dims);
    let mut minus = TensorOp::identity(&dims);
    let mut cartan = TensorOp::zeros(&dims);
    for k in 0..kmax {
        plus = plus.matmul(&one_plus(&real_root_term(Species::EAlpha, Species::FAlpha, k, x, params)?))?;
        minus = one_plus(&real_root_term(Species::EDeltaAlpha, Species::FDeltaAlpha, k, x, params)?).matmul(&minus)?;
        if k >= 1 {
            cartan.axpy(one(), &cartan_term(k, x, params)?)?;
        }
    }
    let deviation = [
        real_root_term(Species::EAlpha, Species::FAlpha, kmax, x, params)?.max_abs(),
        real_root_term(Species::EDeltaAlpha, Species::FDeltaAlpha, kmax, x, params)?.max_abs(),
        cartan_term(kmax.max(1), x, params)?.max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let q = params.q();
    let cartan_part = TensorOp::diagonal(&[q, one(), one(), q]).with_dims(&dims)?;
    let prod = TensorOp::chain(&[&plus, &exp_diagonal(&cartan)?, &minus, &cartan_part])?;
    Ok((prod.scale(phi(x, params)?), deviation))
}

/// Diagonal of the middle factor `exp(sum_k (-1)^{k-1} x^{sk} / [2k]_q f_{k delta})`
/// in the fundamental representation, truncated after `kmax` terms.
pub fn l1_cartan_factor<T: Real>(x: Cx<T>, kmax: usize, params: &Params<T>) -> TqResult<TensorOp<T>> {
    require_small_x(x, params)?;
    let s = params.s() as i64;
    let term = |k: usize| -> TqResult<TensorOp<T>> {
        let sign = if k % 2 == 1 { one::<T>() } else { -one::<T>() };
        Ok(closed_image(Species::FDelta, k, one(), params)?.scale(sign * ipow(x, s * k as i64) / q_int(2 * k as i64, params)))
    };
    let mut sum = TensorOp::zeros(&[2]);
    for k in 1..=kmax {
        sum.axpy(one(), &term(k)?)?;
    }
    tail_check(term(kmax + 1)?.max_abs())?;
    exp_diagonal(&sum)
}

/// Flavor-1 L-operator on `Fock x C^2` from its product form
/// `phi1(x) (1 + lambda x^{s1} e (x) F) D(x) (1 + lambda x^{s0} f (x) E) q^{h (x) H / 2}`
/// with `D(x)` from [`l1_cartan_factor`].
pub fn reconstruct_l1<T: Real>(x: Cx<T>, cutoff: usize, kmax: usize, params: &Params<T>) -> TqResult<TensorOp<T>> {
    let rep = build_fock(Flavor::One, cutoff, params)?;
    let (s0, s1) = (params.s0 as i64, params.s1 as i64);
    let lam = params.lambda();
    let big_e = mat2(zero(), one(), zero(), zero());
    let big_f = mat2(zero(), zero(), one(), zero());
    let first = one_plus(&rep.e.kron(&big_f).scale(lam * ipow(x, s1)));
    let middle = rep.identity().kron(&l1_cartan_factor(x, kmax, params)?);
    let third = one_plus(&rep.f.kron(&big_e).scale(lam * ipow(x, s0)));
    let q = params.q();
    let mut d = Vec::with_capacity(2 * cutoff);
    for &h in &rep.levels {
        d.push(ipow(q, h / 2));
        d.push(ipow(q, -h / 2));
    }
    let last = TensorOp::diagonal(&d).with_dims(&[cutoff, 2])?;
    Ok(TensorOp::chain(&[&first, &middle, &third, &last])?.scale(phi1(x, params)?))
}
