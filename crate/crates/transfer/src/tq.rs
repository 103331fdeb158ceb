//! Baxter TQ relation and the scalar functions entering it.

use crate::ops::{eta, q_operator, t_operator, TraceOptions};
use tqlab_boundary::omega;
use tqlab_core::scalar::{ipow, one};
use tqlab_core::{ChainSpec, Cx, Params, Real, Residual, TqResult};
use tqlab_fock::Flavor;
use tqlab_tensor::TensorOp;

/// `chi_1(x) = q^L prod_k (1 - q^{-2} (x xi_k)^{-s}) (1 - q^{-2} (x/xi_k)^{-s})`.
pub fn chi1<T: Real>(x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>) -> Cx<T> {
    let q = params.q();
    let s = params.s() as i64;
    let q2 = q * q;
    chain.xi.iter().fold(ipow(q, chain.len() as i64), |acc, &xi| {
        acc * (one::<T>() - ipow(x * xi, -s) / q2) * (one::<T>() - ipow(x / xi, -s) / q2)
    })
}

/// `chi_2(x) = q^L prod_k (1 - (x xi_k)^{-s}) (1 - (x/xi_k)^{-s})`.
pub fn chi2<T: Real>(x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>) -> Cx<T> {
    let q = params.q();
    let s = params.s() as i64;
    chain.xi.iter().fold(ipow(q, chain.len() as i64), |acc, &xi| {
        acc * (one::<T>() - ipow(x * xi, -s)) * (one::<T>() - ipow(x / xi, -s))
    })
}

/// Scalar coefficients of the TQ relation at `x` for one flavor:
/// `(prefactor, c1, c2)` in
/// `prefactor Q(px) T(x) = c1 Q(x/p) eta^{3-2a} + c2 Q(p^3 x) eta^{2a-3}`.
pub fn tq_coefficients<T: Real>(flavor: Flavor, x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
    let q = params.q();
    let s = params.s() as i64;
    let w = omega(flavor, x, params);
    let pre = q * q - ipow(q, 4) * ipow(x, 2 * s);
    (pre, w.w1 * w.wb1 * chi1(x, chain, params), w.w2 * w.wb2 * chi2(x, chain, params))
}

/// Both sides of the TQ relation at `x`, built from the supplied
/// `T(x)`, `Q(px)`, `Q(x/p)`, `Q(p^3 x)`.
pub fn tq_sides<T: Real>(
    flavor: Flavor,
    x: Cx<T>,
    chain: &ChainSpec<T>,
    params: &Params<T>,
    t: &TensorOp<T>,
    [q_px, q_xp, q_p3x]: [&TensorOp<T>; 3],
) -> TqResult<(TensorOp<T>, TensorOp<T>)> {
    let (pre, c1, c2) = tq_coefficients(flavor, x, chain, params);
    let k = 3 - 2 * flavor.index() as i64;
    let (first, second) = (eta(chain.len(), k, params), eta(chain.len(), -k, params));
    let lhs = q_px.matmul(t)?.scale(pre);
    let mut rhs = q_xp.matmul(&first)?.scale(c1);
    rhs.axpy(c2, &q_p3x.matmul(&second)?)?;
    Ok((lhs, rhs))
}

/// Relative TQ residual `||lhs - rhs|| / max(1, ||rhs||)` at one point.
pub fn tq_residual<T: Real>(flavor: Flavor, x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>, opts: &TraceOptions) -> TqResult<Residual> {
    let p = params.p;
    let args = [p * x, x / p, p * p * p * x];
    let mut qs = Vec::with_capacity(3);
    let (t, q_res) = rayon::join(
        || t_operator(x, chain, params),
        || {
            use rayon::prelude::*;
            args.par_iter().map(|&z| q_operator(flavor, z, chain, params, opts).map(|e| e.op)).collect::<TqResult<Vec<_>>>()
        },
    );
    qs.extend(q_res?);
    let (lhs, rhs) = tq_sides(flavor, x, chain, params, &t?, [&qs[0], &qs[1], &qs[2]])?;
    lhs.rel_residual(&rhs)
}
