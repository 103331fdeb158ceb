//! Lattice T- and Q-operators.
//!
//! `Q^{(a)}(x) = tr_F( Kcb(1/x) L_{0L}(1/(x xi_L)) ... L_{01}(1/(x xi_1)) K(x)
//! Lbar_{01}(x/xi_1) ... Lbar_{0L}(x/xi_L) )` is evaluated as
//! `tr_F( W (K^{-1} A K) B )` with the diagonal level weights
//! `W = Kcb(1/x) K(x)`.  The individual K-entries grow like `|q|^{n^2}`, but
//! `W` decays geometrically in the convergent regime and the conjugation
//! only multiplies each L-factor entry `(n, n +- 1)` by a single ratio
//! `K_{n+1}/K_n` or its inverse, so nothing overflows.

use log::debug;
use tqlab_boundary::{dressed_k_t, k_ratios, kbar_matrix};
use tqlab_core::scalar::{ipow, one, widen};
use tqlab_core::{ChainSpec, Cx, Params, Real, TqError, TqResult};
use tqlab_fock::{build_fock, Flavor};
use tqlab_lax::{l_operator, LaxKind, LaxShape};
use tqlab_tensor::{SparseLocal, TensorOp};

/// Adaptive Fock-cutoff policy for the Q-operator trace.
#[derive(Debug, Clone)]
pub struct TraceOptions {
    /// First cutoff tried.
    pub initial_cutoff: usize,
    /// Largest cutoff tried; doubling stops here.
    pub max_cutoff: usize,
    /// The trace is converged once every level term in the top quarter of
    /// the traced range is below this fraction of the result.
    pub tail_tol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { initial_cutoff: 24, max_cutoff: 192, tail_tol: 1e-15 }
    }
}

/// A Q-operator together with the truncation it was evaluated at.
#[derive(Debug, Clone)]
pub struct QEval<T: Real> {
    pub op: TensorOp<T>,
    /// Fock cutoff used.
    pub cutoff: usize,
    /// Largest top-quarter level term relative to the result.
    pub tail: f64,
}

/// Parameters at which flavor-`a` K-operator formulas are evaluated.
fn k_params<T: Real>(flavor: Flavor, params: &Params<T>) -> Params<T> {
    match flavor {
        Flavor::One => params.clone(),
        Flavor::Two => params.zeta(),
    }
}

/// Level weights `W_n = Kcb_n(1/x) K_n(x)
/// = q^{2n} prod_{k<=n} (1 + A u q^{2k-1}) / (1 + B u q^{2k-1}) / (1 + B u q^{2n+1})`
/// with `u = x^s`, `A = e-/e+`, `B = eb-/eb+` of the flavor's K-parameters.
pub fn trace_weights<T: Real>(flavor: Flavor, x: Cx<T>, n: usize, params: &Params<T>) -> TqResult<Vec<Cx<T>>> {
    let pk = k_params(flavor, params);
    let q = pk.q();
    let u = ipow(x, pk.s() as i64);
    let a = pk.eps_minus / pk.eps_plus * u;
    let b = pk.epsbar_minus / pk.epsbar_plus * u;
    let denom = |k: i64| -> TqResult<Cx<T>> {
        let d = one::<T>() + b * ipow(q, 2 * k - 1);
        if widen(d).norm() < tqlab_boundary::kmat::K_POLE_EPS {
            return Err(TqError::PoleHit(format!("Kcheckbar factor {k} vanishes")));
        }
        Ok(d)
    };
    let mut out = Vec::with_capacity(n);
    let mut acc = one::<T>();
    for lvl in 0..n as i64 {
        if lvl > 0 {
            acc = acc * q * q * (one::<T>() + a * ipow(q, 2 * lvl - 1)) / denom(lvl)?;
        }
        out.push(acc / denom(lvl + 1)?);
    }
    Ok(out)
}

/// `T(x) = tr_0( Kbar_0(1/x) R_{0L}(1/(x xi_L)) ... K_0(x) Rbar_{01}(x/xi_1) ... )`
/// on `(C^2)^L`.
pub fn t_operator<T: Real>(x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    let dressed = dressed_k_t(x, chain, params)?;
    let kb = SparseLocal::from_dense(&kbar_matrix(x.inv(), params));
    dressed.embedded_mul(&kb, &[0])?.partial_trace(0)
}

/// Q-operator at a fixed cutoff, with the norms of the traced level blocks.
pub fn q_operator_fixed<T: Real>(
    flavor: Flavor,
    x: Cx<T>,
    chain: &ChainSpec<T>,
    params: &Params<T>,
    cutoff: usize,
) -> TqResult<(TensorOp<T>, Vec<f64>)> {
    let l = chain.len();
    if cutoff < l + 3 {
        return Err(TqError::InvalidParams(format!("cutoff {cutoff} too small for {l} sites")));
    }
    let rep = build_fock(flavor, cutoff, params)?;
    let weights = trace_weights(flavor, x, cutoff, params)?;
    let ratios = k_ratios(flavor, x, cutoff - 1, params)?;
    let mut dims = vec![cutoff];
    dims.extend(std::iter::repeat_n(2, l));
    let qdim = 1usize << l;
    let side = cutoff * qdim;
    let mut m = TensorOp::zeros(&dims);
    for r in 0..side {
        m.set(r, r, weights[r / qdim]);
    }
    // K^{-1} L K: entry (n, n+1) picks up K_{n+1}/K_n, entry (n, n-1) its inverse.
    let conj = |r: usize, c: usize, v: Cx<T>| {
        let (n, k) = (r / 2, c / 2);
        if k == n + 1 {
            v * ratios[n]
        } else if k + 1 == n {
            v / ratios[k]
        } else {
            v
        }
    };
    for site in (0..l).rev() {
        let lop = l_operator(LaxKind::new(LaxShape::Plain, flavor), (x * chain.xi[site]).inv(), &rep, params)?;
        m = m.mul_embedded(&SparseLocal::from_dense(&lop).map(conj), &[0, site + 1])?;
    }
    for site in 0..l {
        let lop = l_operator(LaxKind::new(LaxShape::Bar, flavor), x / chain.xi[site], &rep, params)?;
        m = m.mul_embedded(&SparseLocal::from_dense(&lop), &[0, site + 1])?;
    }
    // Levels whose diagonal block can reach the top state are not traced.
    let keep = cutoff - l - 1;
    let mut out = TensorOp::zeros(&dims[1..]);
    let mut terms = Vec::with_capacity(keep);
    for n in 0..keep {
        let mut norm2 = 0.0;
        for i in 0..qdim {
            for j in 0..qdim {
                let v = m.get(n * qdim + i, n * qdim + j);
                norm2 += widen(v).norm_sqr();
                out.add_at(i, j, v);
            }
        }
        terms.push(norm2.sqrt());
    }
    Ok((out, terms))
}

/// Largest level term in the top quarter of the traced range, relative to
/// `scale`, and the first/last terms of that quarter.
fn tail_stats(terms: &[f64], scale: f64) -> (f64, f64, f64) {
    let quarter = (terms.len() / 4).max(2).min(terms.len());
    let top = &terms[terms.len() - quarter..];
    let worst = top.iter().cloned().fold(0.0_f64, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) });
    (worst / scale.max(f64::MIN_POSITIVE), top[0], top[top.len() - 1])
}

/// Q-operator with adaptive Fock cutoff.
///
/// The cutoff doubles from `initial_cutoff` until the top quarter of the
/// traced levels contributes less than `tail_tol`.  At the cap a growing
/// tail is reported as [`TqError::TraceDiverging`], a slowly decaying one as
/// [`TqError::TruncationNotConverged`].
pub fn q_operator<T: Real>(flavor: Flavor, x: Cx<T>, chain: &ChainSpec<T>, params: &Params<T>, opts: &TraceOptions) -> TqResult<QEval<T>> {
    params.require_trace_regime()?;
    let mut cutoff = opts.initial_cutoff.max(chain.len() + 8);
    let mut prev: Option<TensorOp<T>> = None;
    loop {
        let (op, terms) = q_operator_fixed(flavor, x, chain, params, cutoff)?;
        let norm = op.frobenius();
        let (tail, first, last) = tail_stats(&terms, norm);
        debug!("Q^({}) cutoff {cutoff}: tail {tail:e}", flavor.index());
        if norm.is_finite() && tail < opts.tail_tol {
            return Ok(QEval { op, cutoff, tail });
        }
        if cutoff * 2 > opts.max_cutoff {
            if !norm.is_finite() || !(last < first) {
                return Err(TqError::TraceDiverging { from: first, to: last });
            }
            let last_change = match &prev {
                Some(p) => op.rel_residual(p)?.value,
                None => f64::INFINITY,
            };
            return Err(TqError::TruncationNotConverged { cap: cutoff, last_change });
        }
        prev = Some(op);
        cutoff *= 2;
    }
}

/// `eta^k` with `eta = diag(q, q^{-1})^{(x) L}`.
pub fn eta<T: Real>(len: usize, k: i64, params: &Params<T>) -> TensorOp<T> {
    let q = params.q();
    tqlab_tensor::kron_power(&TensorOp::diagonal(&[ipow(q, k), ipow(q, -k)]), len)
}

/// Total spin `sum_k sigma^3_k` on `(C^2)^L`.
pub fn total_sz<T: Real>(len: usize) -> TensorOp<T> {
    TensorOp::from_fn(&vec![2; len], |r, c| {
        if r == c {
            let down = r.count_ones() as i64;
            Cx::new(T::lit((len as i64 - 2 * down) as f64), T::zero())
        } else {
            Cx::new(T::zero(), T::zero())
        }
    })
}

/// `flip^{(x) L}`.
pub fn flip_all<T: Real>(len: usize) -> TensorOp<T> {
    tqlab_tensor::kron_power(&tqlab_tensor::flip(), len)
}
