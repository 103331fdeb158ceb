//! Diagonal K-matrices and the diagonal q-oscillator K-operators.

use tqlab_core::scalar::{ipow, one, widen, zero};
use tqlab_core::special::{q_exp, ExpBase};
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_fock::{Flavor, FockRep};
use tqlab_tensor::{mat2, TensorOp};

/// Product factors closer to zero than this reject the spectral point.
pub const K_POLE_EPS: f64 = 1e-8;

/// `K(x) = diag(x^{s0} e+ + x^{-s1} e-, x^{-s0} e+ + x^{s1} e-)`.
pub fn k_matrix<T: Real>(x: Cx<T>, params: &Params<T>) -> TensorOp<T> {
    let (s0, s1) = (params.s0 as i64, params.s1 as i64);
    let (ep, em) = (params.eps_plus, params.eps_minus);
    mat2(ipow(x, s0) * ep + ipow(x, -s1) * em, zero(), zero(), ipow(x, -s0) * ep + ipow(x, s1) * em)
}

/// `Kbar(x) = diag(q^{-1} x^{s0} eb+ + q x^{-s1} eb-, q x^{-s0} eb+ + q^{-1} x^{s1} eb-)`.
pub fn kbar_matrix<T: Real>(x: Cx<T>, params: &Params<T>) -> TensorOp<T> {
    let (s0, s1) = (params.s0 as i64, params.s1 as i64);
    let (ep, em) = (params.epsbar_plus, params.epsbar_minus);
    let q = params.q();
    mat2(
        ipow(x, s0) * ep / q + q * ipow(x, -s1) * em,
        zero(),
        zero(),
        q * ipow(x, -s0) * ep + ipow(x, s1) * em / q,
    )
}

/// Which K-operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KOpKind {
    /// `K^{(a)}(x)`, solving the reflection equation with `L`, `Lbar`.
    K,
    /// `Kcheckbar^{(a)}(x)`, solving the dual equation with `Lcheck`, `Lcheckbar`.
    CheckBar,
}

/// Parameters the flavor-1 formulas are evaluated at: flavor 2 is the
/// flavor-1 solution with `zeta`-swapped parameters on the same level basis.
fn flavor_params<T: Real>(flavor: Flavor, params: &Params<T>) -> Params<T> {
    match flavor {
        Flavor::One => params.clone(),
        Flavor::Two => params.zeta(),
    }
}

fn check_factor<T: Real>(f: Cx<T>, what: &str, k: usize) -> TqResult<()> {
    if widen(f).norm() < K_POLE_EPS {
        return Err(TqError::PoleHit(format!("{what} product factor {k} vanishes")));
    }
    Ok(())
}

/// Ratios `r_n = K_{n+1} / K_n`, `n = 0..len-1`, of the normalized
/// `K^{(a)}(x)`: `r_n = x^{-2 s0} (1 + (e-/e+) x^s q^{2n+1})`.
///
/// The entries themselves grow like `|q|^{n^2}`; long products should be
/// built from these ratios.
pub fn k_ratios<T: Real>(flavor: Flavor, x: Cx<T>, len: usize, params: &Params<T>) -> TqResult<Vec<Cx<T>>> {
    let pf = flavor_params(flavor, params);
    let q = pf.q();
    let a = pf.eps_minus / pf.eps_plus * ipow(x, pf.s() as i64);
    let shift = ipow(x, -2 * pf.s0 as i64);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let f = one::<T>() + a * ipow(q, 2 * n as i64 + 1);
        check_factor(f, "K", n + 1)?;
        out.push(shift * f);
    }
    Ok(out)
}

/// Level entries of a normalized K-operator (`K_0 = 1` for `K`).
///
/// `K_n = x^{-2 s0 n} prod_{k=1}^{n} (1 + (e-/e+) x^s q^{2k-1})` and
/// `Kcheckbar_n = x^{-2 s0 n} q^{2n} / prod_{k=1}^{n+1} (1 + (eb-/eb+) x^{-s} q^{2k-1})`.
pub fn k_operator_levels<T: Real>(kind: KOpKind, flavor: Flavor, x: Cx<T>, n: usize, params: &Params<T>) -> TqResult<Vec<Cx<T>>> {
    let pf = flavor_params(flavor, params);
    let q = pf.q();
    let shift = ipow(x, -2 * pf.s0 as i64);
    let mut out = Vec::with_capacity(n);
    match kind {
        KOpKind::K => {
            let ratios = k_ratios(Flavor::One, x, n.saturating_sub(1), &pf)?;
            let mut v = one::<T>();
            out.push(v);
            for r in ratios {
                v = v * r;
                out.push(v);
            }
        }
        KOpKind::CheckBar => {
            let b = pf.epsbar_minus / pf.epsbar_plus * ipow(x, -(pf.s() as i64));
            let first = one::<T>() + b * q;
            check_factor(first, "Kcheckbar", 1)?;
            let mut v = first.inv();
            out.push(v);
            for k in 1..n {
                let f = one::<T>() + b * ipow(q, 2 * k as i64 + 1);
                check_factor(f, "Kcheckbar", k + 1)?;
                v = v * shift * q * q / f;
                out.push(v);
            }
        }
    }
    for (lvl, v) in out.iter().enumerate() {
        let w = widen(*v);
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(TqError::InvalidParams(format!("K-operator entries overflow on level {lvl}; lower the Fock cutoff")));
        }
    }
    Ok(out)
}

/// Diagonal K-operator on the levels of `rep`.
///
/// Flavor 2 is the flavor-1 formula at `zeta`-swapped parameters, written on
/// the same level basis.
pub fn k_operator<T: Real>(kind: KOpKind, x: Cx<T>, rep: &FockRep<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    Ok(TensorOp::diagonal(&k_operator_levels(kind, rep.flavor, x, rep.cutoff, params)?))
}

/// The same level entries evaluated through q-exponentials and the
/// normalization functions:
/// `K = kappa^{-1} x^{s0 h} exp^{-1}_{q^-2}(-e- x^s q^{-h} / (lambda e+))`,
/// `Kcheckbar = kappacb^{-1} x^{s0 h} q^{-h} exp_{q^-2}(-eb- x^{-s} q^{2-h} / (lambda eb+))`,
/// with `h = -2n`.  Used as an independent cross-check of the product form.
pub fn k_operator_levels_qexp<T: Real>(kind: KOpKind, flavor: Flavor, x: Cx<T>, n: usize, params: &Params<T>) -> TqResult<Vec<Cx<T>>> {
    let pf = flavor_params(flavor, params);
    let q = pf.q();
    let lam = pf.lambda();
    let s = pf.s() as i64;
    let base = ExpBase::QInvSquared;
    let mut out = Vec::with_capacity(n);
    match kind {
        KOpKind::K => {
            let z0 = -pf.eps_minus * ipow(x, s) / (lam * pf.eps_plus);
            let kappa = q_exp(z0, base, &pf, true)?;
            for lvl in 0..n as i64 {
                let h = -2 * lvl;
                let v = ipow(x, pf.s0 as i64 * h) * q_exp(z0 * ipow(q, -h), base, &pf, true)? / kappa;
                out.push(v);
            }
        }
        KOpKind::CheckBar => {
            let z0 = -pf.epsbar_minus * ipow(x, -s) / (lam * pf.epsbar_plus);
            let kappa = q_exp(z0, base, &pf, false)?;
            for lvl in 0..n as i64 {
                let h = -2 * lvl;
                let v = ipow(x, pf.s0 as i64 * h) * ipow(q, -h) * q_exp(z0 * ipow(q, 2 - h), base, &pf, false)? / kappa;
                out.push(v);
            }
        }
    }
    Ok(out)
}
