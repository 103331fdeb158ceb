//! Root vectors of the affine algebra in the fundamental evaluation
//! representation, closed-form and via the defining recursions.

use crate::casimir::{casimir_fundamental, central_ck, series_log};
use tqlab_core::scalar::{ipow, one, re, zero};
use tqlab_core::{Cx, Params, Real, TqError, TqResult};
use tqlab_tensor::{mat2, TensorOp};

/// Default largest `k` handled by the recursive construction.
pub const DEFAULT_K: usize = 12;

/// Root-vector species.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    /// `e_{alpha + k delta}`, `k >= 0`.
    EAlpha,
    /// `e_{delta - alpha + k delta}`, `k >= 0`.
    EDeltaAlpha,
    /// `f_{alpha + k delta}`, `k >= 0`.
    FAlpha,
    /// `f_{delta - alpha + k delta}`, `k >= 0`.
    FDeltaAlpha,
    /// `e'_{k delta}`, `k >= 1`.
    EPrimeDelta,
    /// `e_{k delta}`, `k >= 1`.
    EDelta,
    /// `f'_{k delta}`, `k >= 1`.
    FPrimeDelta,
    /// `f_{k delta}`, `k >= 1`.
    FDelta,
}

impl Species {
    pub const ALL: [Species; 8] = [
        Species::EAlpha,
        Species::EDeltaAlpha,
        Species::FAlpha,
        Species::FDeltaAlpha,
        Species::EPrimeDelta,
        Species::EDelta,
        Species::FPrimeDelta,
        Species::FDelta,
    ];

    /// Smallest admissible `k`.
    pub fn min_k(self) -> usize {
        match self {
            Species::EAlpha | Species::EDeltaAlpha | Species::FAlpha | Species::FDeltaAlpha => 0,
            _ => 1,
        }
    }
}

/// How a root-vector image is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootMode {
    /// Closed evaluated forms.
    Closed,
    /// q-commutator recursion from the basic generators and logarithmic
    /// generating functions, all evaluated as 2x2 matrices.
    Recursive,
}

/// An evaluated root vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRootVector<T: Real> {
    pub species: Species,
    pub k: usize,
    pub matrix: TensorOp<T>,
}

/// `[k]_q = (q^k - q^{-k}) / (q - q^{-1})`.
pub fn q_int<T: Real>(k: i64, params: &Params<T>) -> Cx<T> {
    let q = params.q();
    (ipow(q, k) - ipow(q, -k)) / params.lambda()
}

fn sign<T: Real>(k: i64) -> Cx<T> {
    if k.rem_euclid(2) == 0 {
        one()
    } else {
        -one::<T>()
    }
}

fn e_mat<T: Real>() -> TensorOp<T> {
    mat2(zero(), one(), zero(), zero())
}

fn f_mat<T: Real>() -> TensorOp<T> {
    mat2(zero(), zero(), one(), zero())
}

/// `q^{k H}` in the fundamental representation.
fn q_h<T: Real>(k: i64, params: &Params<T>) -> TensorOp<T> {
    let q = params.q();
    mat2(ipow(q, k), zero(), zero(), ipow(q, -k))
}

fn id2<T: Real>() -> TensorOp<T> {
    TensorOp::identity(&[2])
}

fn mm<T: Real>(a: &TensorOp<T>, b: &TensorOp<T>) -> TensorOp<T> {
    a.matmul(b).expect("2x2 product")
}

/// `[a, b]_p = a b - p b a`.
fn qcomm<T: Real>(a: &TensorOp<T>, b: &TensorOp<T>, p: Cx<T>) -> TensorOp<T> {
    mm(a, b).sub(&mm(b, a).scale(p)).expect("2x2 difference")
}

/// Closed evaluated image `ev_x(species_k)`.
pub fn closed_image<T: Real>(species: Species, k: usize, x: Cx<T>, params: &Params<T>) -> TqResult<TensorOp<T>> {
    check_k(species, k)?;
    let q = params.q();
    let lam = params.lambda();
    let (s, s0, s1) = (params.s() as i64, params.s0 as i64, params.s1 as i64);
    let ki = k as i64;
    let c = casimir_fundamental(params);
    Ok(match species {
        Species::EAlpha => mm(&q_h(-ki, params), &e_mat()).scale(sign::<T>(ki) * ipow(x, ki * s + s1)),
        Species::EDeltaAlpha => mm(&f_mat(), &q_h(-ki, params)).scale(sign::<T>(ki) * ipow(x, ki * s + s0)),
        Species::FAlpha => mm(&f_mat(), &q_h(ki, params)).scale(sign::<T>(ki) * ipow(x, -ki * s - s1)),
        Species::FDeltaAlpha => mm(&q_h(ki, params), &e_mat()).scale(sign::<T>(ki) * ipow(x, -ki * s - s0)),
        Species::EPrimeDelta => {
            let inner = id2::<T>()
                .scale(lam * q_int(ki, params) * c)
                .sub(&q_h(1, params).scale(q_int(ki - 1, params) / lam).add(&q_h(-1, params).scale(q_int(ki + 1, params) / lam))?)?;
            mm(&q_h(-(ki - 1), params), &inner).scale(sign::<T>(ki - 1) * ipow(x, ki * s) * ipow(q, -ki))
        }
        Species::EDelta => {
            let ck = central_ck(k, params)?;
            let inner = id2::<T>().scale(ck).sub(&q_h(-ki, params).scale(ipow(q, ki) + ipow(q, -ki)))?;
            inner.scale(sign::<T>(ki - 1) * ipow(q, -ki) * ipow(x, ki * s) / (lam * re(T::lit(k as f64))))
        }
        Species::FPrimeDelta => {
            let inner = id2::<T>()
                .scale(-lam * q_int(ki, params) * c)
                .add(&q_h(1, params).scale(q_int(ki + 1, params) / lam).add(&q_h(-1, params).scale(q_int(ki - 1, params) / lam))?)?;
            mm(&q_h(ki - 1, params), &inner).scale(sign::<T>(ki - 1) * ipow(x, -ki * s) * ipow(q, ki))
        }
        Species::FDelta => {
            let ck = central_ck(k, params)?;
            let inner = id2::<T>().scale(ck).sub(&q_h(ki, params).scale(ipow(q, ki) + ipow(q, -ki)))?;
            inner.scale(-sign::<T>(ki - 1) * ipow(q, ki) * ipow(x, -ki * s) / (lam * re(T::lit(k as f64))))
        }
    })
}

fn check_k(species: Species, k: usize) -> TqResult<()> {
    if k < species.min_k() {
        return Err(TqError::InvalidParams(format!("{species:?} needs k >= {}", species.min_k())));
    }
    Ok(())
}

/// All recursively built images up to `kmax`, indexed by `k`
/// (entries below [`Species::min_k`] are unused zeros).
#[derive(Debug, Clone)]
pub struct RecursiveRoots<T: Real> {
    pub e_alpha: Vec<TensorOp<T>>,
    pub e_delta_alpha: Vec<TensorOp<T>>,
    pub f_alpha: Vec<TensorOp<T>>,
    pub f_delta_alpha: Vec<TensorOp<T>>,
    pub e_prime: Vec<TensorOp<T>>,
    pub e_delta: Vec<TensorOp<T>>,
    pub f_prime: Vec<TensorOp<T>>,
    pub f_delta: Vec<TensorOp<T>>,
}

impl<T: Real> RecursiveRoots<T> {
    /// Image of one species.
    pub fn get(&self, species: Species, k: usize) -> &TensorOp<T> {
        let v = match species {
            Species::EAlpha => &self.e_alpha,
            Species::EDeltaAlpha => &self.e_delta_alpha,
            Species::FAlpha => &self.f_alpha,
            Species::FDeltaAlpha => &self.f_delta_alpha,
            Species::EPrimeDelta => &self.e_prime,
            Species::EDelta => &self.e_delta,
            Species::FPrimeDelta => &self.f_prime,
            Species::FDelta => &self.f_delta,
        };
        &v[k]
    }
}

/// Builds every root vector up to `kmax` from
/// `e_1 -> x^{s1} E`, `e_0 -> x^{s0} F`, `f_1 -> x^{-s1} F`, `f_0 -> x^{-s0} E`.
pub fn recursive_roots<T: Real>(kmax: usize, x: Cx<T>, params: &Params<T>) -> RecursiveRoots<T> {
    let q = params.q();
    let lam = params.lambda();
    let two = q_int(2, params);
    let (s0, s1) = (params.s0 as i64, params.s1 as i64);
    let zero_op = TensorOp::zeros(&[2]);
    let e1 = e_mat::<T>().scale(ipow(x, s1));
    let e0 = f_mat::<T>().scale(ipow(x, s0));
    let f1 = f_mat::<T>().scale(ipow(x, -s1));
    let f0 = e_mat::<T>().scale(ipow(x, -s0));
    let e_prime_1 = qcomm(&e1, &e0, ipow(q, -2));
    let f_prime_1 = qcomm(&f0, &f1, ipow(q, 2));

    let mut out = RecursiveRoots {
        e_alpha: vec![e1],
        e_delta_alpha: vec![e0.clone()],
        f_alpha: vec![f1],
        f_delta_alpha: vec![f0.clone()],
        e_prime: vec![zero_op.clone()],
        e_delta: vec![zero_op.clone()],
        f_prime: vec![zero_op.clone()],
        f_delta: vec![zero_op],
    };
    for k in 1..=kmax {
        let ea = out.e_alpha[k - 1].clone();
        let eda = out.e_delta_alpha[k - 1].clone();
        let fa = out.f_alpha[k - 1].clone();
        let fda = out.f_delta_alpha[k - 1].clone();
        out.e_prime.push(qcomm(&ea, &e0, ipow(q, -2)));
        out.f_prime.push(qcomm(&f0, &fa, ipow(q, 2)));
        out.e_alpha.push(qcomm(&ea, &e_prime_1, one()).scale(two.inv()));
        out.e_delta_alpha.push(qcomm(&e_prime_1, &eda, one()).scale(two.inv()));
        out.f_alpha.push(qcomm(&f_prime_1, &fa, one()).scale(two.inv()));
        out.f_delta_alpha.push(qcomm(&fda, &f_prime_1, one()).scale(two.inv()));
    }
    // lambda sum e_k z^-k = log(1 + lambda sum e'_k z^-k);
    // -lambda sum f_k z^-k = log(1 - lambda sum f'_k z^-k).
    let e_series: Vec<TensorOp<T>> = out.e_prime[1..].iter().map(|m| m.scale(lam)).collect();
    let f_series: Vec<TensorOp<T>> = out.f_prime[1..].iter().map(|m| m.scale(-lam)).collect();
    for g in series_log(&e_series) {
        out.e_delta.push(g.scale(lam.inv()));
    }
    for g in series_log(&f_series) {
        out.f_delta.push(g.scale(-lam.inv()));
    }
    out
}

/// Image of one root vector in the requested mode.
pub fn root_vector_image<T: Real>(species: Species, k: usize, x: Cx<T>, mode: RootMode, params: &Params<T>) -> TqResult<EvalRootVector<T>> {
    check_k(species, k)?;
    let matrix = match mode {
        RootMode::Closed => closed_image(species, k, x, params)?,
        RootMode::Recursive => recursive_roots(k, x, params).get(species, k).clone(),
    };
    Ok(EvalRootVector { species, k, matrix })
}
