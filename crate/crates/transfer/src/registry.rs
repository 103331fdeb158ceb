//! Registry of transfer-level identities: the TQ relation, commutativity,
//! the parameter-swap symmetries and total-spin conservation.
//!
//! Flavor-2 identities are evaluated at the swapped parameters `zeta(P)`:
//! the flavor-2 Fock trace converges exactly where the flavor-1 trace
//! converges at `zeta(P)`, so for a parameter point on which the flavor-1
//! trace converges this is the point at which flavor 2 is meaningful.

use crate::ops::{flip_all, q_operator, t_operator, total_sz, TraceOptions};
use crate::tq::tq_residual;
use log::debug;
use rayon::prelude::*;
use std::time::Instant;
use tqlab_core::{ChainSpec, Cx, IdentityReport, Params, Real, Residual, SpectralSampler, TqError, TqResult};
use tqlab_fock::Flavor;
use tqlab_tensor::TensorOp;

/// Stable identifiers of the transfer registry.
pub const TRANSFER_IDS: &[&str] = &[
    "transfer.TQ1",
    "transfer.TQ2",
    "transfer.TT",
    "transfer.QT1",
    "transfer.QT2",
    "transfer.QQ1",
    "transfer.QQ2",
    "transfer.invT",
    "transfer.Q1toQ2",
    "transfer.SzT",
    "transfer.SzQ1",
    "transfer.SzQ2",
];

/// Chain and truncation policy of a registry run.
#[derive(Debug, Clone)]
pub struct TransferCheckOptions<T: Real> {
    pub chain: ChainSpec<T>,
    pub trace: TraceOptions,
}

impl<T: Real> Default for TransferCheckOptions<T> {
    fn default() -> Self {
        Self { chain: ChainSpec::generic(2), trace: TraceOptions::default() }
    }
}

/// Parameters at which a flavor's Q-operator is evaluated in the registry.
pub fn flavor_point<T: Real>(flavor: Flavor, params: &Params<T>) -> Params<T> {
    match flavor {
        Flavor::One => params.clone(),
        Flavor::Two => params.zeta(),
    }
}

fn flavor_of(id: &str) -> Flavor {
    if id.ends_with('2') {
        Flavor::Two
    } else {
        Flavor::One
    }
}

/// Whether an identity involves a Fock trace (and hence the trace tolerance).
fn uses_trace(id: &str) -> bool {
    !matches!(id, "transfer.TT" | "transfer.invT" | "transfer.SzT")
}

fn commutator_residual<T: Real>(a: &TensorOp<T>, b: &TensorOp<T>) -> TqResult<Residual> {
    a.matmul(b)?.rel_residual(&b.matmul(a)?)
}

fn sample<T: Real>(id: &str, params: &Params<T>, opts: &TransferCheckOptions<T>, x: Cx<T>, y: Cx<T>) -> TqResult<Residual> {
    let chain = &opts.chain;
    let flavor = flavor_of(id);
    let pa = flavor_point(flavor, params);
    let q = |z: Cx<T>, f: Flavor, p: &Params<T>| q_operator(f, z, chain, p, &opts.trace).map(|e| e.op);
    match id {
        "transfer.TQ1" | "transfer.TQ2" => tq_residual(flavor, x, chain, &pa, &opts.trace),
        "transfer.TT" => commutator_residual(&t_operator(x, chain, params)?, &t_operator(y, chain, params)?),
        "transfer.QT1" | "transfer.QT2" => {
            let (qx, ty) = rayon::join(|| q(x, flavor, &pa), || t_operator(y, chain, &pa));
            commutator_residual(&qx?, &ty?)
        }
        "transfer.QQ1" | "transfer.QQ2" => {
            let (qx, qy) = rayon::join(|| q(x, flavor, &pa), || q(y, flavor, &pa));
            commutator_residual(&qx?, &qy?)
        }
        "transfer.invT" => {
            let f = flip_all(chain.len());
            let moved = TensorOp::chain(&[&f, &t_operator(x, chain, &params.zeta())?, &f])?;
            t_operator(x, chain, params)?.rel_residual(&moved)
        }
        "transfer.Q1toQ2" => {
            let f = flip_all(chain.len());
            let zp = params.zeta();
            let (direct, q1) = rayon::join(|| q(x, Flavor::Two, &zp), || q(x, Flavor::One, params));
            direct?.rel_residual(&TensorOp::chain(&[&f, &q1?, &f])?)
        }
        "transfer.SzT" => commutator_residual(&t_operator(x, chain, params)?, &total_sz(chain.len())),
        "transfer.SzQ1" | "transfer.SzQ2" => commutator_residual(&q(x, flavor, &pa)?, &total_sz(chain.len())),
        other => Err(TqError::UnknownIdentity(other.to_string())),
    }
}

/// Verifies one transfer identity at `params.sample_count` seeded points.
///
/// Identities involving a Fock trace use `tol_trace`, the others
/// `tol_exact`.  A sample point on a pole of a K-operator factor is redrawn.
pub fn check_transfer_identity<T: Real>(id: &str, params: &Params<T>, opts: &TransferCheckOptions<T>) -> TqResult<IdentityReport> {
    if !TRANSFER_IDS.contains(&id) {
        return Err(TqError::UnknownIdentity(id.to_string()));
    }
    params.validate()?;
    opts.chain.validate()?;
    let start = Instant::now();
    let threshold = if uses_trace(id) { params.tol_trace } else { params.tol_exact }.to_f64_lossy();
    let mut sampler = SpectralSampler::for_identity(params, id);
    let mut residuals = Vec::with_capacity(params.sample_count);
    for _ in 0..params.sample_count {
        let mut tries = 0;
        loop {
            let (x, y) = (sampler.point::<T>(), sampler.point::<T>());
            match sample(id, params, opts, x, y) {
                Ok(r) => {
                    debug!("{id}: residual {:e}", r.value);
                    residuals.push(r);
                    break;
                }
                Err(TqError::PoleHit(msg)) => {
                    tries += 1;
                    if tries >= 100 {
                        return Err(TqError::PoleHit(format!("{id}: no pole-free sample after {tries} draws ({msg})")));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(IdentityReport::new(id, params, &residuals, threshold, start.elapsed()))
}

/// Runs every transfer identity.
pub fn check_all_transfer<T: Real>(params: &Params<T>, opts: &TransferCheckOptions<T>) -> TqResult<Vec<IdentityReport>> {
    TRANSFER_IDS.par_iter().map(|id| check_transfer_identity(id, params, opts)).collect()
}
