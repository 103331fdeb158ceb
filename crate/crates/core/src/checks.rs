//! Scalar identity suite of the q-special functions.

use crate::error::{TqError, TqResult};
use crate::params::Params;
use crate::report::{IdentityReport, Residual};
use crate::sampling::SpectralSampler;
use crate::scalar::{one, re, widen, Cx, Real};
use crate::special::{big_lambda, big_phi, direct_series, q_bracket, q_exp, q_exp_product, q_exp_series, ExpBase};
use std::time::Instant;

/// Stable identifiers of the scalar suite.
pub const CORE_IDS: &[&str] = &["core.qbracket", "core.qexpinv", "core.qexpseries", "core.phisum", "core.lambdaphi", "core.phiseries"];

fn scalar_residual<T: Real>(a: Cx<T>, b: Cx<T>) -> Residual {
    let (a, b) = (widen(a), widen(b));
    Residual::from_norms((a - b).norm(), b.norm())
}

/// Radius of the sampling square for series arguments: every series used
/// below converges for `|u| < min(|q|, 1/|q|)`.
fn series_radius<T: Real>(params: &Params<T>) -> f64 {
    let qn = widen(params.q()).norm();
    0.4 * qn.min(qn.recip())
}

fn sample<T: Real>(id: &str, params: &Params<T>, u: Cx<T>) -> TqResult<Residual> {
    let q = params.q();
    Ok(match id {
        // [x+1] + [x-1] = (q + 1/q) [x]
        "core.qbracket" => {
            let lhs = q_bracket(u + one::<T>(), params)? + q_bracket(u - one::<T>(), params)?;
            scalar_residual(lhs, (q + q.inv()) * q_bracket(u, params)?)
        }
        // exp_b(z) exp_{1/b}(-z) = 1
        "core.qexpinv" => {
            let mut worst = Residual::default();
            for base in [ExpBase::QSquared, ExpBase::QInvSquared] {
                let v = q_exp(u, base, params, false)? * q_exp(u, base, params, true)?;
                worst = worst.max(scalar_residual(v, one()));
            }
            worst
        }
        // product form against the defining series
        "core.qexpseries" => {
            let mut worst = Residual::default();
            for base in [ExpBase::QSquared, ExpBase::QInvSquared] {
                let b = base.value(params);
                let series = q_exp_series(u, b, params.series_cap)
                    .ok_or_else(|| TqError::SeriesNotConverged("q-exponential series".into()))?;
                worst = worst.max(scalar_residual(q_exp_product(u, b, params.series_cap)?, series));
            }
            worst
        }
        // Phi(u q) + Phi(u / q) = -log(1 - u)
        "core.phisum" => {
            let lhs = big_phi(u * q, params)? + big_phi(u / q, params)?;
            scalar_residual(lhs, -(one::<T>() - u).ln())
        }
        // Lambda(u) = Phi(u q^2) + Phi(u q^-2)
        "core.lambdaphi" => {
            let rhs = big_phi(u * q * q, params)? + big_phi(u / (q * q), params)?;
            scalar_residual(big_lambda(u, params)?, rhs)
        }
        // accelerated sum against a 400-term partial sum
        "core.phiseries" => {
            let direct = direct_series(u, 400, |k| {
                let qk = crate::scalar::ipow(q, k as i64);
                (re(T::lit(k as f64)) * (qk + qk.inv())).inv()
            });
            scalar_residual(big_phi(u, params)?, direct)
        }
        other => return Err(TqError::UnknownIdentity(other.to_string())),
    })
}

/// Runs one identity of the scalar suite at `sample_count` seeded points.
pub fn check_core_identity<T: Real>(id: &str, params: &Params<T>) -> TqResult<IdentityReport> {
    if !CORE_IDS.contains(&id) {
        return Err(TqError::UnknownIdentity(id.to_string()));
    }
    params.validate()?;
    let start = Instant::now();
    let mut sampler = SpectralSampler::for_identity(params, id);
    let radius = series_radius(params);
    let mut residuals = Vec::with_capacity(params.sample_count);
    for _ in 0..params.sample_count {
        let u = if id == "core.qbracket" { sampler.square::<T>(2.0) } else { sampler.square::<T>(radius) };
        residuals.push(sample(id, params, u)?);
    }
    let threshold = params.tol_exact.to_f64_lossy();
    Ok(IdentityReport::new(id, params, &residuals, threshold, start.elapsed()))
}

/// Runs the whole scalar suite in registry order.
pub fn check_all_core<T: Real>(params: &Params<T>) -> TqResult<Vec<IdentityReport>> {
    CORE_IDS.iter().map(|id| check_core_identity(id, params)).collect()
}
