//! Registry of Lax-level identities, evaluated at seeded spectral points.
//!
//! Every identity involving a product of Fock operators is compared on the
//! levels `0..N-margin` only: generators push the top state out of the
//! truncated space, and the resulting defect propagates down by at most one
//! level per factor.

use crate::ops::{g_matrix, l_operator, r_matrix, rbar_matrix, sigma_map, LaxKind, LaxShape};
use rayon::prelude::*;
use std::time::Instant;
use tqlab_core::scalar::{ipow, one};
use tqlab_core::{Cx, IdentityReport, Params, Real, Residual, SpectralSampler, TqError, TqResult};
use tqlab_fock::{build_fock, t12, t_conjugator, Flavor, FockRep};
use tqlab_tensor::TensorOp;

/// Stable identifiers of the Lax registry.
pub const LAX_IDS: &[&str] = &[
    "lax.LLcb",
    "lax.LcLb",
    "lax.LcbLs",
    "lax.LbLcs",
    "lax.tt",
    "lax.RLL1",
    "lax.RLL2",
    "lax.RLL3",
    "lax.RLL4",
    "lax.runitarity",
    "lax.L2L1",
];

/// Truncation and flavor policy of a registry run.
#[derive(Debug, Clone)]
pub struct LaxCheckOptions {
    /// Fock cutoff `N`.
    pub cutoff: usize,
    /// Number of top levels excluded from comparisons.
    pub margin: usize,
    /// Flavors to check.
    pub flavors: Vec<Flavor>,
}

impl Default for LaxCheckOptions {
    fn default() -> Self {
        Self { cutoff: 32, margin: 4, flavors: vec![Flavor::One, Flavor::Two] }
    }
}

struct Ctx<'a, T: Real> {
    params: &'a Params<T>,
    rep: FockRep<T>,
    keep: usize,
}

impl<T: Real> Ctx<'_, T> {
    fn l(&self, shape: LaxShape, x: Cx<T>) -> TqResult<TensorOp<T>> {
        l_operator(LaxKind::new(shape, self.rep.flavor), x, &self.rep, self.params)
    }

    fn cmp(&self, a: &TensorOp<T>, b: &TensorOp<T>) -> TqResult<Residual> {
        a.slab_residual(b, 0, self.keep)
    }

    fn scalar(&self, c: Cx<T>) -> TensorOp<T> {
        TensorOp::identity(&[self.rep.cutoff, 2]).scale(c)
    }
}

/// `A B = B A = c`: two residuals.
fn inverse_pair<T: Real>(ctx: &Ctx<T>, a: &TensorOp<T>, b: &TensorOp<T>, c: Cx<T>) -> TqResult<Vec<Residual>> {
    let rhs = ctx.scalar(c);
    Ok(vec![ctx.cmp(&a.matmul(b)?, &rhs)?, ctx.cmp(&b.matmul(a)?, &rhs)?])
}

/// `g_2 A^{t_2} g_2^{-1} B^{t_2}` and its reverse, both against `c`.
fn twisted_pair<T: Real>(ctx: &Ctx<T>, a: &TensorOp<T>, b: &TensorOp<T>, c: Cx<T>) -> TqResult<Vec<Residual>> {
    let dims = [ctx.rep.cutoff, 2];
    let g = g_matrix(ctx.params);
    let ginv = TensorOp::diagonal(&[g.get(0, 0).inv(), g.get(1, 1).inv()]);
    let g2 = g.embed(&[1], &dims)?;
    let g2inv = ginv.embed(&[1], &dims)?;
    let at = TensorOp::chain(&[&g2, &a.slot_transpose(1)?, &g2inv])?;
    let bt = b.slot_transpose(1)?;
    inverse_pair(ctx, &at, &bt, c)
}

fn sample_residuals<T: Real>(id: &str, ctx: &Ctx<T>, x: Cx<T>, y: Cx<T>, z: Cx<T>) -> TqResult<Vec<Residual>> {
    let params = ctx.params;
    let q = params.q();
    let s = params.s() as i64;
    let xs = ipow(x, s);
    let qinv = q.inv();
    use LaxShape::*;
    match id {
        "lax.LLcb" => inverse_pair(ctx, &ctx.l(Plain, x)?, &ctx.l(CheckBar, x)?, one::<T>() - qinv / xs),
        "lax.LcLb" => inverse_pair(ctx, &ctx.l(Check, x)?, &ctx.l(Bar, x)?, one::<T>() - qinv * xs),
        "lax.LcbLs" => {
            let c = q * q - qinv / xs;
            twisted_pair(ctx, &ctx.l(Plain, x * params.pp(4))?, &ctx.l(CheckBar, x)?, c)
        }
        "lax.LbLcs" => {
            let c = q * q - ipow(q, 3) * xs;
            twisted_pair(ctx, &ctx.l(Check, x * params.pp(4))?, &ctx.l(Bar, x)?, c)
        }
        "lax.tt" => {
            let tc = t_conjugator(&ctx.rep)?;
            LaxShape::ALL
                .iter()
                .map(|&shape| ctx.cmp(&t12(&tc, &ctx.l(shape, x)?)?, &ctx.l(shape.tt_partner(), x.inv())?))
                .collect()
        }
        "lax.RLL1" | "lax.RLL2" | "lax.RLL3" | "lax.RLL4" => rll(id, ctx, x, y, z),
        "lax.runitarity" => {
            let r = r_matrix(x, params);
            let rb = rbar_matrix(x, params);
            let c = q * q + qinv * qinv - xs - xs.inv();
            let rhs = TensorOp::identity(&[2, 2]).scale(c);
            Ok(vec![r.matmul(&rb)?.rel_residual(&rhs)?, rb.matmul(&r)?.rel_residual(&rhs)?])
        }
        "lax.L2L1" => {
            // Direct flavor-2 operators against the flip of flavor 1 at swapped parameters.
            let zp = params.zeta();
            let rep1 = build_fock(Flavor::One, ctx.rep.cutoff, &zp)?;
            let rep2 = build_fock(Flavor::Two, ctx.rep.cutoff, params)?;
            LaxShape::ALL
                .iter()
                .map(|&shape| {
                    let direct = l_operator(LaxKind::new(shape, Flavor::Two), x, &rep2, params)?;
                    let moved = sigma_map(&l_operator(LaxKind::new(shape, Flavor::One), x, &rep1, &zp)?, 1)?;
                    direct.rel_residual(&moved)
                })
                .collect()
        }
        other => Err(TqError::UnknownIdentity(other.to_string())),
    }
}

/// Finite images of the RLL relations on `Fock x C^2 x C^2`.
fn rll<T: Real>(id: &str, ctx: &Ctx<T>, x: Cx<T>, y: Cx<T>, z: Cx<T>) -> TqResult<Vec<Residual>> {
    let params = ctx.params;
    let dims = [ctx.rep.cutoff, 2, 2];
    let barred = matches!(id, "lax.RLL2" | "lax.RLL4");
    let shape = if barred { LaxShape::Bar } else { LaxShape::Plain };
    let l12 = ctx.l(shape, x / y)?.embed(&[0, 1], &dims)?;
    let l13 = ctx.l(shape, x / z)?.embed(&[0, 2], &dims)?;
    let r = match id {
        "lax.RLL1" | "lax.RLL2" => r_matrix(y / z, params),
        _ => rbar_matrix(y / z, params),
    };
    let r23 = r.embed(&[1, 2], &dims)?;
    let (lhs, rhs) = match id {
        "lax.RLL1" => (TensorOp::chain(&[&l12, &l13, &r23])?, TensorOp::chain(&[&r23, &l13, &l12])?),
        "lax.RLL2" => (TensorOp::chain(&[&r23, &l12, &l13])?, TensorOp::chain(&[&l13, &l12, &r23])?),
        "lax.RLL3" => (TensorOp::chain(&[&l13, &l12, &r23])?, TensorOp::chain(&[&r23, &l12, &l13])?),
        _ => (TensorOp::chain(&[&r23, &l13, &l12])?, TensorOp::chain(&[&l12, &l13, &r23])?),
    };
    Ok(vec![ctx.cmp(&lhs, &rhs)?])
}

fn run<T: Real>(id: &str, params: &Params<T>, opts: &LaxCheckOptions, cutoff: usize) -> TqResult<Vec<Residual>> {
    if opts.margin >= cutoff {
        return Err(TqError::InvalidParams(format!("margin {} leaves no levels of cutoff {cutoff}", opts.margin)));
    }
    let mut sampler = SpectralSampler::for_identity(params, id);
    let pts: Vec<[Cx<T>; 3]> = (0..params.sample_count).map(|_| [sampler.point(), sampler.point(), sampler.point()]).collect();
    // Flavor 2 of L2L1 is built inside the check itself.
    let flavors: Vec<Flavor> = if id == "lax.L2L1" || id == "lax.runitarity" { vec![Flavor::One] } else { opts.flavors.clone() };
    let jobs: Vec<(Flavor, [Cx<T>; 3])> = flavors.iter().flat_map(|&f| pts.iter().map(move |p| (f, *p))).collect();
    let per: Vec<TqResult<Vec<Residual>>> = jobs
        .par_iter()
        .map(|(flavor, [x, y, z])| {
            let ctx = Ctx { params, rep: build_fock(*flavor, cutoff, params)?, keep: cutoff - opts.margin };
            sample_residuals(id, &ctx, *x, *y, *z)
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Verifies one registry identity at `params.sample_count` seeded points.
///
/// A failing run is repeated at twice the cutoff; if the residual is still
/// shrinking substantially there, the failure is attributed to truncation
/// and reported as [`TqError::TruncationNotConverged`].
pub fn check_lax_identity<T: Real>(id: &str, params: &Params<T>, opts: &LaxCheckOptions) -> TqResult<IdentityReport> {
    if !LAX_IDS.contains(&id) {
        return Err(TqError::UnknownIdentity(id.to_string()));
    }
    params.validate()?;
    let start = Instant::now();
    let threshold = params.tol_exact.to_f64_lossy();
    let first = run(id, params, opts, opts.cutoff)?;
    let report = IdentityReport::new(id, params, &first, threshold, start.elapsed());
    if report.pass {
        return Ok(report);
    }
    let second = run(id, params, opts, 2 * opts.cutoff)?;
    let doubled = IdentityReport::new(id, params, &second, threshold, start.elapsed());
    if !doubled.pass && doubled.max_residual < 0.1 * report.max_residual {
        return Err(TqError::TruncationNotConverged { cap: 2 * opts.cutoff, last_change: report.max_residual - doubled.max_residual });
    }
    Ok(if doubled.pass { doubled } else { report })
}

/// Runs every registry identity, in registry order.
pub fn check_all_lax<T: Real>(params: &Params<T>, opts: &LaxCheckOptions) -> TqResult<Vec<IdentityReport>> {
    LAX_IDS.par_iter().map(|id| check_lax_identity(id, params, opts)).collect()
}
