//! Registry of reflection-equation and dressing identities.

use crate::coeffs::omega;
use crate::delta::{delta_conj_sides, DeltaGen};
use crate::dress::{dressed_k_q, dressed_k_t, dressing_g};
use crate::kmat::{k_matrix, k_operator, k_operator_levels, kbar_matrix, KOpKind};
use rayon::prelude::*;
use std::time::Instant;
use tqlab_core::scalar::{ipow, one};
use tqlab_core::{ChainSpec, Cx, IdentityReport, Params, Real, Residual, SpectralSampler, TqError, TqResult};
use tqlab_fock::{build_fock, t12, t_conjugator, Flavor, FockRep};
use tqlab_lax::{g_matrix, l_operator, r_matrix, rbar_matrix, sigma_map, LaxKind, LaxShape};
use tqlab_tensor::{unit, TensorOp};

/// Stable identifiers of the boundary registry.
pub const BOUNDARY_IDS: &[&str] = &[
    "bnd.refeq0",
    "bnd.refeqdual",
    "bnd.refeqlim1",
    "bnd.refeqlim2",
    "bnd.deltaconj.h0",
    "bnd.deltaconj.h1",
    "bnd.deltaconj.e0",
    "bnd.deltaconj.e1",
    "bnd.deltaconj.hb0",
    "bnd.deltaconj.hb1",
    "bnd.deltaconj.f0",
    "bnd.deltaconj.f1",
    "bnd.GL1LG",
    "bnd.GLb1LbG",
    "bnd.GKLbKG",
    "bnd.GKbLbKbG",
    "bnd.dressT",
    "bnd.dressQ",
    "bnd.GGinv",
    "bnd.kmatdual",
    "bnd.kopdual",
    "bnd.inv1",
];

/// Truncation and flavor policy of a registry run.
#[derive(Debug, Clone)]
pub struct BoundaryCheckOptions {
    /// Fock cutoff `N`.
    pub cutoff: usize,
    /// Number of top levels excluded from comparisons.
    pub margin: usize,
    /// Flavors for the identities that exist in both flavors.
    pub flavors: Vec<Flavor>,
}

impl Default for BoundaryCheckOptions {
    fn default() -> Self {
        Self { cutoff: 32, margin: 4, flavors: vec![Flavor::One, Flavor::Two] }
    }
}

/// Random draws needed by one sample of an identity.
#[derive(Debug, Clone, Copy)]
struct Draw<T: Real> {
    x: Cx<T>,
    y: Cx<T>,
    /// Inhomogeneity of the quantum slot of dressed identities.
    xi: Cx<T>,
    /// Complex Cartan exponent of the `q^{xi h}` relations.
    c: Cx<T>,
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

    fn k(&self, kind: KOpKind, x: Cx<T>) -> TqResult<TensorOp<T>> {
        k_operator(kind, x, &self.rep, self.params)
    }

    fn qhp(&self, k: i64) -> TensorOp<T> {
        self.rep.p_half_h(k)
    }
}

fn inv_diag<T: Real>(m: &TensorOp<T>) -> TensorOp<T> {
    let n = m.side();
    TensorOp::diagonal(&(0..n).map(|i| m.get(i, i).inv()).collect::<Vec<_>>())
}

fn refeq0<T: Real>(params: &Params<T>, x: Cx<T>, y: Cx<T>) -> TqResult<Residual> {
    let d = [2, 2];
    let k1 = k_matrix(x, params).embed(&[0], &d)?;
    let k2 = k_matrix(y, params).embed(&[1], &d)?;
    let lhs = TensorOp::chain(&[&r_matrix(y / x, params), &k1, &rbar_matrix(x * y, params), &k2])?;
    let rhs = TensorOp::chain(&[&k2, &r_matrix((x * y).inv(), params), &k1, &rbar_matrix(x / y, params)])?;
    lhs.rel_residual(&rhs)
}

fn refeqdual<T: Real>(params: &Params<T>, x: Cx<T>, y: Cx<T>) -> TqResult<Residual> {
    let d = [2, 2];
    let p4 = params.pp(4);
    let g = g_matrix(params);
    let g2 = g.embed(&[1], &d)?;
    let g2i = inv_diag(&g).embed(&[1], &d)?;
    // Both K-bar matrices are diagonal, so the partial transpositions act trivially.
    let k1 = kbar_matrix(x, params).embed(&[0], &d)?;
    let k2 = kbar_matrix(y, params).embed(&[1], &d)?;
    let lhs = TensorOp::chain(&[&r_matrix(y / x, params), &k1, &g2, &rbar_matrix(x * y / p4, params), &g2i, &k2])?;
    let rhs = TensorOp::chain(&[&k2, &g2i, &r_matrix(p4 / (x * y), params), &g2, &k1, &rbar_matrix(x / y, params)])?;
    lhs.rel_residual(&rhs)
}

fn refeqlim1<T: Real>(ctx: &Ctx<T>, x: Cx<T>, y: Cx<T>) -> TqResult<Residual> {
    let n = ctx.rep.cutoff;
    let k1 = ctx.k(KOpKind::K, x)?.embed(&[0], &[n, 2])?;
    let k2 = k_matrix(y, ctx.params).embed(&[1], &[n, 2])?;
    let lhs = TensorOp::chain(&[&ctx.l(LaxShape::Plain, y / x)?, &k1, &ctx.l(LaxShape::Bar, x * y)?, &k2])?;
    let rhs = TensorOp::chain(&[&k2, &ctx.l(LaxShape::Plain, (x * y).inv())?, &k1, &ctx.l(LaxShape::Bar, x / y)?])?;
    ctx.cmp(&lhs, &rhs)
}

fn refeqlim2<T: Real>(ctx: &Ctx<T>, x: Cx<T>, y: Cx<T>) -> TqResult<Residual> {
    let n = ctx.rep.cutoff;
    let d = [n, 2];
    let p4 = ctx.params.pp(4);
    let g = g_matrix(ctx.params);
    let g2 = g.embed(&[1], &d)?;
    let g2i = inv_diag(&g).embed(&[1], &d)?;
    // Kcheckbar and Kbar are diagonal: their transpositions are trivial.
    let k1 = ctx.k(KOpKind::CheckBar, x)?.embed(&[0], &d)?;
    let k2 = kbar_matrix(y, ctx.params).embed(&[1], &d)?;
    let lc = |z| ctx.l(LaxShape::Check, z);
    let lcb = |z| ctx.l(LaxShape::CheckBar, z);
    let lhs = TensorOp::chain(&[&lc(y / x)?, &k1, &g2, &lcb(x * y / p4)?, &g2i, &k2])?;
    let rhs = TensorOp::chain(&[&k2, &g2i, &lc(p4 / (x * y))?, &g2, &k1, &lcb(x / y)?])?;
    ctx.cmp(&lhs, &rhs)
}

/// `A (x) B (x) C` on `Fock x C^2 x C^2`.
fn trip<T: Real>(a: &TensorOp<T>, b: &TensorOp<T>, c: &TensorOp<T>) -> TensorOp<T> {
    a.kron(b).kron(c)
}

fn gl1lg<T: Real>(ctx: &Ctx<T>, x: Cx<T>, barred: bool) -> TqResult<Residual> {
    let params = ctx.params;
    let n = ctx.rep.cutoff;
    let dims = [n, 2, 2];
    let (p, q, lam) = (params.p, params.q(), params.lambda());
    let (s0, s1, s) = (params.s0 as i64, params.s1 as i64, params.s() as i64);
    let d = s0 - s1;
    let g = dressing_g(&ctx.rep, barred, false, params)?.embed(&[0, 1], &dims)?;
    let gi = dressing_g(&ctx.rep, barred, true, params)?.embed(&[0, 1], &dims)?;
    let on13 = |m: TensorOp<T>| m.embed(&[0, 2], &dims);
    let on1 = |m: TensorOp<T>| m.embed(&[0], &dims);
    // pi(q^{-(H-1)/2}) / pi(q^{(H-1)/2}) style diagonals of the last slot.
    let pih_m = TensorOp::diagonal(&[one::<T>(), q.inv()]);
    let pih_p = TensorOp::diagonal(&[one::<T>(), q]);
    let (e11, e22, e21, e12) = (unit::<T>(2, 0, 0), unit::<T>(2, 1, 1), unit::<T>(2, 1, 0), unit::<T>(2, 0, 1));
    let (lhs, rhs) = if !barred {
        let lhs = TensorOp::chain(&[&gi, &on13(ctx.l(LaxShape::Plain, x / p)?)?, &r_matrix(x, params).embed(&[1, 2], &dims)?, &g])?;
        let t1 = TensorOp::chain(&[&on1(ctx.qhp(d))?, &on13(ctx.l(LaxShape::Plain, x * p)?)?, &trip(&ctx.qhp(-d), &e11, &pih_m)])?
            .scale(q - ipow(x, s) / q);
        let t2 = TensorOp::chain(&[&on1(ctx.qhp(-d))?, &on13(ctx.l(LaxShape::Plain, x / ipow(p, 3))?)?, &trip(&ctx.qhp(d), &e22, &pih_p)])?
            .scale(one::<T>() - ipow(x, s));
        let t3 = TensorOp::chain(&[&on1(ctx.qhp(-d))?, &on13(ctx.l(LaxShape::Plain, x / ipow(p, 3))?)?, &trip(&ctx.qhp(d - 2 * s), &e21, &e12)])?
            .scale(lam * ipow(x, s0));
        (lhs, t1.add(&t2)?.add(&t3)?)
    } else {
        let lhs = TensorOp::chain(&[&gi, &on13(ctx.l(LaxShape::Bar, x * p)?)?, &rbar_matrix(x, params).embed(&[1, 2], &dims)?, &g])?;
        let t1 = TensorOp::chain(&[&on1(ctx.qhp(-d))?, &on13(ctx.l(LaxShape::Bar, x / p)?)?, &trip(&ctx.qhp(d), &e11, &pih_m)])?
            .scale(q - ipow(x, -s) / q);
        let t2 = TensorOp::chain(&[&on1(ctx.qhp(d))?, &on13(ctx.l(LaxShape::Bar, x * ipow(p, 3))?)?, &trip(&ctx.qhp(-d), &e22, &pih_p)])?
            .scale(one::<T>() - ipow(x, -s));
        let t3 = TensorOp::chain(&[&on1(ctx.qhp(d))?, &on13(ctx.l(LaxShape::Bar, x * ipow(p, 3))?)?, &trip(&ctx.qhp(-d - 2 * s), &e21, &e12)])?
            .scale(lam * ipow(x, -s1));
        (lhs, t1.add(&t2)?.add(&t3)?)
    };
    ctx.cmp(&lhs, &rhs)
}

fn gklbkg<T: Real>(ctx: &Ctx<T>, x: Cx<T>) -> TqResult<Residual> {
    let params = ctx.params;
    let n = ctx.rep.cutoff;
    let d = [n, 2];
    let p = params.p;
    let (s0, s) = (params.s0 as i64, params.s() as i64);
    let w = omega(Flavor::One, x, params);
    let gi = dressing_g(&ctx.rep, false, true, params)?;
    let gb = dressing_g(&ctx.rep, true, false, params)?;
    let lhs = TensorOp::chain(&[
        &gi,
        &ctx.k(KOpKind::K, x * p)?.embed(&[0], &d)?,
        &ctx.l(LaxShape::Bar, x * x * p)?,
        &k_matrix(x, params).embed(&[1], &d)?,
        &gb,
    ])?;
    let k = 4 * s0 - s;
    let rhs = ctx
        .qhp(k)
        .matmul(&ctx.k(KOpKind::K, x / p)?)?
        .kron(&unit(2, 0, 0))
        .scale(w.w1)
        .add(&ctx.qhp(-k).matmul(&ctx.k(KOpKind::K, x * ipow(p, 3))?)?.kron(&unit(2, 1, 1)).scale(w.w2))?
        .add(&TensorOp::chain(&[&ctx.qhp(-s), &ctx.k(KOpKind::K, x * p)?, &ctx.rep.e])?.kron(&unit(2, 1, 0)).scale(w.w21))?;
    ctx.cmp(&lhs, &rhs)
}

fn gkblbkbg<T: Real>(ctx: &Ctx<T>, x: Cx<T>) -> TqResult<Residual> {
    let params = ctx.params;
    let n = ctx.rep.cutoff;
    let d = [n, 2];
    let p = params.p;
    let (s0, s) = (params.s0 as i64, params.s() as i64);
    let w = omega(Flavor::One, x, params);
    let tc = t_conjugator(&ctx.rep)?;
    let g = g_matrix(params);
    let tg = t12(&tc, &dressing_g(&ctx.rep, false, false, params)?)?;
    let tgbi = t12(&tc, &dressing_g(&ctx.rep, true, true, params)?)?;
    let lhs = TensorOp::chain(&[
        &tg,
        &ctx.k(KOpKind::CheckBar, (x * p).inv())?.embed(&[0], &d)?,
        &g.embed(&[1], &d)?,
        &ctx.l(LaxShape::CheckBar, (x * x * ipow(p, 5)).inv())?,
        &inv_diag(&g).embed(&[1], &d)?,
        &kbar_matrix(x.inv(), params).transpose().embed(&[1], &d)?,
        &tgbi,
    ])?;
    let k = 4 * s0 - s;
    let rhs = ctx
        .qhp(-k)
        .matmul(&ctx.k(KOpKind::CheckBar, p / x)?)?
        .kron(&unit(2, 0, 0))
        .scale(w.wb1)
        .add(&ctx.qhp(k).matmul(&ctx.k(KOpKind::CheckBar, (x * ipow(p, 3)).inv())?)?.kron(&unit(2, 1, 1)).scale(w.wb2))?
        .add(
            &TensorOp::chain(&[&ctx.qhp(-3 * s), &ctx.k(KOpKind::CheckBar, (x * p).inv())?, &ctx.rep.f])?
                .kron(&unit(2, 0, 1))
                .scale(w.wb12),
        )?;
    ctx.cmp(&lhs, &rhs)
}

/// Dressed reflection equation for T-type dressing with a two-site quantum
/// space: slots `0, 1` auxiliary, `2, 3` quantum.
fn dress_t<T: Real>(params: &Params<T>, x: Cx<T>, y: Cx<T>, xi: Cx<T>) -> TqResult<Residual> {
    let chain = ChainSpec { xi: vec![xi, xi.inv()] };
    let dims = [2, 2, 2, 2];
    let k13 = dressed_k_t(x, &chain, params)?.embed(&[0, 2, 3], &dims)?;
    let k23 = dressed_k_t(y, &chain, params)?.embed(&[1, 2, 3], &dims)?;
    let r = |z: Cx<T>| r_matrix(z, params).embed(&[0, 1], &dims);
    let rb = |z: Cx<T>| rbar_matrix(z, params).embed(&[0, 1], &dims);
    let lhs = TensorOp::chain(&[&r(y / x)?, &k13, &rb(x * y)?, &k23])?;
    let rhs = TensorOp::chain(&[&k23, &r((x * y).inv())?, &k13, &rb(x / y)?])?;
    lhs.rel_residual(&rhs)
}

/// Dressed reflection equation for a Q-type dressed K-operator on
/// `Fock x C^2_aux x C^2_quantum`.
fn dress_q<T: Real>(ctx: &Ctx<T>, x: Cx<T>, y: Cx<T>, xi: Cx<T>) -> TqResult<Residual> {
    let params = ctx.params;
    let chain = ChainSpec { xi: vec![xi] };
    let dims = [ctx.rep.cutoff, 2, 2];
    let kq = dressed_k_q(x, &ctx.rep, &chain, params)?.embed(&[0, 2], &dims)?;
    let kt = dressed_k_t(y, &chain, params)?.embed(&[1, 2], &dims)?;
    let l = |z: Cx<T>| ctx.l(LaxShape::Plain, z)?.embed(&[0, 1], &dims);
    let lb = |z: Cx<T>| ctx.l(LaxShape::Bar, z)?.embed(&[0, 1], &dims);
    let lhs = TensorOp::chain(&[&l(y / x)?, &kq, &lb(x * y)?, &kt])?;
    let rhs = TensorOp::chain(&[&kt, &l((x * y).inv())?, &kq, &lb(x / y)?])?;
    ctx.cmp(&lhs, &rhs)
}

fn g_ginv<T: Real>(ctx: &Ctx<T>) -> TqResult<Vec<Residual>> {
    let id = TensorOp::identity(&[ctx.rep.cutoff, 2]);
    let mut out = Vec::new();
    for barred in [false, true] {
        let g = dressing_g(&ctx.rep, barred, false, ctx.params)?;
        let gi = dressing_g(&ctx.rep, barred, true, ctx.params)?;
        out.push(ctx.cmp(&g.matmul(&gi)?, &id)?);
        out.push(ctx.cmp(&gi.matmul(&g)?, &id)?);
    }
    Ok(out)
}

/// `Kbar(x) = K^t(x q^{-2/s}) g` with `e = eb`.
fn kmatdual<T: Real>(params: &Params<T>, x: Cx<T>) -> TqResult<Residual> {
    let tied = Params { epsbar_plus: params.eps_plus, epsbar_minus: params.eps_minus, ..params.clone() };
    let rhs = k_matrix(x / params.pp(2), &tied).transpose().matmul(&g_matrix(&tied))?;
    kbar_matrix(x, &tied).rel_residual(&rhs)
}

/// `Kcheckbar(x) = (1 + eb- x^{-s} q / eb+)^{-1} K^t(q^{2/s}/x)^{-1} q^{(s0-s1) h/s}` with `e = eb`.
fn kopdual<T: Real>(ctx: &Ctx<T>, x: Cx<T>) -> TqResult<Residual> {
    let p = ctx.params;
    let tied = Params { epsbar_plus: p.eps_plus, epsbar_minus: p.eps_minus, ..p.clone() };
    let n = ctx.rep.cutoff;
    let lhs = k_operator_levels(KOpKind::CheckBar, Flavor::One, x, n, &tied)?;
    let k = k_operator_levels(KOpKind::K, Flavor::One, p.pp(2) / x, n, &tied)?;
    let pref = (one::<T>() + tied.epsbar_minus / tied.epsbar_plus * ipow(x, -(p.s() as i64)) * p.q()).inv();
    let twist = ctx.rep.p_half_h(2 * (p.s0 - p.s1) as i64);
    let lhs = TensorOp::diagonal(&lhs);
    let rhs = TensorOp::diagonal(&k.iter().map(|v| pref / *v).collect::<Vec<_>>()).matmul(&twist)?;
    ctx.cmp(&lhs, &rhs)
}

/// `zeta sigma` invariance of `K(x)` and `Kbar(x)`.
fn inv1<T: Real>(params: &Params<T>, x: Cx<T>) -> TqResult<Vec<Residual>> {
    let z = params.zeta();
    Ok(vec![
        sigma_map(&k_matrix(x, &z), 0)?.rel_residual(&k_matrix(x, params))?,
        sigma_map(&kbar_matrix(x, &z), 0)?.rel_residual(&kbar_matrix(x, params))?,
    ])
}

/// Which Fock flavors an identity is evaluated in (none for pure matrix identities).
fn flavors_for(id: &str, opts: &BoundaryCheckOptions) -> Vec<Flavor> {
    match id {
        "bnd.refeqlim1" | "bnd.refeqlim2" | "bnd.dressQ" => opts.flavors.clone(),
        "bnd.refeq0" | "bnd.refeqdual" | "bnd.dressT" | "bnd.kmatdual" | "bnd.inv1" => vec![],
        _ => vec![Flavor::One],
    }
}

fn sample<T: Real>(id: &str, params: &Params<T>, rep: Option<&FockRep<T>>, keep: usize, dr: &Draw<T>) -> TqResult<Vec<Residual>> {
    let ctx = || -> TqResult<Ctx<T>> {
        let rep = rep.ok_or_else(|| TqError::ShapeMismatch(format!("{id} needs a Fock representation")))?;
        Ok(Ctx { params, rep: rep.clone(), keep })
    };
    let (x, y) = (dr.x, dr.y);
    Ok(match id {
        "bnd.refeq0" => vec![refeq0(params, x, y)?],
        "bnd.refeqdual" => vec![refeqdual(params, x, y)?],
        "bnd.refeqlim1" => vec![refeqlim1(&ctx()?, x, y)?],
        "bnd.refeqlim2" => vec![refeqlim2(&ctx()?, x, y)?],
        "bnd.GL1LG" => vec![gl1lg(&ctx()?, x, false)?],
        "bnd.GLb1LbG" => vec![gl1lg(&ctx()?, x, true)?],
        "bnd.GKLbKG" => vec![gklbkg(&ctx()?, x)?],
        "bnd.GKbLbKbG" => vec![gkblbkbg(&ctx()?, x)?],
        "bnd.dressT" => vec![dress_t(params, x, y, dr.xi)?],
        "bnd.dressQ" => vec![dress_q(&ctx()?, x, y, dr.xi)?],
        "bnd.GGinv" => g_ginv(&ctx()?)?,
        "bnd.kmatdual" => vec![kmatdual(params, x)?],
        "bnd.kopdual" => vec![kopdual(&ctx()?, x)?],
        "bnd.inv1" => inv1(params, x)?,
        other => {
            let gen = DeltaGen::from_name(other.strip_prefix("bnd.deltaconj.").ok_or_else(|| TqError::UnknownIdentity(other.into()))?)?;
            let c = ctx()?;
            let (lhs, rhs) = delta_conj_sides(gen, x, dr.c, &c.rep, params)?;
            vec![c.cmp(&lhs, &rhs)?]
        }
    })
}

/// Redraws a sample point whenever a K-operator factor lands on a pole.
const MAX_POLE_REDRAWS: usize = 100;

fn run<T: Real>(id: &str, params: &Params<T>, opts: &BoundaryCheckOptions, cutoff: usize) -> TqResult<Vec<Residual>> {
    if opts.margin >= cutoff {
        return Err(TqError::InvalidParams(format!("margin {} leaves no levels of cutoff {cutoff}", opts.margin)));
    }
    let keep = cutoff - opts.margin;
    let flavors = flavors_for(id, opts);
    let reps: Vec<Option<FockRep<T>>> =
        if flavors.is_empty() { vec![None] } else { flavors.iter().map(|&f| build_fock(f, cutoff, params).map(Some)).collect::<TqResult<_>>()? };
    let mut sampler = SpectralSampler::for_identity(params, id);
    let mut draw = || Draw { x: sampler.point(), y: sampler.point(), xi: sampler.point(), c: sampler.square(1.0) };
    let mut out = Vec::new();
    for _ in 0..params.sample_count {
        let mut tries = 0;
        loop {
            let dr = draw();
            let per: Vec<TqResult<Vec<Residual>>> = reps.par_iter().map(|rep| sample(id, params, rep.as_ref(), keep, &dr)).collect();
            match per.into_iter().collect::<TqResult<Vec<_>>>() {
                Ok(rs) => {
                    out.extend(rs.into_iter().flatten());
                    break;
                }
                Err(TqError::PoleHit(msg)) => {
                    tries += 1;
                    if tries >= MAX_POLE_REDRAWS {
                        return Err(TqError::PoleHit(format!("{id}: no pole-free sample after {tries} draws ({msg})")));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Verifies one boundary identity at `params.sample_count` seeded points.
///
/// A failing Fock-level run is repeated at twice the cutoff; a residual that
/// still shrinks substantially is reported as
/// [`TqError::TruncationNotConverged`].  `bnd.dressQ` is always evaluated at
/// half the cutoff and at the cutoff and reports the worse of the two (the
/// K-operator entries grow like `|q|^{n^2}`, so the cutoff itself is not
/// doubled).
pub fn check_boundary_identity<T: Real>(id: &str, params: &Params<T>, opts: &BoundaryCheckOptions) -> TqResult<IdentityReport> {
    if !BOUNDARY_IDS.contains(&id) {
        return Err(TqError::UnknownIdentity(id.to_string()));
    }
    params.validate()?;
    let start = Instant::now();
    let threshold = params.tol_exact.to_f64_lossy();
    let mut first = run(id, params, opts, opts.cutoff)?;
    if id == "bnd.dressQ" {
        first.extend(run(id, params, opts, opts.cutoff / 2)?);
    }
    let report = IdentityReport::new(id, params, &first, threshold, start.elapsed());
    if report.pass || flavors_for(id, opts).is_empty() || id == "bnd.dressQ" {
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
pub fn check_all_boundary<T: Real>(params: &Params<T>, opts: &BoundaryCheckOptions) -> TqResult<Vec<IdentityReport>> {
    BOUNDARY_IDS.par_iter().map(|id| check_boundary_identity(id, params, opts)).collect()
}
