//! Registry of product-formula identities.

use crate::casimir::{casimir_ef_form, casimir_fe_form, casimir_fundamental, central_ck, scalar_series_exp, scalar_series_log};
use crate::recon::{l1_cartan_factor, reconstruct_l1, reconstruct_r, DEFAULT_KMAX};
use crate::roots::{closed_image, recursive_roots, Species};
use std::time::Instant;
use tqlab_core::scalar::{ipow, narrow, one, zero};
use tqlab_core::{Cx, IdentityReport, Params, Real, Residual, SpectralSampler, TqError, TqResult};
use tqlab_fock::{build_fock, Flavor};
use tqlab_lax::{l_operator, r_matrix, LaxKind, LaxShape};
use tqlab_tensor::{flip, TensorOp};

/// Stable identifiers of the product-formula registry.
pub const KT_IDS: &[&str] = &["kt.rootvec", "kt.casimir", "kt.ck", "kt.reconR", "kt.reconL1"];

/// Truncation policy of a registry run.
#[derive(Debug, Clone)]
pub struct KtCheckOptions {
    /// Largest `k` compared between closed and recursive root vectors.
    pub root_k: usize,
    /// Number of factors kept in the ordered products.
    pub kmax: usize,
    /// Fock cutoff of the L-operator reconstruction.
    pub cutoff: usize,
    /// Window for `|x^s|` of reconstruction sample points.
    pub xs_window: (f64, f64),
}

impl Default for KtCheckOptions {
    fn default() -> Self {
        Self { root_k: 8, kmax: DEFAULT_KMAX, cutoff: 16, xs_window: (0.1, 0.3) }
    }
}

fn scalar_residual<T: Real>(a: Cx<T>, b: Cx<T>) -> Residual {
    let (a, b) = (tqlab_core::scalar::widen(a), tqlab_core::scalar::widen(b));
    Residual::from_norms((a - b).norm(), b.norm())
}

/// Point with log-uniform `|x^s|` in the window and uniform phase.
fn small_point<T: Real>(sampler: &mut SpectralSampler, s: i32, window: (f64, f64)) -> Cx<T> {
    let (lo, hi) = (window.0.ln(), window.1.ln());
    let xs = (lo + (hi - lo) * sampler.uniform()).exp();
    let th = std::f64::consts::PI * (2.0 * sampler.uniform() - 1.0);
    narrow(num_complex::Complex::from_polar(xs.powf(1.0 / s as f64), th))
}

fn rootvec<T: Real>(x: Cx<T>, kmax: usize, params: &Params<T>) -> TqResult<Vec<Residual>> {
    let rec = recursive_roots(kmax, x, params);
    let mut out = Vec::new();
    for species in Species::ALL {
        for k in species.min_k()..=kmax {
            out.push(rec.get(species, k).rel_residual(&closed_image(species, k, x, params)?)?);
        }
    }
    Ok(out)
}

fn casimir<T: Real>(params: &Params<T>) -> TqResult<Vec<Residual>> {
    let fe = casimir_fe_form(params);
    let ef = casimir_ef_form(params);
    let scalar = TensorOp::identity(&[2]).scale(casimir_fundamental(params));
    let q = params.q();
    let closed = (ipow(q, 2) + ipow(q, -2)) / (params.lambda() * params.lambda());
    let f = flip::<T>();
    Ok(vec![
        fe.rel_residual(&ef)?,
        fe.rel_residual(&scalar)?,
        scalar_residual(casimir_fundamental(params), closed),
        TensorOp::chain(&[&f, &fe, &f])?.rel_residual(&fe)?,
    ])
}

fn ck<T: Real>(params: &Params<T>) -> TqResult<Vec<Residual>> {
    let q = params.q();
    let l2c = params.lambda() * params.lambda() * casimir_fundamental(params);
    let mut out = vec![scalar_residual(central_ck(1, params)?, l2c)];
    for k in 1..=12_i64 {
        out.push(scalar_residual(central_ck(k as usize, params)?, ipow(q, 2 * k) + ipow(q, -2 * k)));
    }
    // Re-exponentiating the logarithm reproduces 1 + a w + w^2 to order 8.
    let mut f = vec![zero::<T>(); 8];
    f[0] = l2c;
    f[1] = one();
    let back = scalar_series_exp(&scalar_series_log(&f));
    out.extend(back.iter().zip(&f).map(|(a, b)| scalar_residual(*a, *b)));
    Ok(out)
}

fn recon_l1<T: Real>(x: Cx<T>, opts: &KtCheckOptions, params: &Params<T>) -> TqResult<Vec<Residual>> {
    let rep = build_fock(Flavor::One, opts.cutoff, params)?;
    let direct = l_operator(LaxKind::new(LaxShape::Plain, Flavor::One), x, &rep, params)?;
    let rebuilt = reconstruct_l1(x, opts.cutoff, opts.kmax, params)?;
    // The Cartan factor alone: diag(1, 1 - q x^s) once normalized.
    let d = l1_cartan_factor(x, opts.kmax, params)?.scale(tqlab_core::special::phi1(x, params)?);
    let xs = ipow(x, params.s() as i64);
    Ok(vec![
        rebuilt.slab_residual(&direct, 0, opts.cutoff - 1)?,
        scalar_residual(d.get(0, 0), one()),
        scalar_residual(d.get(1, 1), one::<T>() - params.q() * xs),
    ])
}

fn sample<T: Real>(id: &str, x: Cx<T>, opts: &KtCheckOptions, params: &Params<T>) -> TqResult<Vec<Residual>> {
    match id {
        "kt.rootvec" => rootvec(x, opts.root_k, params),
        "kt.casimir" => casimir(params),
        "kt.ck" => ck(params),
        "kt.reconR" => Ok(vec![reconstruct_r(x, opts.kmax, params)?.rel_residual(&r_matrix(x, params))?]),
        "kt.reconL1" => recon_l1(x, opts, params),
        other => Err(TqError::UnknownIdentity(other.to_string())),
    }
}

/// Verifies one product-formula identity at `params.sample_count` seeded
/// points (the point-independent ones are evaluated once).
///
/// Root vectors and central elements use `tol_exact`; the truncated
/// product reconstructions use `tol_trace`.
pub fn check_kt_identity<T: Real>(id: &str, params: &Params<T>, opts: &KtCheckOptions) -> TqResult<IdentityReport> {
    if !KT_IDS.contains(&id) {
        return Err(TqError::UnknownIdentity(id.to_string()));
    }
    params.validate()?;
    let start = Instant::now();
    let mut sampler = SpectralSampler::for_identity(params, id);
    let (threshold, rounds) = match id {
        "kt.reconR" | "kt.reconL1" => (params.tol_trace, params.sample_count),
        "kt.rootvec" => (params.tol_exact, params.sample_count),
        _ => (params.tol_exact, 1),
    };
    let mut residuals = Vec::new();
    for _ in 0..rounds {
        let x = match id {
            "kt.reconR" | "kt.reconL1" => small_point(&mut sampler, params.s(), opts.xs_window),
            _ => sampler.point(),
        };
        residuals.extend(sample(id, x, opts, params)?);
    }
    Ok(IdentityReport::new(id, params, &residuals, threshold.to_f64_lossy(), start.elapsed()))
}

/// Runs every product-formula identity.
pub fn check_all_kt<T: Real>(params: &Params<T>, opts: &KtCheckOptions) -> TqResult<Vec<IdentityReport>> {
    KT_IDS.iter().map(|id| check_kt_identity(id, params, opts)).collect()
}
