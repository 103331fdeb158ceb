//! Simultaneous spectrum of the commuting T/Q family.
//!
//! The eigenbasis is taken from `T` at a fixed generic reference point
//! (complex Schur form plus back-substitution); every `T` and `Q` on the
//! grid is then projected onto it.  The eigenvalue-level TQ relation is
//! checked per eigenpair, and the off-diagonal weight of the projected
//! operators measures how well the family shares the basis.

use crate::ops::{eta, q_operator, t_operator, TraceOptions};
use crate::tq::tq_coefficients;
use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;
use std::fmt::Write as _;
use tqlab_core::{parse_complex, ChainSpec, Params, TqError, TqResult};
use tqlab_fock::Flavor;
use tqlab_tensor::TensorOp;

type C64 = Complex<f64>;

/// Spectral points at which the eigenvalue TQ relation is checked.
#[derive(Debug, Clone, PartialEq)]
pub struct XGrid {
    pub points: Vec<C64>,
}

impl XGrid {
    /// Parses a grid specification:
    ///
    /// * `none` — empty grid;
    /// * `circle:R:n` — `n` points `R e^{i(2 pi k/n + 0.1)}`;
    /// * `line:a:b:n` — `n` equally spaced points from `a` to `b` inclusive,
    ///   with `a`, `b` written as `re+imj`;
    /// * `list:z1,z2,...` — explicit points.
    pub fn parse(spec: &str) -> TqResult<Self> {
        let bad = |why: &str| TqError::ConfigInvalid(format!("grid `{spec}`: {why}"));
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let count = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("point count must be a non-negative integer"));
        let points = match parts.as_slice() {
            ["none"] => Vec::new(),
            ["circle", r, n] => {
                let r: f64 = r.trim().parse().map_err(|_| bad("radius must be a number"))?;
                if !(r.is_finite() && r > 0.0) {
                    return Err(bad("radius must be positive"));
                }
                let n = count(n)?;
                (0..n)
                    .map(|k| C64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64 + 0.1))
                    .collect()
            }
            ["line", a, b, n] => {
                let (a, b, n) = (parse_complex(a)?, parse_complex(b)?, count(n)?);
                match n {
                    0 => Vec::new(),
                    1 => vec![a],
                    _ => (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect(),
                }
            }
            ["list", items] => {
                items.split(',').filter(|s| !s.trim().is_empty()).map(parse_complex).collect::<TqResult<Vec<_>>>()?
            }
            _ => return Err(bad("expected none, circle:R:n, line:a:b:n or list:z1,z2,...")),
        };
        if points.iter().any(|z| z.norm() == 0.0) {
            return Err(bad("x = 0 is not allowed"));
        }
        Ok(Self { points })
    }
}

/// Spectrum computation policy.
#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    /// Point at which `T` is diagonalized to fix the eigenbasis.
    pub reference: C64,
    /// Relative eigenvalue gap below which the spectrum counts as degenerate.
    pub min_gap: f64,
    pub trace: TraceOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self { reference: C64::new(0.93, 0.21), min_gap: 1e-6, trace: TraceOptions::default() }
    }
}

/// One simultaneous eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    /// Eigenvalue of `T` at the reference point.
    pub t: C64,
    /// Eigenvalue of `Q` at the reference point.
    pub q: C64,
    /// Largest eigenvalue-level TQ residual over the grid.
    pub tq_residual: f64,
    /// `|Q_k(p x_g)|` at every grid point.
    pub q_modulus: Vec<f64>,
}

/// Result of [`spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub grid: Vec<C64>,
    pub pairs: Vec<Eigenpair>,
    /// Largest relative off-diagonal weight of any projected `T` or `Q`.
    pub leakage: f64,
}

impl SpectrumReport {
    /// Machine-readable lines `eig_index re(T) im(T) re(Q) im(Q) tq_residual`.
    pub fn lines(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.pairs.iter().enumerate() {
            let _ = writeln!(out, "{k}\t{:.12e}\t{:.12e}\t{:.12e}\t{:.12e}\t{:.6e}", e.t.re, e.t.im, e.q.re, e.q.im, e.tq_residual);
        }
        out
    }

    /// Advisory Bethe-root candidates: grid points `z = p x_g` at which
    /// `|Q_k(z)|` is a strict local minimum along the grid.  Lines
    /// `eig_index re(z) im(z) |Q_k(z)|`; nothing here is certified.
    pub fn bethe_candidates(&self, p: C64) -> String {
        let mut out = String::new();
        for (k, e) in self.pairs.iter().enumerate() {
            let m = &e.q_modulus;
            for g in 1..m.len().saturating_sub(1) {
                if m[g] < m[g - 1] && m[g] < m[g + 1] {
                    let z = p * self.grid[g];
                    let _ = writeln!(out, "{k}\t{:.12e}\t{:.12e}\t{:.6e}", z.re, z.im, m[g]);
                }
            }
        }
        out
    }
}

fn to_matrix(op: &TensorOp<f64>) -> DMatrix<C64> {
    let n = op.side();
    DMatrix::from_fn(n, n, |r, c| op.get(r, c))
}

/// Eigenvalues and unit eigenvectors (as columns) of a diagonalizable matrix.
fn eigen(m: &DMatrix<C64>) -> TqResult<(Vec<C64>, DMatrix<C64>)> {
    let n = m.nrows();
    let schur = m.clone().try_schur(1e-14, 10_000).ok_or_else(|| TqError::DegenerateSpectrum("Schur iteration did not converge".into()))?;
    let (z, t) = schur.unpack();
    let values: Vec<C64> = (0..n).map(|k| t[(k, k)]).collect();
    let mut v = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let mut y = vec![C64::new(0.0, 0.0); n];
        y[k] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let s: C64 = (j + 1..=k).map(|i| t[(j, i)] * y[i]).sum();
            y[j] = -s / (t[(j, j)] - values[k]);
        }
        let col = &z * nalgebra::DVector::from_vec(y);
        let norm = col.norm();
        v.set_column(k, &(col / C64::new(norm, 0.0)));
    }
    Ok((values, v))
}

/// Smallest pairwise eigenvalue distance relative to the spectral radius.
fn relative_gap(values: &[C64]) -> f64 {
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm() / scale);
        }
    }
    gap
}

/// Diagonal of `V^{-1} X V` and the relative off-diagonal weight.
fn project(v_inv: &DMatrix<C64>, v: &DMatrix<C64>, x: &TensorOp<f64>) -> (Vec<C64>, f64) {
    let d = v_inv * to_matrix(x) * v;
    let n = d.nrows();
    let diag: Vec<C64> = (0..n).map(|k| d[(k, k)]).collect();
    let total = d.norm();
    let mut off = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                off += d[(r, c)].norm_sqr();
            }
        }
    }
    (diag, off.sqrt() / total.max(f64::MIN_POSITIVE))
}

/// Simultaneous spectrum of `T` and `Q^{(a)}` with the eigenvalue-level TQ
/// relation checked at every grid point.
///
/// An empty grid gives an empty report.  A (near-)degenerate `T` spectrum
/// at the reference point is reported as [`TqError::DegenerateSpectrum`];
/// callers fall back to operator-level commutator checks.
pub fn spectrum(grid: &XGrid, flavor: Flavor, chain: &ChainSpec<f64>, params: &Params<f64>, opts: &SpectrumOptions) -> TqResult<SpectrumReport> {
    if grid.points.is_empty() {
        return Ok(SpectrumReport { grid: Vec::new(), pairs: Vec::new(), leakage: 0.0 });
    }
    params.validate()?;
    chain.validate()?;
    params.require_trace_regime()?;
    let x0 = opts.reference;
    let t0 = t_operator(x0, chain, params)?;
    let (tvals, v) = eigen(&to_matrix(&t0))?;
    let gap = relative_gap(&tvals);
    if gap < opts.min_gap {
        return Err(TqError::DegenerateSpectrum(format!("relative eigenvalue gap of T({x0}) is {gap:e}")));
    }
    let v_inv = v.clone().try_inverse().ok_or_else(|| TqError::DegenerateSpectrum("eigenvector matrix is singular".into()))?;
    let q0 = q_operator(flavor, x0, chain, params, &opts.trace)?.op;
    let (q0_diag, mut leakage) = project(&v_inv, &v, &q0);

    let kexp = 3 - 2 * flavor.index() as i64;
    let (eta_d, _) = project(&v_inv, &v, &eta(chain.len(), kexp, params));
    let p = params.p;
    type PointResult = TqResult<(Vec<f64>, Vec<f64>, f64)>;
    let per_point: Vec<PointResult> = grid
        .points
        .par_iter()
        .map(|&x| {
            let t = t_operator(x, chain, params)?;
            let qs = [p * x, x / p, p * p * p * x]
                .iter()
                .map(|&z| q_operator(flavor, z, chain, params, &opts.trace).map(|e| e.op))
                .collect::<TqResult<Vec<_>>>()?;
            let (pre, c1, c2) = tq_coefficients(flavor, x, chain, params);
            let (td, lt) = project(&v_inv, &v, &t);
            let proj: Vec<(Vec<C64>, f64)> = qs.iter().map(|q| project(&v_inv, &v, q)).collect();
            let leak = proj.iter().map(|(_, l)| *l).fold(lt, f64::max);
            let mut res = Vec::with_capacity(td.len());
            for k in 0..td.len() {
                let lhs = pre * proj[0].0[k] * td[k];
                let rhs = c1 * proj[1].0[k] * eta_d[k] + c2 * proj[2].0[k] / eta_d[k];
                res.push((lhs - rhs).norm() / rhs.norm().max(1.0));
            }
            let modulus = proj[0].0.iter().map(|z| z.norm()).collect();
            Ok((res, modulus, leak))
        })
        .collect();
    let mut pairs: Vec<Eigenpair> = tvals
        .iter()
        .zip(&q0_diag)
        .map(|(&t, &q)| Eigenpair { t, q, tq_residual: 0.0, q_modulus: Vec::with_capacity(grid.points.len()) })
        .collect();
    for item in per_point {
        let (res, modulus, leak) = item?;
        leakage = leakage.max(leak);
        for (k, pair) in pairs.iter_mut().enumerate() {
            pair.tq_residual = pair.tq_residual.max(if res[k].is_nan() { f64::INFINITY } else { res[k] });
            pair.q_modulus.push(modulus[k]);
        }
    }
    Ok(SpectrumReport { grid: grid.points.clone(), pairs, leakage })
}
