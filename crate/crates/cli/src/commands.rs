//! The four subcommands.

use crate::config::RunConfig;
use crate::output::{human_line, report_text, write_atomic};
use crate::{CliError, Outcome};
use log::{info, warn};
use rayon::prelude::*;
use std::path::PathBuf;
use tqlab_boundary::{check_boundary_identity, k_matrix, k_operator, kbar_matrix, BoundaryCheckOptions, KOpKind, BOUNDARY_IDS};
use tqlab_core::{check_core_identity, IdentityReport, TqError, TqResult, C64, CORE_IDS};
use tqlab_fock::{build_fock, Flavor};
use tqlab_ktcheck::{check_kt_identity, KT_IDS};
use tqlab_lax::{check_lax_identity, l_operator, r_matrix, rbar_matrix, LaxCheckOptions, LaxKind, LaxShape, LAX_IDS};
use tqlab_tensor::TensorOp;
use tqlab_transfer::{check_transfer_identity, q_operator, spectrum, t_operator, TransferCheckOptions, XGrid, TRANSFER_IDS};

/// Every registered identity id, in report order.
pub fn all_identity_ids() -> Vec<&'static str> {
    CORE_IDS.iter().chain(LAX_IDS).chain(BOUNDARY_IDS).chain(TRANSFER_IDS).chain(KT_IDS).copied().collect()
}

/// Ids matched by at least one glob; no globs select everything.
pub fn select_ids(globs: &[String]) -> Result<Vec<&'static str>, CliError> {
    if globs.is_empty() {
        return Ok(all_identity_ids());
    }
    let patterns = globs
        .iter()
        .map(|g| glob::Pattern::new(g).map_err(|e| CliError::Config(TqError::ConfigInvalid(format!("suite glob `{g}`: {e}")))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(all_identity_ids().into_iter().filter(|id| patterns.iter().any(|p| p.matches(id))).collect())
}

/// Runs one identity under the configuration.
pub fn run_identity(id: &str, cfg: &RunConfig) -> TqResult<IdentityReport> {
    let both = vec![Flavor::One, Flavor::Two];
    match id.split('.').next().unwrap_or("") {
        "core" => check_core_identity(id, &cfg.params),
        "lax" => {
            let opts = LaxCheckOptions { cutoff: cfg.fock_cutoff, margin: cfg.fock_margin, flavors: both };
            check_lax_identity(id, &cfg.params, &opts)
        }
        "bnd" => {
            let opts = BoundaryCheckOptions { cutoff: cfg.fock_cutoff, margin: cfg.fock_margin, flavors: both };
            check_boundary_identity(id, &cfg.params, &opts)
        }
        "transfer" => {
            let opts = TransferCheckOptions { chain: cfg.chain.clone(), trace: cfg.trace.clone() };
            check_transfer_identity(id, &cfg.params, &opts)
        }
        "kt" => check_kt_identity(id, &cfg.params, &cfg.kt),
        _ => Err(TqError::UnknownIdentity(id.to_string())),
    }
}

/// Runs the ids on the worker pool; results keep the order of `ids`.
pub fn run_identities(ids: &[&str], cfg: &RunConfig) -> TqResult<Vec<IdentityReport>> {
    ids.par_iter().map(|id| run_identity(id, cfg)).collect::<Vec<_>>().into_iter().collect()
}

fn finish(reports: &[IdentityReport], cfg: &RunConfig, name: &str) -> Result<Outcome, CliError> {
    for r in reports {
        println!("{}", human_line(r));
    }
    let path = write_atomic(&cfg.output_dir, name, &report_text(reports, cfg.timing))?;
    info!("report written to {}", path.display());
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        println!("{failed} of {} identities failed", reports.len());
        Ok(Outcome::IdentityFailure)
    } else {
        println!("all {} identities pass", reports.len());
        Ok(Outcome::Pass)
    }
}

/// `verify`: every selected identity suite.  `suite` overrides the globs of
/// the configuration.
pub fn cmd_verify(cfg: &RunConfig, suite: Option<&str>) -> Result<Outcome, CliError> {
    let globs: Vec<String> = match suite {
        Some(s) => s.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect(),
        None => cfg.suites.clone(),
    };
    let ids = select_ids(&globs)?;
    if ids.is_empty() {
        warn!("suite selection {globs:?} matches no identity");
    }
    let reports = run_identities(&ids, cfg)?;
    finish(&reports, cfg, &cfg.report_name)
}

/// Ids run by `tq`: the TQ relation and the commutators, both flavors.
pub const TQ_IDS: &[&str] = &[
    "transfer.TQ1",
    "transfer.TQ2",
    "transfer.TT",
    "transfer.QT1",
    "transfer.QT2",
    "transfer.QQ1",
    "transfer.QQ2",
];

/// `tq`: the TQ relation and commutativity at `points` seeded samples.
pub fn cmd_tq(cfg: &RunConfig, points: usize) -> Result<Outcome, CliError> {
    if points == 0 {
        return Err(CliError::Config(TqError::ConfigInvalid("--points must be at least 1".into())));
    }
    let mut cfg = cfg.clone();
    cfg.params.sample_count = points;
    let reports = run_identities(TQ_IDS, &cfg)?;
    finish(&reports, &cfg, "tq.tsv")
}

/// Names accepted by `dump`.
pub const DUMP_OBJECTS: &[&str] = &[
    "R", "Rbar", "L1", "Lb1", "Lc1", "Lcb1", "L2", "Lb2", "Lc2", "Lcb2", "K", "Kbar", "Kop1", "Kop2", "Kcbop1", "Kcbop2", "T", "Q1", "Q2",
];

fn flavor_suffix(name: &str) -> Flavor {
    if name.ends_with('2') {
        Flavor::Two
    } else {
        Flavor::One
    }
}

/// Builds a named operator at spectral parameter `x`.
pub fn build_object(name: &str, x: C64, cfg: &RunConfig) -> TqResult<TensorOp<f64>> {
    let p = &cfg.params;
    let n = cfg.fock_cutoff;
    let lax = |shape: LaxShape| -> TqResult<TensorOp<f64>> {
        let flavor = flavor_suffix(name);
        l_operator(LaxKind::new(shape, flavor), x, &build_fock(flavor, n, p)?, p)
    };
    let kop = |kind: KOpKind| -> TqResult<TensorOp<f64>> { k_operator(kind, x, &build_fock(flavor_suffix(name), n, p)?, p) };
    match name {
        "R" => Ok(r_matrix(x, p)),
        "Rbar" => Ok(rbar_matrix(x, p)),
        "L1" | "L2" => lax(LaxShape::Plain),
        "Lb1" | "Lb2" => lax(LaxShape::Bar),
        "Lc1" | "Lc2" => lax(LaxShape::Check),
        "Lcb1" | "Lcb2" => lax(LaxShape::CheckBar),
        "K" => Ok(k_matrix(x, p)),
        "Kbar" => Ok(kbar_matrix(x, p)),
        "Kop1" | "Kop2" => kop(KOpKind::K),
        "Kcbop1" | "Kcbop2" => kop(KOpKind::CheckBar),
        "T" => t_operator(x, &cfg.chain, p),
        "Q1" | "Q2" => Ok(q_operator(flavor_suffix(name), x, &cfg.chain, p, &cfg.trace)?.op),
        other => Err(TqError::UnknownObject(other.to_string())),
    }
}

/// `dump`: writes the named operator at `x` to `<output dir>/<name>.dump`.
pub fn cmd_dump(cfg: &RunConfig, object: &str, x: &str) -> Result<(Outcome, PathBuf), CliError> {
    if !DUMP_OBJECTS.contains(&object) {
        return Err(CliError::Config(TqError::UnknownObject(object.to_string())));
    }
    let x = tqlab_core::parse_complex(x).map_err(CliError::Config)?;
    if x.norm() == 0.0 {
        return Err(CliError::Config(TqError::ConfigInvalid("x = 0 is not allowed".into())));
    }
    let op = build_object(object, x, cfg)?;
    let path = write_atomic(&cfg.output_dir, &format!("{object}.dump"), &op.dump())?;
    println!("{object} at x = {x}: dims {:?}, written to {}", op.dims(), path.display());
    Ok((Outcome::Pass, path))
}

/// Operator-level identities that need no Q-operator; the fallback of
/// `spectrum` when the T spectrum is degenerate.
pub const FALLBACK_IDS: &[&str] = &["transfer.TT", "transfer.invT", "transfer.SzT"];

/// `spectrum`: per-eigenpair TQ residuals and the advisory Bethe-root scan.
///
/// Writes `spectrum.tsv` (with `leakage` and the eigenpair lines) and
/// `bethe_candidates.tsv`.  A degenerate spectrum falls back to the
/// commutator checks, reported in `spectrum_fallback.tsv`.
pub fn cmd_spectrum(cfg: &RunConfig, grid: &str) -> Result<Outcome, CliError> {
    let grid = XGrid::parse(grid).map_err(CliError::Config)?;
    match spectrum(&grid, cfg.spectrum_flavor, &cfg.chain, &cfg.params, &cfg.spectrum) {
        Ok(report) => {
            let threshold = 10.0 * cfg.params.tol_trace;
            let mut text = format!("# leakage\t{:.6e}\n# eig_index\tre_T\tim_T\tre_Q\tim_Q\ttq_residual\n", report.leakage);
            text.push_str(&report.lines());
            let mut bethe = String::from("# eig_index\tre_z\tim_z\tabs_Q\n");
            bethe.push_str(&report.bethe_candidates(cfg.params.p));
            write_atomic(&cfg.output_dir, "bethe_candidates.tsv", &bethe)?;
            let path = write_atomic(&cfg.output_dir, "spectrum.tsv", &text)?;
            let worst = report.pairs.iter().map(|e| e.tq_residual).fold(0.0, f64::max);
            println!(
                "{} eigenpairs on {} grid points: worst TQ residual {worst:.3e}, leakage {:.3e}; written to {}",
                report.pairs.len(),
                report.grid.len(),
                report.leakage,
                path.display()
            );
            if worst < threshold && report.leakage < cfg.params.tol_trace {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::IdentityFailure)
            }
        }
        Err(TqError::DegenerateSpectrum(why)) => {
            warn!("degenerate spectrum ({why}); falling back to operator commutator checks");
            let reports = run_identities(FALLBACK_IDS, cfg)?;
            finish(&reports, cfg, "spectrum_fallback.tsv")
        }
        Err(e) => Err(CliError::Compute(e)),
    }
}
