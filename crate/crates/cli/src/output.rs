//! Atomic report files.
//!
//! Every file is written to a temporary sibling and renamed into place, so
//! a failed run never leaves a partial report behind.

use std::io::Write;
use std::path::{Path, PathBuf};
use tqlab_core::IdentityReport;

/// Writes `contents` to `dir/name` atomically, creating `dir` if needed.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    let path = dir.join(name);
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}

/// Machine-readable report: header plus one tab-separated record per identity.
pub fn report_text(reports: &[IdentityReport], timing: bool) -> String {
    let mut out = String::from(IdentityReport::tsv_header());
    out.push('\n');
    for r in reports {
        out.push_str(&r.tsv(timing));
        out.push('\n');
    }
    out
}

/// Human-readable summary line of one record.
pub fn human_line(r: &IdentityReport) -> String {
    format!(
        "{:<4}  {:<22} residual {:.3e}  threshold {:.1e}  samples {:>2}  {} ms",
        if r.pass { "ok" } else { "FAIL" },
        r.id,
        r.max_residual,
        r.threshold,
        r.samples,
        r.wall_time_ms
    )
}
