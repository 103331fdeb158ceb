//! Run configuration: a flat `key = value` file with `[section]` headers.
//!
//! ```text
//! # default point, two-site chain
//! [params]
//! p = 1.08+0.12j
//! s0 = 1
//! s1 = 1
//! eps_minus = 0.1+0.05j
//!
//! [chain]
//! xi = 1.1-0.1j, 0.9+0.05j
//!
//! [suites]
//! select = lax.*, bnd.*
//!
//! [output]
//! dir = out
//! timing = false
//! ```
//!
//! Every key is optional; omitted keys keep their defaults.  Unknown
//! sections or keys, unparsable values and parameter sets violating the
//! parameter invariants are all reported as `ConfigInvalid`.

use std::path::{Path, PathBuf};
use tqlab_core::{parse_complex, Chain64, Params64, TqError, TqResult, C64};
use tqlab_fock::Flavor;
use tqlab_ktcheck::KtCheckOptions;
use tqlab_transfer::{SpectrumOptions, TraceOptions};

/// Fully resolved configuration of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params64,
    pub chain: Chain64,
    /// Identity-id globs; empty selects every suite.
    pub suites: Vec<String>,
    /// Directory receiving reports and dumps.
    pub output_dir: PathBuf,
    /// File name of the `verify` report inside `output_dir`.
    pub report_name: String,
    /// Write wall times into the machine report.
    pub timing: bool,
    /// Fock cutoff of the Lax and boundary suites and of operator dumps.
    pub fock_cutoff: usize,
    /// Top levels excluded from Fock comparisons.
    pub fock_margin: usize,
    pub trace: TraceOptions,
    pub kt: KtCheckOptions,
    pub spectrum_flavor: Flavor,
    pub spectrum: SpectrumOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: Params64::default(),
            chain: Chain64::generic(2),
            suites: Vec::new(),
            output_dir: PathBuf::from("."),
            report_name: "verify.tsv".into(),
            timing: true,
            fock_cutoff: 32,
            fock_margin: 4,
            trace: TraceOptions::default(),
            kt: KtCheckOptions::default(),
            spectrum_flavor: Flavor::One,
            spectrum: SpectrumOptions::default(),
        }
    }
}

fn invalid(line: usize, msg: impl std::fmt::Display) -> TqError {
    TqError::ConfigInvalid(format!("line {line}: {msg}"))
}

fn parse_num<V: std::str::FromStr>(line: usize, key: &str, value: &str) -> TqResult<V> {
    value.parse().map_err(|_| invalid(line, format!("`{key}` expects a number, got `{value}`")))
}

fn parse_bool(line: usize, key: &str, value: &str) -> TqResult<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(invalid(line, format!("`{key}` expects true or false, got `{value}`"))),
    }
}

fn parse_cx(line: usize, key: &str, value: &str) -> TqResult<C64> {
    parse_complex(value).map_err(|e| invalid(line, format!("`{key}`: {e}")))
}

fn parse_list(value: &str) -> Vec<String> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

impl RunConfig {
    /// Parses configuration text; relative output paths are resolved
    /// against `base`.
    pub fn parse(text: &str, base: &Path) -> TqResult<Self> {
        let mut cfg = RunConfig::default();
        let mut chain_len: Option<usize> = None;
        let mut chain_xi: Option<Vec<C64>> = None;
        let mut section = String::from("params");
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| invalid(line, "unterminated section header"))?.trim();
                if !["params", "chain", "suites", "output", "cutoff", "kt", "spectrum"].contains(&name) {
                    return Err(invalid(line, format!("unknown section `[{name}]`")));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| invalid(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let p = &mut cfg.params;
            match (section.as_str(), key) {
                ("params", "p") => p.p = parse_cx(line, key, value)?,
                ("params", "s0") => p.s0 = parse_num(line, key, value)?,
                ("params", "s1") => p.s1 = parse_num(line, key, value)?,
                ("params", "eps_plus") => p.eps_plus = parse_cx(line, key, value)?,
                ("params", "eps_minus") => p.eps_minus = parse_cx(line, key, value)?,
                ("params", "epsbar_plus") => p.epsbar_plus = parse_cx(line, key, value)?,
                ("params", "epsbar_minus") => p.epsbar_minus = parse_cx(line, key, value)?,
                ("params", "tol_exact") => p.tol_exact = parse_num(line, key, value)?,
                ("params", "tol_trace") => p.tol_trace = parse_num(line, key, value)?,
                ("params", "series_cap") => p.series_cap = parse_num(line, key, value)?,
                ("params", "seed") => p.rng_seed = parse_num(line, key, value)?,
                ("params", "samples") => p.sample_count = parse_num(line, key, value)?,
                ("params", "allow_general_gradation") => p.allow_general_gradation = parse_bool(line, key, value)?,
                ("chain", "length") => chain_len = Some(parse_num(line, key, value)?),
                ("chain", "xi") => {
                    chain_xi = Some(parse_list(value).iter().map(|v| parse_cx(line, key, v)).collect::<TqResult<_>>()?)
                }
                ("suites", "select") => cfg.suites = parse_list(value),
                ("output", "dir") => cfg.output_dir = base.join(value),
                ("output", "report") => cfg.report_name = value.to_string(),
                ("output", "timing") => cfg.timing = parse_bool(line, key, value)?,
                ("cutoff", "fock") => cfg.fock_cutoff = parse_num(line, key, value)?,
                ("cutoff", "margin") => cfg.fock_margin = parse_num(line, key, value)?,
                ("cutoff", "initial") => cfg.trace.initial_cutoff = parse_num(line, key, value)?,
                ("cutoff", "cap") => cfg.trace.max_cutoff = parse_num(line, key, value)?,
                ("cutoff", "tail_tol") => cfg.trace.tail_tol = parse_num(line, key, value)?,
                ("kt", "kmax") => cfg.kt.kmax = parse_num(line, key, value)?,
                ("kt", "root_k") => cfg.kt.root_k = parse_num(line, key, value)?,
                ("kt", "cutoff") => cfg.kt.cutoff = parse_num(line, key, value)?,
                ("kt", "xs_min") => cfg.kt.xs_window.0 = parse_num(line, key, value)?,
                ("kt", "xs_max") => cfg.kt.xs_window.1 = parse_num(line, key, value)?,
                ("spectrum", "flavor") => {
                    let a: u8 = parse_num(line, key, value)?;
                    cfg.spectrum_flavor = Flavor::from_index(a).map_err(|e| invalid(line, e))?;
                }
                ("spectrum", "reference") => cfg.spectrum.reference = parse_cx(line, key, value)?,
                ("spectrum", "min_gap") => cfg.spectrum.min_gap = parse_num(line, key, value)?,
                _ => return Err(invalid(line, format!("unknown key `{key}` in section [{section}]"))),
            }
        }
        cfg.chain = match (chain_xi, chain_len) {
            (Some(xi), Some(n)) if xi.len() != n => {
                return Err(TqError::ConfigInvalid(format!("chain length {n} disagrees with {} listed inhomogeneities", xi.len())))
            }
            (Some(xi), _) => Chain64 { xi },
            (None, Some(n)) => Chain64::generic(n),
            (None, None) => Chain64::generic(2),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and parses a configuration file.
    pub fn load(path: &Path) -> TqResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TqError::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parameter, chain and policy invariants; every violation is a
    /// configuration error.
    pub fn validate(&self) -> TqResult<()> {
        let as_config = |e: TqError| match e {
            TqError::ConfigInvalid(m) => TqError::ConfigInvalid(m),
            other => TqError::ConfigInvalid(other.to_string()),
        };
        self.params.validate().map_err(as_config)?;
        self.chain.validate().map_err(as_config)?;
        if self.fock_cutoff < self.fock_margin + 2 {
            return Err(TqError::ConfigInvalid("Fock cutoff must exceed the margin by at least 2".into()));
        }
        let t = &self.trace;
        if t.initial_cutoff < 4 || t.max_cutoff < t.initial_cutoff || !(t.tail_tol > 0.0) {
            return Err(TqError::ConfigInvalid("trace cutoff policy needs 4 <= initial <= cap and tail_tol > 0".into()));
        }
        let (lo, hi) = self.kt.xs_window;
        if !(lo > 0.0 && lo <= hi && hi < 1.0) || self.kt.kmax == 0 || self.kt.cutoff < 2 {
            return Err(TqError::ConfigInvalid("kt policy needs 0 < xs_min <= xs_max < 1, kmax >= 1, cutoff >= 2".into()));
        }
        if self.report_name.is_empty() || self.report_name.contains(['/', '\\']) {
            return Err(TqError::ConfigInvalid("report must be a plain file name".into()));
        }
        if !(self.spectrum.min_gap >= 0.0) {
            return Err(TqError::ConfigInvalid("spectrum min_gap must be non-negative".into()));
        }
        Ok(())
    }
}
