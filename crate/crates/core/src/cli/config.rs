//! Job configuration (JSON5, unknown keys rejected).

use serde::Deserialize;

use crate::heckealg::LabelSpec;
use crate::lattice::IVec;
use crate::rootdata::RawDatum;

use super::emit::Format;
use super::CliError;

pub const COMMANDS: [&str; 15] = [
    "validate",
    "weyl",
    "mult",
    "normalform",
    "center",
    "cfun",
    "residual",
    "induce",
    "weights",
    "tempered",
    "cterm",
    "plancherel",
    "probe-growth",
    "probe-decay",
    "factor-check",
];

pub const DEFAULT_SEED: u64 = 1;

/// One summand: `c · N_w` (`w` a word) or `c · θ_x`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default)]
    pub w: Option<String>,
    #[serde(default)]
    pub theta: Option<IVec>,
    /// Laurent polynomial in `v`, e.g. `"v - v^-1"`.
    #[serde(default)]
    pub c: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub max_norm: Option<usize>,
    pub left: Option<Vec<Term>>,
    pub right: Option<Vec<Term>>,
    pub h: Option<Vec<Term>>,
    /// Exact point, `"(+,1,1);(-,1/2,1)"`.
    pub point: Option<String>,
    /// Complex coordinates `[[re, im], ...]` of a torus point.
    pub t: Option<Vec<[f64; 2]>>,
    /// Angles of a unitary torus point.
    pub angles: Option<Vec<f64>>,
    pub grid: Option<usize>,
    /// `P` for the induction datum.
    pub p: Option<Vec<usize>>,
    /// `"steinberg"` for the Steinberg representation of the whole algebra;
    /// otherwise induced from `P` (Steinberg of `ℋ_P`, trivial if `P = ∅`).
    pub rep: Option<String>,
    /// Index of the `Ω`-character twisting a Steinberg representation.
    pub chi: Option<usize>,
    /// `Q` for constant terms and the factorization check.
    pub qset: Option<Vec<usize>>,
    pub alpha: Option<usize>,
    pub x0: Option<Vec<IVec>>,
    pub a: Option<f64>,
    pub kmax: Option<usize>,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub datum: Option<RawDatum>,
    #[serde(default)]
    pub fs: Option<LabelSpec>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub cmd: Option<String>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl JobConfig {
    pub fn q(&self) -> f64 {
        self.q.unwrap_or(2.0)
    }
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
    pub fn labels(&self) -> LabelSpec {
        self.fs.clone().unwrap_or_else(|| crate::heckealg::equal_labels(1))
    }
    pub fn cmd(&self) -> &str {
        self.cmd.as_deref().unwrap_or("")
    }
}

/// Parse and validate; `cmd_override` replaces the `cmd` field.
pub fn parse_config(text: &str, cmd_override: Option<&str>) -> Result<JobConfig, CliError> {
    let mut cfg: JobConfig = json5::from_str(text).map_err(|e| CliError::validation(format!("config: {e}")))?;
    if let Some(c) = cmd_override {
        cfg.cmd = Some(c.to_string());
    }
    let cmd = cfg.cmd.as_deref().ok_or_else(|| CliError::validation("cmd required"))?;
    if !COMMANDS.contains(&cmd) {
        return Err(CliError::validation(format!("unknown cmd '{cmd}' (expected one of {})", COMMANDS.join(", "))));
    }
    match (&cfg.preset, &cfg.datum) {
        (Some(_), Some(_)) => return Err(CliError::validation("give either preset or datum, not both")),
        (None, None) => return Err(CliError::validation("preset or datum required")),
        _ => {}
    }
    if let Some(fs) = &cfg.fs {
        if let Some((k, _)) = fs.iter().find(|(_, v)| **v <= 0) {
            return Err(CliError::validation(format!("labels must be positive (fs.{k})")));
        }
    }
    if let Some(q) = cfg.q {
        if !(q.is_finite() && q > 1.0) {
            return Err(CliError::validation("q must be a finite number > 1"));
        }
    }
    Ok(cfg)
}
