//! Resolved run configuration: defaults, optional flat key=value config
//! file, and command-line flags, in increasing order of precedence.

use std::fmt;
use std::path::PathBuf;

use waveop::deep::DeepPotentialModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

/// Everything a command needs, fully validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub v0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub hbar: f64,
    pub l: u32,
    pub l_max: Option<u32>,
    pub dim: usize,
    pub n_states: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub inject_degenerate: bool,
}

/// Unresolved values as they arrive from flags or the config file.
#[derive(Clone, Debug, Default)]
pub struct PartialConfig {
    pub v0: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub hbar: Option<f64>,
    pub l: Option<u32>,
    pub l_max: Option<u32>,
    pub dim: Option<usize>,
    pub states: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl PartialConfig {
    /// Fill unset fields from a lower-precedence source.
    fn or(self, fallback: PartialConfig) -> PartialConfig {
        PartialConfig {
            v0: self.v0.or(fallback.v0),
            alpha: self.alpha.or(fallback.alpha),
            beta: self.beta.or(fallback.beta),
            mu: self.mu.or(fallback.mu),
            hbar: self.hbar.or(fallback.hbar),
            l: self.l.or(fallback.l),
            l_max: self.l_max.or(fallback.l_max),
            dim: self.dim.or(fallback.dim),
            states: self.states.or(fallback.states),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
            seed: self.seed.or(fallback.seed),
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

/// Parse a flat `key=value` config file. Blank lines and `#` comments are
/// ignored; keys match the long flag names.
pub fn parse_config_file(text: &str) -> Result<PartialConfig, ConfigError> {
    let mut cfg = PartialConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected key=value", lineno + 1)))?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            ConfigError(format!(
                "line {}: bad {} value '{}'",
                lineno + 1,
                what,
                value
            ))
        };
        match key {
            "v0" => cfg.v0 = Some(value.parse().map_err(|_| bad("v0"))?),
            "alpha" => cfg.alpha = Some(value.parse().map_err(|_| bad("alpha"))?),
            "beta" => cfg.beta = Some(value.parse().map_err(|_| bad("beta"))?),
            "mu" => cfg.mu = Some(value.parse().map_err(|_| bad("mu"))?),
            "hbar" => cfg.hbar = Some(value.parse().map_err(|_| bad("hbar"))?),
            "l" => cfg.l = Some(value.parse().map_err(|_| bad("l"))?),
            "l-max" | "l_max" => cfg.l_max = Some(value.parse().map_err(|_| bad("l-max"))?),
            "dim" => cfg.dim = Some(value.parse().map_err(|_| bad("dim"))?),
            "states" => cfg.states = Some(value.parse().map_err(|_| bad("states"))?),
            "format" => cfg.format = Some(value.to_string()),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            other => {
                return Err(ConfigError(format!(
                    "line {}: unknown key '{}'",
                    lineno + 1,
                    other
                )))
            }
        }
    }
    Ok(cfg)
}

/// Padding between the highest reported state and the basis truncation.
const TRUNCATION_PADDING: usize = 10;

/// Merge flags over the optional config file over defaults, then validate
/// every precondition of the target modules before any computation starts.
pub fn resolve(
    command: &str,
    flags: PartialConfig,
    config_path: Option<&PathBuf>,
    inject_degenerate: bool,
) -> Result<RunConfig, ConfigError> {
    let from_file = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read {}: {}", path.display(), e)))?;
            parse_config_file(&text)?
        }
        None => PartialConfig::default(),
    };
    let merged = flags.or(from_file);

    let format = match merged.format.as_deref() {
        None => OutputFormat::Csv,
        Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(ConfigError(format!(
                "format must be csv or json, got '{}'",
                other
            )))
        }
    };

    let cfg = RunConfig {
        command: command.to_string(),
        v0: merged.v0.unwrap_or(1.0),
        alpha: merged.alpha.unwrap_or(1.0),
        beta: merged.beta.unwrap_or(1.0),
        mu: merged.mu.unwrap_or(1.0),
        hbar: merged.hbar.unwrap_or(1.0),
        l: merged.l.unwrap_or(0),
        l_max: merged.l_max,
        dim: merged.dim.unwrap_or(40),
        n_states: merged.states.unwrap_or(6),
        format,
        out: merged.out,
        seed: merged.seed.unwrap_or(42),
        inject_degenerate,
    };

    // model preconditions, checked by constructing a model up front
    DeepPotentialModel::new(cfg.v0, cfg.alpha, cfg.beta, cfg.mu, cfg.hbar, cfg.l)
        .map_err(|e| ConfigError(e.to_string()))?;
    if cfg.dim < 8 {
        return Err(ConfigError(format!(
            "dim must be at least 8, got {}",
            cfg.dim
        )));
    }
    if cfg.n_states == 0 {
        return Err(ConfigError("states must be positive".into()));
    }
    if command != "verify" && cfg.n_states + TRUNCATION_PADDING > cfg.dim {
        return Err(ConfigError(format!(
            "states = {} needs dim >= {} (truncation padding)",
            cfg.n_states,
            cfg.n_states + TRUNCATION_PADDING
        )));
    }
    if command == "bands" {
        match cfg.l_max {
            None => return Err(ConfigError("bands requires --l-max".into())),
            Some(l_max) if l_max <= cfg.l => {
                return Err(ConfigError(format!(
                    "bands needs an l-range of at least 2 values, got l = {} .. l-max = {}",
                    cfg.l, l_max
                )))
            }
            Some(_) => {}
        }
    }
    Ok(cfg)
}
