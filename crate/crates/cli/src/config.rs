//! Flat `key = value` run configuration.
//!
//! ```text
//! # Fig. 1a
//! jx = 0.8
//! jy = 0.8
//! jz = 0.8
//! bm = 0.3
//! b_small = 0.5
//! t_end = 50.26548245743669
//! samples = 4001
//! ```
//!
//! Blank lines and `#` comments are ignored. Missing keys keep their
//! defaults: all couplings and `gamma` zero, grid `[0, 8π]` with 2001
//! samples, LQFI on qubit B, LQU on qubit A, CSV to stdout.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nlc_core::{LocalSide, ModelParams, TimeGrid};

use crate::error::CliError;

pub const DEFAULT_T_END: f64 = 8.0 * PI;
pub const DEFAULT_SAMPLES: usize = 2001;
pub const STDOUT_PATH: &str = "-";

pub const KEYS: [&str; 15] = [
    "jx",
    "jy",
    "jz",
    "dx",
    "dy",
    "bm",
    "b_small",
    "gamma",
    "t_start",
    "t_end",
    "samples",
    "lqfi_side",
    "lqu_side",
    "output",
    "format",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown output format `{other}` (expected csv or json)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

pub fn parse_side(s: &str) -> Result<LocalSide, String> {
    match s.to_ascii_lowercase().as_str() {
        "a" | "qubit_a" | "qubita" => Ok(LocalSide::QubitA),
        "b" | "qubit_b" | "qubitb" => Ok(LocalSide::QubitB),
        other => Err(format!("unknown side `{other}` (expected A or B)")),
    }
}

/// Maps a config key or a `ModelParams` field name onto the field name.
pub fn param_field(name: &str) -> Option<&'static str> {
    Some(match name {
        "jx" | "j_x" => "j_x",
        "jy" | "j_y" => "j_y",
        "jz" | "j_z" => "j_z",
        "dx" | "d_x" => "d_x",
        "dy" | "d_y" => "d_y",
        "bm" | "b_uniform" => "b_uniform",
        "b_small" | "b_inhomog" => "b_inhomog",
        "gamma" => "gamma",
        _ => return None,
    })
}

/// Config key for a `ModelParams` field name.
pub fn config_key(field: &str) -> &'static str {
    match field {
        "j_x" => "jx",
        "j_y" => "jy",
        "j_z" => "jz",
        "d_x" => "dx",
        "d_y" => "dy",
        "b_uniform" => "bm",
        "b_inhomog" => "b_small",
        "gamma" => "gamma",
        other => panic!("not a model parameter: {other}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub lqfi_side: LocalSide,
    pub lqu_side: LocalSide,
    pub output_path: String,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn new(params: ModelParams) -> Self {
        Self {
            params,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params
            .validate()
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::default(),
            grid: TimeGrid::new(0.0, DEFAULT_T_END, DEFAULT_SAMPLES)
                .expect("default grid is valid"),
            lqfi_side: LocalSide::QubitB,
            lqu_side: LocalSide::QubitA,
            output_path: STDOUT_PATH.to_string(),
            output_format: OutputFormat::Csv,
        }
    }
}

fn parse_value<T: FromStr>(raw: &str, line: usize, key: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    raw.parse::<T>().map_err(|e| CliError::Parse {
        line,
        key: Some(key.to_string()),
        message: format!("cannot parse `{raw}`: {e}"),
    })
}

pub fn parse_config(source: &str) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    let mut seen = HashSet::new();
    let (mut t_start, mut t_end, mut samples) = (0.0, DEFAULT_T_END, DEFAULT_SAMPLES);

    for (idx, raw_line) in source.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(CliError::Parse {
                line,
                key: None,
                message: format!("expected `key = value`, found `{content}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(CliError::Parse {
                line,
                key: Some(key.to_string()),
                message: "unknown key".into(),
            });
        }
        if !seen.insert(key.to_string()) {
            return Err(CliError::Parse {
                line,
                key: Some(key.to_string()),
                message: "duplicate key".into(),
            });
        }

        match key {
            "t_start" => t_start = parse_value(value, line, key)?,
            "t_end" => t_end = parse_value(value, line, key)?,
            "samples" => samples = parse_value(value, line, key)?,
            "lqfi_side" => {
                cfg.lqfi_side = parse_side(value).map_err(|message| CliError::Parse {
                    line,
                    key: Some(key.into()),
                    message,
                })?
            }
            "lqu_side" => {
                cfg.lqu_side = parse_side(value).map_err(|message| CliError::Parse {
                    line,
                    key: Some(key.into()),
                    message,
                })?
            }
            "output" => cfg.output_path = value.to_string(),
            "format" => cfg.output_format = parse_value(value, line, key)?,
            _ => {
                let field = param_field(key).expect("remaining keys are model parameters");
                *cfg.params.field_mut(field).expect("known field") = parse_value(value, line, key)?;
            }
        }
    }

    cfg.grid =
        TimeGrid::new(t_start, t_end, samples).map_err(|e| CliError::Validation(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}
