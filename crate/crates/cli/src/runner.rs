use std::fmt;

use nlc_core::evolution::{max_trajectory_deviation, rk4_oracle};
use nlc_core::quantifiers::sample_with_sides;
use nlc_core::{build_hamiltonian, initial_state, make_propagator, CorrelationSample, ModelParams};
use rayon::prelude::*;

use crate::config::{config_key, param_field, RunConfig};
use crate::error::CliError;

/// Maximum elementwise deviation accepted between the closed form and RK4.
pub const VALIDATION_THRESHOLD: f64 = 1e-6;

/// Default RK4 step for `validate`.
pub const DEFAULT_RK4_STEP: f64 = 1e-3;

/// Evolves `|11⟩⟨11|` over the grid and evaluates the quantifiers at every
/// sample.
pub fn run_simulation(cfg: &RunConfig) -> Result<Vec<CorrelationSample>, CliError> {
    cfg.validate()?;
    let h = build_hamiltonian(&cfg.params).map_err(CliError::numerical)?;
    let propagator =
        make_propagator(h, cfg.params.gamma, &initial_state()).map_err(CliError::numerical)?;
    cfg.grid
        .points()
        .map(|t| {
            sample_with_sides(&propagator.evolve(t), t, cfg.lqfi_side, cfg.lqu_side)
                .map_err(|source| CliError::Numerical { t: Some(t), source })
        })
        .collect()
}

/// One or more `ModelParams` fields set to the same value, e.g. `dx+dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweptParameter {
    fields: Vec<&'static str>,
}

impl SweptParameter {
    /// Accepts config keys or field names joined by `+` (or `=`).
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let mut fields = Vec::new();
        for name in spec.split(['+', '=']).map(str::trim) {
            let field = param_field(name).ok_or_else(|| {
                CliError::Validation(format!("`{name}` is not a model parameter"))
            })?;
            if !fields.contains(&field) {
                fields.push(field);
            }
        }
        Ok(Self { fields })
    }

    /// Canonical label, using config keys.
    pub fn label(&self) -> String {
        self.fields
            .iter()
            .map(|f| config_key(f))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn apply(&self, base: &ModelParams, value: f64) -> ModelParams {
        let mut p = *base;
        for field in &self.fields {
            *p.field_mut(field).expect("validated field") = value;
        }
        p
    }
}

impl fmt::Display for SweptParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: RunConfig,
    pub swept: SweptParameter,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn new(base: RunConfig, swept: SweptParameter, values: Vec<f64>) -> Result<Self, CliError> {
        if values.is_empty() {
            return Err(CliError::Validation(
                "sweep needs at least one value".into(),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Validation(format!(
                "sweep value {bad} is not finite"
            )));
        }
        for &v in &values {
            swept
                .apply(&base.params, v)
                .validate()
                .map_err(|e| CliError::Validation(format!("{} = {v}: {e}", swept.label())))?;
        }
        Ok(Self {
            base,
            swept,
            values,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: String,
    pub value: f64,
    pub sample: CorrelationSample,
}

/// Runs each sweep value in parallel; rows come back grouped by value in
/// input order, then by time.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    let label = spec.swept.label();
    let blocks: Vec<Vec<CorrelationSample>> = spec
        .values
        .par_iter()
        .map(|&v| {
            let mut cfg = spec.base.clone();
            cfg.params = spec.swept.apply(&spec.base.params, v);
            run_simulation(&cfg)
        })
        .collect::<Result<_, _>>()?;

    Ok(spec
        .values
        .iter()
        .zip(blocks)
        .flat_map(|(&value, block)| {
            let label = label.clone();
            block.into_iter().map(move |sample| SweepRow {
                param: label.clone(),
                value,
                sample,
            })
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub rk4_step: f64,
    pub substeps: usize,
    pub samples: usize,
    pub max_deviation: f64,
    pub threshold: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.threshold
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "closed-form vs RK4 cross-check")?;
        writeln!(f, "  samples        {}", self.samples)?;
        writeln!(
            f,
            "  rk4 step       {:e} ({} per grid interval)",
            self.rk4_step, self.substeps
        )?;
        writeln!(f, "  max deviation  {:e}", self.max_deviation)?;
        writeln!(f, "  threshold      {:e}", self.threshold)?;
        write!(
            f,
            "  result         {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Integrates the master equation with RK4 (steps no longer than `rk4_step`)
/// and reports the largest deviation from the closed-form trajectory.
pub fn validate_command(cfg: &RunConfig, rk4_step: f64) -> Result<ValidationReport, CliError> {
    cfg.validate()?;
    if !(rk4_step.is_finite() && rk4_step > 0.0) {
        return Err(CliError::Validation(format!(
            "rk4 step {rk4_step} must be positive"
        )));
    }
    let h = build_hamiltonian(&cfg.params).map_err(CliError::numerical)?;
    let m0 = initial_state();
    let closed = make_propagator(h, cfg.params.gamma, &m0)
        .map_err(CliError::numerical)?
        .evolve_series(&cfg.grid);
    let substeps = cfg.grid.substeps_for(rk4_step);
    let rk4 =
        rk4_oracle(&h, cfg.params.gamma, &m0, &cfg.grid, substeps).map_err(CliError::numerical)?;
    Ok(ValidationReport {
        rk4_step: cfg.grid.spacing() / substeps as f64,
        substeps,
        samples: cfg.grid.samples(),
        max_deviation: max_trajectory_deviation(&closed, &rk4),
        threshold: VALIDATION_THRESHOLD,
    })
}
