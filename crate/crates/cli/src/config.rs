//! Run configuration: JSON schema, command-line overrides, validation.

use crate::CliError;
use fermsig_core::{HalfInt, MassInterval, MassProfile};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

pub const SCHEMA_VERSION: &str = "1";

/// Budget on |lambda| for de Sitter runs, stored as 2*lambda.
const LAMBDA_BUDGET_DOUBLED: i64 = 19;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacetime {
    Desitter,
    Ultrastatic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Mass-profile specification, mirrored onto `MassProfile` constructors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Bump,
    BumpAt { center: f64, width: f64 },
    PolynomialBump { coefficients: Vec<f64> },
}

/// Uniform sample times `start..=stop` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.start + h * k as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: String,
    pub spacetime: Spacetime,
    /// Mass interval `(lower, upper)`, `0 < lower < upper`.
    pub mass_interval: [f64; 2],
    /// Spatial eigenvalues; half-integers with |lambda| <= 19/2 for de Sitter.
    pub lambda_list: Vec<f64>,
    /// Masses for per-mass tables (`signature`, `sweep`, `evolve`).
    pub mass_list: Vec<f64>,
    pub profile: ProfileSpec,
    /// Cauchy data at t = 0 as [re u1, im u1, re u2, im u2].
    pub cauchy_data: [f64; 4],
    /// Gauss-Legendre nodes on the mass interval.
    pub quadrature_nodes: usize,
    /// Adaptive integrator tolerance for mode evolution.
    pub rtol: f64,
    /// Asymptotic truncation accuracy for scattering data.
    pub eps: f64,
    /// Eigenvalues within this of zero make a spectral split degenerate.
    pub zero_tol: f64,
    /// Truncation of time-domain pairings.
    pub t_max: f64,
    /// Sample times for `evolve`.
    pub time_grid: TimeGrid,
    pub format: OutputFormat,
    /// Output path; stdout when null (the --out flag overrides this).
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION.to_string(),
            spacetime: Spacetime::Desitter,
            mass_interval: [1.0, 2.0],
            lambda_list: vec![1.5],
            mass_list: vec![1.0, 1.5, 2.0],
            profile: ProfileSpec::Bump,
            cauchy_data: [1.0, 0.0, 0.0, 0.0],
            quadrature_nodes: 64,
            rtol: 1e-10,
            eps: 1e-12,
            zero_tol: 1e-9,
            t_max: 200.0,
            time_grid: TimeGrid {
                start: -10.0,
                stop: 10.0,
                steps: 81,
            },
            format: OutputFormat::Csv,
            output: None,
        }
    }
}

/// Loads the configuration: file (or built-in defaults), then `--set`
/// overrides, then validation.
pub fn load(path: Option<&Path>, sets: &[String]) -> Result<RunConfig, CliError> {
    let mut value = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::config(format!("{}: {e}", p.display())))?
        }
        None => serde_json::to_value(RunConfig::default()).expect("default config serializes"),
    };
    for spec in sets {
        apply_set(&mut value, spec)?;
    }
    let config: RunConfig = serde_json::from_value(value)
        .map_err(|e| CliError::config(format!("invalid configuration: {e}")))?;
    config.validate()?;
    Ok(config)
}

/// Applies one `--set key=value` override; `key` is a dotted path into the
/// JSON object and `value` is parsed as JSON (bare words become strings).
fn apply_set(root: &mut Value, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("--set expects KEY=VALUE, got {spec:?}")))?;
    let val: Value =
        serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut cursor = root;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let obj = cursor
            .as_object_mut()
            .ok_or_else(|| CliError::config(format!("--set {key}: {part} is not an object")))?;
        if i + 1 == parts.len() {
            obj.insert(part.to_string(), val);
            return Ok(());
        }
        cursor = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split never yields an empty part list")
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::config(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                self.schema_version
            )));
        }
        let [a, b] = self.mass_interval;
        if !(a.is_finite() && b.is_finite() && 0.0 < a && a < b) {
            return Err(CliError::config(format!(
                "mass_interval must satisfy 0 < lower < upper, got [{a}, {b}]"
            )));
        }
        if self.lambda_list.is_empty() {
            return Err(CliError::config("lambda_list must not be empty"));
        }
        if self.spacetime == Spacetime::Desitter {
            for &l in &self.lambda_list {
                self.half_integer(l)?;
            }
        } else if self.lambda_list.iter().any(|l| !l.is_finite()) {
            return Err(CliError::config("lambda_list entries must be finite"));
        }
        if self.mass_list.is_empty() {
            return Err(CliError::config("mass_list must not be empty"));
        }
        if self.mass_list.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return Err(CliError::config("mass_list entries must be positive"));
        }
        for (name, v) in [
            ("rtol", self.rtol),
            ("eps", self.eps),
            ("zero_tol", self.zero_tol),
            ("t_max", self.t_max),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.quadrature_nodes < 2 {
            return Err(CliError::config("quadrature_nodes must be at least 2"));
        }
        let g = &self.time_grid;
        if !(g.start.is_finite() && g.stop.is_finite() && g.start <= g.stop) || g.steps == 0 {
            return Err(CliError::config(
                "time_grid requires finite start <= stop and steps >= 1",
            ));
        }
        if !self.cauchy_data.iter().all(|x| x.is_finite())
            || self.cauchy_data.iter().all(|x| *x == 0.0)
        {
            return Err(CliError::config("cauchy_data must be finite and nonzero"));
        }
        self.build_profile()?;
        Ok(())
    }

    /// Interprets `x` as a half-integer within the de Sitter budget.
    pub fn half_integer(&self, x: f64) -> Result<HalfInt, CliError> {
        let doubled = (2.0 * x).round();
        if !x.is_finite() || (2.0 * x - doubled).abs() > 1e-9 {
            return Err(CliError::config(format!(
                "de Sitter lambda must be a half-integer, got {x}"
            )));
        }
        let d = doubled as i64;
        if d.abs() > LAMBDA_BUDGET_DOUBLED {
            return Err(CliError::config(format!(
                "lambda {x} exceeds the supported budget |lambda| <= 19/2"
            )));
        }
        Ok(HalfInt::from_doubled(d))
    }

    pub fn interval(&self) -> Result<MassInterval, CliError> {
        MassInterval::new(self.mass_interval[0], self.mass_interval[1]).map_err(CliError::from)
    }

    pub fn build_profile(&self) -> Result<MassProfile, CliError> {
        let iv = self.interval()?;
        let profile = match &self.profile {
            ProfileSpec::Bump => MassProfile::bump(iv),
            ProfileSpec::BumpAt { center, width } => MassProfile::bump_at(iv, *center, *width)
                .map_err(|e| CliError::config(format!("profile: {e}")))?,
            ProfileSpec::PolynomialBump { coefficients } => {
                MassProfile::polynomial_bump(iv, coefficients.clone())
                    .map_err(|e| CliError::config(format!("profile: {e}")))?
            }
        };
        Ok(profile)
    }

    pub fn cauchy(&self) -> fermsig_core::SpinorPair {
        let [a, b, c, d] = self.cauchy_data;
        fermsig_core::SpinorPair::new(
            num_complex::Complex64::new(a, b),
            num_complex::Complex64::new(c, d),
        )
    }

    /// Lambda values sorted ascending (output row order).
    pub fn sorted_lambdas(&self) -> Vec<f64> {
        let mut ls = self.lambda_list.clone();
        ls.sort_by(f64::total_cmp);
        ls
    }

    /// Masses sorted ascending (output row order).
    pub fn sorted_masses(&self) -> Vec<f64> {
        let mut ms = self.mass_list.clone();
        ms.sort_by(f64::total_cmp);
        ms
    }
}
