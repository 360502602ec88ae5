//! JSON sweep configuration.
//!
//! ```json
//! {
//!   "two_j": [2, 4],
//!   "theta": "pi/2",
//!   "phi": 0,
//!   "eta_grid": { "start": 0, "stop": "pi/2", "steps": 256 },
//!   "output": { "format": "csv" },
//!   "workers": 4
//! }
//! ```
//!
//! `two_j` may be replaced by `j_range` ({start, stop, step} in units of j,
//! inclusive). `eta_grid` may be replaced by
//! `hamiltonian` ({variant, params, t_grid}). Grids are either
//! {start, stop, steps, inclusive?} (half-open unless `inclusive`) or
//! {values: [...]}.

use serde::{Deserialize, Serialize};
use spinsq_core::sweep::{Evolution, SweepSpec};
use spinsq_core::HamiltonianSpec;

use crate::angle::Angle;
use crate::error::{CliError, Result};
use crate::table::Format;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwoJ {
    One(u32),
    Many(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JRange {
    pub start: f64,
    pub stop: f64,
    #[serde(default = "one")]
    pub step: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Angle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<Angle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inclusive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Angle>>,
}

impl Grid {
    pub fn from_values(values: Vec<f64>) -> Self {
        Self {
            values: Some(values.into_iter().map(Angle).collect()),
            ..Self::default()
        }
    }

    pub fn range(start: f64, stop: f64, steps: usize) -> Self {
        Self {
            start: Some(Angle(start)),
            stop: Some(Angle(stop)),
            steps: Some(steps),
            ..Self::default()
        }
    }

    pub fn resolve(&self, field: &str) -> Result<Vec<f64>> {
        let err = |m: &str| CliError::config(field, m);
        match (&self.values, self.start, self.stop, self.steps) {
            (Some(values), None, None, None) if !self.inclusive => {
                if values.is_empty() {
                    return Err(err("values must not be empty"));
                }
                Ok(values.iter().map(|a| a.radians()).collect())
            }
            (None, Some(start), Some(stop), Some(steps)) => {
                if steps == 0 {
                    return Err(err("steps must be positive"));
                }
                let (a, b) = (start.radians(), stop.radians());
                if (steps > 1 || !self.inclusive) && b <= a {
                    return Err(err("stop must exceed start"));
                }
                let intervals = if self.inclusive {
                    steps.saturating_sub(1).max(1)
                } else {
                    steps
                };
                Ok((0..steps)
                    .map(|k| a + (b - a) * k as f64 / intervals as f64)
                    .collect())
            }
            _ => Err(err("give either {start, stop, steps[, inclusive]} or {values}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianConfig {
    /// `two-axis`, `one-axis`, `lipkin`, `quadratic` (nine row-major
    /// coefficients) or `lambda`.
    pub variant: String,
    pub params: Vec<f64>,
    pub t_grid: Grid,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_j: Option<TwoJ>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_range: Option<JRange>,
    #[serde(default)]
    pub theta: Angle,
    #[serde(default)]
    pub phi: Angle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

/// Builds a Hamiltonian from a variant name and its parameters.
pub fn hamiltonian_from(variant: &str, params: &[f64]) -> Result<HamiltonianSpec> {
    let want = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(CliError::config(
                "hamiltonian.params",
                format!("{variant} takes {n} parameter(s), got {}", params.len()),
            ))
        }
    };
    let spec = match variant {
        "two-axis" => {
            want(1)?;
            HamiltonianSpec::TwoAxis { zeta: params[0] }
        }
        "one-axis" => {
            want(1)?;
            HamiltonianSpec::OneAxis { gamma: params[0] }
        }
        "lipkin" => {
            want(2)?;
            HamiltonianSpec::Lipkin {
                g1: params[0],
                g2: params[1],
            }
        }
        "quadratic" => {
            want(9)?;
            let mut c = [[0.0; 3]; 3];
            for (k, v) in params.iter().enumerate() {
                c[k / 3][k % 3] = *v;
            }
            HamiltonianSpec::Quadratic { coefficients: c }
        }
        "lambda" => {
            want(1)?;
            HamiltonianSpec::LambdaOp { epsilon: params[0] }
        }
        other => {
            return Err(CliError::config(
                "hamiltonian.variant",
                format!("unknown variant {other:?} (two-axis, one-axis, lipkin, quadratic, lambda)"),
            ))
        }
    };
    spec.validate()
        .map_err(|e| CliError::config("hamiltonian.params", e.to_string()))?;
    Ok(spec)
}

/// Parses `two-axis:ZETA`, `one-axis:GAMMA`, `lipkin:G1,G2`, `lambda:EPS`.
pub fn parse_hamiltonian_flag(text: &str) -> Result<HamiltonianSpec> {
    let (variant, rest) = text
        .split_once(':')
        .ok_or_else(|| CliError::config("--hamiltonian", format!("expected VARIANT:PARAMS, got {text:?}")))?;
    let params = rest
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::config("--hamiltonian", format!("cannot read parameter {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    hamiltonian_from(variant.trim(), &params)
}

fn variant_and_params(spec: &HamiltonianSpec) -> (&'static str, Vec<f64>) {
    match *spec {
        HamiltonianSpec::TwoAxis { zeta } => ("two-axis", vec![zeta]),
        HamiltonianSpec::OneAxis { gamma } => ("one-axis", vec![gamma]),
        HamiltonianSpec::Lipkin { g1, g2 } => ("lipkin", vec![g1, g2]),
        HamiltonianSpec::Quadratic { coefficients } => {
            ("quadratic", coefficients.iter().flatten().copied().collect())
        }
        HamiltonianSpec::LambdaOp { epsilon } => ("lambda", vec![epsilon]),
    }
}

impl HamiltonianConfig {
    pub fn new(spec: &HamiltonianSpec, times: Vec<f64>) -> Self {
        let (variant, params) = variant_and_params(spec);
        Self {
            variant: variant.into(),
            params,
            t_grid: Grid::from_values(times),
        }
    }
}

fn half_integer(x: f64, field: &str) -> Result<u32> {
    let two = 2.0 * x;
    if !two.is_finite() || (two - two.round()).abs() > 1e-9 || two.round() < 1.0 {
        return Err(CliError::config(
            field,
            format!("{x} is not a positive multiple of 1/2"),
        ));
    }
    Ok(two.round() as u32)
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::config(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn two_j_list(&self) -> Result<Vec<u32>> {
        let list = match (&self.two_j, &self.j_range) {
            (Some(TwoJ::One(n)), None) => vec![*n],
            (Some(TwoJ::Many(v)), None) => v.clone(),
            (None, Some(r)) => {
                let start = half_integer(r.start, "j_range.start")?;
                let stop = half_integer(r.stop, "j_range.stop")?;
                let step = half_integer(r.step, "j_range.step")?;
                if stop < start {
                    return Err(CliError::config("j_range", "stop must not be below start"));
                }
                (start..=stop).step_by(step as usize).collect()
            }
            _ => return Err(CliError::config("two_j", "give exactly one of two_j or j_range")),
        };
        if list.is_empty() || list.contains(&0) {
            return Err(CliError::config("two_j", "need at least one 2j >= 1"));
        }
        if list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("two_j", "list must be strictly increasing"));
        }
        Ok(list)
    }

    pub fn evolution(&self) -> Result<Evolution> {
        match (&self.eta_grid, &self.hamiltonian) {
            (Some(g), None) => Ok(Evolution::Squeeze {
                etas: g.resolve("eta_grid")?,
            }),
            (None, Some(h)) => Ok(Evolution::Hamiltonian {
                spec: hamiltonian_from(&h.variant, &h.params)?,
                times: h.t_grid.resolve("hamiltonian.t_grid")?,
            }),
            _ => Err(CliError::config(
                "eta_grid",
                "give exactly one of eta_grid or hamiltonian",
            )),
        }
    }

    pub fn to_spec(&self) -> Result<SweepSpec> {
        if self.workers == Some(0) {
            return Err(CliError::config("workers", "must be positive"));
        }
        let spec = SweepSpec {
            two_j: self.two_j_list()?,
            theta: self.theta.radians(),
            phi: self.phi.radians(),
            evolution: self.evolution()?,
            workers: self.workers,
        };
        spec.validate()
            .map_err(|e| CliError::config("sweep", e.to_string()))?;
        Ok(spec)
    }

    /// Same sweep with every grid spelled out, suitable for re-running.
    pub fn effective(&self) -> Result<Self> {
        let spec = self.to_spec()?;
        let (eta_grid, hamiltonian) = match &spec.evolution {
            Evolution::Squeeze { etas } => (Some(Grid::from_values(etas.clone())), None),
            Evolution::Hamiltonian { spec: h, times } => {
                (None, Some(HamiltonianConfig::new(h, times.clone())))
            }
        };
        Ok(Self {
            two_j: Some(TwoJ::Many(spec.two_j)),
            j_range: None,
            theta: Angle(spec.theta),
            phi: Angle(spec.phi),
            eta_grid,
            hamiltonian,
            output: self.output.clone(),
            workers: self.workers,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn minimal_config() {
        let c = SweepConfig::parse(r#"{"two_j": 2, "eta_grid": {"values": ["pi/8"]}}"#).unwrap();
        let spec = c.to_spec().unwrap();
        assert_eq!(spec.two_j, vec![2]);
        assert_eq!(spec.evolution, Evolution::Squeeze { etas: vec![PI / 8.0] });
        assert_eq!((spec.theta, spec.phi), (0.0, 0.0));
    }

    #[test]
    fn ranges() {
        let c = SweepConfig::parse(
            r#"{"j_range": {"start": 0.5, "stop": 2.5}, "theta": "0.5pi",
                "eta_grid": {"start": 0, "stop": "pi/2", "steps": 4}}"#,
        )
        .unwrap();
        let spec = c.to_spec().unwrap();
        assert_eq!(spec.two_j, vec![1, 3, 5]);
        assert_eq!(spec.theta, PI / 2.0);
        assert_eq!(spec.evolution.grid(), &[0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0]);
        let inclusive = Grid {
            inclusive: true,
            ..Grid::range(0.0, 1.0, 3)
        };
        assert_eq!(inclusive.resolve("g").unwrap(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn hamiltonian_config() {
        let c = SweepConfig::parse(
            r#"{"two_j": [2, 4], "hamiltonian": {"variant": "lipkin", "params": [1, 0.5],
                "t_grid": {"values": [0.1, 0.2]}}}"#,
        )
        .unwrap();
        match c.to_spec().unwrap().evolution {
            Evolution::Hamiltonian { spec, times } => {
                assert_eq!(spec, HamiltonianSpec::Lipkin { g1: 1.0, g2: 0.5 });
                assert_eq!(times, vec![0.1, 0.2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        let unknown = SweepConfig::parse("{\n  \"two_j\": 2,\n  \"etta_grid\": {}\n}").unwrap_err();
        assert!(unknown.to_string().contains("line 3"), "{unknown}");
        let both = SweepConfig::parse(
            r#"{"two_j": 2, "j_range": {"start": 1, "stop": 2}, "eta_grid": {"values": [0]}}"#,
        )
        .unwrap();
        assert!(both.to_spec().unwrap_err().to_string().contains("two_j"));
        let bad_grid = SweepConfig::parse(r#"{"two_j": 2, "eta_grid": {"values": [0.2, 0.1]}}"#).unwrap();
        assert!(bad_grid.to_spec().is_err());
        let lambda = SweepConfig::parse(
            r#"{"two_j": 2, "hamiltonian": {"variant": "lambda", "params": [0.1], "t_grid": {"values": [1]}}}"#,
        )
        .unwrap();
        assert!(lambda.to_spec().is_err());
        assert!(parse_hamiltonian_flag("lipkin:1").is_err());
        assert!(parse_hamiltonian_flag("spiral:1").is_err());
    }

    #[test]
    fn effective_round_trip() {
        let c = SweepConfig::parse(
            r#"{"j_range": {"start": 1, "stop": 3}, "phi": "pi/4",
                "eta_grid": {"start": 0, "stop": "pi/2", "steps": 7}, "workers": 3}"#,
        )
        .unwrap();
        let eff = c.effective().unwrap();
        let again = SweepConfig::parse(&eff.to_json()).unwrap();
        assert_eq!(again, eff);
        assert_eq!(again.to_spec().unwrap(), c.to_spec().unwrap());
    }

    #[test]
    fn hamiltonian_flag() {
        assert_eq!(
            parse_hamiltonian_flag("two-axis:2").unwrap(),
            HamiltonianSpec::TwoAxis { zeta: 2.0 }
        );
        assert_eq!(
            parse_hamiltonian_flag("lipkin:1, -0.5").unwrap(),
            HamiltonianSpec::Lipkin { g1: 1.0, g2: -0.5 }
        );
        assert_eq!(
            parse_hamiltonian_flag("lambda:0.3").unwrap(),
            HamiltonianSpec::LambdaOp { epsilon: 0.3 }
        );
    }
}
