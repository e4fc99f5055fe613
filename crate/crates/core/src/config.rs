//! Run configuration: flat `key = value` text or JSON, both mapped onto [`RunConfig`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::calibration::{CALIBRATION_THETA, DEFAULT_DEVIATION_TOLERANCE};
use crate::constants::constants;
use crate::error::{Error, Result};
use crate::planner::DEFAULT_DETECTOR_PITCH;
use crate::propagation::{ExperimentParams, MAGNET_LENGTH};
use crate::wavepacket::{DEFAULT_GRID_HALF_WIDTHS, DEFAULT_GRID_POINTS};

fn default_theta() -> f64 {
    CALIBRATION_THETA
}
fn default_magnet_length() -> f64 {
    MAGNET_LENGTH
}
fn default_mass() -> f64 {
    constants().helium4_mass
}
fn default_moment() -> f64 {
    constants().metastable_he_moment
}
fn default_grid_points() -> usize {
    DEFAULT_GRID_POINTS
}
fn default_grid_half_widths() -> f64 {
    DEFAULT_GRID_HALF_WIDTHS
}
fn default_pitch() -> f64 {
    DEFAULT_DETECTOR_PITCH
}
fn default_tolerance() -> f64 {
    DEFAULT_DEVIATION_TOLERANCE
}
fn default_velocities() -> Vec<f64> {
    vec![900.0, 1200.0, 1717.0]
}

/// Everything a command needs. `sigma`, `flight_distance` and `beam_velocity` are
/// required in a config file; the rest have defaults. Exactly one of `dbdz` and
/// `limit` sets the weak-stage gradient, and `delta_t` defaults to
/// `magnet_length / beam_velocity`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default)]
    pub b0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dbdz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_t: Option<f64>,
    #[serde(default = "default_magnet_length")]
    pub magnet_length: f64,
    pub sigma: f64,
    pub flight_distance: f64,
    pub beam_velocity: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default = "default_moment")]
    pub moment: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_grid_half_widths")]
    pub grid_half_widths: f64,
    #[serde(default = "default_pitch")]
    pub detector_pitch: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_velocities")]
    pub velocities: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl Default for RunConfig {
    /// Final-experiment values: v = 1717 m/s, L = 0.37, d = 2.5 m, φ = 0, σ = 0.5 µm.
    fn default() -> Self {
        Self {
            theta: default_theta(),
            phi: 0.0,
            b0: 0.0,
            dbdz: None,
            limit: Some(0.37),
            delta_t: None,
            magnet_length: default_magnet_length(),
            sigma: 0.5e-6,
            flight_distance: 2.5,
            beam_velocity: 1717.0,
            mass: default_mass(),
            moment: default_moment(),
            grid_points: default_grid_points(),
            grid_half_widths: default_grid_half_widths(),
            detector_pitch: default_pitch(),
            tolerance: default_tolerance(),
            velocities: default_velocities(),
            out: None,
        }
    }
}

impl RunConfig {
    /// Geometry of the limit calibration: σ = 1 µm, 1750 m/s, 2.5 m, 10 mm magnet.
    pub fn calibration_default() -> Self {
        Self {
            sigma: 1e-6,
            beam_velocity: 1750.0,
            limit: None,
            dbdz: Some(0.0),
            ..Self::default()
        }
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
            .unwrap_or(self.magnet_length / self.beam_velocity)
    }

    /// Validated physical parameters; the gradient is solved from `limit` when given.
    pub fn params(&self) -> Result<ExperimentParams> {
        if self.grid_points < 3 {
            return Err(Error::Config("grid_points must be >= 3".into()));
        }
        if !(self.grid_half_widths > 0.0) {
            return Err(Error::Config("grid_half_widths must be positive".into()));
        }
        if self.magnet_length < 0.0 {
            return Err(Error::Config("magnet_length must be >= 0".into()));
        }
        let base = ExperimentParams {
            theta: self.theta,
            phi: self.phi,
            b0: self.b0,
            dbdz: 0.0,
            delta_t: self.delta_t(),
            sigma: self.sigma,
            flight_distance: self.flight_distance,
            beam_velocity: self.beam_velocity,
            mass: self.mass,
            moment: self.moment,
        };
        base.validate()?;
        match (self.dbdz, self.limit) {
            (Some(_), Some(_)) => Err(Error::Config("set either dbdz or limit, not both".into())),
            (None, None) => Err(Error::Config("one of dbdz or limit is required".into())),
            (Some(dbdz), None) => Ok(ExperimentParams { dbdz, ..base }),
            (None, Some(limit)) => base.with_limit(limit),
        }
    }

    /// Parses JSON when the text starts with `{`, flat `key = value` lines otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let value = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            parse_key_values(text)?
        };
        let cfg: Self = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        cfg.params()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Flat `key = value` form, one key per line; parses back to an identical config.
    pub fn to_key_values(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        let mut out = String::new();
        if let Value::Object(map) = value {
            for (key, v) in map {
                let text = match v {
                    Value::Array(items) => {
                        items.iter().map(value_text).collect::<Vec<_>>().join(", ")
                    }
                    other => value_text(&other),
                };
                out.push_str(&format!("{key} = {text}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn scalar(text: &str) -> Value {
    if let Ok(i) = text.parse::<i64>() {
        return Value::Number(i.into());
    }
    match text.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) => Value::Number(n),
        None => Value::String(text.to_string()),
    }
}

fn parse_key_values(text: &str) -> Result<Value> {
    let mut map = Map::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let parsed = if key == "velocities" {
            Value::Array(
                value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(scalar)
                    .collect(),
            )
        } else {
            scalar(value)
        };
        if map.insert(key.to_string(), parsed).is_some() {
            return Err(Error::Config(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(Value::Object(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_round_trips() {
        let cfg = RunConfig::default();
        assert_eq!(RunConfig::parse(&cfg.to_key_values()).unwrap(), cfg);
        assert_eq!(RunConfig::parse(&cfg.to_json()).unwrap(), cfg);
        let p = cfg.params().unwrap();
        assert!((crate::calibration::limit_of(&p).unwrap() - 0.37).abs() < 1e-12);
    }

    #[test]
    fn minimal_file() {
        let cfg = RunConfig::parse(
            "# reference run\nsigma = 0.5e-6\nflight_distance = 2.5\nbeam_velocity = 1717\nlimit = 0.37\n",
        )
        .unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        let missing_v = "sigma = 0.5e-6\nflight_distance = 2.5\nlimit = 0.37\n";
        assert!(matches!(RunConfig::parse(missing_v), Err(Error::Config(_))));
        let unknown = "sigma = 0.5e-6\nflight_distance = 2.5\nbeam_velocity = 1717\nlimit = 0.37\ncolour = red\n";
        assert!(RunConfig::parse(unknown).is_err());
        let both =
            "sigma = 0.5e-6\nflight_distance = 2.5\nbeam_velocity = 1717\nlimit = 0.37\ndbdz = 1\n";
        assert!(RunConfig::parse(both).is_err());
        let bad_sigma = "sigma = -1\nflight_distance = 2.5\nbeam_velocity = 1717\ndbdz = 1\n";
        assert!(RunConfig::parse(bad_sigma).is_err());
        assert!(RunConfig::parse("sigma 1\n").is_err());
        assert!(RunConfig::parse("sigma = 1\nsigma = 2\n").is_err());
    }

    proptest! {
        #[test]
        fn key_value_round_trip(
            theta in 0.01f64..3.1,
            phi in -6.0f64..6.0,
            sigma in 1e-7f64..5e-6,
            v in 100.0f64..3000.0,
            limit in proptest::option::of(0.01f64..2.0),
            velocities in proptest::collection::vec(100.0f64..3000.0, 0..5),
            points in 3usize..10000,
            out in proptest::option::of("[a-z]{1,8}\\.csv"),
        ) {
            let cfg = RunConfig {
                theta, phi, sigma, beam_velocity: v,
                dbdz: if limit.is_none() { Some(1.5) } else { None },
                limit, velocities, grid_points: points, out,
                ..RunConfig::default()
            };
            prop_assert_eq!(RunConfig::parse(&cfg.to_key_values()).unwrap(), cfg.clone());
            prop_assert_eq!(RunConfig::parse(&cfg.to_json()).unwrap(), cfg);
        }
    }
}
