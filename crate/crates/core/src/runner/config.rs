use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::trajectory::NoiseLaw;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantConfig {
    /// Numerator coefficients `n_1 .. n_{m+1}` (constant term first).
    pub n: Vec<f64>,
    /// Denominator coefficients `d_1 .. d_{m+1}` (constant term first).
    pub d: Vec<f64>,
}

/// Either an explicit measurement list or a seeded simulation that produces
/// one (and the true states along with it).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measurements {
    Explicit(Vec<f64>),
    Seeded { seed: u64, law: NoiseLaw },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub plant: PlantConfig,
    pub x0: Vec<f64>,
    pub horizon: usize,
    pub measurements: Measurements,
    /// Check the true state against each `S_k` (seeded runs only).
    #[serde(default = "yes")]
    pub bounds_check: bool,
    /// Run the exact set recursion alongside propagation.
    #[serde(default, deserialize_with = "on_off")]
    pub oracle: bool,
    #[serde(default = "default_density")]
    pub sample_density: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn yes() -> bool {
    true
}

fn default_density() -> usize {
    64
}

/// Accepts `true`/`false` or `"on"`/`"off"`.
fn on_off<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<bool, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Flag {
        Bool(bool),
        Word(String),
    }
    match Flag::deserialize(d)? {
        Flag::Bool(b) => Ok(b),
        Flag::Word(w) => match w.as_str() {
            "on" => Ok(true),
            "off" => Ok(false),
            other => Err(serde::de::Error::custom(format!("oracle must be on or off, got {other:?}"))),
        },
    }
}

impl RunConfig {
    /// Parse and validate. Errors carry the serde line/column or the
    /// offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("field `horizon`: must be at least 1".into()));
        }
        if let Measurements::Explicit(z) = &self.measurements {
            if z.len() != self.horizon {
                return Err(Error::Config(format!(
                    "field `measurements`: {} values given, horizon is {}",
                    z.len(),
                    self.horizon
                )));
            }
        }
        if self.x0.len() + 1 != self.plant.d.len() {
            return Err(Error::Config(format!(
                "field `x0`: length {} does not match plant order {}",
                self.x0.len(),
                self.plant.d.len().saturating_sub(1)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"{
        "plant": {"n": [0, 1], "d": [1, -0.5]},
        "x0": [0],
        "horizon": 2,
        "measurements": [0, 0]
    }"#;

    #[test]
    fn parses_demo() {
        let c = RunConfig::from_json(DEMO).unwrap();
        assert_eq!(c.measurements, Measurements::Explicit(vec![0.0, 0.0]));
        assert!(c.bounds_check);
        assert!(!c.oracle);
        assert_eq!(c.sample_density, 64);
    }

    #[test]
    fn rejects_zero_horizon() {
        let text = DEMO.replace("\"horizon\": 2", "\"horizon\": 0");
        assert!(matches!(RunConfig::from_json(&text), Err(Error::Config(_))));
    }

    #[test]
    fn seeded_and_on_off() {
        let text = DEMO
            .replace("[0, 0]", r#"{"seed": 3, "law": "vertex"}"#)
            .replace("\"x0\": [0],", "\"x0\": [0], \"oracle\": \"on\",");
        let c = RunConfig::from_json(&text).unwrap();
        assert!(c.oracle);
        assert_eq!(c.measurements, Measurements::Seeded { seed: 3, law: NoiseLaw::Vertex });
    }

    #[test]
    fn errors_name_position() {
        let err = RunConfig::from_json("{\n \"plant\": 3 }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
