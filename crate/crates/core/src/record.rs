//! The JSON record written for every solution, and read back by `verify`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::solver::SolutionSeptuple;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub solid: String,
    /// Polyhedron file, relative to the record's directory, for solids that
    /// are not in the built-in catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyhedron_file: Option<String>,
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub mu: f64,
    pub margin: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub timestamp: Option<String>,
    #[serde(default)]
    pub tool_version: Option<String>,
}

impl SolutionRecord {
    pub fn new(solid: impl Into<String>, v: &SolutionSeptuple, mu: f64, margin: f64) -> Self {
        Self {
            solid: solid.into(),
            polyhedron_file: None,
            x: v.x,
            y: v.y,
            alpha: v.alpha,
            theta1: v.theta1,
            phi1: v.phi1,
            theta2: v.theta2,
            phi2: v.phi2,
            mu,
            margin,
            seed: None,
            timestamp: None,
            tool_version: None,
        }
    }

    pub fn septuple(&self) -> SolutionSeptuple {
        SolutionSeptuple::new(self.x, self.y, self.alpha, self.theta1, self.phi1, self.theta2, self.phi2)
    }

    /// Floats are printed as the shortest string that reads back to the same
    /// double, and parsed with serde_json's exact `float_roundtrip` reader,
    /// so the round trip is lossless.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optional_fields_may_be_absent() {
        let r = SolutionRecord::from_json(
            r#"{"solid":"cube","x":0,"y":0,"alpha":1,"theta1":2,"phi1":3,"theta2":4,"phi2":5,"mu":1.06,"margin":0.01}"#,
        )
        .unwrap();
        assert_eq!(r.seed, None);
        assert_eq!(r.septuple().to_array(), [0.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
    }
}
