//! The configuration file: `n`, Alice's two settings as `n − 1` angle pairs
//! each, and Bob's two angle pairs.

use std::path::Path;

use ghz_chsh::{BellConfig, MeasurementDirection};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleSpec {
    pub alpha: f64,
    pub phi: f64,
}

impl AngleSpec {
    fn direction(&self) -> ghz_chsh::Result<MeasurementDirection> {
        MeasurementDirection::new(self.alpha, self.phi)
    }

    fn echo(&self) -> Value {
        json!({ "alpha": round_sig12(self.alpha), "phi": round_sig12(self.phi) })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: usize,
    pub a0: Vec<AngleSpec>,
    pub a1: Vec<AngleSpec>,
    pub b0: AngleSpec,
    pub b1: AngleSpec,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, what: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse { what: what.to_owned(), message: e.to_string() })
    }

    pub fn from_config(cfg: &BellConfig) -> Self {
        let spec = |d: &MeasurementDirection| AngleSpec { alpha: d.alpha(), phi: d.phi() };
        ConfigFile {
            n: cfg.n(),
            a0: cfg.a0().iter().map(spec).collect(),
            a1: cfg.a1().iter().map(spec).collect(),
            b0: spec(&cfg.b0()),
            b1: spec(&cfg.b1()),
        }
    }

    pub fn to_bell_config(&self) -> ghz_chsh::Result<BellConfig> {
        let dirs = |v: &[AngleSpec]| v.iter().map(AngleSpec::direction).collect::<ghz_chsh::Result<Vec<_>>>();
        BellConfig::with_n(
            self.n,
            dirs(&self.a0)?,
            dirs(&self.a1)?,
            self.b0.direction()?,
            self.b1.direction()?,
        )
    }

    /// The configuration with every angle rounded to 12 significant digits.
    pub fn echo(&self) -> Value {
        json!({
            "n": self.n,
            "a0": self.a0.iter().map(AngleSpec::echo).collect::<Vec<_>>(),
            "a1": self.a1.iter().map(AngleSpec::echo).collect::<Vec<_>>(),
            "b0": self.b0.echo(),
            "b1": self.b1.echo(),
        })
    }
}

pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}
