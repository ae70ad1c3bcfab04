use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmId, AlgorithmParams};
use crate::metrics::MetricsConfig;
use crate::moea::VariationConfig;
use crate::radar::{EvaluationConfig, ModelConfig, RadarParams, MAX_DIM, MIN_DIM};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub algorithms: Vec<AlgorithmId>,
    pub dim: usize,
    pub popsize: usize,
    pub evaluations: u64,
    pub runs: u32,
    /// Run `k` uses seed `seed + k`.
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            algorithms: AlgorithmId::ALL.to_vec(),
            dim: 10,
            popsize: 100,
            evaluations: 100_000,
            runs: 10,
            seed: 0,
            out: PathBuf::from("out"),
        }
    }
}

/// Everything a `run` needs, read from a TOML document with the sections
/// `[run]`, `[radar]`, `[evaluation]`, `[variation]`, `[algorithm]` and
/// `[metrics]`. Missing keys take their defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub run: RunSection,
    pub radar: RadarParams,
    pub evaluation: EvaluationConfig,
    pub variation: VariationConfig,
    pub algorithm: AlgorithmParams,
    pub metrics: MetricsConfig,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn model(&self) -> ModelConfig {
        ModelConfig {
            radar: self.radar.clone(),
            evaluation: self.evaluation.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.run;
        if r.algorithms.is_empty() {
            return Err(Error::Config("no algorithm selected".into()));
        }
        if !(MIN_DIM..=MAX_DIM).contains(&r.dim) {
            return Err(Error::Config(format!(
                "dim {} outside [{MIN_DIM}, {MAX_DIM}]",
                r.dim
            )));
        }
        if r.popsize == 0 || r.popsize as u64 > r.evaluations {
            return Err(Error::Config(format!(
                "popsize {} must be positive and at most evaluations {}",
                r.popsize, r.evaluations
            )));
        }
        if r.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        self.model().validate()?;
        self.variation.validate()?;
        Ok(())
    }
}
