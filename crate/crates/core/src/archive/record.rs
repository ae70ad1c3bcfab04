use serde::{Deserialize, Serialize};

use crate::radar::{ObjectiveVector, NUM_MARGINS, NUM_OBJECTIVES};

/// Where an evaluation came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub run: u32,
    pub algo: String,
    pub eval: u64,
}

/// One evaluated PRI vector. Margins and dwell are stored in their original
/// sign; [`EvaluationRecord::minimization`] gives the optimised view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub run: u32,
    pub algo: String,
    pub eval: u64,
    /// PRIs in 0.1 µs ticks.
    pub pri: Vec<u32>,
    pub margins: [f64; NUM_MARGINS],
    pub dwell_ms: f64,
    /// Other evaluations of the same PRI vector.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub also: Vec<Provenance>,
}

impl EvaluationRecord {
    pub fn new(run: u32, algo: &str, eval: u64, pri: Vec<u32>, v: &ObjectiveVector) -> Self {
        EvaluationRecord {
            run,
            algo: algo.to_string(),
            eval,
            pri,
            margins: v.margins,
            dwell_ms: v.dwell_ms,
            also: Vec::new(),
        }
    }

    pub fn objectives(&self) -> ObjectiveVector {
        ObjectiveVector {
            margins: self.margins,
            dwell_ms: self.dwell_ms,
        }
    }

    pub fn minimization(&self) -> [f64; NUM_OBJECTIVES] {
        self.objectives().minimization()
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            run: self.run,
            algo: self.algo.clone(),
            eval: self.eval,
        }
    }
}
