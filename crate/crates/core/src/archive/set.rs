use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::nd::nd_filter;
use super::record::EvaluationRecord;
use crate::metrics::ScalingBounds;
use crate::radar::{is_realistic, ModelConfig, NUM_OBJECTIVES};
use crate::{Error, Execution, Result};

/// Unit of the stored PRI values.
pub const TICK_UNIT: &str = "0.1us";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetMeta {
    pub model_hash: String,
    pub model: ModelConfig,
    pub dim: usize,
    pub units: String,
    /// Set when no record dominates another.
    pub nd_filtered: bool,
    /// Source runs or files.
    pub provenance: Vec<String>,
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<ScalingBounds>,
}

impl PointSetMeta {
    pub fn new(model: &ModelConfig, dim: usize) -> Self {
        PointSetMeta {
            model_hash: model.hash(),
            model: model.clone(),
            dim,
            units: TICK_UNIT.to_string(),
            nd_filtered: false,
            provenance: Vec::new(),
            seeds: Vec::new(),
            bounds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub meta: PointSetMeta,
    pub records: Vec<EvaluationRecord>,
}

impl PointSet {
    pub fn new(meta: PointSetMeta, records: Vec<EvaluationRecord>) -> Self {
        PointSet { meta, records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Objectives in the minimisation view.
    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.records.iter().map(|r| r.minimization().to_vec()).collect()
    }

    /// Keeps one record per PRI vector, folding the others into its
    /// provenance list.
    pub fn dedup(mut self) -> Self {
        let mut first: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut kept: Vec<EvaluationRecord> = Vec::with_capacity(self.records.len());
        for r in self.records {
            match first.get(&r.pri) {
                Some(&k) => {
                    let p = r.provenance();
                    let target = &mut kept[k];
                    target.also.push(p);
                    target.also.extend(r.also);
                }
                None => {
                    first.insert(r.pri.clone(), kept.len());
                    kept.push(r);
                }
            }
        }
        self.records = kept;
        self
    }

    /// Deduplicated non-dominated subset, in input order.
    pub fn nd_filtered(self, exec: Execution) -> Self {
        let mut set = self.dedup();
        let keep = nd_filter(&set.objectives(), exec);
        let mut slots: Vec<Option<EvaluationRecord>> = set.records.into_iter().map(Some).collect();
        set.records = keep
            .into_iter()
            .map(|i| slots[i].take().expect("indices are unique"))
            .collect();
        set.meta.nd_filtered = true;
        set
    }

    fn with_records(&self, records: Vec<EvaluationRecord>) -> Self {
        PointSet {
            meta: self.meta.clone(),
            records,
        }
    }
}

/// Best set: non-dominated filter of the union. All inputs must come from
/// the same model.
pub fn merge_best(sets: &[PointSet], exec: Execution) -> Result<PointSet> {
    let first = sets
        .first()
        .ok_or_else(|| Error::InvalidArgument("nothing to merge".into()))?;
    for s in &sets[1..] {
        if s.meta.model_hash != first.meta.model_hash {
            return Err(Error::Incompatible(format!(
                "model hash {} differs from {}",
                s.meta.model_hash, first.meta.model_hash
            )));
        }
        if s.meta.dim != first.meta.dim {
            return Err(Error::Incompatible(format!(
                "dimension {} differs from {}",
                s.meta.dim, first.meta.dim
            )));
        }
    }
    let mut meta = first.meta.clone();
    meta.bounds = None;
    meta.provenance = sets.iter().flat_map(|s| s.meta.provenance.iter().cloned()).collect();
    meta.seeds = sets.iter().flat_map(|s| s.meta.seeds.iter().copied()).collect();
    meta.seeds.sort_unstable();
    meta.seeds.dedup();
    let records = sets.iter().flat_map(|s| s.records.iter().cloned()).collect();
    Ok(PointSet::new(meta, records).nd_filtered(exec))
}

/// Records whose margins are all positive and whose dwell fits the budget.
pub fn realistic_filter(set: &PointSet) -> PointSet {
    let params = &set.meta.model.radar;
    set.with_records(
        set.records
            .iter()
            .filter(|r| is_realistic(&r.objectives(), params))
            .cloned()
            .collect(),
    )
}

/// Records with `lo <= dwell <= hi` (milliseconds).
pub fn dwell_window_filter(set: &PointSet, lo: f64, hi: f64) -> Result<PointSet> {
    if !(lo <= hi) {
        return Err(Error::InvalidArgument(format!("empty dwell window [{lo}, {hi}]")));
    }
    Ok(set.with_records(
        set.records
            .iter()
            .filter(|r| lo <= r.dwell_ms && r.dwell_ms <= hi)
            .cloned()
            .collect(),
    ))
}

/// Record nearest to `target` (minimisation view) in scaled objective
/// space; ties go to the lowest evaluation index.
pub fn closest_point<'a>(
    set: &'a PointSet,
    target: &[f64],
    bounds: &ScalingBounds,
) -> Result<Option<(&'a EvaluationRecord, f64)>> {
    if target.len() != NUM_OBJECTIVES || bounds.dim() != NUM_OBJECTIVES {
        return Err(Error::InvalidArgument(format!(
            "expected {NUM_OBJECTIVES} objectives"
        )));
    }
    let t = bounds.scale(target);
    let mut best: Option<(&EvaluationRecord, f64)> = None;
    for r in &set.records {
        let s = bounds.scale(&r.minimization());
        let d = s.iter().zip(&t).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        best = match best {
            Some((b, bd)) if bd < d || (bd == d && b.eval <= r.eval) => Some((b, bd)),
            _ => Some((r, d)),
        };
    }
    Ok(best)
}
