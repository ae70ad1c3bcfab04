use serde::{Deserialize, Serialize};

use super::bounds::ScalingBounds;
use super::distance::{contribution_counts, gd, igd};
use super::hv::{hypervolume_mc_shared, HvEstimate};
use crate::{Error, Execution, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    pub samples: u64,
    pub seed: u64,
    pub multipliers: Vec<f64>,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            samples: 1_000_000,
            seed: 0,
            multipliers: vec![0.9, 1.0, 1.1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HvEntry {
    pub c: f64,
    pub value: f64,
    pub std_error: f64,
    /// HV of the set divided by HV of the best set.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmMetrics {
    pub name: String,
    pub size: usize,
    pub survivors: usize,
    pub survivor_ratio: f64,
    pub hv: Vec<HvEntry>,
    pub gd: f64,
    pub igd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestMetrics {
    pub size: usize,
    pub hv: Vec<HvEstimate>,
}

/// One row per input set plus the best-set reference values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub model_hash: Option<String>,
    pub samples: u64,
    pub seed: u64,
    /// Monte Carlo samples are shared by all sets for a given multiplier.
    pub shared_samples: bool,
    pub bounds: ScalingBounds,
    pub best: BestMetrics,
    pub algorithms: Vec<AlgorithmMetrics>,
}

/// Scores every named set (minimisation view) against the best set.
pub fn compute_metrics(
    sets: &[(String, Vec<Vec<f64>>)],
    best: &[Vec<f64>],
    cfg: &MetricsConfig,
    exec: Execution,
) -> Result<MetricsReport> {
    if best.is_empty() {
        return Err(Error::InvalidArgument("empty best set".into()));
    }
    if let Some((name, _)) = sets.iter().find(|(_, s)| s.is_empty()) {
        return Err(Error::InvalidArgument(format!("set '{name}' is empty")));
    }
    let bounds = ScalingBounds::compute(best)?;
    let best_scaled = bounds.scale_all(best);
    let scaled: Vec<Vec<Vec<f64>>> = sets.iter().map(|(_, s)| bounds.scale_all(s)).collect();

    let raw: Vec<&[Vec<f64>]> = sets.iter().map(|(_, s)| s.as_slice()).collect();
    let contrib = contribution_counts(&raw, best, exec);

    let mut all: Vec<&[Vec<f64>]> = vec![&best_scaled];
    all.extend(scaled.iter().map(Vec::as_slice));
    let mut hv_rows: Vec<Vec<HvEstimate>> = vec![Vec::new(); all.len()];
    for &c in &cfg.multipliers {
        let est = hypervolume_mc_shared(&all, Some(0), c, cfg.samples, cfg.seed, exec)?;
        for (row, e) in hv_rows.iter_mut().zip(est) {
            row.push(e);
        }
    }

    let mut algorithms = Vec::with_capacity(sets.len());
    for (k, (name, _)) in sets.iter().enumerate() {
        let hv = hv_rows[k + 1]
            .iter()
            .zip(&hv_rows[0])
            .map(|(e, b)| HvEntry {
                c: e.c,
                value: e.value,
                std_error: e.std_error,
                // 0/0 counts as matching the best set
                ratio: if b.value > 0.0 { e.value / b.value } else { 1.0 },
            })
            .collect();
        algorithms.push(AlgorithmMetrics {
            name: name.clone(),
            size: contrib[k].size,
            survivors: contrib[k].survivors,
            survivor_ratio: contrib[k].ratio,
            hv,
            gd: gd(&scaled[k], &best_scaled, exec)?,
            igd: igd(&scaled[k], &best_scaled, exec)?,
        });
    }
    Ok(MetricsReport {
        model_hash: None,
        samples: cfg.samples,
        seed: cfg.seed,
        shared_samples: true,
        bounds,
        best: BestMetrics {
            size: best.len(),
            hv: hv_rows.swap_remove(0),
        },
        algorithms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_against_itself() {
        let best = vec![vec![0.0, 1.0, 0.5], vec![1.0, 0.0, 0.2], vec![0.5, 0.5, 1.0]];
        let cfg = MetricsConfig {
            samples: 20_000,
            ..Default::default()
        };
        let r = compute_metrics(&[("b".into(), best.clone())], &best, &cfg, Execution::Sequential).unwrap();
        let a = &r.algorithms[0];
        assert_eq!(a.survivor_ratio, 1.0);
        assert_eq!((a.gd, a.igd), (0.0, 0.0));
        for h in &a.hv {
            assert_eq!(h.ratio, 1.0);
        }
        assert_eq!(r.best.hv.len(), 3);
    }
}
