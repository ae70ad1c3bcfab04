use serde::{Deserialize, Serialize};

use super::common_dim;
use super::index::DominanceIndex;
use crate::moea::RandomStream;
use crate::{Error, Execution, Result};

/// Samples drawn per random sub-stream.
pub const MC_BLOCK: usize = 1 << 14;

/// A Monte Carlo hypervolume estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HvEstimate {
    pub c: f64,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
}

impl HvEstimate {
    fn new(c: f64, m: usize, hits: u64, samples: u64) -> Self {
        let vol = c.powi(m as i32);
        let p = hits as f64 / samples as f64;
        HvEstimate {
            c,
            value: vol * p,
            std_error: vol * (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
            hits,
        }
    }
}

fn check_args(c: f64, samples: u64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!("reference multiplier {c}")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("zero Monte Carlo samples".into()));
    }
    Ok(())
}

fn index_below(points: &[Vec<f64>], c: f64) -> DominanceIndex {
    let kept: Vec<&[f64]> = points
        .iter()
        .map(Vec::as_slice)
        .filter(|p| p.iter().all(|&v| v < c))
        .collect();
    DominanceIndex::new(&kept)
}

/// Monte Carlo hypervolume of `points` with reference point `c·(1,…,1)`.
pub fn hypervolume_mc(
    points: &[Vec<f64>],
    c: f64,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<HvEstimate> {
    Ok(hypervolume_mc_shared(&[points], None, c, samples, seed, exec)?[0])
}

/// Estimates several sets on one shared sample. With `gate = Some(g)`, a
/// sample is tested against the other sets only if set `g` covers it; this
/// is exact for every set whose points are all weakly dominated by set `g`,
/// and other sets are tested on every sample.
pub fn hypervolume_mc_shared(
    sets: &[&[Vec<f64>]],
    gate: Option<usize>,
    c: f64,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<HvEstimate>> {
    check_args(c, samples)?;
    let Some(m) = common_dim(sets)? else {
        return Ok(sets.iter().map(|_| HvEstimate::new(c, 1, 0, samples)).collect());
    };
    let indexes: Vec<DominanceIndex> = sets.iter().map(|s| index_below(s, c)).collect();
    let gated: Vec<bool> = match gate {
        Some(g) => sets
            .iter()
            .enumerate()
            .map(|(k, s)| k != g && s.iter().all(|p| indexes[g].weakly_dominated(p)))
            .collect(),
        None => vec![false; sets.len()],
    };

    let blocks = samples.div_ceil(MC_BLOCK as u64) as usize;
    let per_block = exec.map_range(blocks, |b| {
        let start = b as u64 * MC_BLOCK as u64;
        let count = (samples - start).min(MC_BLOCK as u64);
        let mut rng = RandomStream::substream(seed, b as u64);
        let mut hits = vec![0u64; sets.len()];
        let mut x = vec![0.0; m];
        for _ in 0..count {
            x.iter_mut().for_each(|v| *v = c * rng.uniform());
            let open = match gate {
                Some(g) => {
                    let hit = indexes[g].weakly_dominated(&x);
                    hits[g] += hit as u64;
                    hit
                }
                None => true,
            };
            for (k, idx) in indexes.iter().enumerate() {
                if Some(k) == gate || (gated[k] && !open) {
                    continue;
                }
                hits[k] += idx.weakly_dominated(&x) as u64;
            }
        }
        hits
    });
    let mut total = vec![0u64; sets.len()];
    for h in per_block {
        for (t, v) in total.iter_mut().zip(h) {
            *t += v;
        }
    }
    Ok(total
        .into_iter()
        .map(|h| HvEstimate::new(c, m, h, samples))
        .collect())
}

fn slice_volume(mut points: Vec<Vec<f64>>, m: usize, c: f64) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    if m == 1 {
        let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return c - lo;
    }
    points.sort_by(|a, b| a[m - 1].total_cmp(&b[m - 1]));
    let mut vol = 0.0;
    for i in 0..points.len() {
        let z = points[i][m - 1];
        let next = points.get(i + 1).map_or(c, |p| p[m - 1]);
        if next > z {
            let sub: Vec<Vec<f64>> = points[..=i].iter().map(|p| p[..m - 1].to_vec()).collect();
            vol += (next - z) * slice_volume(sub, m - 1, c);
        }
    }
    vol
}

/// Exact hypervolume by slicing along the last objective; at most four
/// objectives.
pub fn hypervolume_exact(points: &[Vec<f64>], c: f64) -> Result<f64> {
    check_args(c, 1)?;
    let Some(m) = common_dim(&[points])? else {
        return Ok(0.0);
    };
    if m > 4 {
        return Err(Error::UnsupportedDimension(m));
    }
    let kept: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| p.iter().all(|&v| v < c))
        .cloned()
        .collect();
    Ok(slice_volume(kept, m, c))
}
