use serde::{Deserialize, Serialize};

use super::common_dim;
use super::index::DominanceIndex;
use crate::{Error, Execution, Result};

/// Exact nearest-neighbour distances, pruned on the first coordinate.
#[derive(Debug, Clone)]
pub struct NearestIndex {
    m: usize,
    keys: Vec<f64>,
    rows: Vec<f64>,
}

impl NearestIndex {
    pub fn new<P: AsRef<[f64]>>(points: &[P]) -> Self {
        let m = points.first().map_or(0, |p| p.as_ref().len());
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].as_ref()[0].total_cmp(&points[b].as_ref()[0]));
        NearestIndex {
            m,
            keys: order.iter().map(|&i| points[i].as_ref()[0]).collect(),
            rows: order.iter().flat_map(|&i| points[i].as_ref().iter().copied()).collect(),
        }
    }

    fn sq(&self, j: usize, q: &[f64]) -> f64 {
        self.rows[j * self.m..(j + 1) * self.m]
            .iter()
            .zip(q)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// Euclidean distance from `q` to the closest stored point.
    pub fn nearest(&self, q: &[f64]) -> f64 {
        let n = self.keys.len();
        let start = self.keys.partition_point(|&v| v < q[0]);
        let mut best = f64::INFINITY;
        let mut up = start;
        let mut down = start;
        loop {
            let mut moved = false;
            if up < n {
                let gap = self.keys[up] - q[0];
                if gap * gap < best {
                    best = best.min(self.sq(up, q));
                    up += 1;
                    moved = true;
                } else {
                    up = n;
                }
            }
            if down > 0 {
                let gap = q[0] - self.keys[down - 1];
                if gap * gap < best {
                    best = best.min(self.sq(down - 1, q));
                    down -= 1;
                    moved = true;
                } else {
                    down = 0;
                }
            }
            if !moved {
                break;
            }
        }
        best.sqrt()
    }
}

/// Generational distance: mean distance from each point of `p` to its
/// nearest point of `b`. Both sets are expected to be scaled already.
pub fn gd(p: &[Vec<f64>], b: &[Vec<f64>], exec: Execution) -> Result<f64> {
    if p.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("distance to or from an empty set".into()));
    }
    common_dim(&[p, b])?;
    let index = NearestIndex::new(b);
    let d = exec.map(p, |q| index.nearest(q));
    Ok(d.iter().sum::<f64>() / p.len() as f64)
}

/// Inverted generational distance, defined as `gd(b, p)`.
pub fn igd(p: &[Vec<f64>], b: &[Vec<f64>], exec: Execution) -> Result<f64> {
    gd(b, p, exec)
}

/// Size of a set and how many of its points no member of the best set
/// dominates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub size: usize,
    pub survivors: usize,
    pub ratio: f64,
}

pub fn contribution_counts(sets: &[&[Vec<f64>]], best: &[Vec<f64>], exec: Execution) -> Vec<Contribution> {
    let index = DominanceIndex::new(best);
    sets.iter()
        .map(|s| {
            let survivors = exec.map(s, |p| !index.dominated(p)).into_iter().filter(|&k| k).count();
            Contribution {
                size: s.len(),
                survivors,
                ratio: if s.is_empty() { 0.0 } else { survivors as f64 / s.len() as f64 },
            }
        })
        .collect()
}
