use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Per-objective range of a reference set, used to map objectives to [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingBounds {
    pub bmin: Vec<f64>,
    pub bmax: Vec<f64>,
}

impl ScalingBounds {
    pub fn compute<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidArgument("bounds of an empty set".into()))?
            .as_ref();
        let mut bmin = first.to_vec();
        let mut bmax = first.to_vec();
        for p in points {
            let p = p.as_ref();
            if p.len() != bmin.len() {
                return Err(Error::InvalidArgument("mixed point dimensions".into()));
            }
            for (k, &v) in p.iter().enumerate() {
                if v < bmin[k] {
                    bmin[k] = v;
                }
                if v > bmax[k] {
                    bmax[k] = v;
                }
            }
        }
        Ok(ScalingBounds { bmin, bmax })
    }

    pub fn dim(&self) -> usize {
        self.bmin.len()
    }

    /// Affine map to [0, 1] per coordinate; a zero-width coordinate maps to 0.
    pub fn scale(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .enumerate()
            .map(|(k, &v)| {
                let span = self.bmax[k] - self.bmin[k];
                if span > 0.0 {
                    (v - self.bmin[k]) / span
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn scale_all<P: AsRef<[f64]>>(&self, points: &[P]) -> Vec<Vec<f64>> {
        points.iter().map(|p| self.scale(p.as_ref())).collect()
    }
}
