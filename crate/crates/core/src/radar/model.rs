use serde::{Deserialize, Serialize};

use super::blind::{blind_intervals, clearance_at, Axis};
use super::decode::{ghost_profile, GridDomain};
use super::pri::{dwell_time, fold_moduli, quantize, PriVector};
use super::{kth_smallest_of, ModelConfig, RadarParams};
use crate::moea::Problem;
use crate::Result;

pub const NUM_MARGINS: usize = 8;
pub const NUM_OBJECTIVES: usize = 9;

/// Objective values of one PRI vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    /// `m1..m8`, see the module docs for the order.
    pub margins: [f64; NUM_MARGINS],
    pub dwell_ms: f64,
}

impl ObjectiveVector {
    /// `(-m1, ..., -m8, dwell)`.
    pub fn minimization(&self) -> [f64; NUM_OBJECTIVES] {
        let mut f = [0.0; NUM_OBJECTIVES];
        for (fi, m) in f.iter_mut().zip(&self.margins) {
            *fi = -m;
        }
        f[NUM_MARGINS] = self.dwell_ms;
        f
    }

    /// `(m1, ..., m8, dwell)`: every entry positive for a realistic waveform.
    pub fn original(&self) -> [f64; NUM_OBJECTIVES] {
        let mut f = [0.0; NUM_OBJECTIVES];
        f[..NUM_MARGINS].copy_from_slice(&self.margins);
        f[NUM_MARGINS] = self.dwell_ms;
        f
    }

    pub fn from_minimization(f: &[f64]) -> Self {
        assert_eq!(f.len(), NUM_OBJECTIVES);
        let mut margins = [0.0; NUM_MARGINS];
        for (m, fi) in margins.iter_mut().zip(f) {
            *m = -fi;
        }
        ObjectiveVector {
            margins,
            dwell_ms: f[NUM_MARGINS],
        }
    }
}

/// All margins strictly positive and dwell strictly inside the budget.
pub fn is_realistic(v: &ObjectiveVector, params: &RadarParams) -> bool {
    v.margins.iter().all(|&m| m > 0.0) && v.dwell_ms < params.max_dwell_ms
}

/// The objective function with its grids precomputed.
///
/// True target cells are every `range_cell_stride`-th range cell and every
/// velocity cell, excluding the zero-fold blind zone that every waveform
/// shares (the transmit eclipse right after each pulse and the clutter notch
/// around zero Doppler). Ghost candidates cover the full grids.
#[derive(Debug, Clone)]
pub struct RadarModel {
    config: ModelConfig,
    range_grid: GridDomain,
    velocity_grid: GridDomain,
    range_cells: Vec<usize>,
}

impl RadarModel {
    pub fn new(config: ModelConfig) -> Result<Self> {
        config.validate()?;
        let p = &config.radar;
        let e = &config.evaluation;
        let range_grid = GridDomain::new(0.0, p.max_range_m, p.range_resolution_m)?;
        let velocity_grid =
            GridDomain::new(-p.max_velocity_mps, p.max_velocity_mps, e.velocity_grid_step_mps)?;
        let guard = p.speed_of_light_mps / 2.0
            * (p.duty_cycle * p.pri_max_us + p.recovery_time_us)
            * 1e-6;
        let range_cells = (0..range_grid.len())
            .step_by(e.range_cell_stride)
            .filter(|&j| range_grid.cell(j) > guard)
            .collect();
        Ok(RadarModel {
            config,
            range_grid,
            velocity_grid,
            range_cells,
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn params(&self) -> &RadarParams {
        &self.config.radar
    }

    /// Quantises then evaluates a real-valued decision vector (ticks).
    pub fn evaluate_real(&self, x: &[f64]) -> Result<(PriVector, ObjectiveVector)> {
        let q = quantize(x, self.params())?;
        let v = self.evaluate(&q);
        Ok((q, v))
    }

    pub fn evaluate(&self, x: &PriVector) -> ObjectiveVector {
        let p = &self.config.radar;
        let e = &self.config.evaluation;
        let coincidence = p.coincidence.min(x.dim());
        let moduli = fold_moduli(x, p);
        let secs = x.seconds(p);

        let (range_dec, range_blind) = {
            let cap = e
                .range_tolerance_cap_m
                .unwrap_or_else(|| min_of(&moduli.range_m) / 2.0);
            let profile = ghost_profile(
                &moduli.range_m,
                self.range_grid.step,
                self.range_grid.len(),
                e.target_extent_cells,
                coincidence,
            )
            .expect("validated moduli");
            let blind: Vec<_> = secs
                .iter()
                .enumerate()
                .map(|(i, &t)| blind_intervals(t, i + 1, Axis::Range, p, e))
                .collect();
            self.cell_statistics(&self.range_cells, &self.range_grid, &profile, cap, &blind, coincidence)
        };

        let (vel_dec, vel_blind) = {
            let cap = e
                .velocity_tolerance_cap_mps
                .unwrap_or_else(|| min_of(&moduli.velocity_mps) / 2.0);
            let profile = ghost_profile(
                &moduli.velocity_mps,
                self.velocity_grid.step,
                self.velocity_grid.len(),
                e.target_extent_cells,
                coincidence,
            )
            .expect("validated moduli");
            let blind: Vec<_> = secs
                .iter()
                .enumerate()
                .map(|(i, &t)| blind_intervals(t, i + 1, Axis::Velocity, p, e))
                .collect();
            // zero-Doppler notch of the widest-fold PRF
            let guard = moduli
                .velocity_mps
                .iter()
                .map(|&v| e.notch_bins * v / p.fft_size as f64)
                .fold(0.0, f64::max);
            let cells: Vec<usize> = (0..self.velocity_grid.len())
                .filter(|&j| self.velocity_grid.cell(j).abs() > guard)
                .collect();
            self.cell_statistics(&cells, &self.velocity_grid, &profile, cap, &blind, coincidence)
        };

        ObjectiveVector {
            margins: [
                range_dec.0,
                vel_dec.0,
                range_blind.0,
                vel_blind.0,
                range_dec.1,
                vel_dec.1,
                range_blind.1,
                vel_blind.1,
            ],
            dwell_ms: dwell_time(x, p),
        }
    }

    /// (median, min) of decodability and blindness tolerances over `cells`.
    fn cell_statistics(
        &self,
        cells: &[usize],
        grid: &GridDomain,
        profile: &super::decode::GhostProfile,
        cap: f64,
        blind: &[Vec<super::Interval>],
        coincidence: usize,
    ) -> ((f64, f64), (f64, f64)) {
        let mut dec = Vec::with_capacity(cells.len());
        let mut bl = Vec::with_capacity(cells.len());
        // cells ascend, so each PRF's interval cursor only moves forward
        let mut cursor = vec![0usize; blind.len()];
        for &j in cells {
            dec.push(profile.tolerance(j, cap));
            let pos = grid.cell(j);
            let neg_clear = cursor.iter_mut().zip(blind).map(|(cur, iv)| {
                while *cur < iv.len() && iv[*cur].hi < pos {
                    *cur += 1;
                }
                -clearance_at(pos, iv, *cur)
            });
            // k-th largest clearance
            bl.push(-kth_smallest_of(neg_clear, coincidence - 1));
        }
        (median_min(&mut dec), median_min(&mut bl))
    }
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Median (mean of the two middle values for even counts) and minimum.
/// Empty input gives (0, 0).
fn median_min(v: &mut [f64]) -> (f64, f64) {
    if v.is_empty() {
        return (0.0, 0.0);
    }
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    let median = if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    };
    (median, v[0])
}

/// [`RadarModel`] as an optimisation problem over `[lo, hi]^D` ticks.
#[derive(Debug, Clone)]
pub struct RadarProblem {
    model: RadarModel,
    dim: usize,
}

impl RadarProblem {
    pub fn new(model: RadarModel, dim: usize) -> Result<Self> {
        if !(super::MIN_DIM..=super::MAX_DIM).contains(&dim) {
            return Err(crate::Error::InvalidDimension(dim));
        }
        Ok(RadarProblem { model, dim })
    }

    pub fn model(&self) -> &RadarModel {
        &self.model
    }
}

impl Problem for RadarProblem {
    fn dimension(&self) -> usize {
        self.dim
    }

    fn num_objectives(&self) -> usize {
        NUM_OBJECTIVES
    }

    fn bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.model.params().tick_bounds();
        (lo as f64, hi as f64)
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let (_, v) = self
            .model
            .evaluate_real(x)
            .expect("decision vector has the problem dimension");
        v.minimization().to_vec()
    }
}
