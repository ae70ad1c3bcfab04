use serde::{Deserialize, Serialize};

use super::RadarParams;
use crate::{Error, Result};

pub const MIN_DIM: usize = 4;
pub const MAX_DIM: usize = 12;

/// A PRI vector on the quantisation grid, stored as integer ticks
/// (tenths of a microsecond with the default parameters).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PriVector(Vec<u32>);

impl PriVector {
    /// Wraps ticks that are already on the grid and within bounds.
    pub fn from_ticks(ticks: Vec<u32>, params: &RadarParams) -> Result<Self> {
        check_dim(ticks.len())?;
        let (lo, hi) = params.tick_bounds();
        if let Some(t) = ticks.iter().find(|&&t| t < lo || t > hi) {
            return Err(Error::InvalidArgument(format!(
                "PRI {t} outside [{lo}, {hi}] ticks"
            )));
        }
        Ok(PriVector(ticks))
    }

    pub fn ticks(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// PRIs in seconds.
    pub fn seconds(&self, params: &RadarParams) -> Vec<f64> {
        self.0
            .iter()
            .map(|&t| t as f64 * params.pri_quantum_us * 1e-6)
            .collect()
    }

    pub fn into_ticks(self) -> Vec<u32> {
        self.0
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(d))
    }
}

/// Rounds each entry (in ticks) half-up to the grid and clamps it into the
/// PRI bounds.
pub fn quantize(x: &[f64], params: &RadarParams) -> Result<PriVector> {
    check_dim(x.len())?;
    let (lo, hi) = params.tick_bounds();
    let ticks = x
        .iter()
        .map(|&v| {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite PRI {v}")));
            }
            let r = (v + 0.5).floor().clamp(lo as f64, hi as f64);
            Ok(r as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PriVector(ticks))
}

/// Unambiguous range and velocity of each PRF.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldModuli {
    pub range_m: Vec<f64>,
    pub velocity_mps: Vec<f64>,
}

/// `R_u(n) = c x_n / 2` and `V_u(n) = lambda_n / (2 x_n)` with the carrier
/// hopping down one step per PRF.
pub fn fold_moduli(x: &PriVector, params: &RadarParams) -> FoldModuli {
    let c = params.speed_of_light_mps;
    let secs = x.seconds(params);
    let range_m = secs.iter().map(|&t| c * t / 2.0).collect();
    let velocity_mps = secs
        .iter()
        .enumerate()
        .map(|(i, &t)| params.wavelength_m(i + 1) / (2.0 * t))
        .collect();
    FoldModuli {
        range_m,
        velocity_mps,
    }
}

/// Dwell time in milliseconds.
///
/// Each burst transmits `fft_size` integrated pulses plus the space-charging
/// pulses needed to cover the round trip to maximum range, rounded up to
/// whole PRIs. The sum is accumulated in integer ticks so it does not depend
/// on the order of the PRIs.
pub fn dwell_time(x: &PriVector, params: &RadarParams) -> f64 {
    let round_trip_ticks = params.round_trip_s() * 1e6 / params.pri_quantum_us;
    let total: u64 = x
        .ticks()
        .iter()
        .map(|&t| {
            let charge = (round_trip_ticks / t as f64).ceil() as u64;
            (params.fft_size as u64 + charge) * t as u64
        })
        .sum();
    total as f64 * params.pri_quantum_us * 1e-3
}
