use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Physical radar characteristics. `Default` is the reference medium-PRF
/// airborne radar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadarParams {
    /// Carrier of the PRF with index 0; PRF `n` (1-based) transmits at
    /// `base_carrier_hz - n * carrier_step_hz`.
    pub base_carrier_hz: f64,
    pub carrier_step_hz: f64,
    pub pri_min_us: f64,
    pub pri_max_us: f64,
    pub pri_quantum_us: f64,
    pub compressed_pulsewidth_us: f64,
    pub recovery_time_us: f64,
    pub range_resolution_m: f64,
    pub fft_size: u32,
    pub duty_cycle: f64,
    pub max_dwell_ms: f64,
    pub max_velocity_mps: f64,
    pub max_range_m: f64,
    pub coincidence: usize,
    pub speed_of_light_mps: f64,
}

impl Default for RadarParams {
    fn default() -> Self {
        RadarParams {
            base_carrier_hz: 10.0e9,
            carrier_step_hz: 30.0e6,
            pri_min_us: 50.0,
            pri_max_us: 150.0,
            pri_quantum_us: 0.1,
            compressed_pulsewidth_us: 0.5,
            recovery_time_us: 1.0,
            range_resolution_m: 75.0,
            fft_size: 64,
            duty_cycle: 0.10,
            max_dwell_ms: 50.0,
            max_velocity_mps: 1500.0,
            max_range_m: 185_200.0,
            coincidence: 3,
            speed_of_light_mps: 299_792_458.0,
        }
    }
}

impl RadarParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("base_carrier_hz", self.base_carrier_hz),
            ("pri_min_us", self.pri_min_us),
            ("pri_max_us", self.pri_max_us),
            ("pri_quantum_us", self.pri_quantum_us),
            ("compressed_pulsewidth_us", self.compressed_pulsewidth_us),
            ("recovery_time_us", self.recovery_time_us),
            ("range_resolution_m", self.range_resolution_m),
            ("max_dwell_ms", self.max_dwell_ms),
            ("max_velocity_mps", self.max_velocity_mps),
            ("max_range_m", self.max_range_m),
            ("speed_of_light_mps", self.speed_of_light_mps),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.carrier_step_hz.is_finite() && self.carrier_step_hz >= 0.0) {
            return Err(Error::Config("carrier_step_hz must be nonnegative".into()));
        }
        if self.pri_min_us >= self.pri_max_us {
            return Err(Error::Config("pri_min_us must be below pri_max_us".into()));
        }
        if !(self.duty_cycle > 0.0 && self.duty_cycle < 1.0) {
            return Err(Error::Config("duty_cycle must lie in (0, 1)".into()));
        }
        if self.fft_size == 0 {
            return Err(Error::Config("fft_size must be positive".into()));
        }
        if self.coincidence < 2 || self.coincidence > crate::radar::MIN_DIM {
            return Err(Error::Config(format!(
                "coincidence must lie in [2, {}]",
                crate::radar::MIN_DIM
            )));
        }
        if self.base_carrier_hz - crate::radar::MAX_DIM as f64 * self.carrier_step_hz <= 0.0 {
            return Err(Error::Config("carrier hopping runs below 0 Hz".into()));
        }
        Ok(())
    }

    /// Bounds of the PRI grid in quantum ticks (500..=1500 by default).
    pub fn tick_bounds(&self) -> (u32, u32) {
        let lo = (self.pri_min_us / self.pri_quantum_us).round() as u32;
        let hi = (self.pri_max_us / self.pri_quantum_us).round() as u32;
        (lo, hi)
    }

    /// Carrier frequency of PRF `n` (1-based).
    pub fn carrier_hz(&self, n: usize) -> f64 {
        self.base_carrier_hz - n as f64 * self.carrier_step_hz
    }

    pub fn wavelength_m(&self, n: usize) -> f64 {
        self.speed_of_light_mps / self.carrier_hz(n)
    }

    /// Round trip to maximum range, in seconds.
    pub fn round_trip_s(&self) -> f64 {
        2.0 * self.max_range_m / self.speed_of_light_mps
    }
}

/// Discretisation of the evaluation grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationConfig {
    /// Every `range_cell_stride`-th range-resolution cell is a true target
    /// cell. Ghost candidates always use the full range grid.
    pub range_cell_stride: usize,
    pub velocity_grid_step_mps: f64,
    /// Mainbeam clutter notch half-width, in Doppler filter bins.
    pub notch_bins: f64,
    /// Ghosts closer than this many cells to the true target are ignored.
    pub target_extent_cells: usize,
    /// `None` caps at half the smallest range fold.
    pub range_tolerance_cap_m: Option<f64>,
    /// `None` caps at half the smallest velocity fold.
    pub velocity_tolerance_cap_mps: Option<f64>,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            range_cell_stride: 10,
            velocity_grid_step_mps: 5.0,
            notch_bins: 3.0,
            target_extent_cells: 1,
            range_tolerance_cap_m: None,
            velocity_tolerance_cap_mps: None,
        }
    }
}

impl EvaluationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.range_cell_stride == 0 {
            return Err(Error::Config("range_cell_stride must be at least 1".into()));
        }
        if !(self.velocity_grid_step_mps.is_finite() && self.velocity_grid_step_mps > 0.0) {
            return Err(Error::Config("velocity_grid_step_mps must be positive".into()));
        }
        if !(self.notch_bins.is_finite() && self.notch_bins > 0.0) {
            return Err(Error::Config("notch_bins must be positive".into()));
        }
        if self.target_extent_cells == 0 {
            return Err(Error::Config("target_extent_cells must be positive".into()));
        }
        for cap in [self.range_tolerance_cap_m, self.velocity_tolerance_cap_mps]
            .into_iter()
            .flatten()
        {
            if !(cap.is_finite() && cap > 0.0) {
                return Err(Error::Config("tolerance caps must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Everything that determines objective values. Two point sets are only
/// comparable when their model hashes match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub radar: RadarParams,
    pub evaluation: EvaluationConfig,
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        self.radar.validate()?;
        self.evaluation.validate()
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("model config serialises");
        let digest = Sha256::digest(&json);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
