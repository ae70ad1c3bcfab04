//! Blind zones: eclipsing in range, mainbeam clutter notch in velocity.

use super::{EvaluationConfig, RadarParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Range,
    Velocity,
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Sorted, disjoint blind intervals of PRF `n` (1-based) with PRI `pri_s`
/// seconds, restricted to the axis domain (`[0, max_range]` or
/// `[-max_velocity, max_velocity]`).
pub fn blind_intervals(
    pri_s: f64,
    n: usize,
    axis: Axis,
    params: &RadarParams,
    config: &EvaluationConfig,
) -> Vec<Interval> {
    let mut out = Vec::new();
    match axis {
        Axis::Range => {
            let half_c = params.speed_of_light_mps / 2.0;
            let before = params.compressed_pulsewidth_us * 1e-6;
            let after = params.duty_cycle * pri_s + params.recovery_time_us * 1e-6;
            let max = params.max_range_m;
            let mut k = 0u32;
            loop {
                let t0 = k as f64 * pri_s;
                let lo = half_c * (t0 - before);
                if lo > max {
                    break;
                }
                let hi = half_c * (t0 + after);
                push_merged(&mut out, lo.max(0.0), hi.min(max));
                k += 1;
            }
        }
        Axis::Velocity => {
            let fold = params.wavelength_m(n) / (2.0 * pri_s);
            let half = config.notch_bins * fold / params.fft_size as f64;
            let vmax = params.max_velocity_mps;
            let k_lo = ((-vmax - half) / fold).ceil() as i64;
            let k_hi = ((vmax + half) / fold).floor() as i64;
            for k in k_lo..=k_hi {
                let c = k as f64 * fold;
                let lo = (c - half).max(-vmax);
                let hi = (c + half).min(vmax);
                if lo <= hi {
                    push_merged(&mut out, lo, hi);
                }
            }
        }
    }
    out
}

fn push_merged(out: &mut Vec<Interval>, lo: f64, hi: f64) {
    if let Some(last) = out.last_mut() {
        if lo <= last.hi {
            last.hi = last.hi.max(hi);
            return;
        }
    }
    out.push(Interval { lo, hi });
}

/// Distance from `pos` to the nearest blind interval; 0 when inside one.
/// `intervals` must be sorted and disjoint.
pub fn clearance(pos: f64, intervals: &[Interval]) -> f64 {
    let i = intervals.partition_point(|iv| iv.hi < pos);
    clearance_at(pos, intervals, i)
}

/// [`clearance`] given `i`, the index of the first interval with `hi >= pos`.
#[inline]
pub(crate) fn clearance_at(pos: f64, intervals: &[Interval], i: usize) -> f64 {
    let mut best = f64::INFINITY;
    if let Some(next) = intervals.get(i) {
        if next.lo <= pos {
            return 0.0;
        }
        best = next.lo - pos;
    }
    if i > 0 {
        best = best.min(pos - intervals[i - 1].hi);
    }
    best
}

/// Clutter-patch growth a cell tolerates before fewer than `coincidence`
/// PRFs see it clear: the `coincidence`-th largest clearance.
pub fn blindness_tolerance(clearances: &[f64], coincidence: usize) -> Result<f64> {
    if coincidence == 0 || clearances.len() < coincidence {
        return Err(Error::InvalidArgument(format!(
            "need at least {coincidence} clearances, got {}",
            clearances.len()
        )));
    }
    let n = clearances.len();
    Ok(super::kth_smallest(clearances, n - coincidence))
}
