//! Radar waveform model: maps a PRI vector to nine objectives.
//!
//! Objective order (all margins are "larger is better"):
//!
//! | index | quantity                                   | unit |
//! |-------|--------------------------------------------|------|
//! | m1    | median range decodability tolerance        | m    |
//! | m2    | median velocity decodability tolerance     | m/s  |
//! | m3    | median range blindness tolerance           | m    |
//! | m4    | median velocity blindness tolerance        | m/s  |
//! | m5-m8 | minima of m1-m4 over the same cells        |      |
//! | dwell | total dwell time (minimised)               | ms   |
//!
//! The minimisation view used by the optimisers is
//! `(-m1, ..., -m8, dwell)`.

mod blind;
mod decode;
mod model;
mod params;
mod pri;

pub use blind::{blind_intervals, blindness_tolerance, clearance, Axis, Interval};
pub use decode::{decodability_tolerance, folded_distance, ghost_profile, GridDomain};
pub use model::{is_realistic, ObjectiveVector, RadarModel, RadarProblem, NUM_MARGINS, NUM_OBJECTIVES};
pub use params::{EvaluationConfig, ModelConfig, RadarParams};
pub use pri::{dwell_time, fold_moduli, quantize, FoldModuli, PriVector, MAX_DIM, MIN_DIM};

/// The k-th smallest value (0-based) among `values`, without
/// reordering the input. Small inputs only (D <= 12).
pub(crate) fn kth_smallest(values: &[f64], k: usize) -> f64 {
    debug_assert!(k < values.len());
    let mut buf = [0.0f64; 16];
    let n = values.len();
    if n <= buf.len() {
        buf[..n].copy_from_slice(values);
        let s = &mut buf[..n];
        s.sort_unstable_by(f64::total_cmp);
        s[k]
    } else {
        let mut v = values.to_vec();
        v.sort_unstable_by(f64::total_cmp);
        v[k]
    }
}

/// k-th smallest (0-based) of `values`, for `k < 16`. The common
/// coincidence-of-3 case runs on three registers.
#[inline]
pub(crate) fn kth_smallest_of<I: IntoIterator<Item = f64>>(values: I, k: usize) -> f64 {
    if k == 2 {
        let (mut a, mut b, mut c) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for r in values {
            c = fmin(c, fmax(b, r));
            b = fmin(b, fmax(a, r));
            a = fmin(a, r);
        }
        return c;
    }
    debug_assert!(k < 16);
    let mut keep = [f64::INFINITY; 16];
    for r in values {
        for j in (1..=k).rev() {
            keep[j] = fmin(keep[j], fmax(keep[j - 1], r));
        }
        keep[0] = fmin(keep[0], r);
    }
    keep[k]
}

// Plain compare-and-select; inputs are never NaN here and `f64::min` pays
// for NaN handling in the innermost loops.
#[inline(always)]
pub(crate) fn fmin(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

#[inline(always)]
pub(crate) fn fmax(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}
