//! Ghost-free decoding tolerance under M-of-N coincidence.
//!
//! A true target at position `t` folds to `t mod M_n` under each PRF. A grid
//! cell `g` becomes a ghost once the measurement error `eps` lets at least
//! `coincidence` PRFs agree that the folded measurement could have come from
//! `g`, i.e. once `eps` reaches the `coincidence`-th smallest circular
//! distance between `g` and `t` across the moduli.

use super::{fmin, kth_smallest, kth_smallest_of};
use crate::{Error, Result};

/// Circular distance between `a` and `b` on a circle of circumference
/// `modulus`. Always in `[0, modulus / 2]`.
pub fn folded_distance(a: f64, b: f64, modulus: f64) -> Result<f64> {
    if !(modulus > 0.0 && modulus.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "fold modulus must be positive, got {modulus}"
        )));
    }
    Ok(fold_abs((a - b).abs(), modulus, 1.0 / modulus))
}

/// Folded distance of a nonnegative offset `d`, given `inv = 1 / modulus`.
/// The quotient estimate may be off by one near multiples of the modulus;
/// the remainder is pulled back into `[0, modulus)`, which keeps the result
/// exact on integer-valued inputs.
#[inline]
pub(crate) fn fold_abs(d: f64, modulus: f64, inv: f64) -> f64 {
    // d >= 0, so truncation is floor; the cast avoids a libm call
    let mut r = d - ((d * inv) as u64) as f64 * modulus;
    if r < 0.0 {
        r += modulus;
    } else if r >= modulus {
        r -= modulus;
    }
    fmin(r, modulus - r)
}

fn reciprocals(moduli: &[f64]) -> Vec<f64> {
    moduli.iter().map(|m| 1.0 / m).collect()
}

/// A uniform grid `lo, lo + step, ...` up to and including `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDomain {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridDomain {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) || !(hi >= lo) {
            return Err(Error::InvalidArgument(format!(
                "bad grid [{lo}, {hi}] step {step}"
            )));
        }
        Ok(GridDomain { lo, hi, step })
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell(&self, j: usize) -> f64 {
        self.lo + j as f64 * self.step
    }
}

/// Largest measurement error that decodes `true_pos` without a ghost, by
/// direct scan over every grid cell farther than `extent` from the target.
/// Returns `cap` when there is no ghost candidate.
pub fn decodability_tolerance(
    moduli: &[f64],
    true_pos: f64,
    domain: &GridDomain,
    extent: f64,
    cap: f64,
    coincidence: usize,
) -> Result<f64> {
    check_moduli(moduli, coincidence)?;
    if !(domain.lo..=domain.hi).contains(&true_pos) {
        return Err(Error::InvalidArgument(format!(
            "true position {true_pos} outside [{}, {}]",
            domain.lo, domain.hi
        )));
    }
    let inv = reciprocals(moduli);
    let mut residuals = vec![0.0; moduli.len()];
    let mut best = f64::INFINITY;
    for j in 0..domain.len() {
        let g = domain.cell(j);
        let d = (g - true_pos).abs();
        if d <= extent {
            continue;
        }
        for ((r, &m), &i) in residuals.iter_mut().zip(moduli).zip(&inv) {
            *r = fold_abs(d, m, i);
        }
        best = best.min(kth_smallest(&residuals, coincidence - 1));
    }
    Ok(cap.min(best))
}

fn check_moduli(moduli: &[f64], coincidence: usize) -> Result<()> {
    if coincidence == 0 || moduli.len() < coincidence {
        return Err(Error::InvalidArgument(format!(
            "need at least {coincidence} moduli, got {}",
            moduli.len()
        )));
    }
    if let Some(m) = moduli.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "fold modulus must be positive, got {m}"
        )));
    }
    Ok(())
}

/// Ghost activation tolerance as a function of the target-to-ghost offset,
/// for targets sitting on a uniform grid of `n_cells` cells.
///
/// Because the activation tolerance depends only on `|g - t|`, the tolerance
/// of grid cell `i` is the running minimum of the profile over offsets up to
/// `max(i, n_cells - 1 - i)`. One profile serves every target cell.
#[derive(Debug, Clone)]
pub struct GhostProfile {
    /// `running_min[k]` = min activation over offsets in `(extent, k]`.
    running_min: Vec<f64>,
    n_cells: usize,
}

/// Builds the ghost profile for offsets `k * step`, `k = 0..n_cells`.
pub fn ghost_profile(
    moduli: &[f64],
    step: f64,
    n_cells: usize,
    extent_cells: usize,
    coincidence: usize,
) -> Result<GhostProfile> {
    check_moduli(moduli, coincidence)?;
    let inv = reciprocals(moduli);
    let mut running_min = Vec::with_capacity(n_cells);
    let mut acc = f64::INFINITY;
    for k in 0..n_cells {
        if k > extent_cells {
            let d = k as f64 * step;
            let eps = kth_smallest_of(
                moduli.iter().zip(&inv).map(|(&m, &i)| fold_abs(d, m, i)),
                coincidence - 1,
            );
            acc = fmin(acc, eps);
        }
        running_min.push(acc);
    }
    Ok(GhostProfile {
        running_min,
        n_cells,
    })
}

impl GhostProfile {
    /// Tolerance of the target in grid cell `i`, capped at `cap`.
    pub fn tolerance(&self, i: usize, cap: f64) -> f64 {
        debug_assert!(i < self.n_cells);
        let reach = i.max(self.n_cells - 1 - i);
        cap.min(self.running_min[reach])
    }
}
