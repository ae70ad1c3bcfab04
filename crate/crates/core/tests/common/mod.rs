//! Brute-force oracles shared by the integration tests and the acceptance
//! runner. They restate each quantity from its definition and avoid the
//! library's shortcuts.
#![allow(dead_code)]

use mprf::moea::RandomStream;
use mprf::radar::{decodability_tolerance, GridDomain};

/// Smallest distance from `d` to a multiple of `m`, by explicit search over
/// multiples.
pub fn residual(d: f64, m: f64) -> f64 {
    let mut best = d.abs();
    let mut k = 1.0;
    while k * m - m <= d.abs() {
        best = best.min((d.abs() - k * m).abs());
        k += 1.0;
    }
    best
}

/// Decodability by scanning the error level: candidate levels are every
/// residual that occurs plus the cap; the answer is the first level at
/// which some ghost cell collects `coincidence` consistent PRFs.
pub fn decodability_scan(
    moduli: &[f64],
    t: f64,
    cells: &[f64],
    extent: f64,
    cap: f64,
    coincidence: usize,
) -> f64 {
    let ghosts: Vec<f64> = cells.iter().copied().filter(|g| (g - t).abs() > extent).collect();
    let mut levels: Vec<f64> = ghosts
        .iter()
        .flat_map(|g| moduli.iter().map(move |&m| residual(g - t, m)))
        .collect();
    levels.push(cap);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    for eps in levels {
        if eps >= cap {
            return cap;
        }
        let active = ghosts.iter().any(|g| {
            moduli.iter().filter(|&&m| residual(g - t, m) <= eps).count() >= coincidence
        });
        if active {
            return eps;
        }
    }
    cap
}

/// Blindness by growing the clutter patch: the first size at which fewer
/// than `coincidence` PRFs stay clear.
pub fn blindness_scan(clearances: &[f64], coincidence: usize) -> f64 {
    let mut levels: Vec<f64> = clearances.to_vec();
    levels.push(0.0);
    levels.sort_by(f64::total_cmp);
    for delta in levels {
        if clearances.iter().filter(|&&c| c > delta).count() < coincidence {
            return delta;
        }
    }
    unreachable!("the largest clearance leaves no PRF clear")
}

/// Integer-valued decodability instance: D in 3..=5 moduli, at most 200
/// cells. Integer data keeps every folded distance exact.
pub struct DecodeInstance {
    pub moduli: Vec<f64>,
    pub domain: GridDomain,
    pub cells: Vec<f64>,
    pub t: f64,
    pub extent: f64,
    pub cap: f64,
}

impl DecodeInstance {
    pub fn random(rng: &mut RandomStream) -> Self {
        let d = 3 + rng.below(3);
        let moduli: Vec<f64> = (0..d).map(|_| (5 + rng.below(60)) as f64).collect();
        let step = (1 + rng.below(3)) as f64;
        let n = 1 + rng.below(200);
        let lo = rng.below(50) as f64;
        let hi = lo + (n - 1) as f64 * step;
        let domain = GridDomain::new(lo, hi, step).unwrap();
        let cells: Vec<f64> = (0..n).map(|j| lo + j as f64 * step).collect();
        let t = cells[rng.below(n)];
        let extent = (rng.below(3) as f64) * step + 1.0;
        let min_m = moduli.iter().copied().fold(f64::INFINITY, f64::min);
        DecodeInstance {
            moduli,
            domain,
            cells,
            t,
            extent,
            cap: min_m / 2.0,
        }
    }

    pub fn library(&self) -> f64 {
        decodability_tolerance(&self.moduli, self.t, &self.domain, self.extent, self.cap, 3).unwrap()
    }

    pub fn oracle(&self) -> f64 {
        decodability_scan(&self.moduli, self.t, &self.cells, self.extent, self.cap, 3)
    }
}

pub fn random_clearances(rng: &mut RandomStream) -> Vec<f64> {
    let d = 3 + rng.below(3);
    (0..d)
        .map(|_| {
            if rng.uniform() < 0.3 {
                0.0
            } else {
                (rng.uniform() * 20.0).floor() * 0.5
            }
        })
        .collect()
}

/// Non-dominated members by all-pairs comparison.
pub fn brute_front(points: &[Vec<f64>]) -> Vec<usize> {
    let dom = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y);
    (0..points.len())
        .filter(|&i| !points.iter().any(|q| dom(q, &points[i])))
        .collect()
}

pub fn random_points(rng: &mut RandomStream, n: usize, m: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..m).map(|_| rng.uniform()).collect()).collect()
}

/// Exact volume of a union of boxes `[p, c]` by inclusion-exclusion; small
/// sets only.
pub fn hv_inclusion_exclusion(points: &[Vec<f64>], c: f64) -> f64 {
    let pts: Vec<&Vec<f64>> = points.iter().filter(|p| p.iter().all(|&v| v < c)).collect();
    let n = pts.len();
    assert!(n <= 16);
    let m = pts.first().map_or(0, |p| p.len());
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; m];
        for (i, p) in pts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for k in 0..m {
                    corner[k] = corner[k].max(p[k]);
                }
            }
        }
        let vol: f64 = corner.iter().map(|v| c - v).product();
        if mask.count_ones() % 2 == 1 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    total
}
