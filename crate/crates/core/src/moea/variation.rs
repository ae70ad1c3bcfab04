use serde::{Deserialize, Serialize};

use super::RandomStream;

/// Simulated binary crossover and polynomial mutation settings.
/// `pm_prob = None` means `1 / D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariationConfig {
    pub sbx_eta: f64,
    pub sbx_prob: f64,
    pub pm_eta: f64,
    pub pm_prob: Option<f64>,
}

impl Default for VariationConfig {
    fn default() -> Self {
        VariationConfig {
            sbx_eta: 20.0,
            sbx_prob: 1.0,
            pm_eta: 20.0,
            pm_prob: None,
        }
    }
}

impl VariationConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if !(self.sbx_eta > 0.0 && self.pm_eta > 0.0) {
            return Err(crate::Error::Config("distribution indices must be positive".into()));
        }
        if !prob_ok(self.sbx_prob) || !self.pm_prob.is_none_or(prob_ok) {
            return Err(crate::Error::Config("probabilities must lie in [0, 1]".into()));
        }
        Ok(())
    }

    pub fn mutation_prob(&self, dim: usize) -> f64 {
        self.pm_prob.unwrap_or(1.0 / dim as f64)
    }
}

/// SBX on a pair of parents. Each variable is recombined with probability
/// one half; children are clipped into `[lo, hi]`.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    cfg: &VariationConfig,
    bounds: (f64, f64),
    rng: &mut RandomStream,
) -> (Vec<f64>, Vec<f64>) {
    let (c1, c2) = sbx_unclipped(p1, p2, cfg, rng);
    (clip(c1, bounds), clip(c2, bounds))
}

pub(crate) fn sbx_unclipped(
    p1: &[f64],
    p2: &[f64],
    cfg: &VariationConfig,
    rng: &mut RandomStream,
) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(p1.len(), p2.len());
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.uniform() >= cfg.sbx_prob {
        return (c1, c2);
    }
    let e = 1.0 / (cfg.sbx_eta + 1.0);
    for i in 0..p1.len() {
        let u = rng.uniform();
        let flip = rng.coin();
        let recombine = rng.coin();
        if !recombine {
            continue;
        }
        let mut beta = if u <= 0.5 {
            (2.0 * u).powf(e)
        } else {
            (2.0 - 2.0 * u).powf(-e)
        };
        if flip {
            beta = -beta;
        }
        let mean = 0.5 * (p1[i] + p2[i]);
        let half = 0.5 * beta * (p1[i] - p2[i]);
        c1[i] = mean + half;
        c2[i] = mean - half;
    }
    (c1, c2)
}

/// Bounded polynomial mutation; each variable mutates with probability
/// `cfg.mutation_prob(D)`.
pub fn polynomial_mutation(
    p: &[f64],
    cfg: &VariationConfig,
    bounds: (f64, f64),
    rng: &mut RandomStream,
) -> Vec<f64> {
    let (lo, hi) = bounds;
    let prob = cfg.mutation_prob(p.len());
    let span = hi - lo;
    let e = 1.0 / (cfg.pm_eta + 1.0);
    let mut out = p.to_vec();
    for x in out.iter_mut() {
        if rng.uniform() >= prob {
            continue;
        }
        let u = rng.uniform();
        let v = x.clamp(lo, hi);
        let d1 = (v - lo) / span;
        let d2 = (hi - v) / span;
        let dq = if u < 0.5 {
            let b = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(cfg.pm_eta + 1.0);
            b.powf(e) - 1.0
        } else {
            let b = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(cfg.pm_eta + 1.0);
            1.0 - b.powf(e)
        };
        *x = (v + dq * span).clamp(lo, hi);
    }
    out
}

fn clip(mut v: Vec<f64>, (lo, hi): (f64, f64)) -> Vec<f64> {
    for x in &mut v {
        *x = x.clamp(lo, hi);
    }
    v
}
