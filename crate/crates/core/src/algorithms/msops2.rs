use super::common::{binary_tournament, normalize_minmax, objective_rows};
use super::refpoints::das_dennis;
use crate::moea::{Individual, RandomStream, Strategy};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn to_simplex(mut w: Vec<f64>) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= s);
    w
}

/// Target vectors: the largest Das-Dennis set that fits twice, its
/// reciprocal directions, and uniform simplex samples for the remainder.
pub fn msops_targets(m: usize, count: usize, rng: &mut RandomStream) -> Vec<Vec<f64>> {
    let mut h = 0;
    while 2 * binomial(h + m, m - 1) <= count {
        h += 1;
    }
    let mut targets = Vec::with_capacity(count);
    if h > 0 {
        let base = das_dennis(m, h).points;
        let shift = 1.0 / h as f64;
        let reciprocal: Vec<Vec<f64>> = base
            .iter()
            .map(|w| to_simplex(w.iter().map(|v| 1.0 / (v + shift)).collect()))
            .collect();
        targets.extend(base);
        targets.extend(reciprocal);
    }
    while targets.len() < count {
        let w = (0..m).map(|_| -(1.0 - rng.uniform()).ln()).collect();
        targets.push(to_simplex(w));
    }
    targets
}

fn minmax_score(p: &[f64], t: &[f64]) -> f64 {
    p.iter()
        .zip(t)
        .map(|(v, w)| v / w.max(1e-6))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn angle_score(p: &[f64], t: &[f64], exponent: i32) -> f64 {
    let pn = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    if pn == 0.0 {
        return 0.0;
    }
    let tn = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    let cos = p.iter().zip(t).map(|(a, b)| a * b).sum::<f64>() / (pn * tn);
    if cos <= 0.0 {
        f64::INFINITY
    } else {
        pn / cos.powi(exponent)
    }
}

/// Orders individuals by their sorted per-column ranks, compared
/// lexicographically. `scores[i][j]` is the score of individual `i` on
/// column `j`, smaller is better. Returns indices best first.
pub fn msops_ranking(scores: &[Vec<f64>]) -> Vec<usize> {
    let n = scores.len();
    let cols = scores.first().map_or(0, Vec::len);
    let mut ranks: Vec<Vec<usize>> = vec![Vec::with_capacity(cols); n];
    let mut idx: Vec<usize> = (0..n).collect();
    for j in 0..cols {
        idx.sort_by(|&a, &b| scores[a][j].total_cmp(&scores[b][j]));
        let mut r = 0;
        for w in 0..n {
            if w > 0 && scores[idx[w]][j] > scores[idx[w - 1]][j] {
                r = w;
            }
            ranks[idx[w]].push(r);
        }
    }
    ranks.iter_mut().for_each(|r| r.sort_unstable());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]));
    order
}

/// MSOPS-II: rank aggregation of weighted min-max and vector-angle scores
/// over a fixed target set. Mating is a tournament on aggregate position.
#[derive(Debug)]
pub struct Msops2 {
    targets: Vec<Vec<f64>>,
    exponent: i32,
    position: Vec<usize>,
}

impl Msops2 {
    pub fn new(targets: Vec<Vec<f64>>, exponent: i32) -> Self {
        Msops2 {
            targets,
            exponent,
            position: Vec::new(),
        }
    }
}

impl Strategy for Msops2 {
    fn name(&self) -> &'static str {
        "msops2"
    }

    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
        let pos = &self.position;
        binary_tournament(pop.len(), count, rng, |a, b| Some(pos[a] < pos[b]))
    }

    fn select(
        &mut self,
        mut pop: Vec<Individual>,
        offspring: Vec<Individual>,
        n: usize,
        _rng: &mut RandomStream,
    ) -> Vec<Individual> {
        pop.extend(offspring);
        let normalized = normalize_minmax(&objective_rows(&pop));
        let scores: Vec<Vec<f64>> = normalized
            .iter()
            .map(|p| {
                let mm = self.targets.iter().map(|t| minmax_score(p, t));
                let va = self.targets.iter().map(|t| angle_score(p, t, self.exponent));
                mm.chain(va).collect()
            })
            .collect();
        let mut order = msops_ranking(&scores);
        order.truncate(n);
        self.position = (0..order.len()).collect();
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        order
            .into_iter()
            .map(|i| slots[i].take().expect("each index chosen once"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_recipe() {
        let mut rng = RandomStream::new(3);
        let t = msops_targets(9, 100, &mut rng);
        assert_eq!(t.len(), 100);
        for w in &t {
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(w.iter().all(|&v| v >= 0.0));
        }
        assert_eq!(binomial(10, 8), 45);
        let t3 = msops_targets(3, 12, &mut rng);
        assert_eq!(t3.len(), 12); // 2·6 Das-Dennis at H = 2
    }

    #[test]
    fn best_on_every_target_ranks_first() {
        let mut rng = RandomStream::new(5);
        let targets = msops_targets(3, 8, &mut rng);
        let pts: Vec<Vec<f64>> = vec![
            vec![0.6, 0.9, 0.7],
            vec![0.1, 0.2, 0.1],
            vec![0.9, 0.3, 0.5],
            vec![0.4, 0.8, 0.2],
        ];
        let scores: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| targets.iter().map(|t| minmax_score(p, t)).collect())
            .collect();
        assert_eq!(msops_ranking(&scores)[0], 1);
    }

    #[test]
    fn angle_score_edges() {
        assert_eq!(angle_score(&[0.0, 0.0], &[0.5, 0.5], 100), 0.0);
        assert_eq!(angle_score(&[1.0, 0.0], &[0.0, 1.0], 100), f64::INFINITY);
        assert!((angle_score(&[0.3, 0.3], &[0.5, 0.5], 100) - 0.18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn keeps_population_size() {
        let mut rng = RandomStream::new(6);
        let mut s = Msops2::new(msops_targets(3, 10, &mut rng), 100);
        let pop: Vec<Individual> = (0..20)
            .map(|i| Individual {
                decision: vec![],
                objectives: (0..3).map(|_| rng.uniform()).collect(),
                eval_index: i,
            })
            .collect();
        assert_eq!(s.select(pop, Vec::new(), 10, &mut rng).len(), 10);
    }
}
