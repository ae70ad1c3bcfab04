use super::common::{
    normalize_hyperplane, objective_rows, perpendicular_distance, projection_length, random_pool,
};
use super::refpoints::ReferencePointSet;
use crate::moea::{fast_nondominated_sort, Individual, RandomStream, Strategy};

/// θ-DEA: Pareto sorting picks the candidate pool, then θ-dominance inside
/// each reference-direction cluster orders it. Mating is random.
#[derive(Debug)]
pub struct ThetaDea {
    refs: ReferencePointSet,
    theta: f64,
}

impl ThetaDea {
    pub fn new(refs: ReferencePointSet, theta: f64) -> Self {
        ThetaDea { refs, theta }
    }
}

/// Cluster assignment and θ-ordering of one normalised point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaKey {
    pub cluster: usize,
    /// d1 + θ·d2 towards the cluster direction.
    pub fitness: f64,
    /// θ-non-domination level inside the cluster, 0 is best.
    pub rank: usize,
}

impl ThetaKey {
    /// θ-dominance: same cluster and strictly smaller fitness.
    pub fn dominates(&self, other: &ThetaKey) -> bool {
        self.cluster == other.cluster && self.fitness < other.fitness
    }
}

/// Clusters each point to the direction with the smallest perpendicular
/// distance and ranks it by θ-dominance within that cluster.
pub fn theta_order(normalized: &[Vec<f64>], refs: &[Vec<f64>], theta: f64) -> Vec<ThetaKey> {
    let mut keys: Vec<ThetaKey> = normalized
        .iter()
        .map(|p| {
            let (cluster, d2) = refs
                .iter()
                .enumerate()
                .map(|(j, w)| (j, perpendicular_distance(p, w)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("at least one reference point");
            let d1 = projection_length(p, &refs[cluster]);
            ThetaKey {
                cluster,
                fitness: d1 + theta * d2,
                rank: 0,
            }
        })
        .collect();
    let mut by_cluster: Vec<Vec<usize>> = vec![Vec::new(); refs.len()];
    for (i, k) in keys.iter().enumerate() {
        by_cluster[k.cluster].push(i);
    }
    for members in &mut by_cluster {
        members.sort_by(|&a, &b| keys[a].fitness.total_cmp(&keys[b].fitness));
        let mut rank = 0;
        for w in 0..members.len() {
            if w > 0 && keys[members[w]].fitness > keys[members[w - 1]].fitness {
                rank += 1;
            }
            keys[members[w]].rank = rank;
        }
    }
    keys
}

impl Strategy for ThetaDea {
    fn name(&self) -> &'static str {
        "theta-dea"
    }

    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
        random_pool(pop.len(), count, rng)
    }

    fn select(
        &mut self,
        mut pop: Vec<Individual>,
        offspring: Vec<Individual>,
        n: usize,
        rng: &mut RandomStream,
    ) -> Vec<Individual> {
        pop.extend(offspring);
        let mut pool: Vec<usize> = Vec::new();
        for front in fast_nondominated_sort(&objective_rows(&pop)) {
            if pool.len() >= n {
                break;
            }
            pool.extend(front);
        }
        let rows: Vec<&[f64]> = pool.iter().map(|&i| pop[i].objectives.as_slice()).collect();
        let keys = theta_order(&normalize_hyperplane(&rows), &self.refs.points, self.theta);

        let mut levels: Vec<Vec<usize>> = Vec::new();
        for (p, k) in keys.iter().enumerate() {
            if levels.len() <= k.rank {
                levels.resize(k.rank + 1, Vec::new());
            }
            levels[k.rank].push(p);
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        for mut level in levels {
            let room = n - chosen.len();
            if room == 0 {
                break;
            }
            if level.len() > room {
                rng.shuffle(&mut level);
                level.truncate(room);
                level.sort_unstable();
            }
            chosen.extend(level.into_iter().map(|p| pool[p]));
        }
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        chosen
            .into_iter()
            .map(|i| slots[i].take().expect("each index chosen once"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::das_dennis;
    use crate::moea::Strategy;
    use proptest::prelude::*;

    #[test]
    fn zero_theta_single_direction_orders_by_projection() {
        let w = vec![vec![0.5, 0.5]];
        let pts = vec![vec![0.9, 0.1], vec![0.2, 0.3], vec![0.0, 0.4], vec![0.6, 0.6]];
        let keys = theta_order(&pts, &w, 0.0);
        let d1: Vec<f64> = pts.iter().map(|p| (p[0] + p[1]) / 2f64.sqrt()).collect();
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                assert_eq!(keys[a].rank < keys[b].rank, d1[a] < d1[b] - 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn clusters_by_perpendicular_distance() {
        let refs = das_dennis(2, 1).points; // (1,0), (0,1) in some order
        let keys = theta_order(&[vec![1.0, 0.1], vec![0.1, 1.0]], &refs, 5.0);
        assert_eq!(refs[keys[0].cluster][0], 1.0);
        assert_eq!(refs[keys[1].cluster][1], 1.0);
    }

    #[test]
    fn keeps_population_size() {
        let mut s = ThetaDea::new(das_dennis(3, 3), 5.0);
        let mut rng = RandomStream::new(4);
        let pop: Vec<Individual> = (0..24)
            .map(|i| Individual {
                decision: vec![],
                objectives: (0..3).map(|_| rng.uniform()).collect(),
                eval_index: i,
            })
            .collect();
        let next = s.select(pop, Vec::new(), 12, &mut rng);
        assert_eq!(next.len(), 12);
    }

    proptest! {
        #[test]
        fn theta_dominance_is_transitive(
            pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 3..20)
        ) {
            let refs = vec![vec![1.0 / 3.0; 3]];
            let keys = theta_order(&pts, &refs, 5.0);
            for a in &keys {
                for b in &keys {
                    for c in &keys {
                        if a.dominates(b) && b.dominates(c) {
                            prop_assert!(a.dominates(c));
                        }
                    }
                    prop_assert!(!(a.dominates(b) && b.dominates(a)));
                    if a.dominates(b) {
                        prop_assert!(a.rank < b.rank);
                    }
                }
            }
        }
    }
}
