use super::common::{normalize_hyperplane, objective_rows, perpendicular_distance, random_pool};
use super::refpoints::ReferencePointSet;
use crate::moea::{fast_nondominated_sort, Individual, RandomStream, Strategy};

/// NSGA-III: non-dominated sorting, then niche-preserving selection around
/// reference directions on the normalised hyperplane. Mating is random.
#[derive(Debug)]
pub struct Nsga3 {
    refs: ReferencePointSet,
}

impl Nsga3 {
    pub fn new(refs: ReferencePointSet) -> Self {
        Nsga3 { refs }
    }
}

/// Nearest reference direction and perpendicular distance of each point.
pub fn associate(normalized: &[Vec<f64>], refs: &[Vec<f64>]) -> Vec<(usize, f64)> {
    normalized
        .iter()
        .map(|p| {
            refs.iter()
                .enumerate()
                .map(|(j, w)| (j, perpendicular_distance(p, w)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("at least one reference point")
        })
        .collect()
}

/// Niching step. `assoc[i]` is the association of candidate `i`; members
/// with `in_last[i] == false` are already selected and only count towards
/// niche sizes. Picks `k` of the last-front candidates and returns their
/// indices in pick order.
pub fn nsga3_niching(
    assoc: &[(usize, f64)],
    in_last: &[bool],
    n_refs: usize,
    k: usize,
    rng: &mut RandomStream,
) -> Vec<usize> {
    let mut niche = vec![0usize; n_refs];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_refs];
    for (i, &(j, _)) in assoc.iter().enumerate() {
        if in_last[i] {
            members[j].push(i);
        } else {
            niche[j] += 1;
        }
    }
    let mut active: Vec<bool> = vec![true; n_refs];
    let mut picked = Vec::with_capacity(k);
    while picked.len() < k {
        let Some(min) = (0..n_refs).filter(|&j| active[j]).map(|j| niche[j]).min() else {
            break;
        };
        let ties: Vec<usize> = (0..n_refs)
            .filter(|&j| active[j] && niche[j] == min)
            .collect();
        let j = ties[rng.below(ties.len())];
        if members[j].is_empty() {
            active[j] = false;
            continue;
        }
        let pos = if niche[j] == 0 {
            (0..members[j].len())
                .min_by(|&a, &b| assoc[members[j][a]].1.total_cmp(&assoc[members[j][b]].1))
                .expect("nonempty")
        } else {
            rng.below(members[j].len())
        };
        picked.push(members[j].swap_remove(pos));
        niche[j] += 1;
    }
    picked
}

impl Strategy for Nsga3 {
    fn name(&self) -> &'static str {
        "nsga3"
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
        let fronts = fast_nondominated_sort(&objective_rows(&pop));
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        let mut last: Vec<usize> = Vec::new();
        for front in fronts {
            if chosen.len() + front.len() <= n {
                chosen.extend(front);
                if chosen.len() == n {
                    break;
                }
            } else {
                last = front;
                break;
            }
        }
        if !last.is_empty() {
            let candidates: Vec<usize> = chosen.iter().chain(&last).copied().collect();
            let rows: Vec<&[f64]> = candidates.iter().map(|&i| pop[i].objectives.as_slice()).collect();
            let normalized = normalize_hyperplane(&rows);
            let assoc = associate(&normalized, &self.refs.points);
            let in_last: Vec<bool> = (0..candidates.len()).map(|i| i >= chosen.len()).collect();
            let k = n - chosen.len();
            let picked = nsga3_niching(&assoc, &in_last, self.refs.len(), k, rng);
            chosen.extend(picked.into_iter().map(|i| candidates[i]));
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

    #[test]
    fn niching_prefers_empty_niches() {
        // two candidates near direction 0, one near direction 2
        let assoc = vec![(0, 0.1), (0, 0.05), (2, 0.3)];
        let mut rng = RandomStream::new(1);
        let picked = nsga3_niching(&assoc, &[true, true, true], 3, 2, &mut rng);
        let mut p = picked.clone();
        p.sort();
        assert_eq!(p, vec![1, 2]);
    }

    #[test]
    fn keeps_population_size() {
        let refs = das_dennis(3, 4);
        let mut s = Nsga3::new(refs);
        let mut rng = RandomStream::new(2);
        let pop: Vec<Individual> = (0..30)
            .map(|i| Individual {
                decision: vec![],
                objectives: (0..3).map(|_| rng.uniform()).collect(),
                eval_index: i,
            })
            .collect();
        let next = s.select(pop, Vec::new(), 15, &mut rng);
        assert_eq!(next.len(), 15);
        let mut idx: Vec<u64> = next.iter().map(|i| i.eval_index).collect();
        idx.sort();
        idx.dedup();
        assert_eq!(idx.len(), 15);
    }
}
