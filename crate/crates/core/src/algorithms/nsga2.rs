use super::common::{binary_tournament, objective_rows};
use crate::moea::{crowding_distance, fast_nondominated_sort, Individual, RandomStream, Strategy};

/// NSGA-II: rank by non-domination, truncate the critical front by crowding
/// distance. Mating is a binary tournament on (rank, crowding).
#[derive(Debug, Default)]
pub struct Nsga2 {
    rank: Vec<usize>,
    crowding: Vec<f64>,
}

/// Survivor indices with their (rank, crowding), best front first.
pub(crate) fn nsga2_survivors<P: AsRef<[f64]>>(points: &[P], n: usize) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::with_capacity(n);
    for (rank, front) in fast_nondominated_sort(points).into_iter().enumerate() {
        if out.len() >= n {
            break;
        }
        let members: Vec<&[f64]> = front.iter().map(|&i| points[i].as_ref()).collect();
        let cd = crowding_distance(&members);
        let mut scored: Vec<(usize, usize, f64)> =
            front.iter().zip(cd).map(|(&i, d)| (i, rank, d)).collect();
        if out.len() + scored.len() > n {
            // stable: equal crowding keeps index order
            scored.sort_by(|a, b| b.2.total_cmp(&a.2));
            scored.truncate(n - out.len());
        }
        out.extend(scored);
    }
    out
}

impl Strategy for Nsga2 {
    fn name(&self) -> &'static str {
        "nsga2"
    }

    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
        let (rank, cd) = (&self.rank, &self.crowding);
        binary_tournament(pop.len(), count, rng, |a, b| {
            if rank[a] != rank[b] {
                Some(rank[a] < rank[b])
            } else if cd[a] != cd[b] {
                Some(cd[a] > cd[b])
            } else {
                None
            }
        })
    }

    fn select(
        &mut self,
        mut pop: Vec<Individual>,
        offspring: Vec<Individual>,
        n: usize,
        _rng: &mut RandomStream,
    ) -> Vec<Individual> {
        pop.extend(offspring);
        let chosen = nsga2_survivors(&objective_rows(&pop), n);
        self.rank = chosen.iter().map(|c| c.1).collect();
        self.crowding = chosen.iter().map(|c| c.2).collect();
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        chosen
            .iter()
            .map(|c| slots[c.0].take().expect("each index chosen once"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(obj: &[f64], i: u64) -> Individual {
        Individual {
            decision: vec![i as f64],
            objectives: obj.to_vec(),
            eval_index: i,
        }
    }

    #[test]
    fn dominated_offspring_leave_population_unchanged() {
        let pop: Vec<Individual> = (0..5)
            .map(|i| ind(&[i as f64, 4.0 - i as f64], i))
            .collect();
        let off: Vec<Individual> = (0..5)
            .map(|i| ind(&[i as f64 + 1.0, 5.0 - i as f64], 10 + i))
            .collect();
        let mut s = Nsga2::default();
        let next = s.select(pop.clone(), off, 5, &mut RandomStream::new(0));
        let mut a: Vec<u64> = next.iter().map(|i| i.eval_index).collect();
        a.sort();
        assert_eq!(a, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn truncates_by_crowding() {
        // one front of 5 on a line; keep 3 -> two extremes plus the widest gap
        let pts = vec![
            vec![0.0, 10.0],
            vec![1.0, 9.0],
            vec![5.0, 5.0],
            vec![9.0, 1.0],
            vec![10.0, 0.0],
        ];
        let s = nsga2_survivors(&pts, 3);
        let mut idx: Vec<usize> = s.iter().map(|c| c.0).collect();
        idx.sort();
        assert_eq!(idx, vec![0, 2, 4]);
    }

    #[test]
    fn order_invariant_without_ties() {
        let mut rng = RandomStream::new(5);
        let pts: Vec<Vec<f64>> = (0..40)
            .map(|_| (0..3).map(|_| rng.uniform()).collect())
            .collect();
        let mut perm: Vec<usize> = (0..40).collect();
        rng.shuffle(&mut perm);
        let permuted: Vec<Vec<f64>> = perm.iter().map(|&i| pts[i].clone()).collect();
        let pick = |p: &[Vec<f64>]| {
            let mut v: Vec<Vec<u64>> = nsga2_survivors(p, 20)
                .iter()
                .map(|c| p[c.0].iter().map(|x| x.to_bits()).collect())
                .collect();
            v.sort();
            v
        };
        assert_eq!(pick(&pts), pick(&permuted));
    }
}
