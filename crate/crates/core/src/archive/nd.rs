use crate::metrics::DominanceIndex;
use crate::moea::dominates;
use crate::Execution;

const BLOCK: usize = 1024;
const CHUNK: usize = 8192;

/// Indices sorted by coordinate sum, then lexicographically. A dominating
/// point always comes before the points it dominates.
fn presorted<P: AsRef<[f64]>>(points: &[P], idx: &[usize]) -> Vec<usize> {
    let sums: Vec<f64> = points.iter().map(|p| p.as_ref().iter().sum()).collect();
    let mut order = idx.to_vec();
    order.sort_by(|&a, &b| {
        sums[a].total_cmp(&sums[b]).then_with(|| {
            let (pa, pb) = (points[a].as_ref(), points[b].as_ref());
            pa.iter()
                .zip(pb)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    order
}

/// Append-only archive split into blocks that carry their minimum corner.
struct Archive<'a, P> {
    points: &'a [P],
    blocks: Vec<(Vec<f64>, Vec<usize>)>,
}

impl<'a, P: AsRef<[f64]>> Archive<'a, P> {
    fn dominated(&self, x: &[f64]) -> bool {
        self.blocks.iter().any(|(corner, members)| {
            corner.iter().zip(x).all(|(c, v)| c <= v)
                && members.iter().any(|&j| dominates(self.points[j].as_ref(), x))
        })
    }

    fn push(&mut self, i: usize) {
        let p = self.points[i].as_ref();
        match self.blocks.last_mut() {
            Some((corner, members)) if members.len() < BLOCK => {
                corner.iter_mut().zip(p).for_each(|(c, &v)| *c = c.min(v));
                members.push(i);
            }
            _ => self.blocks.push((p.to_vec(), vec![i])),
        }
    }
}

fn scan_subset<P: AsRef<[f64]>>(points: &[P], idx: &[usize]) -> Vec<usize> {
    let mut archive = Archive {
        points,
        blocks: Vec::new(),
    };
    let mut kept = Vec::new();
    for i in presorted(points, idx) {
        if !archive.dominated(points[i].as_ref()) {
            archive.push(i);
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

/// Non-dominated subset by a single sequential scan. Returns indices in
/// input order; equal points are all kept.
pub fn nd_filter_scan<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let all: Vec<usize> = (0..points.len()).collect();
    scan_subset(points, &all)
}

/// Divide and conquer: filter contiguous chunks independently, then keep
/// the union members no other union member dominates.
pub fn nd_filter_divide<P: AsRef<[f64]> + Sync>(points: &[P], exec: Execution) -> Vec<usize> {
    let chunks: Vec<Vec<usize>> = (0..points.len())
        .step_by(CHUNK)
        .map(|s| (s..(s + CHUNK).min(points.len())).collect())
        .collect();
    let union: Vec<usize> = exec
        .map(&chunks, |c| scan_subset(points, c))
        .into_iter()
        .flatten()
        .collect();
    let rows: Vec<&[f64]> = union.iter().map(|&i| points[i].as_ref()).collect();
    let index = DominanceIndex::new(&rows);
    let keep = exec.map(&rows, |p| !index.dominated(p));
    union
        .into_iter()
        .zip(keep)
        .filter_map(|(i, k)| k.then_some(i))
        .collect()
}

/// Non-dominated subset in input order, choosing the parallel path for
/// large inputs.
pub fn nd_filter<P: AsRef<[f64]> + Sync>(points: &[P], exec: Execution) -> Vec<usize> {
    if exec.is_parallel() && points.len() > CHUNK {
        nd_filter_divide(points, exec)
    } else {
        nd_filter_scan(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moea::RandomStream;

    fn brute(points: &[Vec<f64>]) -> Vec<usize> {
        (0..points.len())
            .filter(|&i| !points.iter().any(|q| dominates(q, &points[i])))
            .collect()
    }

    #[test]
    fn idempotent_and_removes_dominated() {
        let mut pts = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![0.5, 0.5]];
        assert_eq!(nd_filter_scan(&pts), vec![0, 1, 2]);
        pts.push(vec![0.6, 0.6]);
        assert_eq!(nd_filter_scan(&pts), vec![0, 1, 2]);
    }

    #[test]
    fn both_paths_match_brute_force() {
        let mut rng = RandomStream::new(12);
        // coarse values so that ties and duplicates occur
        let pts: Vec<Vec<f64>> = (0..20_000)
            .map(|_| (0..4).map(|_| (rng.uniform() * 6.0).floor()).collect())
            .collect();
        let want = brute(&pts);
        assert_eq!(nd_filter_scan(&pts), want);
        assert_eq!(nd_filter_divide(&pts, Execution::Sequential), want);
        assert_eq!(nd_filter_divide(&pts, Execution::Parallel), want);
    }
}
