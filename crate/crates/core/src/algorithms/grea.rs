use super::common::{binary_tournament, objective_rows};
use crate::moea::{dominates, fast_nondominated_sort, Individual, RandomStream, Strategy};

/// Adaptive hyperbox grid over a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub div: usize,
    pub lower: Vec<f64>,
    /// Cell width per objective; 0 marks a zero-spread objective.
    pub width: Vec<f64>,
}

impl GridSpec {
    pub fn new<P: AsRef<[f64]>>(points: &[P], div: usize) -> Self {
        let m = points.first().map_or(0, |p| p.as_ref().len());
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for p in points {
            for (k, &v) in p.as_ref().iter().enumerate() {
                lo[k] = lo[k].min(v);
                hi[k] = hi[k].max(v);
            }
        }
        let d = div as f64;
        let mut lower = Vec::with_capacity(m);
        let mut width = Vec::with_capacity(m);
        for k in 0..m {
            let span = hi[k] - lo[k];
            if span > 0.0 {
                let lb = lo[k] - span / (2.0 * d);
                let ub = hi[k] + span / (2.0 * d);
                lower.push(lb);
                width.push((ub - lb) / d);
            } else {
                lower.push(lo[k]);
                width.push(0.0);
            }
        }
        GridSpec { div, lower, width }
    }

    pub fn cell(&self, p: &[f64]) -> Vec<usize> {
        p.iter()
            .enumerate()
            .map(|(k, &v)| {
                if self.width[k] > 0.0 {
                    (((v - self.lower[k]) / self.width[k]).floor().max(0.0) as usize).min(self.div - 1)
                } else {
                    0
                }
            })
            .collect()
    }

    /// Normalised distance from `p` to the lower corner of its cell.
    pub fn coordinate_point_distance(&self, p: &[f64], cell: &[usize]) -> f64 {
        p.iter()
            .enumerate()
            .map(|(k, &v)| {
                if self.width[k] > 0.0 {
                    let corner = self.lower[k] + cell[k] as f64 * self.width[k];
                    ((v - corner) / self.width[k]).powi(2)
                } else {
                    0.0
                }
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Grid cell of every point, with the grid built over the same points.
pub fn grid_coordinates<P: AsRef<[f64]>>(points: &[P], div: usize) -> Vec<Vec<usize>> {
    let spec = GridSpec::new(points, div);
    points.iter().map(|p| spec.cell(p.as_ref())).collect()
}

fn grid_distance(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum()
}

fn grid_dominates(a: &[usize], b: &[usize]) -> bool {
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

/// Picks `k` points of a front by iterated best choice on
/// (grid rank, grid crowding distance, grid coordinate point distance).
pub(crate) fn grea_pick<P: AsRef<[f64]>>(front: &[P], k: usize, div: usize) -> Vec<usize> {
    let spec = GridSpec::new(front, div);
    let cells: Vec<Vec<usize>> = front.iter().map(|p| spec.cell(p.as_ref())).collect();
    let n = front.len();
    let m = spec.lower.len();
    let mut gr: Vec<usize> = cells.iter().map(|c| c.iter().sum()).collect();
    let gcpd: Vec<f64> = front
        .iter()
        .zip(&cells)
        .map(|(p, c)| spec.coordinate_point_distance(p.as_ref(), c))
        .collect();
    let mut gcd = vec![0usize; n];
    let mut open = vec![true; n];
    let mut picked = Vec::with_capacity(k);
    let mut pd = vec![0usize; n];
    while picked.len() < k {
        let q = (0..n)
            .filter(|&i| open[i])
            .min_by(|&a, &b| {
                gr[a]
                    .cmp(&gr[b])
                    .then(gcd[a].cmp(&gcd[b]))
                    .then(gcpd[a].total_cmp(&gcpd[b]))
            })
            .expect("k does not exceed the front size");
        open[q] = false;
        picked.push(q);

        for p in (0..n).filter(|&i| open[i]) {
            let d = grid_distance(&cells[p], &cells[q]);
            if d < m {
                gcd[p] += m - d;
            }
        }
        pd.iter_mut().for_each(|v| *v = 0);
        for p in (0..n).filter(|&i| open[i]) {
            let d = grid_distance(&cells[p], &cells[q]);
            if d == 0 {
                gr[p] += m + 2;
            } else if grid_dominates(&cells[q], &cells[p]) {
                gr[p] += m;
            } else if d < m && pd[p] < m - d {
                pd[p] = m - d;
                for r in (0..n).filter(|&i| open[i]) {
                    if pd[r] < pd[p] && grid_dominates(&cells[p], &cells[r]) {
                        pd[r] = pd[p];
                    }
                }
            }
        }
        for p in (0..n).filter(|&i| open[i]) {
            if grid_distance(&cells[p], &cells[q]) != 0 && !grid_dominates(&cells[q], &cells[p]) {
                gr[p] += pd[p];
            }
        }
    }
    picked
}

/// GrEA with `div` divisions per objective. Mating is a tournament on
/// Pareto or grid dominance, then grid crowding distance.
#[derive(Debug)]
pub struct Grea {
    div: usize,
    cells: Vec<Vec<usize>>,
    gcd: Vec<usize>,
    objectives: Vec<Vec<f64>>,
}

impl Grea {
    pub fn new(div: usize) -> Self {
        Grea {
            div,
            cells: Vec::new(),
            gcd: Vec::new(),
            objectives: Vec::new(),
        }
    }

    fn refresh(&mut self, pop: &[Individual]) {
        self.objectives = pop.iter().map(|i| i.objectives.clone()).collect();
        self.cells = grid_coordinates(&self.objectives, self.div);
        let m = self.objectives.first().map_or(0, Vec::len);
        self.gcd = (0..pop.len())
            .map(|a| {
                (0..pop.len())
                    .filter(|&b| b != a)
                    .map(|b| grid_distance(&self.cells[a], &self.cells[b]))
                    .filter(|&d| d < m)
                    .map(|d| m - d)
                    .sum()
            })
            .collect();
    }
}

impl Strategy for Grea {
    fn name(&self) -> &'static str {
        "grea"
    }

    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
        let (obj, cells, gcd) = (&self.objectives, &self.cells, &self.gcd);
        binary_tournament(pop.len(), count, rng, |a, b| {
            if dominates(&obj[a], &obj[b]) || grid_dominates(&cells[a], &cells[b]) {
                Some(true)
            } else if dominates(&obj[b], &obj[a]) || grid_dominates(&cells[b], &cells[a]) {
                Some(false)
            } else if gcd[a] != gcd[b] {
                Some(gcd[a] < gcd[b])
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
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        for front in fast_nondominated_sort(&objective_rows(&pop)) {
            let room = n - chosen.len();
            if room == 0 {
                break;
            }
            if front.len() <= room {
                chosen.extend(front);
            } else {
                let rows: Vec<&[f64]> = front.iter().map(|&i| pop[i].objectives.as_slice()).collect();
                chosen.extend(grea_pick(&rows, room, self.div).into_iter().map(|p| front[p]));
            }
        }
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        let next: Vec<Individual> = chosen
            .into_iter()
            .map(|i| slots[i].take().expect("each index chosen once"))
            .collect();
        self.refresh(&next);
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimum_corner_is_cell_zero() {
        let pts = vec![vec![1.0, 5.0, 2.0], vec![3.0, 4.0, 7.0], vec![2.0, 9.0, 3.0]];
        let corner = vec![1.0, 4.0, 2.0];
        let spec = GridSpec::new(&pts, 10);
        assert_eq!(spec.cell(&corner), vec![0, 0, 0]);
        let cells = grid_coordinates(&pts, 10);
        for c in cells {
            assert!(c.iter().all(|&v| v < 10));
        }
    }

    #[test]
    fn zero_spread_objective_maps_to_cell_zero() {
        let pts = vec![vec![1.0, 0.5], vec![2.0, 0.5], vec![3.0, 0.5]];
        let cells = grid_coordinates(&pts, 10);
        assert!(cells.iter().all(|c| c[1] == 0));
        assert_eq!(cells[0][0], 0);
        assert_eq!(cells[2][0], 9);
    }

    #[test]
    fn grid_relations() {
        assert!(grid_dominates(&[0, 1], &[1, 1]));
        assert!(!grid_dominates(&[1, 1], &[1, 1]));
        assert!(!grid_dominates(&[0, 2], &[1, 1]));
        assert_eq!(grid_distance(&[0, 3], &[2, 1]), 4);
    }

    #[test]
    fn pick_avoids_crowded_cells() {
        // two near-duplicates and one isolated extreme on the same front
        let front = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![0.501, 0.499], vec![1.0, 0.0]];
        let picked = grea_pick(&front, 3, 10);
        assert_eq!(picked.len(), 3);
        assert!(picked.contains(&0) && picked.contains(&3));
    }
}
