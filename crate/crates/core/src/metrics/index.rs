/// Answers "is `x` dominated by some stored point" by scanning the shortest
/// per-coordinate prefix of candidates.
#[derive(Debug, Clone)]
pub struct DominanceIndex {
    m: usize,
    n: usize,
    /// keys[d]: coordinate d of all points, ascending
    keys: Vec<Vec<f64>>,
    /// rows[d]: points in the order of keys[d], flattened
    rows: Vec<Vec<f64>>,
}

impl DominanceIndex {
    pub fn new<P: AsRef<[f64]>>(points: &[P]) -> Self {
        let n = points.len();
        let m = points.first().map_or(0, |p| p.as_ref().len());
        let mut keys = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        let mut order: Vec<usize> = (0..n).collect();
        for d in 0..m {
            order.sort_by(|&a, &b| points[a].as_ref()[d].total_cmp(&points[b].as_ref()[d]));
            keys.push(order.iter().map(|&i| points[i].as_ref()[d]).collect());
            rows.push(order.iter().flat_map(|&i| points[i].as_ref().iter().copied()).collect());
        }
        DominanceIndex { m, n, keys, rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn search(&self, x: &[f64], strict: bool) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut best_d = 0;
        let mut best_len = usize::MAX;
        for d in 0..self.m {
            let len = self.keys[d].partition_point(|&v| v <= x[d]);
            if len < best_len {
                best_len = len;
                best_d = d;
                if len == 0 {
                    return false;
                }
            }
        }
        let rows = &self.rows[best_d][..best_len * self.m];
        rows.chunks_exact(self.m).any(|p| {
            let mut less = false;
            for (a, b) in p.iter().zip(x) {
                if a > b {
                    return false;
                }
                less |= a < b;
            }
            less || !strict
        })
    }

    /// Some stored point is ≤ `x` in every coordinate.
    pub fn weakly_dominated(&self, x: &[f64]) -> bool {
        self.search(x, false)
    }

    /// Some stored point Pareto-dominates `x`.
    pub fn dominated(&self, x: &[f64]) -> bool {
        self.search(x, true)
    }
}
