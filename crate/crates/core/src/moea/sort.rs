use super::dominance::dominates;

/// Deb's fast non-dominated sort. Returns fronts of indices, best first;
/// every index appears exactly once. Indices inside a front are ascending.
pub fn fast_nondominated_sort<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (points[i].as_ref(), points[j].as_ref());
            if dominates(a, b) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if dominates(b, a) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Front index of every point.
pub fn nondominated_ranks<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let mut rank = vec![0; points.len()];
    for (r, front) in fast_nondominated_sort(points).iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

/// NSGA-II crowding distance. Boundary points of each objective score
/// `+inf`; an objective with zero spread adds nothing to interior points.
pub fn crowding_distance<P: AsRef<[f64]>>(front: &[P]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let val = |i: usize| front[i].as_ref()[k];
        order.sort_by(|&a, &b| val(a).total_cmp(&val(b)));
        let lo = val(order[0]);
        let hi = val(order[n - 1]);
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let i = order[w];
            dist[i] += (val(order[w + 1]) - val(order[w - 1])) / span;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_example() {
        let pts = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        assert_eq!(
            fast_nondominated_sort(&pts),
            vec![vec![0], vec![1, 2], vec![3]]
        );
        assert_eq!(nondominated_ranks(&pts), vec![0, 1, 1, 2]);
    }

    #[test]
    fn incomparable_single_front() {
        let pts: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 10.0 - i as f64]).collect();
        assert_eq!(fast_nondominated_sort(&pts).len(), 1);
    }

    #[test]
    fn crowding_examples() {
        assert_eq!(
            crowding_distance(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            vec![f64::INFINITY; 2]
        );
        let d = crowding_distance(&[vec![0.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.0]]);
        assert_eq!(d[1], 2.0);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        // second objective has zero spread
        let d = crowding_distance(&[vec![0.0, 5.0], vec![1.0, 5.0], vec![3.0, 5.0]]);
        assert_eq!(d[1], 1.0);
    }
}
