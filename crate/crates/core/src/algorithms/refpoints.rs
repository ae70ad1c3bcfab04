//! Structured reference directions on the unit simplex.

/// Weight vectors on the unit simplex with the layer each came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePointSet {
    pub points: Vec<Vec<f64>>,
    /// `(divisions, shrink, count)` per layer, outer layer first.
    pub layers: Vec<(usize, f64, usize)>,
}

impl ReferencePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

/// All compositions of `h` into `m` nonnegative parts, scaled by `1/h`.
/// There are `C(h + m - 1, m - 1)` of them.
pub fn das_dennis(m: usize, h: usize) -> ReferencePointSet {
    assert!(m >= 1 && h >= 1);
    let mut points = Vec::new();
    let mut current = vec![0usize; m];
    compositions(h, 0, &mut current, &mut points, h);
    let count = points.len();
    ReferencePointSet {
        points,
        layers: vec![(h, 1.0, count)],
    }
}

fn compositions(left: usize, idx: usize, cur: &mut [usize], out: &mut Vec<Vec<f64>>, h: usize) {
    let m = cur.len();
    if idx == m - 1 {
        cur[idx] = left;
        out.push(cur.iter().map(|&c| c as f64 / h as f64).collect());
        return;
    }
    for take in (0..=left).rev() {
        cur[idx] = take;
        compositions(left - take, idx + 1, cur, out, h);
    }
}

/// Outer Das–Dennis layer plus an inner layer pulled towards the simplex
/// centre: `p' = (1 - shrink) / m + shrink * p`.
pub fn two_layer(m: usize, outer_h: usize, inner_h: usize, shrink: f64) -> ReferencePointSet {
    let outer = das_dennis(m, outer_h);
    let inner = das_dennis(m, inner_h);
    let centre = (1.0 - shrink) / m as f64;
    let mut points = outer.points;
    points.extend(
        inner
            .points
            .iter()
            .map(|p| p.iter().map(|&v| centre + shrink * v).collect::<Vec<_>>()),
    );
    ReferencePointSet {
        layers: vec![
            (outer_h, 1.0, outer.layers[0].2),
            (inner_h, shrink, inner.layers[0].2),
        ],
        points,
    }
}
