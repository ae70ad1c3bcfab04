use crate::moea::{Individual, RandomStream};

/// Objectives of a population as borrowed rows.
pub(crate) fn objective_rows(pop: &[Individual]) -> Vec<&[f64]> {
    pop.iter().map(|i| i.objectives.as_slice()).collect()
}

/// Per-objective min-max normalisation; a zero-spread objective maps to 0.
pub fn normalize_minmax<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<f64>> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let m = first.as_ref().len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for p in points {
        for (k, &v) in p.as_ref().iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let span = hi[k] - lo[k];
                    if span > 0.0 {
                        (v - lo[k]) / span
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// NSGA-III normalisation: translate by the ideal point, then divide by the
/// intercepts of the hyperplane through the per-axis extreme points. Falls
/// back to per-objective maxima when the hyperplane is degenerate.
pub fn normalize_hyperplane<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<f64>> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let m = first.as_ref().len();
    let mut ideal = vec![f64::INFINITY; m];
    for p in points {
        for (k, &v) in p.as_ref().iter().enumerate() {
            ideal[k] = ideal[k].min(v);
        }
    }
    let translated: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.as_ref().iter().zip(&ideal).map(|(v, z)| v - z).collect())
        .collect();

    let extremes: Vec<&Vec<f64>> = (0..m)
        .map(|axis| {
            translated
                .iter()
                .min_by(|a, b| asf(a, axis).total_cmp(&asf(b, axis)))
                .expect("nonempty")
        })
        .collect();
    let maxima: Vec<f64> = (0..m)
        .map(|k| translated.iter().map(|t| t[k]).fold(0.0, f64::max))
        .collect();
    let a: Vec<Vec<f64>> = extremes.iter().map(|e| e.to_vec()).collect();
    let intercepts = solve(a, vec![1.0; m])
        .map(|b| b.iter().map(|&bi| 1.0 / bi).collect::<Vec<_>>())
        .filter(|ic| ic.iter().all(|&v| v.is_finite() && v > 1e-6))
        .unwrap_or(maxima);

    translated
        .into_iter()
        .map(|t| {
            t.iter()
                .zip(&intercepts)
                .map(|(&v, &a)| if a > 0.0 { v / a } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Achievement scalarising function with weight 1 on `axis`, 1e-6 elsewhere.
fn asf(t: &[f64], axis: usize) -> f64 {
    t.iter()
        .enumerate()
        .map(|(k, &v)| if k == axis { v } else { v / 1e-6 })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Distance from `p` to the line through the origin along `w`.
pub fn perpendicular_distance(p: &[f64], w: &[f64]) -> f64 {
    let ww: f64 = w.iter().map(|v| v * v).sum();
    let pw: f64 = p.iter().zip(w).map(|(a, b)| a * b).sum();
    let t = pw / ww;
    p.iter()
        .zip(w)
        .map(|(a, b)| (a - t * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Length of the projection of `p` onto `w`.
pub(crate) fn projection_length(p: &[f64], w: &[f64]) -> f64 {
    let norm: f64 = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    p.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / norm
}

/// Binary tournament. `better(a, b)` returns `Some(true)` if `a` wins,
/// `Some(false)` if `b` wins, `None` for a tie (broken by a coin flip).
pub(crate) fn binary_tournament<F>(n: usize, count: usize, rng: &mut RandomStream, better: F) -> Vec<usize>
where
    F: Fn(usize, usize) -> Option<bool>,
{
    (0..count)
        .map(|_| {
            let a = rng.below(n);
            let b = rng.below(n);
            match better(a, b) {
                Some(true) => a,
                Some(false) => b,
                None => {
                    if rng.coin() {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .collect()
}

pub(crate) fn random_pool(n: usize, count: usize, rng: &mut RandomStream) -> Vec<usize> {
    (0..count).map(|_| rng.below(n)).collect()
}
