use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::archive::{
    closest_point, dwell_window_filter, merge_best, read_point_set, read_pri_file,
    realistic_filter, write_point_set, PointSet,
};
use crate::metrics::{compute_metrics, MetricsConfig, MetricsReport, ScalingBounds};
use crate::radar::{RadarModel, NUM_OBJECTIVES};
use crate::{Error, Execution, Result};

const OBJECTIVE_NAMES: [&str; NUM_OBJECTIVES] =
    ["m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8", "dwell_ms"];

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn check_same_model(sets: &[&PointSet]) -> Result<()> {
    if let Some(first) = sets.first() {
        for s in &sets[1..] {
            if s.meta.model_hash != first.meta.model_hash {
                return Err(Error::Incompatible(format!(
                    "model hash {} differs from {}",
                    s.meta.model_hash, first.meta.model_hash
                )));
            }
        }
    }
    Ok(())
}

/// Merges point-set files into the best set and writes it to `out`.
pub fn cmd_merge(inputs: &[PathBuf], out: &Path, exec: Execution) -> Result<PointSet> {
    let sets = inputs
        .iter()
        .map(|p| read_point_set(p))
        .collect::<Result<Vec<_>>>()?;
    let best = merge_best(&sets, exec)?;
    write_point_set(out, &best)?;
    Ok(best)
}

fn set_name(set: &PointSet, path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let algos: Vec<&str> = {
        let mut a: Vec<&str> = set.records.iter().map(|r| r.algo.as_str()).collect();
        a.sort_unstable();
        a.dedup();
        a
    };
    match algos.as_slice() {
        [one] => one.to_string(),
        _ => stem.trim_end_matches("_nd").to_string(),
    }
}

/// Scores each set against the best set and writes the JSON report.
pub fn cmd_metrics(
    sets: &[PathBuf],
    best: &Path,
    cfg: &MetricsConfig,
    out: &Path,
    exec: Execution,
) -> Result<MetricsReport> {
    let best_set = read_point_set(best)?;
    let inputs = sets
        .iter()
        .map(|p| read_point_set(p))
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<&PointSet> = vec![&best_set];
    all.extend(inputs.iter());
    check_same_model(&all)?;
    let named: Vec<(String, Vec<Vec<f64>>)> = inputs
        .iter()
        .zip(sets)
        .map(|(s, p)| (set_name(s, p), s.objectives()))
        .collect();
    let mut report = compute_metrics(&named, &best_set.objectives(), cfg, exec)?;
    report.model_hash = Some(best_set.meta.model_hash.clone());
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Json {
        path: out.into(),
        source: e,
    })?;
    write_text(out, &(json + "\n"))?;
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct FilterOptions {
    pub realistic: bool,
    pub dwell_min: Option<f64>,
    pub dwell_max: Option<f64>,
    /// PRI file; each row selects its nearest record in scaled objective
    /// space.
    pub closest_to: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosestMatch {
    pub query: usize,
    pub run: u32,
    pub algo: String,
    pub eval: u64,
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct FilterOutput {
    pub set: PointSet,
    pub closest: Vec<ClosestMatch>,
}

/// Applies the realistic filter, then the dwell window, then the nearest
/// record search, and writes the resulting set.
pub fn cmd_filter(input: &Path, opts: &FilterOptions, out: &Path) -> Result<FilterOutput> {
    let mut set = read_point_set(input)?;
    if opts.realistic {
        set = realistic_filter(&set);
    }
    if opts.dwell_min.is_some() || opts.dwell_max.is_some() {
        let lo = opts.dwell_min.unwrap_or(f64::NEG_INFINITY);
        let hi = opts.dwell_max.unwrap_or(f64::INFINITY);
        set = dwell_window_filter(&set, lo, hi)?;
    }
    let mut closest = Vec::new();
    if let Some(query) = &opts.closest_to {
        let model = RadarModel::new(set.meta.model.clone())?;
        let rows = read_pri_file(query, model.params())?;
        if set.is_empty() {
            return Err(Error::InvalidArgument("no records left to search".into()));
        }
        let bounds = match &set.meta.bounds {
            Some(b) => b.clone(),
            None => ScalingBounds::compute(&set.objectives())?,
        };
        let mut picked = Vec::new();
        for (q, pri) in rows.iter().enumerate() {
            let target = model.evaluate(pri).minimization();
            let (r, d) = closest_point(&set, &target, &bounds)?.expect("set is not empty");
            closest.push(ClosestMatch {
                query: q,
                run: r.run,
                algo: r.algo.clone(),
                eval: r.eval,
                distance: d,
            });
            if !picked.contains(r) {
                picked.push(r.clone());
            }
        }
        set.records = picked;
        set.meta.bounds = Some(bounds);
    }
    write_point_set(out, &set)?;
    Ok(FilterOutput { set, closest })
}

/// Equal-width bins over `[lo, hi]`; the last bin is closed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
}

pub fn histogram(values: &[f64], bins: usize) -> Histogram {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0; bins];
    let width = (hi - lo) / bins as f64;
    for &v in values {
        let k = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[k] += 1;
    }
    Histogram { lo, hi, counts }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Five-number summary with linear interpolation between order statistics.
pub fn quartiles(values: &[f64]) -> Quartiles {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let pos = q * (v.len() - 1) as f64;
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        if i + 1 < v.len() {
            v[i] + frac * (v[i + 1] - v[i])
        } else {
            v[i]
        }
    };
    Quartiles {
        min: v[0],
        q1: at(0.25),
        median: at(0.5),
        q3: at(0.75),
        max: v[v.len() - 1],
    }
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub bins: usize,
    /// Point set whose scaled quartiles are reported; defaults to the
    /// realistic subset itself.
    pub subset: Option<PathBuf>,
    /// PRI file of waveforms to place on the same scale.
    pub highlight: Option<PathBuf>,
    pub out_dir: PathBuf,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            bins: 50,
            subset: None,
            highlight: None,
            out_dir: PathBuf::from("report"),
        }
    }
}

fn original_rows(set: &PointSet) -> Vec<Vec<f64>> {
    set.records.iter().map(|r| r.objectives().original().to_vec()).collect()
}

fn column(rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k]).collect()
}

/// Writes `histograms.csv` over the realistic subset of `best` (original
/// objective signs), `quartiles.csv` for the subset scaled with that
/// subset's bounds, and `highlight.csv` when a highlight file is given.
pub fn cmd_report(best: &Path, opts: &ReportOptions) -> Result<()> {
    if opts.bins == 0 {
        return Err(Error::InvalidArgument("bins must be positive".into()));
    }
    let best_set = read_point_set(best)?;
    let plus = realistic_filter(&best_set);
    if plus.is_empty() {
        return Err(Error::InvalidArgument("the best set has no realistic record".into()));
    }
    let header = format!("# model_hash={} source={}\n", best_set.meta.model_hash, best.display());
    let rows = original_rows(&plus);

    let mut hist = header.clone();
    hist.push_str("objective,bin,lo,hi,count\n");
    for (k, name) in OBJECTIVE_NAMES.iter().enumerate() {
        let h = histogram(&column(&rows, k), opts.bins);
        let w = (h.hi - h.lo) / opts.bins as f64;
        for (b, c) in h.counts.iter().enumerate() {
            let lo = h.lo + b as f64 * w;
            let hi = if b + 1 == opts.bins { h.hi } else { h.lo + (b + 1) as f64 * w };
            writeln!(hist, "{name},{b},{lo:.16e},{hi:.16e},{c}").unwrap();
        }
    }
    write_text(&opts.out_dir.join("histograms.csv"), &hist)?;

    let bounds = ScalingBounds::compute(&rows)?;
    let subset_rows = match &opts.subset {
        Some(p) => {
            let s = read_point_set(p)?;
            check_same_model(&[&best_set, &s])?;
            original_rows(&s)
        }
        None => rows.clone(),
    };
    if subset_rows.is_empty() {
        return Err(Error::InvalidArgument("the subset is empty".into()));
    }
    let scaled = bounds.scale_all(&subset_rows);
    let mut quart = header.clone();
    quart.push_str("objective,min,q1,median,q3,max\n");
    for (k, name) in OBJECTIVE_NAMES.iter().enumerate() {
        let q = quartiles(&column(&scaled, k));
        writeln!(
            quart,
            "{name},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            q.min, q.q1, q.median, q.q3, q.max
        )
        .unwrap();
    }
    write_text(&opts.out_dir.join("quartiles.csv"), &quart)?;

    if let Some(h) = &opts.highlight {
        let model = RadarModel::new(best_set.meta.model.clone())?;
        let mut text = header;
        text.push_str("row,");
        text.push_str(&OBJECTIVE_NAMES.join(","));
        text.push('\n');
        for (i, pri) in read_pri_file(h, model.params())?.iter().enumerate() {
            let s = bounds.scale(&model.evaluate(pri).original());
            let vals: Vec<String> = s.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(text, "{i},{}", vals.join(",")).unwrap();
        }
        write_text(&opts.out_dir.join("highlight.csv"), &text)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_histogram_and_quartiles() {
        let h = histogram(&[1.0, 2.0, 4.0], 3);
        assert_eq!((h.lo, h.hi), (1.0, 4.0));
        assert_eq!(h.counts, vec![1, 1, 1]);
        let h = histogram(&[1.0, 2.0, 4.0], 2);
        assert_eq!(h.counts, vec![2, 1]);
        let h = histogram(&[3.0, 3.0], 4);
        assert_eq!(h.counts, vec![2, 0, 0, 0]);
        let q = quartiles(&[4.0, 1.0, 2.0]);
        assert_eq!((q.min, q.q1, q.median, q.q3, q.max), (1.0, 1.5, 2.0, 3.0, 4.0));
    }
}
