use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::record::EvaluationRecord;
use super::set::{PointSet, PointSetMeta};
use crate::radar::{PriVector, RadarModel, RadarParams, NUM_MARGINS};
use crate::{Error, Result};

/// Header of an evaluation log with `dim` PRIs.
pub fn log_header(dim: usize) -> String {
    let mut h = String::from("run,algo,eval");
    for i in 1..=dim {
        write!(h, ",x{i}").unwrap();
    }
    for i in 1..=NUM_MARGINS {
        write!(h, ",m{i}").unwrap();
    }
    h.push_str(",dwell_ms");
    h
}

/// One log line without the newline. Floats carry 17 significant digits so
/// they parse back to the same value.
pub fn format_log_row(r: &EvaluationRecord) -> String {
    let mut s = format!("{},{},{}", r.run, r.algo, r.eval);
    for t in &r.pri {
        write!(s, ",{t}").unwrap();
    }
    for m in &r.margins {
        write!(s, ",{m:.16e}").unwrap();
    }
    write!(s, ",{:.16e}", r.dwell_ms).unwrap();
    s
}

/// Writes a log; `comment` lines go first, prefixed with `# `.
pub fn write_log_csv(path: &Path, records: &[EvaluationRecord], comment: &[String]) -> Result<()> {
    let dim = records.first().map_or(0, |r| r.pri.len());
    let mut out = String::new();
    for c in comment {
        writeln!(out, "# {c}").unwrap();
    }
    out.push_str(&log_header(dim));
    out.push('\n');
    for r in records {
        out.push_str(&format_log_row(r));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn read_log_csv(path: &Path) -> Result<Vec<EvaluationRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut dim = None;
    let mut records = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let Some(d) = dim else {
            let d = fields.len().saturating_sub(3 + NUM_MARGINS + 1);
            if line != log_header(d) || d == 0 {
                return Err(Error::parse(path, line_no, "unexpected log header"));
            }
            dim = Some(d);
            continue;
        };
        if fields.len() != 3 + d + NUM_MARGINS + 1 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected {} fields, found {}", 3 + d + NUM_MARGINS + 1, fields.len()),
            ));
        }
        let bad = |what: &str, v: &str| Error::parse(path, line_no, format!("invalid {what} '{v}'"));
        let run = fields[0].parse().map_err(|_| bad("run", fields[0]))?;
        let eval = fields[2].parse().map_err(|_| bad("eval", fields[2]))?;
        let pri = fields[3..3 + d]
            .iter()
            .map(|v| v.parse::<u32>().map_err(|_| bad("PRI", v)))
            .collect::<Result<Vec<_>>>()?;
        let mut floats = fields[3 + d..]
            .iter()
            .map(|v| v.parse::<f64>().map_err(|_| bad("value", v)));
        let mut margins = [0.0; NUM_MARGINS];
        for m in &mut margins {
            *m = floats.next().expect("field count checked")?;
        }
        let dwell_ms = floats.next().expect("field count checked")?;
        records.push(EvaluationRecord {
            run,
            algo: fields[1].to_string(),
            eval,
            pri,
            margins,
            dwell_ms,
            also: Vec::new(),
        });
    }
    if dim.is_none() {
        return Err(Error::parse(path, 1, "missing log header"));
    }
    Ok(records)
}

pub fn write_point_set(path: &Path, set: &PointSet) -> Result<()> {
    let mut json = serde_json::to_string_pretty(set).map_err(|e| Error::Json {
        path: path.into(),
        source: e,
    })?;
    json.push('\n');
    fs::write(path, json).map_err(|e| Error::io(path, e))
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.into(),
        source: e,
    })
}

/// Unit declared in a PRI file header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriUnit {
    Tick,
    Micro,
}

impl PriUnit {
    fn label(self) -> &'static str {
        match self {
            PriUnit::Tick => "0.1us",
            PriUnit::Micro => "us",
        }
    }

    fn ticks_per_unit(self) -> f64 {
        match self {
            PriUnit::Tick => 1.0,
            PriUnit::Micro => 10.0,
        }
    }
}

/// Reads comma-separated PRI rows under a `# unit: 0.1us` or `# unit: us`
/// header. Values off the 0.1 µs grid or outside the PRI bounds are errors;
/// the latter mention the other unit when the value would fit it.
pub fn read_pri_file(path: &Path, params: &RadarParams) -> Result<Vec<PriVector>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (lo, hi) = params.tick_bounds();
    let mut unit = None;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(u) = c.trim().strip_prefix("unit:") {
                unit = Some(match u.trim() {
                    "0.1us" => PriUnit::Tick,
                    "us" => PriUnit::Micro,
                    other => return Err(Error::parse(path, line_no, format!("unknown unit '{other}'"))),
                });
            }
            continue;
        }
        let Some(u) = unit else {
            return Err(Error::parse(path, line_no, "PRI row before the '# unit:' header"));
        };
        let mut ticks = Vec::new();
        for v in line.split(',') {
            let v = v.trim();
            let x: f64 = v
                .parse()
                .map_err(|_| Error::parse(path, line_no, format!("invalid PRI '{v}'")))?;
            let t = x * u.ticks_per_unit();
            let r = t.round();
            if !((t - r).abs() <= 1e-6) {
                return Err(Error::parse(path, line_no, format!("{v} is not on the 0.1 us grid")));
            }
            if r < lo as f64 || r > hi as f64 {
                let other = match u {
                    PriUnit::Tick => PriUnit::Micro,
                    PriUnit::Micro => PriUnit::Tick,
                };
                let alt = x * other.ticks_per_unit();
                let hint = if alt >= lo as f64 && alt <= hi as f64 {
                    format!("; the file declares '{}' but the values look like '{}'", u.label(), other.label())
                } else {
                    String::new()
                };
                return Err(Error::parse(path, line_no, format!("PRI {v} out of bounds{hint}")));
            }
            ticks.push(r as u32);
        }
        let pri = PriVector::from_ticks(ticks, params)
            .map_err(|e| Error::parse(path, line_no, e.to_string()))?;
        rows.push(pri);
    }
    if unit.is_none() {
        return Err(Error::parse(path, 1, "missing '# unit:' header"));
    }
    Ok(rows)
}

pub fn write_pri_file(path: &Path, rows: &[PriVector], unit: PriUnit) -> Result<()> {
    let mut out = format!("# unit: {}\n", unit.label());
    for r in rows {
        let vals: Vec<String> = r
            .ticks()
            .iter()
            .map(|&t| match unit {
                PriUnit::Tick => t.to_string(),
                PriUnit::Micro => format!("{}", t as f64 / 10.0),
            })
            .collect();
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Evaluates an external PRI file into a point set labelled `algo`.
pub fn import_pri_file(path: &Path, model: &RadarModel, algo: &str) -> Result<PointSet> {
    let rows = read_pri_file(path, model.params())?;
    let dim = rows.first().map_or(0, PriVector::dim);
    if let Some((k, _)) = rows.iter().enumerate().find(|(_, r)| r.dim() != dim) {
        return Err(Error::parse(path, k + 1, "rows have different lengths"));
    }
    let records = rows
        .into_iter()
        .enumerate()
        .map(|(k, pri)| {
            let v = model.evaluate(&pri);
            EvaluationRecord::new(0, algo, k as u64, pri.into_ticks(), &v)
        })
        .collect();
    let mut meta = PointSetMeta::new(model.config(), dim);
    meta.provenance.push(path.display().to_string());
    Ok(PointSet::new(meta, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radar::{ModelConfig, ObjectiveVector};

    #[test]
    fn log_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        let v = ObjectiveVector {
            margins: [0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, 0.0, 2.5, 7.0, f64::MIN_POSITIVE],
            dwell_ms: 46.52099999999999,
        };
        let recs = vec![
            EvaluationRecord::new(1, "ibea", 0, vec![510, 570, 630, 660], &v),
            EvaluationRecord::new(1, "ibea", 1, vec![1500, 500, 999, 1000], &v),
        ];
        write_log_csv(&path, &recs, &["model_hash=abc".into()]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("run,algo,eval,x1,x2,x3,x4,m1"));
        assert_eq!(read_log_csv(&path).unwrap(), recs);
    }

    #[test]
    fn malformed_log_row_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        let mut text = log_header(4);
        text.push_str("\n0,a,0,500,500,500,500,1,1,1,1,1,1,1,1,40\n0,a,1,500,x,500,500,1,1,1,1,1,1,1,1,40\n");
        fs::write(&path, text).unwrap();
        match read_log_csv(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pri_units_and_mismatch() {
        let params = RadarParams::default();
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.txt");
        fs::write(&a, "# unit: us\n51,57,63,66,69,78,90,96\n").unwrap();
        let rows = read_pri_file(&a, &params).unwrap();
        assert_eq!(rows[0].ticks(), &[510, 570, 630, 660, 690, 780, 900, 960]);

        let b = dir.path().join("b.txt");
        write_pri_file(&b, &rows, PriUnit::Tick).unwrap();
        assert_eq!(read_pri_file(&b, &params).unwrap(), rows);

        fs::write(&b, "# unit: 0.1us\n51,57,63,66\n").unwrap();
        let err = read_pri_file(&b, &params).unwrap_err().to_string();
        assert!(err.contains("look like 'us'"), "{err}");
        fs::write(&b, "# unit: us\n510,570,630,660\n").unwrap();
        assert!(read_pri_file(&b, &params).unwrap_err().to_string().contains("look like '0.1us'"));
        fs::write(&b, "# unit: 0.1us\n510,570\n").unwrap();
        assert!(matches!(read_pri_file(&b, &params), Err(Error::Parse { line: 2, .. })));
        fs::write(&b, "510,570,630,660\n").unwrap();
        assert!(read_pri_file(&b, &params).is_err());
    }

    #[test]
    fn imported_reference_vectors_have_published_dwell() {
        let model = RadarModel::new(ModelConfig::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        fs::write(
            &p,
            "# unit: 0.1us\n510,570,630,660,690,780,900,960\n510,530,590,620,690,720,910,940\n",
        )
        .unwrap();
        let set = import_pri_file(&p, &model, "external").unwrap();
        assert!((set.records[0].dwell_ms - 46.5).abs() <= 0.1);
        assert!((set.records[1].dwell_ms - 45.4).abs() <= 0.1);
        assert_eq!(set.meta.dim, 8);

        let js = dir.path().join("x.json");
        write_point_set(&js, &set).unwrap();
        assert_eq!(read_point_set(&js).unwrap(), set);
    }
}
