use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use super::config::RunConfig;
use crate::algorithms::{build_strategy, AlgorithmId};
use crate::archive::{write_log_csv, write_point_set, EvaluationRecord, PointSet, PointSetMeta};
use crate::moea::{run_algorithm, EngineConfig, Individual, RandomStream};
use crate::radar::{quantize, ObjectiveVector, RadarModel, RadarProblem};
use crate::{Error, Execution, Result};

/// Runs one algorithm once with seed `seed + run` and returns every
/// evaluation in order.
pub fn run_algorithm_records(
    cfg: &RunConfig,
    model: &RadarModel,
    algo: AlgorithmId,
    run: u32,
    exec: Execution,
) -> Result<Vec<EvaluationRecord>> {
    let problem = RadarProblem::new(model.clone(), cfg.run.dim)?;
    let seed = cfg.run.seed + run as u64;
    let mut rng = RandomStream::new(seed);
    let mut strategy = build_strategy(algo, &cfg.algorithm, 9, cfg.run.popsize, &mut rng)?;
    let engine = EngineConfig {
        popsize: cfg.run.popsize,
        budget: cfg.run.evaluations,
        variation: cfg.variation.clone(),
        exec,
    };
    let params = model.params();
    let mut records = Vec::with_capacity(cfg.run.evaluations as usize);
    let mut recorder = |ind: &Individual| {
        let pri = quantize(&ind.decision, params).expect("decision has the problem dimension");
        let v = ObjectiveVector::from_minimization(&ind.objectives);
        records.push(EvaluationRecord::new(run, algo.as_str(), ind.eval_index, pri.into_ticks(), &v));
    };
    run_algorithm(strategy.as_mut(), &problem, &engine, &mut rng, &mut recorder)?;
    Ok(records)
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmSummary {
    pub algo: AlgorithmId,
    pub evaluations: u64,
    pub nd_count: usize,
    pub wall_s: f64,
    pub logs: Vec<PathBuf>,
    pub nd_set: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub model_hash: String,
    pub algorithms: Vec<AlgorithmSummary>,
}

#[derive(Serialize)]
struct RunTiming {
    run: u32,
    seed: u64,
    wall_s: f64,
}

/// Executes every (algorithm, run) pair, writes one log per run,
/// `{algo}_nd.json` with the non-dominated set over all runs and a
/// `{algo}_timing.json` sidecar. Wall times only appear in the sidecar.
pub fn cmd_run(cfg: &RunConfig, exec: Execution) -> Result<RunSummary> {
    cfg.validate()?;
    let model_cfg = cfg.model();
    let model = RadarModel::new(model_cfg.clone())?;
    let hash = model_cfg.hash();
    let out = &cfg.run.out;
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let config_path = out.join("config.toml");
    fs::write(&config_path, cfg.to_toml()).map_err(|e| Error::io(&config_path, e))?;

    let jobs: Vec<(AlgorithmId, u32)> = cfg
        .run
        .algorithms
        .iter()
        .flat_map(|&a| (0..cfg.run.runs).map(move |k| (a, k)))
        .collect();
    let results = exec.map(&jobs, |&(algo, k)| -> Result<(PointSet, f64)> {
        let start = Instant::now();
        let seed = cfg.run.seed + k as u64;
        let records = run_algorithm_records(cfg, &model, algo, k, exec)?;
        let name = format!("{}_run{k}.csv", algo.as_str());
        let path = out.join(&name);
        let comment = [format!("model_hash={hash} algo={} run={k} seed={seed}", algo.as_str())];
        write_log_csv(&path, &records, &comment)?;
        let mut meta = PointSetMeta::new(&model_cfg, cfg.run.dim);
        meta.provenance.push(name);
        meta.seeds.push(seed);
        let nd = PointSet::new(meta, records).nd_filtered(Execution::Sequential);
        Ok((nd, start.elapsed().as_secs_f64()))
    });

    let mut results = results.into_iter();
    let mut summaries = Vec::new();
    for &algo in &cfg.run.algorithms {
        let mut sets = Vec::new();
        let mut timings = Vec::new();
        let mut logs = Vec::new();
        for k in 0..cfg.run.runs {
            let (set, wall) = results.next().expect("one result per job")?;
            logs.push(out.join(&set.meta.provenance[0]));
            timings.push(RunTiming {
                run: k,
                seed: cfg.run.seed + k as u64,
                wall_s: wall,
            });
            sets.push(set);
        }
        let merged = crate::archive::merge_best(&sets, exec)?;
        let nd_path = out.join(format!("{}_nd.json", algo.as_str()));
        write_point_set(&nd_path, &merged)?;
        let timing_path = out.join(format!("{}_timing.json", algo.as_str()));
        let timing = serde_json::json!({ "algo": algo, "runs": timings });
        fs::write(&timing_path, format!("{timing:#}\n")).map_err(|e| Error::io(&timing_path, e))?;
        summaries.push(AlgorithmSummary {
            algo,
            evaluations: cfg.run.evaluations * cfg.run.runs as u64,
            nd_count: merged.len(),
            wall_s: timings.iter().map(|t| t.wall_s).sum(),
            logs,
            nd_set: nd_path,
        });
    }
    Ok(RunSummary {
        model_hash: hash,
        algorithms: summaries,
    })
}
