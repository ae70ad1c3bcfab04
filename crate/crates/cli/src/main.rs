use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mprf::algorithms::AlgorithmId;
use mprf::harness::{
    cmd_filter, cmd_merge, cmd_metrics, cmd_report, cmd_run, exit_code, FilterOptions,
    ReportOptions, RunConfig,
};
use mprf::Execution;

#[derive(Parser)]
#[command(name = "mprf", version, about = "Many-objective PRI search for medium-PRF radar")]
struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algorithms and write evaluation logs and non-dominated sets.
    Run(RunArgs),
    /// Merge point sets into the best set.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare point sets against a best set.
    Metrics {
        #[arg(required = true)]
        sets: Vec<PathBuf>,
        #[arg(long)]
        best: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Config file; only its [metrics] section is used.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Select records from a point set.
    Filter {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        realistic: bool,
        #[arg(long)]
        dwell_min: Option<f64>,
        #[arg(long)]
        dwell_max: Option<f64>,
        /// PRI file; keeps the record nearest to each of its rows.
        #[arg(long)]
        closest_to: Option<PathBuf>,
    },
    /// Histogram and quartile data for plotting.
    Report {
        best: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[arg(long)]
        subset: Option<PathBuf>,
        #[arg(long)]
        highlight: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithm ids, or "all".
    #[arg(long, value_parser = parse_algos)]
    algo: Option<AlgoList>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    evals: Option<u64>,
    #[arg(long)]
    runs: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct AlgoList(Vec<AlgorithmId>);

fn parse_algos(s: &str) -> Result<AlgoList, String> {
    if s == "all" {
        return Ok(AlgoList(AlgorithmId::ALL.to_vec()));
    }
    s.split(',')
        .map(|a| a.trim().parse::<AlgorithmId>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(AlgoList)
}

fn run_config(args: RunArgs) -> mprf::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let r = &mut cfg.run;
    if let Some(AlgoList(a)) = args.algo {
        r.algorithms = a;
    }
    r.dim = args.dim.unwrap_or(r.dim);
    r.popsize = args.pop.unwrap_or(r.popsize);
    r.evaluations = args.evals.unwrap_or(r.evaluations);
    r.runs = args.runs.unwrap_or(r.runs);
    r.seed = args.seed.unwrap_or(r.seed);
    if let Some(o) = args.out {
        r.out = o;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> mprf::Result<()> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Run(args) => {
            let cfg = run_config(args)?;
            let summary = cmd_run(&cfg, exec)?;
            println!("model {}", summary.model_hash);
            for a in &summary.algorithms {
                println!(
                    "{:<10} evaluations {:>8}  nd {:>7}  wall {:>8.2}s  -> {}",
                    a.algo.as_str(),
                    a.evaluations,
                    a.nd_count,
                    a.wall_s,
                    a.nd_set.display()
                );
            }
        }
        Command::Merge { inputs, out } => {
            let best = cmd_merge(&inputs, &out, exec)?;
            let total: usize = best.records.len();
            println!("best set: {total} records -> {}", out.display());
        }
        Command::Metrics {
            sets,
            best,
            out,
            config,
            samples,
            seed,
        } => {
            let mut mc = match config {
                Some(p) => RunConfig::load(&p)?.metrics,
                None => Default::default(),
            };
            mc.samples = samples.unwrap_or(mc.samples);
            mc.seed = seed.unwrap_or(mc.seed);
            let report = cmd_metrics(&sets, &best, &mc, &out, exec)?;
            println!("best set: {} records", report.best.size);
            for a in &report.algorithms {
                let hv: Vec<String> = a
                    .hv
                    .iter()
                    .map(|h| format!("HV{}={:.4e} ({:.1}%)", h.c, h.value, 100.0 * h.ratio))
                    .collect();
                println!(
                    "{:<10} #P {:>7}  #(P∩B) {:>7} ({:.1}%)  {}  GD {:.4e}  IGD {:.4e}",
                    a.name,
                    a.size,
                    a.survivors,
                    100.0 * a.survivor_ratio,
                    hv.join("  "),
                    a.gd,
                    a.igd
                );
            }
        }
        Command::Filter {
            input,
            out,
            realistic,
            dwell_min,
            dwell_max,
            closest_to,
        } => {
            let opts = FilterOptions {
                realistic,
                dwell_min,
                dwell_max,
                closest_to,
            };
            let res = cmd_filter(&input, &opts, &out)?;
            for c in &res.closest {
                println!(
                    "query {}: {} run {} eval {} at distance {:.4}",
                    c.query, c.algo, c.run, c.eval, c.distance
                );
            }
            println!("{} records -> {}", res.set.len(), out.display());
        }
        Command::Report {
            best,
            out,
            bins,
            subset,
            highlight,
        } => {
            let opts = ReportOptions {
                bins,
                subset,
                highlight,
                out_dir: out.clone(),
            };
            cmd_report(&best, &opts)?;
            println!("report -> {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

