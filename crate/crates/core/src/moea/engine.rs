use super::{polynomial_mutation, sbx_crossover, RandomStream, VariationConfig};
use crate::{Error, Execution, Result};

/// A black-box problem in minimisation form over the box `bounds()^D`.
/// Evaluation must be pure: it may run on several threads at once.
pub trait Problem: Sync {
    fn dimension(&self) -> usize;
    fn num_objectives(&self) -> usize;
    fn bounds(&self) -> (f64, f64);
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    /// 0-based position in the run's evaluation sequence.
    pub eval_index: u64,
}

impl AsRef<[f64]> for Individual {
    fn as_ref(&self) -> &[f64] {
        &self.objectives
    }
}

/// Receives every evaluation, in evaluation order, before selection sees it.
pub trait Recorder {
    fn record(&mut self, ind: &Individual);
}

impl<F: FnMut(&Individual)> Recorder for F {
    fn record(&mut self, ind: &Individual) {
        self(ind)
    }
}

#[derive(Debug, Default)]
pub struct VecRecorder(pub Vec<Individual>);

impl Recorder for VecRecorder {
    fn record(&mut self, ind: &Individual) {
        self.0.push(ind.clone());
    }
}

#[derive(Debug, Default)]
pub struct NullRecorder;

impl Recorder for NullRecorder {
    fn record(&mut self, _: &Individual) {}
}

/// Environmental and mating selection of one algorithm.
pub trait Strategy {
    fn name(&self) -> &'static str;

    /// Picks `count` parent indices from the current population.
    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream)
        -> Vec<usize>;

    /// Chooses `n` survivors from `pop` and `offspring`. Also refreshes any
    /// state `mating_pool` relies on for the returned population.
    fn select(
        &mut self,
        pop: Vec<Individual>,
        offspring: Vec<Individual>,
        n: usize,
        rng: &mut RandomStream,
    ) -> Vec<Individual>;
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub popsize: usize,
    /// Total number of evaluations, initial population included.
    pub budget: u64,
    pub variation: VariationConfig,
    pub exec: Execution,
}

/// Generational loop. The initial population is uniform in the problem box;
/// each generation breeds `popsize` offspring, except the last one, which is
/// truncated so that exactly `budget` evaluations are spent.
pub fn run_algorithm<P, S, R>(
    strategy: &mut S,
    problem: &P,
    cfg: &EngineConfig,
    rng: &mut RandomStream,
    recorder: &mut R,
) -> Result<Vec<Individual>>
where
    P: Problem + ?Sized,
    S: Strategy + ?Sized,
    R: Recorder + ?Sized,
{
    if cfg.popsize == 0 {
        return Err(Error::Config("population size must be positive".into()));
    }
    if cfg.budget < cfg.popsize as u64 {
        return Err(Error::Config(format!(
            "budget {} is smaller than the population size {}",
            cfg.budget, cfg.popsize
        )));
    }
    cfg.variation.validate()?;
    let bounds = problem.bounds();
    let dim = problem.dimension();
    let mut next_index = 0u64;

    let initial: Vec<Vec<f64>> = (0..cfg.popsize)
        .map(|_| (0..dim).map(|_| rng.uniform_in(bounds.0, bounds.1)).collect())
        .collect();
    let initial = evaluate_batch(problem, initial, cfg.exec, &mut next_index, recorder);
    let mut pop = strategy.select(initial, Vec::new(), cfg.popsize, rng);

    while next_index < cfg.budget {
        let n_off = (cfg.budget - next_index).min(cfg.popsize as u64) as usize;
        let pool = strategy.mating_pool(&pop, n_off + n_off % 2, rng);
        let mut children = Vec::with_capacity(n_off + 1);
        for pair in pool.chunks_exact(2) {
            let (c1, c2) = sbx_crossover(
                &pop[pair[0]].decision,
                &pop[pair[1]].decision,
                &cfg.variation,
                bounds,
                rng,
            );
            children.push(polynomial_mutation(&c1, &cfg.variation, bounds, rng));
            children.push(polynomial_mutation(&c2, &cfg.variation, bounds, rng));
        }
        children.truncate(n_off);
        let offspring = evaluate_batch(problem, children, cfg.exec, &mut next_index, recorder);
        pop = strategy.select(pop, offspring, cfg.popsize, rng);
    }
    Ok(pop)
}

fn evaluate_batch<P, R>(
    problem: &P,
    decisions: Vec<Vec<f64>>,
    exec: Execution,
    next_index: &mut u64,
    recorder: &mut R,
) -> Vec<Individual>
where
    P: Problem + ?Sized,
    R: Recorder + ?Sized,
{
    let objectives = exec.map(&decisions, |x| problem.evaluate(x));
    decisions
        .into_iter()
        .zip(objectives)
        .map(|(decision, objectives)| {
            let ind = Individual {
                decision,
                objectives,
                eval_index: *next_index,
            };
            *next_index += 1;
            recorder.record(&ind);
            ind
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-objective test problem: distance to 0 and to 1 of the first
    /// coordinate (scaled into [0, 1]).
    struct Line;

    impl Problem for Line {
        fn dimension(&self) -> usize {
            3
        }
        fn num_objectives(&self) -> usize {
            2
        }
        fn bounds(&self) -> (f64, f64) {
            (0.0, 1.0)
        }
        fn evaluate(&self, x: &[f64]) -> Vec<f64> {
            let g: f64 = x[1..].iter().map(|v| v * v).sum();
            vec![x[0] + g, 1.0 - x[0] + g]
        }
    }

    /// Keeps the first `n` of pop ++ offspring; random mating.
    struct KeepFirst;

    impl Strategy for KeepFirst {
        fn name(&self) -> &'static str {
            "keep-first"
        }
        fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
            (0..count).map(|_| rng.below(pop.len())).collect()
        }
        fn select(
            &mut self,
            mut pop: Vec<Individual>,
            offspring: Vec<Individual>,
            n: usize,
            _: &mut RandomStream,
        ) -> Vec<Individual> {
            pop.extend(offspring);
            pop.truncate(n);
            pop
        }
    }

    fn cfg(popsize: usize, budget: u64) -> EngineConfig {
        EngineConfig {
            popsize,
            budget,
            variation: VariationConfig::default(),
            exec: Execution::default(),
        }
    }

    #[test]
    fn budget_equal_popsize() {
        let mut rec = VecRecorder::default();
        let pop = run_algorithm(&mut KeepFirst, &Line, &cfg(10, 10), &mut RandomStream::new(1), &mut rec)
            .unwrap();
        assert_eq!(pop.len(), 10);
        assert_eq!(rec.0.len(), 10);
        assert_eq!(pop, rec.0);
    }

    #[test]
    fn exact_budget_with_truncated_generation() {
        let mut rec = VecRecorder::default();
        run_algorithm(&mut KeepFirst, &Line, &cfg(10, 37), &mut RandomStream::new(1), &mut rec).unwrap();
        assert_eq!(rec.0.len(), 37);
        let idx: Vec<u64> = rec.0.iter().map(|i| i.eval_index).collect();
        assert_eq!(idx, (0..37).collect::<Vec<_>>());
    }

    #[test]
    fn deterministic_and_mode_independent() {
        let run = |exec| {
            let mut rec = VecRecorder::default();
            let mut c = cfg(8, 100);
            c.exec = exec;
            run_algorithm(&mut KeepFirst, &Line, &c, &mut RandomStream::new(9), &mut rec).unwrap();
            rec.0
        };
        assert_eq!(run(Execution::Sequential), run(Execution::Sequential));
        assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }

    #[test]
    fn rejects_small_budget() {
        let r = run_algorithm(&mut KeepFirst, &Line, &cfg(10, 5), &mut RandomStream::new(1), &mut NullRecorder);
        assert!(matches!(r, Err(Error::Config(_))));
    }
}
