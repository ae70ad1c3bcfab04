use super::common::{binary_tournament, normalize_minmax, objective_rows};
use crate::moea::{Individual, RandomStream, Strategy};

/// Additive ε-indicator: the smallest shift of `a` that makes it weakly
/// dominate `b`.
pub fn additive_epsilon(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// ε-indicator fitness over a shrinking set, updated incrementally as
/// members are removed.
#[derive(Debug, Clone)]
pub struct IbeaFitness {
    n: usize,
    /// indicator[y * n + x] = I(y, x)
    indicator: Vec<f64>,
    scale: f64,
    alive: Vec<bool>,
    fitness: Vec<f64>,
}

impl IbeaFitness {
    /// `points` should already be normalised.
    pub fn new<P: AsRef<[f64]>>(points: &[P], kappa: f64) -> Self {
        let n = points.len();
        let mut indicator = vec![0.0; n * n];
        let mut cmax: f64 = 0.0;
        for y in 0..n {
            for x in 0..n {
                if x != y {
                    let v = additive_epsilon(points[y].as_ref(), points[x].as_ref());
                    indicator[y * n + x] = v;
                    cmax = cmax.max(v.abs());
                }
            }
        }
        let scale = if cmax > 0.0 { kappa * cmax } else { kappa };
        let mut f = IbeaFitness {
            n,
            indicator,
            scale,
            alive: vec![true; n],
            fitness: vec![0.0; n],
        };
        for x in 0..n {
            f.fitness[x] = f.from_scratch(x);
        }
        f
    }

    fn term(&self, y: usize, x: usize) -> f64 {
        (-self.indicator[y * self.n + x] / self.scale).exp()
    }

    pub fn fitness(&self, x: usize) -> f64 {
        self.fitness[x]
    }

    pub fn is_alive(&self, x: usize) -> bool {
        self.alive[x]
    }

    /// Fitness of `x` summed directly over the current members.
    pub fn from_scratch(&self, x: usize) -> f64 {
        (0..self.n)
            .filter(|&y| y != x && self.alive[y])
            .map(|y| -self.term(y, x))
            .sum()
    }

    /// Live member with the lowest fitness; ties go to the lowest index.
    pub fn worst(&self) -> Option<usize> {
        (0..self.n)
            .filter(|&x| self.alive[x])
            .min_by(|&a, &b| self.fitness[a].total_cmp(&self.fitness[b]))
    }

    /// Removes `x` and updates the fitness of the remaining members.
    pub fn remove(&mut self, x: usize) {
        assert!(self.alive[x], "member already removed");
        self.alive[x] = false;
        for z in 0..self.n {
            if self.alive[z] {
                self.fitness[z] += self.term(x, z);
            }
        }
    }
}

/// IBEA with the additive ε-indicator on min-max normalised objectives.
/// Mating is a binary tournament on fitness.
#[derive(Debug)]
pub struct Ibea {
    kappa: f64,
    fitness: Vec<f64>,
}

impl Ibea {
    pub fn new(kappa: f64) -> Self {
        Ibea {
            kappa,
            fitness: Vec::new(),
        }
    }
}

impl Strategy for Ibea {
    fn name(&self) -> &'static str {
        "ibea"
    }

    fn mating_pool(&mut self, pop: &[Individual], count: usize, rng: &mut RandomStream) -> Vec<usize> {
        let f = &self.fitness;
        binary_tournament(pop.len(), count, rng, |a, b| {
            if f[a] > f[b] {
                Some(true)
            } else if f[b] > f[a] {
                Some(false)
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
        let normalized = normalize_minmax(&objective_rows(&pop));
        let mut fit = IbeaFitness::new(&normalized, self.kappa);
        for _ in n..pop.len() {
            let w = fit.worst().expect("population larger than target");
            fit.remove(w);
        }
        self.fitness.clear();
        let mut next = Vec::with_capacity(n);
        for (i, ind) in pop.into_iter().enumerate() {
            if fit.is_alive(i) {
                self.fitness.push(fit.fitness(i));
                next.push(ind);
            }
        }
        next
    }
}
