//! Shared evolutionary machinery.

mod dominance;
mod engine;
mod rng;
mod sort;
mod variation;

pub use dominance::{dominates, try_dominates, weakly_dominates};
pub use engine::{
    run_algorithm, EngineConfig, Individual, NullRecorder, Problem, Recorder, Strategy, VecRecorder,
};
pub use rng::RandomStream;
pub use sort::{crowding_distance, fast_nondominated_sort, nondominated_ranks};
pub use variation::{polynomial_mutation, sbx_crossover, VariationConfig};
