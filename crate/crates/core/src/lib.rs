//! Many-objective evolutionary search for medium-PRF pulse-Doppler radar
//! Pulse Repetition Interval (PRI) sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`radar`] evaluates a PRI vector into nine waveform objectives
//!   (decodability and blindness tolerances, dwell time).
//! * [`moea`] holds the shared evolutionary machinery: dominance, sorting,
//!   variation operators and the generational loop.
//! * [`algorithms`] implements the six environmental-selection strategies
//!   (NSGA-II, NSGA-III, IBEA, GrEA, MSOPS-II, θ-DEA).
//! * [`metrics`] computes quality indicators on scaled objective sets.
//! * [`archive`] records evaluations, builds non-dominated sets and the
//!   empirical Pareto front, and reads/writes the on-disk formats.
//! * [`harness`] drives complete experiments (`run`, `merge`, `metrics`,
//!   `filter`, `report`) and is what the `mprf` binary wraps.
//!
//! Data-parallel loops (batch evaluation, Monte Carlo hypervolume,
//! non-dominated filtering, nearest-neighbour distances) go through
//! [`Execution`]. With the default `parallel` feature they use rayon;
//! without it every path runs sequentially and produces identical results.

pub mod algorithms;
pub mod archive;
mod error;
mod exec;
pub mod harness;
pub mod metrics;
pub mod moea;
pub mod radar;

pub use error::{Error, Result};
pub use exec::Execution;
