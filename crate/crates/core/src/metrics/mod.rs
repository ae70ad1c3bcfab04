//! Quality indicators on scaled objective sets: hypervolume (Monte Carlo and
//! exact for up to four objectives), GD, IGD and survivor counts.

mod bounds;
mod distance;
mod hv;
mod index;
mod report;

pub use bounds::ScalingBounds;
pub use distance::{contribution_counts, gd, igd, Contribution, NearestIndex};
pub use hv::{hypervolume_exact, hypervolume_mc, hypervolume_mc_shared, HvEstimate, MC_BLOCK};
pub use index::DominanceIndex;
pub use report::{compute_metrics, AlgorithmMetrics, BestMetrics, HvEntry, MetricsConfig, MetricsReport};

use crate::{Error, Result};

/// Common dimension of a collection of point sets.
pub(crate) fn common_dim<P: AsRef<[f64]>>(sets: &[&[P]]) -> Result<Option<usize>> {
    let mut dim = None;
    for set in sets {
        for p in set.iter() {
            let d = p.as_ref().len();
            match dim {
                None => dim = Some(d),
                Some(e) if e != d => {
                    return Err(Error::InvalidArgument(format!(
                        "points of dimension {e} and {d} mixed"
                    )))
                }
                _ => {}
            }
        }
    }
    if dim == Some(0) {
        return Err(Error::InvalidArgument("zero-dimensional points".into()));
    }
    Ok(dim)
}
