//! Environmental-selection strategies plugged into [`crate::moea::run_algorithm`].

mod common;
mod grea;
mod ibea;
mod msops2;
mod nsga2;
mod nsga3;
pub mod refpoints;
mod theta_dea;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::moea::{RandomStream, Strategy};
use crate::{Error, Result};

pub use common::{normalize_hyperplane, normalize_minmax, perpendicular_distance};
pub use grea::{grid_coordinates, Grea, GridSpec};
pub use ibea::{additive_epsilon, Ibea, IbeaFitness};
pub use msops2::{msops_ranking, msops_targets, Msops2};
pub use nsga2::Nsga2;
pub use nsga3::{associate, nsga3_niching, Nsga3};
pub use refpoints::{das_dennis, two_layer, ReferencePointSet};
pub use theta_dea::{theta_order, ThetaDea, ThetaKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmId {
    #[serde(rename = "nsga2")]
    Nsga2,
    #[serde(rename = "nsga3")]
    Nsga3,
    #[serde(rename = "ibea")]
    Ibea,
    #[serde(rename = "grea")]
    Grea,
    #[serde(rename = "msops2")]
    Msops2,
    #[serde(rename = "theta-dea")]
    ThetaDea,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Nsga2,
        AlgorithmId::Nsga3,
        AlgorithmId::Ibea,
        AlgorithmId::Grea,
        AlgorithmId::Msops2,
        AlgorithmId::ThetaDea,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Nsga2 => "nsga2",
            AlgorithmId::Nsga3 => "nsga3",
            AlgorithmId::Ibea => "ibea",
            AlgorithmId::Grea => "grea",
            AlgorithmId::Msops2 => "msops2",
            AlgorithmId::ThetaDea => "theta-dea",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown algorithm '{s}' (expected one of nsga2, nsga3, ibea, grea, msops2, theta-dea)"
                ))
            })
    }
}

/// Algorithm hyperparameters. Defaults follow the reference benchmark setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmParams {
    /// IBEA fitness scaling factor.
    pub ibea_kappa: f64,
    /// GrEA grid divisions per objective.
    pub grea_div: usize,
    /// θ-DEA penalty parameter.
    pub theta: f64,
    /// Das–Dennis layers for NSGA-III and θ-DEA: outer divisions, inner
    /// divisions (0 disables the inner layer) and inner shrink factor.
    pub ref_outer_h: usize,
    pub ref_inner_h: usize,
    pub ref_inner_shrink: f64,
    /// MSOPS-II target vector count.
    pub msops_targets: usize,
    /// Exponent of the cosine in the MSOPS-II vector-angle distance.
    pub msops_angle_exponent: i32,
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        AlgorithmParams {
            ibea_kappa: 0.05,
            grea_div: 10,
            theta: 5.0,
            ref_outer_h: 2,
            ref_inner_h: 2,
            ref_inner_shrink: 0.5,
            msops_targets: 100,
            msops_angle_exponent: 100,
        }
    }
}

impl AlgorithmParams {
    pub fn reference_points(&self, m: usize) -> Result<ReferencePointSet> {
        if self.ref_outer_h == 0 {
            return Err(Error::Config("ref_outer_h must be positive".into()));
        }
        if self.ref_inner_h == 0 {
            Ok(das_dennis(m, self.ref_outer_h))
        } else {
            Ok(two_layer(
                m,
                self.ref_outer_h,
                self.ref_inner_h,
                self.ref_inner_shrink,
            ))
        }
    }
}

/// A strategy that can be moved to a worker thread.
pub type BoxedStrategy = Box<dyn Strategy + Send>;

/// Builds a strategy for `num_objectives` objectives and population size
/// `popsize`, rejecting inconsistent settings before any evaluation happens.
pub fn build_strategy(
    id: AlgorithmId,
    params: &AlgorithmParams,
    num_objectives: usize,
    popsize: usize,
    rng: &mut RandomStream,
) -> Result<BoxedStrategy> {
    if num_objectives < 2 {
        return Err(Error::Config("need at least two objectives".into()));
    }
    Ok(match id {
        AlgorithmId::Nsga2 => Box::new(Nsga2::default()),
        AlgorithmId::Nsga3 | AlgorithmId::ThetaDea => {
            let refs = params.reference_points(num_objectives)?;
            if refs.len() > popsize {
                return Err(Error::Config(format!(
                    "{} reference points exceed the population size {popsize}",
                    refs.len()
                )));
            }
            if id == AlgorithmId::Nsga3 {
                Box::new(Nsga3::new(refs))
            } else {
                if !(params.theta >= 0.0) {
                    return Err(Error::Config("theta must be nonnegative".into()));
                }
                Box::new(ThetaDea::new(refs, params.theta))
            }
        }
        AlgorithmId::Ibea => {
            if !(params.ibea_kappa > 0.0) {
                return Err(Error::Config("ibea_kappa must be positive".into()));
            }
            Box::new(Ibea::new(params.ibea_kappa))
        }
        AlgorithmId::Grea => {
            if params.grea_div < 2 {
                return Err(Error::Config("grea_div must be at least 2".into()));
            }
            Box::new(Grea::new(params.grea_div))
        }
        AlgorithmId::Msops2 => {
            if params.msops_targets == 0 {
                return Err(Error::Config("msops_targets must be positive".into()));
            }
            let targets = msops_targets(num_objectives, params.msops_targets, rng);
            Box::new(Msops2::new(targets, params.msops_angle_exponent))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in AlgorithmId::ALL {
            assert_eq!(id.as_str().parse::<AlgorithmId>().unwrap(), id);
        }
        assert!("spea2".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn reference_set_must_fit_population() {
        let mut rng = RandomStream::new(0);
        let p = AlgorithmParams::default();
        assert_eq!(p.reference_points(9).unwrap().len(), 90);
        assert!(build_strategy(AlgorithmId::Nsga3, &p, 9, 100, &mut rng).is_ok());
        assert!(matches!(
            build_strategy(AlgorithmId::Nsga3, &p, 9, 50, &mut rng),
            Err(Error::Config(_))
        ));
        assert!(build_strategy(AlgorithmId::ThetaDea, &p, 9, 89, &mut rng).is_err());
    }
}
