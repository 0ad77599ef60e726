//! Throttling estimation: minimize k + estimated expected capture time over
//! a range of cop counts, with the closed-form k suggestions and the
//! 2*sqrt(n) lower bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{
    estimate_capture_time, BoxedStrategy, CaptureStats, EngineError, GameConfig, Visibility,
};
use crate::gambler::GamblerDistribution;
use crate::graph::{DistanceMatrix, Graph, VertexId};
use crate::strategies::{
    CompleteRandom, CycleInnings, DistributedWmw1, PathTeam, StarDistributed, StrategyError,
    UnknownTraversal,
};

#[derive(Debug, Error)]
pub enum ThrottleError {
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("family {family} cannot run the {variant} variant")]
    VariantMismatch {
        family: &'static str,
        variant: &'static str,
    },
    #[error("family {0} supports only a single cop")]
    SingleCopOnly(&'static str),
    #[error("empty k range")]
    EmptyKRange,
}

/// Per-trial strategy builder handed to the estimator.
pub type TeamFactory = Box<dyn Fn() -> BoxedStrategy + Sync + Send>;

/// A k-parameterized way of building cop teams for throttling sweeps.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StrategyFamily {
    /// Unison sweep on paths (known gambler).
    PathTeam,
    /// Synchronized innings on cycles (no information needed).
    CycleInnings,
    /// Fresh random k-subsets on complete graphs (no information needed).
    CompleteRandom,
    /// Color-guided cover strategy (one observation, or known + simulated).
    DistributedWmw1,
    /// Star specialization of the color-guided strategy.
    StarDistributed,
    /// Repeated spanning walk; single cop only (no information needed).
    UnknownTraversal,
}

impl StrategyFamily {
    pub fn name(self) -> &'static str {
        match self {
            StrategyFamily::PathTeam => "path_team",
            StrategyFamily::CycleInnings => "cycle_innings",
            StrategyFamily::CompleteRandom => "complete_random",
            StrategyFamily::DistributedWmw1 => "distributed_wmw1",
            StrategyFamily::StarDistributed => "star_distributed",
            StrategyFamily::UnknownTraversal => "unknown_traversal",
        }
    }

    fn check_variant(self, variant: Visibility) -> Result<(), ThrottleError> {
        let ok = match self {
            StrategyFamily::PathTeam => matches!(variant, Visibility::Known),
            StrategyFamily::DistributedWmw1 | StrategyFamily::StarDistributed => {
                matches!(variant, Visibility::Known | Visibility::Observed(_))
            }
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(ThrottleError::VariantMismatch {
                family: self.name(),
                variant: variant.label(),
            })
        }
    }

    /// Builds the per-trial strategy factory and the team's start vertices.
    pub fn instantiate(
        self,
        graph: &Graph,
        k: usize,
    ) -> Result<(TeamFactory, Vec<VertexId>), ThrottleError> {
        assert!(k >= 1);
        match self {
            StrategyFamily::PathTeam => {
                let proto = PathTeam::new(graph, k)?;
                let starts = proto.starts();
                Ok((Box::new(move || Box::new(proto.clone())), starts))
            }
            StrategyFamily::CycleInnings => {
                let proto = CycleInnings::new(graph, k)?;
                let starts = proto.starts();
                Ok((Box::new(move || Box::new(proto.clone())), starts))
            }
            StrategyFamily::CompleteRandom => {
                let proto = CompleteRandom::new(graph, k)?;
                let starts = proto.starts();
                Ok((Box::new(move || Box::new(proto.clone())), starts))
            }
            StrategyFamily::DistributedWmw1 => {
                let proto = DistributedWmw1::for_cops(graph, k);
                let starts = proto.starts();
                Ok((Box::new(move || Box::new(proto.clone())), starts))
            }
            StrategyFamily::StarDistributed => {
                let proto = StarDistributed::new(graph, k)?;
                let starts = proto.starts();
                Ok((Box::new(move || Box::new(proto.clone())), starts))
            }
            StrategyFamily::UnknownTraversal => {
                if k != 1 {
                    return Err(ThrottleError::SingleCopOnly(self.name()));
                }
                let dm = graph.all_pairs_distances();
                let starts = vec![dm.default_center()];
                Ok((Box::new(|| Box::new(UnknownTraversal::new())), starts))
            }
        }
    }
}

/// Outcome of a throttling sweep over cop counts.
#[derive(Clone, Debug)]
pub struct ThrottleResult {
    pub variant: Visibility,
    pub best_k: usize,
    /// best_k + the estimated mean at best_k.
    pub value: f64,
    pub per_k: BTreeMap<usize, CaptureStats>,
    pub lower_bound: f64,
}

impl ThrottleResult {
    pub const CSV_HEADER: &'static str =
        "variant,n,k,mean,SE,kPlusMean,suggestedK,lowerBound,upperBoundFormulaValue";

    pub fn csv_rows(&self, n: usize, suggested_k: usize, upper_formula: f64) -> Vec<String> {
        self.per_k
            .iter()
            .map(|(k, stats)| {
                format!(
                    "{},{},{},{:.6},{:.6},{:.6},{},{:.6},{:.6}",
                    self.variant.label(),
                    n,
                    k,
                    stats.mean,
                    stats.std_error,
                    *k as f64 + stats.mean,
                    suggested_k,
                    self.lower_bound,
                    upper_formula
                )
            })
            .collect()
    }
}

/// Estimates the throttling value: for each k in `k_range`, builds the
/// family's k-cop team, estimates its mean capture time against `dist`,
/// and returns the argmin of k + mean (ties to the smallest k). Per-k
/// estimations run concurrently; results merge deterministically by k.
#[allow(clippy::too_many_arguments)]
pub fn throttle_estimate(
    graph: &Arc<Graph>,
    distances: &Arc<DistanceMatrix>,
    variant: Visibility,
    family: StrategyFamily,
    k_range: &[usize],
    dist: &GamblerDistribution,
    trials: u64,
    seed: u64,
) -> Result<ThrottleResult, ThrottleError> {
    if k_range.is_empty() {
        return Err(ThrottleError::EmptyKRange);
    }
    family.check_variant(variant)?;
    let mut ks: Vec<usize> = k_range.to_vec();
    ks.sort_unstable();
    ks.dedup();

    let per_k: BTreeMap<usize, CaptureStats> = ks
        .par_iter()
        .map(|&k| {
            let (factory, starts) = family.instantiate(graph, k)?;
            let cfg = GameConfig::new(
                Arc::clone(graph),
                Arc::clone(distances),
                variant,
                starts,
            );
            let base_seed = seed.wrapping_add((k as u64).wrapping_mul(0x9E3779B97F4A7C15));
            let stats = estimate_capture_time(&cfg, dist, &factory, trials, base_seed)?;
            Ok((k, stats))
        })
        .collect::<Result<_, ThrottleError>>()?;

    let (&best_k, best_stats) = per_k
        .iter()
        .min_by(|(ka, sa), (kb, sb)| {
            let va = **ka as f64 + sa.mean;
            let vb = **kb as f64 + sb.mean;
            va.partial_cmp(&vb).unwrap()
        })
        .expect("non-empty");
    let value = best_k as f64 + best_stats.mean;
    Ok(ThrottleResult {
        variant,
        best_k,
        value,
        per_k,
        lower_bound: throttle_lower_bound(graph.vertex_count()),
    })
}

/// The closed-form cop-count suggestions behind the throttling upper bounds.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum KRule {
    /// ceil(sqrt(n) - 1/2) for path sweeps.
    Path,
    /// floor(sqrt(3n) - 1/2) for the one-observation cover strategy.
    ObservedGeneral,
    /// around sqrt((1/(1-1/e) - 1/2) n) for cycle innings.
    CycleUnknown,
    /// around sqrt((6/(1-e^-2) - 3) n) for the general unknown strategy.
    UnknownGeneral,
}

pub fn suggested_k(rule: KRule, n: usize) -> usize {
    assert!(n >= 2, "need at least two vertices");
    let n = n as f64;
    let k = match rule {
        KRule::Path => (n.sqrt() - 0.5).ceil(),
        KRule::ObservedGeneral => ((3.0 * n).sqrt() - 0.5).floor(),
        KRule::CycleUnknown => {
            let c = 1.0 / (1.0 - (-1.0f64).exp()) - 0.5;
            (c * n).sqrt().round()
        }
        KRule::UnknownGeneral => {
            let c = 6.0 / (1.0 - (-2.0f64).exp()) - 3.0;
            (c * n).sqrt().round()
        }
    };
    (k as usize).max(1)
}

/// Every throttling number is at least 2*sqrt(n).
pub fn throttle_lower_bound(n: usize) -> f64 {
    2.0 * (n as f64).sqrt()
}

/// The default k range bracketing all suggested k values: 1..=ceil(2*sqrt(3n)).
pub fn default_k_range(n: usize) -> Vec<usize> {
    let hi = (2.0 * (3.0 * n as f64).sqrt()).ceil() as usize;
    (1..=hi.max(1)).collect()
}
