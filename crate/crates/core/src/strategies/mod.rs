//! Cop decision rules, single-cop and team, all implementing the engine's
//! [`CopStrategy`](crate::engine::CopStrategy) contract.

mod single;
mod sweep;
mod team;

pub use single::{Hybrid, KwT, Stakeout, UnknownTraversal, Wmw1, WmwT};
pub use sweep::{
    plan_sweep_schedule, plan_sweep_schedule_capped, sweep_expected_time, SweepError,
    SweepSchedule, SweepWalker,
};
pub use team::{CompleteRandom, CycleInnings, DistributedWmw1, PathTeam, StarDistributed};

use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum StrategyError {
    #[error("stakeout values are all zero")]
    AllZeroValues,
    #[error("graph is not a path")]
    NotAPath,
    #[error("graph is not a cycle")]
    NotACycle,
    #[error("graph is not a star")]
    NotAStar,
    #[error("graph is not complete")]
    NotComplete,
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

/// One greedy shortest-path step from `cur` toward `target`; ties take the
/// lowest-indexed neighbor. Returns `cur` when already there.
pub(crate) fn step_toward(
    graph: &Graph,
    distances: &DistanceMatrix,
    cur: VertexId,
    target: VertexId,
) -> VertexId {
    if cur == target {
        return cur;
    }
    let d = distances.get(cur, target);
    graph
        .neighbors(cur)
        .iter()
        .copied()
        .find(|&w| distances.get(w, target) < d)
        .expect("connected graph has a descending neighbor")
}

/// The stakeout target: argmin over positive-valued vertices of
/// `d(start, v) + 1/value(v)`, ties to the lowest index. `None` when every
/// value is zero.
pub(crate) fn stakeout_target(
    distances: &DistanceMatrix,
    start: VertexId,
    values: &[f64],
) -> Option<VertexId> {
    let mut best: Option<(f64, VertexId)> = None;
    for (i, &val) in values.iter().enumerate() {
        if val <= 0.0 {
            continue;
        }
        let v = VertexId::new(i);
        let objective = distances.get(start, v) as f64 + 1.0 / val;
        if best.is_none_or(|(b, _)| objective < b) {
            best = Some((objective, v));
        }
    }
    best.map(|(_, v)| v)
}
