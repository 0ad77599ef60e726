//! Exact game semantics for the pursuit game and the Monte Carlo capture
//! time estimator.
//!
//! One game turn: the cops each move to an adjacent vertex or stay, the
//! gambler simultaneously re-samples its vertex, and capture happens when a
//! cop's post-move vertex equals the gambler's new vertex. Pre-game
//! observation rounds (observed variant) are free: the cops are frozen and
//! cannot capture. In the observed and once-visible variants the cops are
//! also frozen on game turn 1, where capture *is* possible.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::gambler::GamblerDistribution;
use crate::graph::{DistanceMatrix, Graph, VertexId};
use crate::rng::{trial_rng, GameRng, LANE_GAMBLER, LANE_STRATEGY};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Visibility {
    /// The strategy receives the true distribution before turn 1.
    Known,
    /// The strategy receives nothing.
    Unknown,
    /// `t` pre-game observation rounds; frozen through game turn 1.
    Observed(u32),
    /// The gambler's vertex on game turns 1..=t is reported after each of
    /// those turns resolves; frozen on game turn 1.
    OnceVisible(u32),
}

impl Visibility {
    pub fn label(self) -> &'static str {
        match self {
            Visibility::Known => "known",
            Visibility::Unknown => "unknown",
            Visibility::Observed(_) => "observed",
            Visibility::OnceVisible(_) => "once_visible",
        }
    }

    /// Observation window length; 0 for known/unknown.
    pub fn t(self) -> u32 {
        match self {
            Visibility::Observed(t) | Visibility::OnceVisible(t) => t,
            _ => 0,
        }
    }

    fn frozen_first_turn(self) -> bool {
        matches!(self, Visibility::Observed(_) | Visibility::OnceVisible(_))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("cop {cop} proposed an illegal move {from} -> {to} on turn {turn}")]
    IllegalMove {
        cop: usize,
        from: VertexId,
        to: VertexId,
        turn: u64,
    },
    #[error("{0} trials are too few for bound verification (need >= 30)")]
    TooFewTrials(u64),
}

/// Everything fixed for one game, shared with the strategy each turn.
#[derive(Clone)]
pub struct GameConfig {
    pub graph: Arc<Graph>,
    pub distances: Arc<DistanceMatrix>,
    pub visibility: Visibility,
    pub cop_start: Vec<VertexId>,
    pub max_turns: u64,
}

impl GameConfig {
    /// Config with the default turn cap of 1000·n.
    pub fn new(
        graph: Arc<Graph>,
        distances: Arc<DistanceMatrix>,
        visibility: Visibility,
        cop_start: Vec<VertexId>,
    ) -> Self {
        assert!(!cop_start.is_empty(), "need at least one cop");
        let n = graph.vertex_count();
        for &v in &cop_start {
            assert!(v.index() < n, "cop start out of range");
        }
        if let Visibility::Observed(t) | Visibility::OnceVisible(t) = visibility {
            assert!(t >= 1, "observation window must be at least 1");
        }
        GameConfig {
            graph,
            distances,
            visibility,
            cop_start,
            max_turns: 1000 * n as u64,
        }
    }

    pub fn with_max_turns(mut self, max_turns: u64) -> Self {
        assert!(max_turns >= 1);
        self.max_turns = max_turns;
        self
    }

    pub fn cop_count(&self) -> usize {
        self.cop_start.len()
    }

    pub fn setup(&self) -> GameSetup<'_> {
        GameSetup {
            graph: &self.graph,
            distances: &self.distances,
            cop_start: &self.cop_start,
            visibility: self.visibility,
        }
    }
}

/// Borrowed view of the fixed game data, passed to strategies.
pub struct GameSetup<'a> {
    pub graph: &'a Graph,
    pub distances: &'a DistanceMatrix,
    pub cop_start: &'a [VertexId],
    pub visibility: Visibility,
}

/// A cop team's decision rule. Instances are per-trial: they may hold
/// observation state and draw from the strategy RNG stream.
pub trait CopStrategy: Send {
    /// Reset per-game state.
    fn begin(&mut self, setup: &GameSetup<'_>, rng: &mut GameRng);

    /// The true distribution, revealed before turn 1 in the known variant.
    fn distribution(&mut self, _dist: &GamblerDistribution) {}

    /// One sighting of the gambler: a pre-game round (observed variant) or
    /// a post-turn report during the visible window (once-visible variant).
    fn observe(&mut self, _v: VertexId) {}

    /// Rewrite `cops` in place with this turn's per-cop moves. Every entry
    /// must stay put or step to a neighbor of its current vertex.
    fn moves(
        &mut self,
        turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    );
}

pub type BoxedStrategy = Box<dyn CopStrategy>;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// Capture on this game turn (1-based).
    Captured(u64),
    /// No capture within the turn cap.
    Censored,
}

#[derive(Clone, Debug)]
pub struct TurnEntry {
    pub cops: Vec<VertexId>,
    pub gambler: VertexId,
}

#[derive(Clone, Debug)]
pub struct CaptureRecord {
    pub outcome: Outcome,
    pub turn_log: Option<Vec<TurnEntry>>,
}

/// Plays one game to capture or censoring.
pub fn run_game(
    cfg: &GameConfig,
    strategy: &mut dyn CopStrategy,
    dist: &GamblerDistribution,
    gambler_rng: &mut GameRng,
    strategy_rng: &mut GameRng,
    want_log: bool,
) -> Result<CaptureRecord, EngineError> {
    assert_eq!(
        dist.len(),
        cfg.graph.vertex_count(),
        "distribution length must match the graph"
    );
    let setup = cfg.setup();
    strategy.begin(&setup, strategy_rng);

    match cfg.visibility {
        Visibility::Observed(t) => {
            for _ in 0..t {
                let v = dist.sample(gambler_rng);
                strategy.observe(v);
            }
        }
        Visibility::Known => strategy.distribution(dist),
        _ => {}
    }

    let mut cops = cfg.cop_start.clone();
    let mut prev = cops.clone();
    let mut log = want_log.then(Vec::new);

    for turn in 1..=cfg.max_turns {
        let frozen = turn == 1 && cfg.visibility.frozen_first_turn();
        if !frozen {
            prev.copy_from_slice(&cops);
            strategy.moves(turn, &setup, &mut cops, strategy_rng);
            for (i, (&from, &to)) in prev.iter().zip(cops.iter()).enumerate() {
                if from != to && !cfg.graph.has_edge(from, to) {
                    return Err(EngineError::IllegalMove {
                        cop: i,
                        from,
                        to,
                        turn,
                    });
                }
            }
        }
        let gambler = dist.sample(gambler_rng);
        if let Some(log) = log.as_mut() {
            log.push(TurnEntry {
                cops: cops.clone(),
                gambler,
            });
        }
        if cops.contains(&gambler) {
            return Ok(CaptureRecord {
                outcome: Outcome::Captured(turn),
                turn_log: log,
            });
        }
        if let Visibility::OnceVisible(t) = cfg.visibility {
            if turn <= t as u64 {
                strategy.observe(gambler);
            }
        }
    }
    Ok(CaptureRecord {
        outcome: Outcome::Censored,
        turn_log: log,
    })
}

/// Monte Carlo estimate of the expected capture time.
#[derive(Clone, Debug, PartialEq)]
pub struct CaptureStats {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub censored: u64,
}

/// Runs `trials` independent games; trial i draws from RNG streams derived
/// from `(base_seed, i)`, so results are reproducible and independent of
/// scheduling. Censored runs contribute `max_turns` to the mean.
pub fn estimate_capture_time<F>(
    cfg: &GameConfig,
    dist: &GamblerDistribution,
    build: F,
    trials: u64,
    base_seed: u64,
) -> Result<CaptureStats, EngineError>
where
    F: Fn() -> BoxedStrategy + Sync,
{
    assert!(trials >= 1, "need at least one trial");
    let (sum, sum_sq, censored) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut strategy = build();
            let mut grng = trial_rng(base_seed, i, LANE_GAMBLER);
            let mut srng = trial_rng(base_seed, i, LANE_STRATEGY);
            let record = run_game(cfg, strategy.as_mut(), dist, &mut grng, &mut srng, false)?;
            Ok(match record.outcome {
                Outcome::Captured(t) => (t, (t as u128) * (t as u128), 0u64),
                Outcome::Censored => {
                    let t = cfg.max_turns;
                    (t, (t as u128) * (t as u128), 1u64)
                }
            })
        })
        .try_reduce(
            || (0u64, 0u128, 0u64),
            |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)),
        )?;

    let n = trials as f64;
    let mean = sum as f64 / n;
    let std_error = if trials > 1 {
        let var = (sum_sq as f64 - (sum as f64) * (sum as f64) / n) / (n - 1.0);
        (var.max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(CaptureStats {
        mean,
        std_error,
        trials,
        censored,
    })
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub pass: bool,
    pub z_score: f64,
}

fn z_score(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / se
    }
}

/// Upper-bound check: pass iff mean <= bound + 3·SE with zero censored runs.
pub fn verify_bound(stats: &CaptureStats, bound: f64) -> Result<BoundCheck, EngineError> {
    if stats.trials < 30 {
        return Err(EngineError::TooFewTrials(stats.trials));
    }
    Ok(BoundCheck {
        pass: stats.censored == 0 && stats.mean <= bound + 3.0 * stats.std_error,
        z_score: z_score(stats.mean - bound, stats.std_error),
    })
}

/// Lower-bound check: pass iff mean >= bound - 3·SE with zero censored runs.
pub fn verify_lower_bound(stats: &CaptureStats, bound: f64) -> Result<BoundCheck, EngineError> {
    if stats.trials < 30 {
        return Err(EngineError::TooFewTrials(stats.trials));
    }
    Ok(BoundCheck {
        pass: stats.censored == 0 && stats.mean >= bound - 3.0 * stats.std_error,
        z_score: z_score(stats.mean - bound, stats.std_error),
    })
}

/// One result row of the experiment CSV schema.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub strategy: String,
    pub variant: String,
    pub graph_kind: String,
    pub n: usize,
    pub k: usize,
    pub t: u32,
    pub stats: CaptureStats,
    pub bound: f64,
    pub pass: bool,
}

impl RunReport {
    pub const CSV_HEADER: &'static str =
        "strategy,variant,graphKind,n,k,t,trials,mean,stdError,censored,bound,pass";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{},{:.6},{}",
            self.strategy,
            self.variant,
            self.graph_kind,
            self.n,
            self.k,
            self.t,
            self.stats.trials,
            self.stats.mean,
            self.stats.std_error,
            self.stats.censored,
            self.bound,
            self.pass
        )
    }
}
