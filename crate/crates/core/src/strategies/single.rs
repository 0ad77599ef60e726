//! Single-cop strategies: the watch-move-wait family, stakeout targeting,
//! the sampled-probability strategy with optional clipping, the repeated
//! spanning-walk strategy for the unknown gambler, and the hybrid that
//! switches between the last two.

use std::sync::Arc;

use rand::Rng;

use crate::engine::{CopStrategy, GameSetup};
use crate::gambler::{
    chebyshev_error_bound, clip_probabilities, empirical_frequencies, GamblerError,
};
use crate::graph::{Graph, VertexId};
use crate::rng::GameRng;
use crate::strategies::sweep::{plan_sweep_schedule, SweepWalker};
use crate::strategies::{stakeout_target, step_toward, StrategyError};

/// Watch one move, walk to where the gambler appeared, wait forever.
#[derive(Clone, Debug, Default)]
pub struct Wmw1 {
    target: Option<VertexId>,
}

impl Wmw1 {
    pub fn new() -> Self {
        Wmw1::default()
    }
}

impl CopStrategy for Wmw1 {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.target = None;
    }

    fn observe(&mut self, v: VertexId) {
        if self.target.is_none() {
            self.target = Some(v);
        }
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        _rng: &mut GameRng,
    ) {
        if let Some(target) = self.target {
            for c in cops.iter_mut() {
                *c = step_toward(setup.graph, setup.distances, *c, target);
            }
        }
    }
}

/// Watch `t` moves, walk to the modal vertex, wait forever. Mode ties go to
/// the vertex closest to the cop's start; remaining ties are broken by one
/// uniform draw from the strategy RNG.
#[derive(Clone, Debug)]
pub struct WmwT {
    observations: Vec<VertexId>,
    target: Option<VertexId>,
}

impl WmwT {
    pub fn new() -> Self {
        WmwT {
            observations: Vec::new(),
            target: None,
        }
    }

    fn pick_target(&self, setup: &GameSetup<'_>, rng: &mut GameRng) -> Option<VertexId> {
        if self.observations.is_empty() {
            return None;
        }
        let n = setup.graph.vertex_count();
        let mut counts = vec![0usize; n];
        for &v in &self.observations {
            counts[v.index()] += 1;
        }
        let top = *counts.iter().max().unwrap();
        let modes: Vec<VertexId> = (0..n)
            .filter(|&i| counts[i] == top)
            .map(VertexId::new)
            .collect();
        let start = setup.cop_start[0];
        let closest = modes
            .iter()
            .map(|&v| setup.distances.get(start, v))
            .min()
            .unwrap();
        let tied: Vec<VertexId> = modes
            .into_iter()
            .filter(|&v| setup.distances.get(start, v) == closest)
            .collect();
        let choice = if tied.len() == 1 {
            tied[0]
        } else {
            tied[rng.random_range(0..tied.len())]
        };
        Some(choice)
    }
}

impl Default for WmwT {
    fn default() -> Self {
        WmwT::new()
    }
}

impl CopStrategy for WmwT {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.observations.clear();
        self.target = None;
    }

    fn observe(&mut self, v: VertexId) {
        self.observations.push(v);
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        if self.target.is_none() {
            self.target = self.pick_target(setup, rng);
        }
        if let Some(target) = self.target {
            for c in cops.iter_mut() {
                *c = step_toward(setup.graph, setup.distances, *c, target);
            }
        }
    }
}

/// Walk to the vertex minimizing `d(start, v) + 1/value(v)` over the
/// positive-valued vertices, then wait forever.
#[derive(Clone, Debug)]
pub struct Stakeout {
    values: Arc<Vec<f64>>,
    target: Option<VertexId>,
}

impl Stakeout {
    pub fn new(values: Vec<f64>) -> Result<Self, StrategyError> {
        assert!(values.iter().all(|&v| v >= 0.0), "negative stakeout value");
        if values.iter().all(|&v| v <= 0.0) {
            return Err(StrategyError::AllZeroValues);
        }
        Ok(Stakeout {
            values: Arc::new(values),
            target: None,
        })
    }
}

impl CopStrategy for Stakeout {
    fn begin(&mut self, setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.target = stakeout_target(setup.distances, setup.cop_start[0], &self.values);
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        _rng: &mut GameRng,
    ) {
        if let Some(target) = self.target {
            for c in cops.iter_mut() {
                *c = step_toward(setup.graph, setup.distances, *c, target);
            }
        }
    }
}

#[derive(Clone, Debug)]
enum KwPlan {
    Stay,
    Stakeout(VertexId),
    Sweep {
        positions: Vec<VertexId>,
        walker: SweepWalker,
    },
}

/// Observation-driven pursuit: estimate the distribution from the observed
/// window, optionally subtract the sampling error radius, then either run an
/// optimal forward sweep (on paths) or a stakeout (elsewhere) against the
/// resulting values. Falls back to the raw frequencies when clipping wipes
/// everything out.
#[derive(Clone, Debug)]
pub struct KwT {
    clip_p: Option<f64>,
    path: Option<Arc<Vec<VertexId>>>,
    observations: Vec<VertexId>,
    plan: Option<KwPlan>,
}

impl KwT {
    /// `clip_p`, when given, enables error clipping at the Chebyshev radius
    /// for confidence level `clip_p` and the observed window length.
    pub fn new(graph: &Graph, clip_p: Option<f64>) -> Result<Self, GamblerError> {
        if let Some(p) = clip_p {
            if !(p > 0.0 && p < 1.0) {
                return Err(GamblerError::InvalidP(p));
            }
        }
        Ok(KwT {
            clip_p,
            path: graph.path_order().map(Arc::new),
            observations: Vec::new(),
            plan: None,
        })
    }

    fn make_plan(&self, setup: &GameSetup<'_>) -> KwPlan {
        let n = setup.graph.vertex_count();
        if self.observations.is_empty() {
            return KwPlan::Stay;
        }
        let est = empirical_frequencies(&self.observations, n).expect("non-empty");
        let epsilon = match self.clip_p {
            Some(p) => chebyshev_error_bound(est.sample_count(), p).expect("validated"),
            None => 0.0,
        };
        let mut values = clip_probabilities(&est, epsilon);
        if values.iter().all(|&v| v <= 0.0) {
            values = est.freqs().to_vec();
        }
        let start = setup.cop_start[0];
        match &self.path {
            Some(path) => {
                // Sweep away from the endpoint nearer the cop.
                let mut positions: Vec<VertexId> = path.as_ref().clone();
                let to_first = setup.distances.get(start, positions[0]);
                let to_last = setup.distances.get(start, *positions.last().unwrap());
                if to_last < to_first {
                    positions.reverse();
                }
                let q: Vec<f64> = positions.iter().map(|&v| values[v.index()]).collect();
                let schedule = plan_sweep_schedule(&q).expect("positive mass");
                KwPlan::Sweep {
                    positions,
                    walker: SweepWalker::new(schedule),
                }
            }
            None => KwPlan::Stakeout(
                stakeout_target(setup.distances, start, &values).expect("positive mass"),
            ),
        }
    }
}

impl CopStrategy for KwT {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.observations.clear();
        self.plan = None;
    }

    fn observe(&mut self, v: VertexId) {
        self.observations.push(v);
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        _rng: &mut GameRng,
    ) {
        if self.plan.is_none() {
            self.plan = Some(self.make_plan(setup));
        }
        match self.plan.as_mut().unwrap() {
            KwPlan::Stay => {}
            KwPlan::Stakeout(target) => {
                let t = *target;
                cops[0] = step_toward(setup.graph, setup.distances, cops[0], t);
            }
            KwPlan::Sweep { positions, walker } => {
                let here = positions[walker.position()];
                if cops[0] != here {
                    cops[0] = step_toward(setup.graph, setup.distances, cops[0], here);
                } else {
                    walker.advance();
                    cops[0] = positions[walker.position()];
                }
            }
        }
    }
}

/// Repeat a fixed closed spanning walk (depth-first traversal of the BFS
/// spanning tree rooted at the cop's start, 2(n-1) steps) forever.
#[derive(Clone, Debug, Default)]
pub struct UnknownTraversal {
    walk: Vec<VertexId>,
    position: usize,
}

impl UnknownTraversal {
    pub fn new() -> Self {
        UnknownTraversal::default()
    }
}

impl CopStrategy for UnknownTraversal {
    fn begin(&mut self, setup: &GameSetup<'_>, _rng: &mut GameRng) {
        let tree = setup.graph.rooted_spanning_tree(setup.cop_start[0]);
        self.walk = tree.closed_walk();
        self.position = 0;
    }

    fn moves(
        &mut self,
        _turn: u64,
        _setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        _rng: &mut GameRng,
    ) {
        if self.walk.is_empty() {
            return;
        }
        cops[0] = self.walk[self.position];
        self.position = (self.position + 1) % self.walk.len();
    }
}

/// Run [`KwT`] for the first `ceil(n·beta)` turns, then restart from the
/// current position with the spanning-walk strategy.
#[derive(Clone, Debug)]
pub struct Hybrid {
    inner: KwT,
    switch_turn: u64,
    walk: Option<(Vec<VertexId>, usize)>,
}

impl Hybrid {
    pub fn new(graph: &Graph, clip_p: Option<f64>, beta: f64) -> Result<Self, GamblerError> {
        assert!(beta > 0.0, "beta must be positive");
        let switch_turn = ((graph.vertex_count() as f64 * beta).ceil() as u64).max(1);
        Ok(Hybrid {
            inner: KwT::new(graph, clip_p)?,
            switch_turn,
            walk: None,
        })
    }

    pub fn switch_turn(&self) -> u64 {
        self.switch_turn
    }
}

impl CopStrategy for Hybrid {
    fn begin(&mut self, setup: &GameSetup<'_>, rng: &mut GameRng) {
        self.inner.begin(setup, rng);
        self.walk = None;
    }

    fn observe(&mut self, v: VertexId) {
        self.inner.observe(v);
    }

    fn moves(
        &mut self,
        turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        if turn <= self.switch_turn {
            self.inner.moves(turn, setup, cops, rng);
            return;
        }
        let (walk, position) = self.walk.get_or_insert_with(|| {
            let tree = setup.graph.rooted_spanning_tree(cops[0]);
            (tree.closed_walk(), 0)
        });
        if walk.is_empty() {
            return;
        }
        cops[0] = walk[*position];
        *position = (*position + 1) % walk.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::engine::{
        estimate_capture_time, run_game, GameConfig, Outcome, Visibility,
    };
    use crate::gambler::GamblerDistribution;
    use crate::graph::{generate, GraphKind};
    use crate::rng::{trial_rng, LANE_GAMBLER, LANE_STRATEGY};

    fn config(kind: GraphKind, n: usize, vis: Visibility, start: usize) -> GameConfig {
        let g = Arc::new(generate(kind, n, 0).unwrap());
        let dm = Arc::new(g.all_pairs_distances());
        GameConfig::new(g, dm, vis, vec![VertexId::new(start)])
    }

    #[test]
    fn wmw1_walks_to_observation() {
        let cfg = config(GraphKind::Star, 5, Visibility::Observed(1), 0);
        let dist = GamblerDistribution::point_mass(VertexId::new(3), 5);
        let mut s = Wmw1::new();
        let mut grng = trial_rng(1, 0, LANE_GAMBLER);
        let mut srng = trial_rng(1, 0, LANE_STRATEGY);
        let rec = run_game(&cfg, &mut s, &dist, &mut grng, &mut srng, false).unwrap();
        assert_eq!(rec.outcome, Outcome::Captured(2));
    }

    #[test]
    fn wmw1_stays_when_observed_at_own_start() {
        let cfg = config(GraphKind::Path, 5, Visibility::Observed(1), 2);
        let setup = crate::engine::GameSetup {
            graph: &cfg.graph,
            distances: &cfg.distances,
            cop_start: &cfg.cop_start,
            visibility: cfg.visibility,
        };
        let mut s = Wmw1::new();
        let mut rng = trial_rng(1, 0, LANE_STRATEGY);
        s.begin(&setup, &mut rng);
        s.observe(VertexId::new(2));
        let mut cops = vec![VertexId::new(2)];
        for turn in 1..10 {
            s.moves(turn, &setup, &mut cops, &mut rng);
            assert_eq!(cops[0], VertexId::new(2));
        }
    }

    #[test]
    fn wmw1_star_closed_form() {
        // Star n=9, uniform on the 8 leaves: frozen turn 1 cannot capture,
        // then geometric(1/8) from turn 2: mean exactly 1 + 8 = 9.
        let cfg = config(GraphKind::Star, 9, Visibility::Observed(1), 0);
        let leaves: Vec<VertexId> = (1..9).map(VertexId::new).collect();
        let dist = GamblerDistribution::uniform(&leaves, 9).unwrap();
        let stats = estimate_capture_time(&cfg, &dist, || Box::new(Wmw1::new()), 40_000, 5)
            .unwrap();
        assert_eq!(stats.censored, 0);
        assert!(
            (stats.mean - 9.0).abs() <= 3.0 * stats.std_error,
            "mean {} se {}",
            stats.mean,
            stats.std_error
        );
    }

    #[test]
    fn wmwt_unique_mode() {
        let cfg = config(GraphKind::Path, 5, Visibility::Observed(3), 0);
        let setup = crate::engine::GameSetup {
            graph: &cfg.graph,
            distances: &cfg.distances,
            cop_start: &cfg.cop_start,
            visibility: cfg.visibility,
        };
        let mut s = WmwT::new();
        let mut rng = trial_rng(2, 0, LANE_STRATEGY);
        s.begin(&setup, &mut rng);
        for v in [1, 1, 4] {
            s.observe(VertexId::new(v));
        }
        assert_eq!(s.pick_target(&setup, &mut rng), Some(VertexId::new(1)));
    }

    #[test]
    fn wmwt_tie_goes_to_closest_mode() {
        let cfg = config(GraphKind::Path, 5, Visibility::Observed(2), 0);
        let setup = crate::engine::GameSetup {
            graph: &cfg.graph,
            distances: &cfg.distances,
            cop_start: &cfg.cop_start,
            visibility: cfg.visibility,
        };
        let mut s = WmwT::new();
        let mut rng = trial_rng(3, 0, LANE_STRATEGY);
        s.begin(&setup, &mut rng);
        s.observe(VertexId::new(3));
        s.observe(VertexId::new(1));
        assert_eq!(s.pick_target(&setup, &mut rng), Some(VertexId::new(1)));
    }

    #[test]
    fn wmwt_remaining_ties_split_uniformly() {
        // Two equidistant modes from the star center: each picked half the
        // time over seeded runs (binomial 3-sigma is under 0.005).
        let cfg = config(GraphKind::Star, 5, Visibility::Observed(2), 0);
        let setup = crate::engine::GameSetup {
            graph: &cfg.graph,
            distances: &cfg.distances,
            cop_start: &cfg.cop_start,
            visibility: cfg.visibility,
        };
        let runs = 100_000u64;
        let mut picked_first = 0u64;
        for i in 0..runs {
            let mut s = WmwT::new();
            let mut rng = trial_rng(77, i, LANE_STRATEGY);
            s.begin(&setup, &mut rng);
            s.observe(VertexId::new(1));
            s.observe(VertexId::new(2));
            if s.pick_target(&setup, &mut rng) == Some(VertexId::new(1)) {
                picked_first += 1;
            }
        }
        let f = picked_first as f64 / runs as f64;
        assert!((f - 0.5).abs() < 0.01, "tie frequency {f}");
    }

    #[test]
    fn stakeout_rejects_all_zero() {
        assert_eq!(
            Stakeout::new(vec![0.0, 0.0]).unwrap_err(),
            StrategyError::AllZeroValues
        );
    }

    #[test]
    fn stakeout_point_mass_at_start() {
        let cfg = config(GraphKind::Path, 4, Visibility::Known, 0);
        let dist = GamblerDistribution::point_mass(VertexId::new(0), 4);
        let mut values = vec![0.0; 4];
        values[0] = 1.0;
        let proto = Stakeout::new(values).unwrap();
        let stats = estimate_capture_time(
            &cfg,
            &dist,
            move || Box::new(proto.clone()),
            50,
            1,
        )
        .unwrap();
        assert_eq!(stats.mean, 1.0);
    }

    #[test]
    fn kw1_matches_wmw1_trace() {
        let cfg = config(GraphKind::Star, 6, Visibility::Observed(1), 0);
        let g = cfg.graph.clone();
        let dist = GamblerDistribution::point_mass(VertexId::new(4), 6);
        for trial in 0..20 {
            let mut g1 = trial_rng(9, trial, LANE_GAMBLER);
            let mut s1 = trial_rng(9, trial, LANE_STRATEGY);
            let mut wmw = Wmw1::new();
            let a = run_game(&cfg, &mut wmw, &dist, &mut g1, &mut s1, false).unwrap();
            let mut g2 = trial_rng(9, trial, LANE_GAMBLER);
            let mut s2 = trial_rng(9, trial, LANE_STRATEGY);
            let mut kw = KwT::new(&g, None).unwrap();
            let b = run_game(&cfg, &mut kw, &dist, &mut g2, &mut s2, false).unwrap();
            assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn kw_sweeps_paths() {
        // All observations at the far end of P5: the sweep marches straight
        // there; with the frozen first turn, capture lands on turn 5.
        let cfg = config(GraphKind::Path, 5, Visibility::Observed(2), 0);
        let g = cfg.graph.clone();
        let dist = GamblerDistribution::point_mass(VertexId::new(4), 5);
        let kw = KwT::new(&g, None).unwrap();
        let stats = estimate_capture_time(
            &cfg,
            &dist,
            move || Box::new(kw.clone()),
            50,
            3,
        )
        .unwrap();
        assert_eq!(stats.mean, 5.0);
        assert_eq!(stats.std_error, 0.0);
    }

    #[test]
    fn kw_clip_saturation_falls_back_to_raw() {
        let g = generate(GraphKind::Cycle, 8, 0).unwrap();
        let dm = g.all_pairs_distances();
        let cfg = GameConfig::new(
            Arc::new(g.clone()),
            Arc::new(dm),
            Visibility::Observed(2),
            vec![VertexId::new(0)],
        );
        // With 2 observations and P=0.99, the clip radius exceeds 0.5 and
        // zeroes both empirical spikes; the strategy must still commit to a
        // raw-frequency stakeout rather than freeze.
        let dist = GamblerDistribution::uniform(
            &[VertexId::new(2), VertexId::new(6)],
            8,
        )
        .unwrap();
        let kw = KwT::new(&g, Some(0.99)).unwrap();
        let stats = estimate_capture_time(
            &cfg,
            &dist,
            move || Box::new(kw.clone()),
            4000,
            11,
        )
        .unwrap();
        assert_eq!(stats.censored, 0);
        // stakeout at one of the two mass points: geometric(1/2) after a
        // two-step walk, so the mean sits well under 10.
        assert!(stats.mean < 10.0);
    }

    #[test]
    fn traversal_walk_covers_star() {
        let cfg = config(GraphKind::Star, 5, Visibility::Unknown, 0);
        let setup = crate::engine::GameSetup {
            graph: &cfg.graph,
            distances: &cfg.distances,
            cop_start: &cfg.cop_start,
            visibility: cfg.visibility,
        };
        let mut s = UnknownTraversal::new();
        let mut rng = trial_rng(4, 0, LANE_STRATEGY);
        s.begin(&setup, &mut rng);
        assert_eq!(s.walk.len(), 8);
        let mut cops = vec![VertexId::new(0)];
        let mut visited = [false; 5];
        visited[0] = true;
        for turn in 1..=8 {
            s.moves(turn, &setup, &mut cops, &mut rng);
            visited[cops[0].index()] = true;
        }
        assert!(visited.iter().all(|&b| b));
        assert_eq!(cops[0], VertexId::new(0)); // closed walk
    }

    #[test]
    fn traversal_survival_per_walk_is_subexponential() {
        // Over one full walk the per-turn capture probabilities sum to at
        // least 1, so the survival product is at most 1/e.
        for seed in 0..20u64 {
            let g = generate(GraphKind::RandomConnected, 14, seed).unwrap();
            let tree = g.rooted_spanning_tree(VertexId::new(0));
            let walk = tree.closed_walk();
            let mut rng = trial_rng(100, seed, 0);
            let raw: Vec<f64> = (0..14).map(|_| -(rng.random::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|r| r / total).collect();
            let sum: f64 = walk.iter().map(|v| probs[v.index()]).sum();
            let survival: f64 = walk.iter().map(|v| 1.0 - probs[v.index()]).product();
            assert!(sum >= 1.0 - 1e-9);
            assert!(survival <= (-1.0f64).exp() + 1e-9);
        }
    }

    #[test]
    fn traversal_mean_within_walk_bound() {
        for seed in [0u64, 1, 2] {
            let n = 10 + 7 * seed as usize;
            let g = Arc::new(generate(GraphKind::RandomConnected, n, seed + 40).unwrap());
            let dm = Arc::new(g.all_pairs_distances());
            let cfg = GameConfig::new(g, dm, Visibility::Unknown, vec![VertexId::new(0)]);
            let mut rng = trial_rng(200, seed, 0);
            let raw: Vec<f64> = (0..n).map(|_| -(rng.random::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let dist =
                GamblerDistribution::new(raw.iter().map(|r| r / total).collect()).unwrap();
            let stats = estimate_capture_time(
                &cfg,
                &dist,
                || Box::new(UnknownTraversal::new()),
                20_000,
                seed + 7,
            )
            .unwrap();
            let bound = 2.0 * (n as f64 - 1.0) / (1.0 - (-1.0f64).exp());
            assert_eq!(stats.censored, 0);
            assert!(
                stats.mean <= bound + 3.0 * stats.std_error,
                "n={n}: mean {} bound {bound}",
                stats.mean
            );
        }
    }

    #[test]
    fn hybrid_with_huge_beta_matches_kw() {
        let g = generate(GraphKind::Cycle, 12, 0).unwrap();
        let dm = g.all_pairs_distances();
        let cfg = GameConfig::new(
            Arc::new(g.clone()),
            Arc::new(dm),
            Visibility::Observed(3),
            vec![VertexId::new(0)],
        );
        let dist = GamblerDistribution::uniform_all(12);
        for trial in 0..50 {
            let mut g1 = trial_rng(31, trial, LANE_GAMBLER);
            let mut s1 = trial_rng(31, trial, LANE_STRATEGY);
            let mut kw = KwT::new(&g, None).unwrap();
            let a = run_game(&cfg, &mut kw, &dist, &mut g1, &mut s1, false).unwrap();
            let mut g2 = trial_rng(31, trial, LANE_GAMBLER);
            let mut s2 = trial_rng(31, trial, LANE_STRATEGY);
            let mut hy = Hybrid::new(&g, None, 1e6).unwrap();
            let b = run_game(&cfg, &mut hy, &dist, &mut g2, &mut s2, false).unwrap();
            assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn hybrid_switch_turn_clamps_to_one() {
        let g = generate(GraphKind::Path, 6, 0).unwrap();
        let hy = Hybrid::new(&g, None, 1e-9).unwrap();
        assert_eq!(hy.switch_turn(), 1);
    }

    #[test]
    fn hybrid_escapes_a_bad_stakeout() {
        // Mass hidden away from the single observation: plain KW stakes out
        // the wrong vertex for a long wait, the hybrid walks out of it.
        let g = generate(GraphKind::Path, 12, 0).unwrap();
        let dm = g.all_pairs_distances();
        let cfg = GameConfig::new(
            Arc::new(g.clone()),
            Arc::new(dm),
            Visibility::Observed(1),
            vec![VertexId::new(0)],
        );
        let mut probs = vec![0.0; 12];
        probs[1] = 0.002;
        probs[11] = 0.998;
        let dist = GamblerDistribution::new(probs).unwrap();
        let hy = Hybrid::new(&g, None, 0.5).unwrap();
        let stats = estimate_capture_time(
            &cfg,
            &dist,
            move || Box::new(hy.clone()),
            4000,
            13,
        )
        .unwrap();
        assert_eq!(stats.censored, 0);
        let x = 6.0;
        let walk_bound = 2.0 * 11.0 / (1.0 - (-1.0f64).exp());
        assert!(stats.mean <= x + walk_bound + 3.0 * stats.std_error);
    }
}
