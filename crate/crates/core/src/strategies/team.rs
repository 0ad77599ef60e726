//! Cop-team strategies: the unison path sweep, the synchronized cycle
//! innings, the random-subset rule for complete graphs, and the
//! color-guided distributed watch-move-wait variants.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use crate::engine::{CopStrategy, GameSetup};
use crate::gambler::GamblerDistribution;
use crate::graph::{Graph, VertexId};
use crate::partition::{color_sectors, color_sectors_star, cover_sectors, ColorMap, Cover, Sector};
use crate::rng::GameRng;
use crate::strategies::sweep::{plan_sweep_schedule, SweepWalker};
use crate::strategies::{step_toward, StrategyError};

/// Cops spaced every m = ceil(n/k) vertices along a path, moving in unison
/// per the planned forward sweep. A cop whose step would pass the far end
/// parks there instead. Known-gambler variant: the sweep is planned when
/// the distribution is revealed.
#[derive(Clone, Debug)]
pub struct PathTeam {
    order: Arc<Vec<VertexId>>,
    m: usize,
    bases: Vec<usize>,
    walker: Option<SweepWalker>,
}

impl PathTeam {
    pub fn new(graph: &Graph, k: usize) -> Result<Self, StrategyError> {
        assert!(k >= 1, "need at least one cop");
        let order = graph.path_order().ok_or(StrategyError::NotAPath)?;
        let n = order.len();
        let m = n.div_ceil(k);
        let bases: Vec<usize> = (0..k).map(|c| c * m).filter(|&b| b < n).collect();
        Ok(PathTeam {
            order: Arc::new(order),
            m,
            bases,
            walker: None,
        })
    }

    pub fn starts(&self) -> Vec<VertexId> {
        self.bases.iter().map(|&b| self.order[b]).collect()
    }

    pub fn cop_count(&self) -> usize {
        self.bases.len()
    }

    pub fn segment_length(&self) -> usize {
        self.m
    }

    /// Mass per sweep offset: q_j aggregates the vertices at path indices
    /// congruent to j mod m.
    pub fn segment_mass(&self, dist: &GamblerDistribution) -> Vec<f64> {
        let n = self.order.len();
        (0..self.m)
            .map(|j| {
                (j..n)
                    .step_by(self.m)
                    .map(|idx| dist.prob(self.order[idx]))
                    .sum()
            })
            .collect()
    }
}

impl CopStrategy for PathTeam {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.walker = None;
    }

    fn distribution(&mut self, dist: &GamblerDistribution) {
        let q = self.segment_mass(dist);
        let schedule = plan_sweep_schedule(&q).expect("distribution mass sums to 1");
        self.walker = Some(SweepWalker::new(schedule));
    }

    fn moves(
        &mut self,
        _turn: u64,
        _setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        _rng: &mut GameRng,
    ) {
        let Some(walker) = self.walker.as_mut() else {
            return;
        };
        walker.advance();
        let offset = walker.position();
        let last = self.order.len() - 1;
        for (c, &base) in cops.iter_mut().zip(&self.bases) {
            *c = self.order[(base + offset).min(last)];
        }
    }
}

/// Cops evenly spaced around a cycle, each dropping a flag at its start.
/// One coin flip fixes the common direction; the cops then repeat innings
/// of m = ceil(n/k) unison steps to the neighboring flag, early arrivals
/// staying put for the final turn.
#[derive(Clone, Debug)]
pub struct CycleInnings {
    ring: Arc<Vec<VertexId>>,
    flags: Vec<usize>,
    m: usize,
    direction: Option<i64>,
    positions: Vec<usize>,
    heading_to: Vec<usize>,
    inning_turn: usize,
}

impl CycleInnings {
    pub fn new(graph: &Graph, k: usize) -> Result<Self, StrategyError> {
        assert!(k >= 1, "need at least one cop");
        let ring = graph.cycle_order().ok_or(StrategyError::NotACycle)?;
        let n = ring.len();
        let flags: Vec<usize> = (0..k).map(|i| i * n / k).collect();
        Ok(CycleInnings {
            ring: Arc::new(ring),
            positions: flags.clone(),
            heading_to: (0..k).collect(),
            flags,
            m: n.div_ceil(k),
            direction: None,
            inning_turn: 0,
        })
    }

    pub fn starts(&self) -> Vec<VertexId> {
        self.flags.iter().map(|&f| self.ring[f]).collect()
    }

    pub fn inning_length(&self) -> usize {
        self.m
    }
}

impl CopStrategy for CycleInnings {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.direction = None;
        self.positions = self.flags.clone();
        self.heading_to = (0..self.flags.len()).collect();
        self.inning_turn = 0;
    }

    fn moves(
        &mut self,
        _turn: u64,
        _setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        let k = self.flags.len() as i64;
        let n = self.ring.len() as i64;
        let dir = *self.direction.get_or_insert_with(|| {
            let d = if rng.random::<bool>() { 1 } else { -1 };
            for (i, h) in self.heading_to.iter_mut().enumerate() {
                *h = (i as i64 + d).rem_euclid(k) as usize;
            }
            d
        });
        for ((pos, &heading), cop) in self
            .positions
            .iter_mut()
            .zip(&self.heading_to)
            .zip(cops.iter_mut())
        {
            let goal = self.flags[heading];
            if *pos != goal {
                *pos = (*pos as i64 + dir).rem_euclid(n) as usize;
            }
            *cop = self.ring[*pos];
        }
        self.inning_turn += 1;
        if self.inning_turn == self.m {
            self.inning_turn = 0;
            for h in self.heading_to.iter_mut() {
                *h = (*h as i64 + dir).rem_euclid(k) as usize;
            }
        }
    }
}

/// Every turn the cops occupy a fresh uniform k-subset of the complete
/// graph's vertices.
#[derive(Clone, Debug)]
pub struct CompleteRandom {
    k: usize,
}

impl CompleteRandom {
    pub fn new(graph: &Graph, k: usize) -> Result<Self, StrategyError> {
        assert!(k >= 1, "need at least one cop");
        if !graph.is_complete() {
            return Err(StrategyError::NotComplete);
        }
        Ok(CompleteRandom { k })
    }

    pub fn starts(&self) -> Vec<VertexId> {
        vec![VertexId::new(0); self.k]
    }
}

impl CopStrategy for CompleteRandom {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {}

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        let n = setup.graph.vertex_count();
        let take = cops.len().min(n);
        // Floyd's uniform k-subset sampler: exactly `take` draws.
        let mut chosen = BTreeSet::new();
        for j in (n - take)..n {
            let t = rng.random_range(0..=j);
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        for (c, &v) in cops.iter_mut().zip(chosen.iter()) {
            *c = VertexId::new(v);
        }
    }
}

/// Shared core of the color-guided strategies: resolve the observed (or
/// self-simulated, in the known variant) vertex to its color, then send
/// every cop to its own sector's vertex of that color.
#[derive(Clone, Debug)]
struct ColorGuided {
    colors: Arc<ColorMap>,
    known_dist: Option<GamblerDistribution>,
    observed: Option<VertexId>,
    targets: Option<Vec<Option<VertexId>>>,
}

impl ColorGuided {
    fn new(colors: Arc<ColorMap>) -> Self {
        ColorGuided {
            colors,
            known_dist: None,
            observed: None,
            targets: None,
        }
    }

    fn reset(&mut self) {
        self.known_dist = None;
        self.observed = None;
        self.targets = None;
    }

    fn observe(&mut self, v: VertexId) {
        if self.observed.is_none() {
            self.observed = Some(v);
        }
    }

    fn set_distribution(&mut self, dist: &GamblerDistribution) {
        self.known_dist = Some(dist.clone());
    }

    fn moves(&mut self, setup: &GameSetup<'_>, cops: &mut [VertexId], rng: &mut GameRng) {
        if self.targets.is_none() {
            // Facing the known gambler the cops simulate the observation
            // themselves with one draw from the revealed distribution.
            let observed = match self.observed {
                Some(v) => Some(v),
                None => self.known_dist.as_ref().map(|d| d.sample(rng)),
            };
            let Some(observed) = observed else {
                return;
            };
            let Some(color) = self.colors.resolve_color(observed) else {
                return;
            };
            self.targets = Some(
                (0..self.colors.sector_count())
                    .map(|s| self.colors.vertex_with_color(s, color))
                    .collect(),
            );
        }
        let targets = self.targets.as_ref().unwrap();
        for (i, c) in cops.iter_mut().enumerate() {
            if let Some(Some(target)) = targets.get(i) {
                *c = step_toward(setup.graph, setup.distances, *c, *target);
            }
        }
    }
}

/// Distributed watch-move-wait: each cop owns one sector of a connected
/// cover and starts at a center of its sector's induced subgraph; the
/// observed vertex's color tells every cop which vertex of its own sector
/// to stake out.
#[derive(Clone, Debug)]
pub struct DistributedWmw1 {
    inner: ColorGuided,
    starts: Arc<Vec<VertexId>>,
}

impl DistributedWmw1 {
    pub fn new(graph: &Graph, cover: Cover, colors: ColorMap) -> Self {
        let starts = cover
            .sectors()
            .iter()
            .map(|s| {
                let (sub, globals) = graph.induced_subgraph(&s.vertices);
                let local = sub.all_pairs_distances().default_center();
                globals[local.index()]
            })
            .collect();
        DistributedWmw1 {
            inner: ColorGuided::new(Arc::new(colors)),
            starts: Arc::new(starts),
        }
    }

    /// Builds the cover and ascending coloring for a k-cop team.
    pub fn for_cops(graph: &Graph, k: usize) -> Self {
        let cover = cover_sectors(graph, k);
        let colors = color_sectors(&cover);
        DistributedWmw1::new(graph, cover, colors)
    }

    pub fn starts(&self) -> Vec<VertexId> {
        self.starts.as_ref().clone()
    }

    pub fn cop_count(&self) -> usize {
        self.starts.len()
    }
}

impl CopStrategy for DistributedWmw1 {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.inner.reset();
    }

    fn distribution(&mut self, dist: &GamblerDistribution) {
        self.inner.set_distribution(dist);
    }

    fn observe(&mut self, v: VertexId) {
        self.inner.observe(v);
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        self.inner.moves(setup, cops, rng);
    }
}

/// The star specialization: all k cops start at the hub, the leaves are
/// split into balanced groups, every sector is its group plus the hub, and
/// the hub holds the fixed top color in every sector.
#[derive(Clone, Debug)]
pub struct StarDistributed {
    inner: ColorGuided,
    center: VertexId,
    k: usize,
}

impl StarDistributed {
    pub fn new(graph: &Graph, k: usize) -> Result<Self, StrategyError> {
        assert!(k >= 1, "need at least one cop");
        let center = graph.star_center().ok_or(StrategyError::NotAStar)?;
        let n = graph.vertex_count();
        let leaves: Vec<VertexId> = graph.vertices().filter(|&v| v != center).collect();
        let top_color = (n - 1).div_ceil(k) + 1;
        let base = leaves.len() / k;
        let extra = leaves.len() % k;
        let mut sectors = Vec::with_capacity(k);
        let mut next = 0usize;
        for i in 0..k {
            let size = base + usize::from(i < extra);
            let mut vertices: Vec<VertexId> = leaves[next..next + size].to_vec();
            next += size;
            vertices.push(center);
            vertices.sort_unstable();
            sectors.push(Sector {
                vertices,
                anchor: center,
            });
        }
        let cover = Cover::from_sectors(sectors);
        let colors = color_sectors_star(&cover, center, top_color);
        Ok(StarDistributed {
            inner: ColorGuided::new(Arc::new(colors)),
            center,
            k,
        })
    }

    pub fn starts(&self) -> Vec<VertexId> {
        vec![self.center; self.k]
    }
}

impl CopStrategy for StarDistributed {
    fn begin(&mut self, _setup: &GameSetup<'_>, _rng: &mut GameRng) {
        self.inner.reset();
    }

    fn distribution(&mut self, dist: &GamblerDistribution) {
        self.inner.set_distribution(dist);
    }

    fn observe(&mut self, v: VertexId) {
        self.inner.observe(v);
    }

    fn moves(
        &mut self,
        _turn: u64,
        setup: &GameSetup<'_>,
        cops: &mut [VertexId],
        rng: &mut GameRng,
    ) {
        self.inner.moves(setup, cops, rng);
    }
}
