//! Gambler distribution models: i.i.d. per-turn hop laws over the vertex
//! set, empirical frequency estimation from observations, and the sampling
//! error bound used by the observation-driven strategies.

use rand::Rng;
use thiserror::Error;

use crate::graph::{DistanceMatrix, VertexId};
use crate::rng::GameRng;

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GamblerError {
    #[error("support set is empty")]
    EmptySupport,
    #[error("probabilities sum to {0}, not 1")]
    InvalidDistribution(f64),
    #[error("negative probability at index {0}")]
    NegativeProbability(usize),
    #[error("invalid adversarial-cycle parameters: {0}")]
    InvalidParameters(String),
    #[error("empty sample sequence")]
    EmptySamples,
    #[error("confidence level P={0} must lie in (0, 1)")]
    InvalidP(f64),
    #[error("distribution parse error: {0}")]
    Parse(String),
}

/// A fixed probability vector over the n vertices; the gambler re-samples
/// from it independently every turn.
#[derive(Clone, Debug)]
pub struct GamblerDistribution {
    probs: Vec<f64>,
    cum: Vec<f64>,
    last_positive: usize,
}

impl GamblerDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, GamblerError> {
        assert!(!probs.is_empty(), "distribution over zero vertices");
        let mut sum = 0.0;
        let mut last_positive = None;
        for (i, &p) in probs.iter().enumerate() {
            if p < 0.0 {
                return Err(GamblerError::NegativeProbability(i));
            }
            if p > 0.0 {
                last_positive = Some(i);
            }
            sum += p;
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(GamblerError::InvalidDistribution(sum));
        }
        let last_positive = last_positive.ok_or(GamblerError::InvalidDistribution(0.0))?;
        let mut cum = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cum.push(acc);
        }
        Ok(GamblerDistribution {
            probs,
            cum,
            last_positive,
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, v: VertexId) -> f64 {
        self.probs[v.index()]
    }

    /// One i.i.d. draw. Consumes exactly one `f64` from the stream, so a
    /// fixed RNG state always yields the same sample sequence.
    pub fn sample(&self, rng: &mut GameRng) -> VertexId {
        let u: f64 = rng.random();
        let idx = self.cum.partition_point(|&c| c <= u);
        if idx < self.probs.len() && self.probs[idx] > 0.0 {
            VertexId::new(idx)
        } else {
            // u fell past the accumulated mass (rounding) or onto a
            // zero-probability boundary.
            VertexId::new(self.last_positive)
        }
    }

    /// Uniform over `support`, zero elsewhere.
    pub fn uniform(support: &[VertexId], n: usize) -> Result<Self, GamblerError> {
        if support.is_empty() {
            return Err(GamblerError::EmptySupport);
        }
        let mut probs = vec![0.0; n];
        let p = 1.0 / support.len() as f64;
        for &v in support {
            probs[v.index()] = p;
        }
        GamblerDistribution::new(probs)
    }

    pub fn uniform_all(n: usize) -> Self {
        let support: Vec<VertexId> = (0..n).map(VertexId::new).collect();
        GamblerDistribution::uniform(&support, n).expect("non-empty")
    }

    pub fn point_mass(v: VertexId, n: usize) -> Self {
        GamblerDistribution::uniform(&[v], n).expect("non-empty")
    }

    /// Parses the distribution file format: one probability per line.
    pub fn from_text(text: &str) -> Result<Self, GamblerError> {
        let mut probs = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let p: f64 = t
                .parse()
                .map_err(|_| GamblerError::Parse(format!("bad probability {t:?}")))?;
            probs.push(p);
        }
        if probs.is_empty() {
            return Err(GamblerError::Parse("no probabilities found".into()));
        }
        GamblerDistribution::new(probs)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.probs {
            out.push_str(&format!("{p:.17}\n"));
        }
        out
    }
}

/// A seeded random point on the probability simplex: normalized
/// exponentials, so every vertex gets positive mass.
pub fn random_distribution(n: usize, rng: &mut GameRng) -> GamblerDistribution {
    let raw: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    GamblerDistribution::new(raw.iter().map(|r| r / total).collect())
        .expect("normalized exponentials")
}

/// The two-level cycle distribution that hides most of its mass on the arc
/// farthest from the cop: `(1-eps)/r` on each of the `r` far vertices and
/// `eps/(n-r)` on the rest. `r` is `floor(t*sqrt(n))` or that plus one,
/// with the parity chosen (odd r for even n, even r for odd n) so the far
/// set is an arc symmetric about the antipode(s) of `cop_start`.
pub fn adversarial_cycle_distribution(
    cycle_distances: &DistanceMatrix,
    t: u32,
    cop_start: VertexId,
    epsilon: f64,
) -> Result<GamblerDistribution, GamblerError> {
    let n = cycle_distances.vertex_count();
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GamblerError::InvalidParameters(format!(
            "epsilon {epsilon} outside (0, 1)"
        )));
    }
    if t == 0 {
        return Err(GamblerError::InvalidParameters("t must be >= 1".into()));
    }
    // r takes whichever of floor(t*sqrt(n)) and floor(t*sqrt(n))+1 has the
    // opposite parity of n, making the far set a symmetric arc.
    let base = (t as f64 * (n as f64).sqrt()).floor() as usize;
    let r = if base % 2 != n % 2 { base } else { base + 1 };
    if r == 0 || r >= n {
        return Err(GamblerError::InvalidParameters(format!(
            "far-set size r={r} outside (0, {n})"
        )));
    }
    // The r farthest vertices; boundary ties broken by ascending index.
    let mut by_distance: Vec<VertexId> = (0..n).map(VertexId::new).collect();
    by_distance.sort_by_key(|&v| (std::cmp::Reverse(cycle_distances.get(cop_start, v)), v));
    let far = &by_distance[..r];
    let mut probs = vec![epsilon / (n - r) as f64; n];
    for &v in far {
        probs[v.index()] = (1.0 - epsilon) / r as f64;
    }
    GamblerDistribution::new(probs)
}

/// Per-vertex frequencies of a sample sequence: exact multiples of 1/W.
#[derive(Clone, Debug)]
pub struct EmpiricalEstimate {
    freqs: Vec<f64>,
    sample_count: usize,
}

impl EmpiricalEstimate {
    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }
}

pub fn empirical_frequencies(
    samples: &[VertexId],
    n: usize,
) -> Result<EmpiricalEstimate, GamblerError> {
    if samples.is_empty() {
        return Err(GamblerError::EmptySamples);
    }
    let mut counts = vec![0usize; n];
    for &v in samples {
        counts[v.index()] += 1;
    }
    let w = samples.len() as f64;
    Ok(EmpiricalEstimate {
        freqs: counts.iter().map(|&c| c as f64 / w).collect(),
        sample_count: samples.len(),
    })
}

/// The Chebyshev sampling error radius: with probability at least `p`,
/// every empirical frequency from `w` samples is within this distance of
/// its true probability.
pub fn chebyshev_error_bound(w: usize, p: f64) -> Result<f64, GamblerError> {
    assert!(w >= 1, "need at least one sample");
    if !(p > 0.0 && p < 1.0) {
        return Err(GamblerError::InvalidP(p));
    }
    Ok(((1.0 / w as f64) / (1.0 - p)).sqrt())
}

/// Elementwise `max(0, freq - epsilon)`. The result need not sum to 1.
pub fn clip_probabilities(est: &EmpiricalEstimate, epsilon: f64) -> Vec<f64> {
    assert!(epsilon >= 0.0, "epsilon must be non-negative");
    est.freqs.iter().map(|&f| (f - epsilon).max(0.0)).collect()
}
