//! Simulation and verification toolkit for cop-versus-gambler pursuit games
//! on connected graphs: the gambler re-samples its vertex from a fixed
//! probability distribution every turn while one or more cops walk the
//! graph trying to land on it.
//!
//! The crate provides:
//! - [`graph`]: connected graphs, hop metrics, spanning trees, generators;
//! - [`gambler`]: distribution models, sampling, empirical estimation and
//!   the Chebyshev sampling-error radius;
//! - [`partition`]: limb extraction and balanced connected covers;
//! - [`engine`]: exact game semantics and the seeded Monte Carlo estimator;
//! - [`strategies`]: every cop decision rule, single-cop and team;
//! - [`throttling`]: minimizing cop count plus expected capture time.

pub mod engine;
pub mod gambler;
pub mod graph;
pub mod partition;
pub mod rng;
pub mod strategies;
pub mod throttling;
