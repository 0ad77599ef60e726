//! Builds scenarios out of raw spec fields and runs them: graph, variant,
//! strategy, distribution, trials, bound verdicts, CSV rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use pursuit_core::engine::{
    estimate_capture_time, verify_bound, verify_lower_bound, BoxedStrategy, CaptureStats,
    GameConfig, RunReport, Visibility,
};
use pursuit_core::gambler::{
    adversarial_cycle_distribution, random_distribution, GamblerDistribution,
};
use pursuit_core::graph::{generate, DistanceMatrix, Graph, GraphKind, VertexId};
use pursuit_core::rng::trial_rng;
use pursuit_core::strategies::{
    CompleteRandom, CycleInnings, DistributedWmw1, Hybrid, KwT, PathTeam, Stakeout,
    StarDistributed, UnknownTraversal, Wmw1, WmwT,
};
use pursuit_core::throttling::{
    default_k_range, suggested_k, throttle_estimate, KRule, StrategyFamily, ThrottleResult,
};

use crate::expr;
use crate::spec::{ConfigError, RawScenario};

#[derive(Copy, Clone, Default)]
pub struct Overrides {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

/// The result of one scenario: verdict, a human summary line, and the CSV
/// rows it contributes.
pub struct ScenarioOutcome {
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub capture_rows: Vec<String>,
    pub throttle_rows: Vec<String>,
}

type Factory = Box<dyn Fn() -> BoxedStrategy + Sync + Send>;

fn err(name: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("scenario {name:?}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(name: &str, field: &str, text: &str) -> Result<T, ConfigError> {
    text.parse()
        .map_err(|_| err(name, format!("field {field:?}: cannot parse {text:?}")))
}

fn build_graph(name: &str, spec: &str) -> Result<(Arc<Graph>, String), ConfigError> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err(name, format!("graph file {path:?}: {e}")))?;
        let graph = Graph::from_edge_list_text(&text).map_err(|e| err(name, e))?;
        return Ok((Arc::new(graph), "file".to_string()));
    }
    let mut parts = spec.split(':');
    let kind: GraphKind = parts
        .next()
        .unwrap_or_default()
        .parse()
        .map_err(|e: String| err(name, e))?;
    let n: usize = parse_num(
        name,
        "graph",
        parts
            .next()
            .ok_or_else(|| err(name, format!("graph {spec:?} is missing its size")))?,
    )?;
    if n == 0 {
        return Err(err(name, "graph size must be at least 1"));
    }
    let graph_seed: u64 = match parts.next() {
        Some(text) => parse_num(name, "graph", text)?,
        None => 0,
    };
    let graph = generate(kind, n, graph_seed).map_err(|e| err(name, e))?;
    Ok((Arc::new(graph), kind.name().to_string()))
}

fn parse_variant(name: &str, spec: &str) -> Result<Visibility, ConfigError> {
    let (head, t) = match spec.split_once(':') {
        Some((head, t)) => (head, Some(t)),
        None => (spec, None),
    };
    let window = |t: Option<&str>| -> Result<u32, ConfigError> {
        let t = t.ok_or_else(|| err(name, format!("variant {spec:?} needs :t")))?;
        let t: u32 = parse_num(name, "variant", t)?;
        if t == 0 {
            return Err(err(name, "observation window must be at least 1"));
        }
        Ok(t)
    };
    match head {
        "known" => Ok(Visibility::Known),
        "unknown" => Ok(Visibility::Unknown),
        "observed" => Ok(Visibility::Observed(window(t)?)),
        "once_visible" => Ok(Visibility::OnceVisible(window(t)?)),
        other => Err(err(name, format!("unknown variant {other:?}"))),
    }
}

fn parse_strategy_field(
    name: &str,
    spec: &str,
) -> Result<(String, BTreeMap<String, String>), ConfigError> {
    let mut parts = spec.split_whitespace();
    let head = parts
        .next()
        .ok_or_else(|| err(name, "empty strategy field"))?
        .to_string();
    let mut params = BTreeMap::new();
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| err(name, format!("strategy parameter {part:?} is not key=value")))?;
        params.insert(key.to_string(), value.to_string());
    }
    Ok((head, params))
}

/// Checks the optional t/w parameters against the variant's actual window.
fn check_window_params(
    name: &str,
    params: &BTreeMap<String, String>,
    variant: Visibility,
    n: usize,
) -> Result<(), ConfigError> {
    if let Some(t_text) = params.get("t") {
        let t: u32 = parse_num(name, "t", t_text)?;
        if t != variant.t() {
            return Err(err(
                name,
                format!("strategy t={t} conflicts with variant window {}", variant.t()),
            ));
        }
    }
    if let Some(w_text) = params.get("w") {
        let w: u64 = parse_num(name, "w", w_text)?;
        let expect = w * (n as u64) * (n as u64);
        if u64::from(variant.t()) != expect {
            return Err(err(
                name,
                format!(
                    "w={w} implies a window of w*n^2 = {expect}, variant has {}",
                    variant.t()
                ),
            ));
        }
    }
    Ok(())
}

struct StrategyBuild {
    label: String,
    auto_starts: Vec<VertexId>,
    fixed_starts: bool,
    k: usize,
    kind: PendingFactory,
}

enum PendingFactory {
    Ready(Factory),
    /// Stakeout takes the scenario distribution's probabilities as values.
    StakeoutOnDistribution,
}

fn build_strategy(
    name: &str,
    head: &str,
    params: &BTreeMap<String, String>,
    raw_k: usize,
    graph: &Arc<Graph>,
    distances: &DistanceMatrix,
    variant: Visibility,
) -> Result<StrategyBuild, ConfigError> {
    let n = graph.vertex_count();
    let center = distances.default_center();
    let k = match params.get("k") {
        Some(text) => parse_num(name, "k", text)?,
        None => raw_k,
    };
    if k == 0 {
        return Err(err(name, "k must be at least 1"));
    }
    check_window_params(name, params, variant, n)?;
    let clip_p = match params.get("P") {
        Some(text) => Some(parse_num::<f64>(name, "P", text)?),
        None => None,
    };

    let single = |factory: Factory| StrategyBuild {
        label: head.to_string(),
        auto_starts: vec![center],
        fixed_starts: false,
        k,
        kind: PendingFactory::Ready(factory),
    };

    let build = match head {
        "wmw1" => single(Box::new(|| Box::new(Wmw1::new()))),
        "wmw_t" => single(Box::new(|| Box::new(WmwT::new()))),
        "kw_t" => {
            let proto = KwT::new(graph, clip_p).map_err(|e| err(name, e))?;
            single(Box::new(move || Box::new(proto.clone())))
        }
        "hybrid" => {
            let beta: f64 = match params.get("beta") {
                Some(text) => parse_num(name, "beta", text)?,
                None => 1.0,
            };
            if beta <= 0.0 {
                return Err(err(name, "beta must be positive"));
            }
            let proto = Hybrid::new(graph, clip_p, beta).map_err(|e| err(name, e))?;
            single(Box::new(move || Box::new(proto.clone())))
        }
        "unknown_traversal" => single(Box::new(|| Box::new(UnknownTraversal::new()))),
        "stakeout" => StrategyBuild {
            label: head.to_string(),
            auto_starts: vec![center],
            fixed_starts: false,
            k,
            kind: PendingFactory::StakeoutOnDistribution,
        },
        "distributed_wmw1" => {
            let proto = DistributedWmw1::for_cops(graph, k);
            let auto_starts = proto.starts();
            StrategyBuild {
                label: head.to_string(),
                auto_starts,
                fixed_starts: false,
                k,
                kind: PendingFactory::Ready(Box::new(move || Box::new(proto.clone()))),
            }
        }
        "star_distributed" => {
            let proto = StarDistributed::new(graph, k).map_err(|e| err(name, e))?;
            let auto_starts = proto.starts();
            StrategyBuild {
                label: head.to_string(),
                auto_starts,
                fixed_starts: false,
                k,
                kind: PendingFactory::Ready(Box::new(move || Box::new(proto.clone()))),
            }
        }
        "path_team" => {
            let proto = PathTeam::new(graph, k).map_err(|e| err(name, e))?;
            let auto_starts = proto.starts();
            StrategyBuild {
                label: head.to_string(),
                auto_starts,
                fixed_starts: true,
                k,
                kind: PendingFactory::Ready(Box::new(move || Box::new(proto.clone()))),
            }
        }
        "cycle_innings" => {
            let proto = CycleInnings::new(graph, k).map_err(|e| err(name, e))?;
            let auto_starts = proto.starts();
            StrategyBuild {
                label: head.to_string(),
                auto_starts,
                fixed_starts: true,
                k,
                kind: PendingFactory::Ready(Box::new(move || Box::new(proto.clone()))),
            }
        }
        "complete_random" => {
            let proto = CompleteRandom::new(graph, k).map_err(|e| err(name, e))?;
            let auto_starts = proto.starts();
            StrategyBuild {
                label: head.to_string(),
                auto_starts,
                fixed_starts: false,
                k,
                kind: PendingFactory::Ready(Box::new(move || Box::new(proto.clone()))),
            }
        }
        other => return Err(err(name, format!("unknown strategy {other:?}"))),
    };
    Ok(build)
}

fn build_distribution(
    name: &str,
    spec: &str,
    graph: &Graph,
    distances: &DistanceMatrix,
    anchor: VertexId,
) -> Result<GamblerDistribution, ConfigError> {
    let n = graph.vertex_count();
    let farthest_from_anchor = || -> Vec<VertexId> {
        let mut by_distance: Vec<VertexId> = graph.vertices().collect();
        by_distance.sort_by_key(|&v| (std::cmp::Reverse(distances.get(anchor, v)), v));
        by_distance
    };
    let (head, arg) = match spec.split_once(':') {
        Some((head, arg)) => (head, Some(arg)),
        None => (spec, None),
    };
    let dist = match head {
        "uniform" => GamblerDistribution::uniform_all(n),
        "uniform_leaves" => {
            let center = graph
                .star_center()
                .ok_or_else(|| err(name, "uniform_leaves needs a star graph"))?;
            let leaves: Vec<VertexId> = graph.vertices().filter(|&v| v != center).collect();
            GamblerDistribution::uniform(&leaves, n).map_err(|e| err(name, e))?
        }
        "point" => {
            let target = match arg {
                Some("far") | None => farthest_from_anchor()[0],
                Some(text) => {
                    let idx: usize = parse_num(name, "dist", text)?;
                    if idx >= n {
                        return Err(err(name, format!("point vertex {idx} out of range")));
                    }
                    VertexId::new(idx)
                }
            };
            GamblerDistribution::point_mass(target, n)
        }
        "skewed" => {
            let raw: Vec<f64> = (0..n).map(|i| 1.0 / (i + 1) as f64).collect();
            let total: f64 = raw.iter().sum();
            GamblerDistribution::new(raw.iter().map(|r| r / total).collect())
                .expect("normalized harmonic weights")
        }
        "random" => {
            let seed: u64 = match arg {
                Some(text) => parse_num(name, "dist", text)?,
                None => 0,
            };
            random_distribution(n, &mut trial_rng(seed, 0, 0))
        }
        "far_arc" => {
            let count: usize = match arg {
                Some(text) => parse_num(name, "dist", text)?,
                None => n.div_ceil(4),
            };
            if count == 0 || count > n {
                return Err(err(name, format!("far_arc size {count} out of range")));
            }
            let far = farthest_from_anchor();
            GamblerDistribution::uniform(&far[..count], n).map_err(|e| err(name, e))?
        }
        "adversarial_cycle" => {
            let mut t = 1u32;
            let mut eps = 1.0 / (n as f64).sqrt();
            for part in arg.unwrap_or_default().split(',').filter(|s| !s.is_empty()) {
                match part.split_once('=') {
                    Some(("t", v)) => t = parse_num(name, "dist", v)?,
                    Some(("eps", v)) => eps = parse_num(name, "dist", v)?,
                    _ => return Err(err(name, format!("bad adversarial_cycle option {part:?}"))),
                }
            }
            adversarial_cycle_distribution(distances, t, anchor, eps).map_err(|e| err(name, e))?
        }
        "file" => {
            let path = arg.ok_or_else(|| err(name, "dist file needs a path"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| err(name, format!("dist file {path:?}: {e}")))?;
            let dist = GamblerDistribution::from_text(&text).map_err(|e| err(name, e))?;
            if dist.len() != n {
                return Err(err(
                    name,
                    format!("dist file has {} entries for an n={n} graph", dist.len()),
                ));
            }
            dist
        }
        other => return Err(err(name, format!("unknown distribution {other:?}"))),
    };
    Ok(dist)
}

fn parse_starts(
    name: &str,
    raw: &RawScenario,
    build: &StrategyBuild,
    n: usize,
) -> Result<Vec<VertexId>, ConfigError> {
    let Some(text) = raw.get("starts").filter(|t| *t != "auto") else {
        return Ok(build.auto_starts.clone());
    };
    if build.fixed_starts {
        return Err(err(
            name,
            format!("strategy {} fixes its own start positions", build.label),
        ));
    }
    let mut starts = Vec::new();
    for part in text.split(',') {
        let idx: usize = parse_num(name, "starts", part.trim())?;
        if idx >= n {
            return Err(err(name, format!("start vertex {idx} out of range")));
        }
        starts.push(VertexId::new(idx));
    }
    if starts.len() != build.auto_starts.len() {
        return Err(err(
            name,
            format!(
                "{} start vertices given, strategy {} uses {}",
                starts.len(),
                build.label,
                build.auto_starts.len()
            ),
        ));
    }
    Ok(starts)
}

struct BoundVerdict {
    pass: bool,
    text: String,
    csv_bound: f64,
}

fn verify_bounds(
    name: &str,
    raw: &RawScenario,
    stats: &CaptureStats,
    vars: &BTreeMap<&'static str, f64>,
) -> Result<BoundVerdict, ConfigError> {
    let upper = raw
        .get("bound")
        .map(|e| expr::eval(e, vars))
        .transpose()
        .map_err(|e| err(name, e))?;
    let lower = raw
        .get("lower_bound")
        .map(|e| expr::eval(e, vars))
        .transpose()
        .map_err(|e| err(name, e))?;
    if upper.is_none() && lower.is_none() {
        return Err(err(name, "scenario needs a bound or lower_bound"));
    }
    let mut pass = true;
    let mut parts = Vec::new();
    if let Some(b) = upper {
        let check = verify_bound(stats, b).map_err(|e| err(name, e))?;
        pass &= check.pass;
        parts.push(format!("<={b:.4} z={:.2}", check.z_score));
    }
    if let Some(b) = lower {
        let check = verify_lower_bound(stats, b).map_err(|e| err(name, e))?;
        pass &= check.pass;
        parts.push(format!(">={b:.4} z={:.2}", check.z_score));
    }
    Ok(BoundVerdict {
        pass,
        text: parts.join(" "),
        csv_bound: upper.or(lower).unwrap(),
    })
}

fn scenario_vars(n: usize, k: usize, r: u32, t: u32) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("n", n as f64),
        ("k", k as f64),
        ("r", r as f64),
        ("m", n.div_ceil(k) as f64),
        ("t", t as f64),
    ])
}

fn run_capture(
    raw: &RawScenario,
    graph: Arc<Graph>,
    distances: Arc<DistanceMatrix>,
    kind_label: String,
    variant: Visibility,
    trials: u64,
    seed: u64,
) -> Result<ScenarioOutcome, ConfigError> {
    let name = &raw.name;
    let n = graph.vertex_count();
    let raw_k: usize = match raw.get("k") {
        Some(text) => parse_num(name, "k", text)?,
        None => 1,
    };
    let (head, params) = parse_strategy_field(name, raw.require("strategy")?)?;
    let build = build_strategy(name, &head, &params, raw_k, &graph, &distances, variant)?;
    let starts = parse_starts(name, raw, &build, n)?;
    let dist = build_distribution(
        name,
        raw.get("dist").unwrap_or("uniform"),
        &graph,
        &distances,
        starts[0],
    )?;
    let factory: Factory = match build.kind {
        PendingFactory::Ready(f) => f,
        PendingFactory::StakeoutOnDistribution => {
            let proto = Stakeout::new(dist.probs().to_vec()).map_err(|e| err(name, e))?;
            Box::new(move || Box::new(proto.clone()))
        }
    };
    let mut cfg = GameConfig::new(
        Arc::clone(&graph),
        Arc::clone(&distances),
        variant,
        starts,
    );
    if let Some(text) = raw.get("max_turns") {
        cfg = cfg.with_max_turns(parse_num(name, "max_turns", text)?);
    }
    let stats =
        estimate_capture_time(&cfg, &dist, &factory, trials, seed).map_err(|e| err(name, e))?;

    let (r, _) = distances.radius_and_centers();
    let vars = scenario_vars(n, build.k, r, variant.t());
    let verdict = verify_bounds(name, raw, &stats, &vars)?;
    let report = RunReport {
        strategy: build.label,
        variant: variant.label().to_string(),
        graph_kind: kind_label,
        n,
        k: build.k,
        t: variant.t(),
        stats: stats.clone(),
        bound: verdict.csv_bound,
        pass: verdict.pass,
    };
    Ok(ScenarioOutcome {
        name: name.clone(),
        pass: verdict.pass,
        summary: format!(
            "{name}: {} mean={:.4} se={:.4} censored={} {}",
            if verdict.pass { "pass" } else { "FAIL" },
            stats.mean,
            stats.std_error,
            stats.censored,
            verdict.text
        ),
        capture_rows: vec![report.to_csv_row()],
        throttle_rows: Vec::new(),
    })
}

fn parse_family(name: &str, text: &str) -> Result<(StrategyFamily, KRule), ConfigError> {
    match text {
        "path_team" => Ok((StrategyFamily::PathTeam, KRule::Path)),
        "cycle_innings" => Ok((StrategyFamily::CycleInnings, KRule::CycleUnknown)),
        "complete_random" => Ok((StrategyFamily::CompleteRandom, KRule::UnknownGeneral)),
        "distributed_wmw1" => Ok((StrategyFamily::DistributedWmw1, KRule::ObservedGeneral)),
        "star_distributed" => Ok((StrategyFamily::StarDistributed, KRule::ObservedGeneral)),
        "unknown_traversal" => Ok((StrategyFamily::UnknownTraversal, KRule::UnknownGeneral)),
        other => Err(err(name, format!("unknown strategy family {other:?}"))),
    }
}

fn parse_k_range(name: &str, text: &str, n: usize) -> Result<Vec<usize>, ConfigError> {
    if text == "default" {
        return Ok(default_k_range(n));
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = parse_num(name, "k_range", lo.trim())?;
        let hi: usize = parse_num(name, "k_range", hi.trim())?;
        if lo == 0 || hi < lo {
            return Err(err(name, format!("bad k_range {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|part| {
            let k: usize = parse_num(name, "k_range", part.trim())?;
            if k == 0 {
                return Err(err(name, "k_range entries must be positive"));
            }
            Ok(k)
        })
        .collect()
}

fn run_throttle(
    raw: &RawScenario,
    graph: Arc<Graph>,
    distances: Arc<DistanceMatrix>,
    variant: Visibility,
    trials: u64,
    seed: u64,
) -> Result<ScenarioOutcome, ConfigError> {
    let name = &raw.name;
    let n = graph.vertex_count();
    let (family, rule) = parse_family(name, raw.require("family")?)?;
    let k_range = match raw.get("k_range") {
        Some(text) => parse_k_range(name, text, n)?,
        None => default_k_range(n),
    };
    let dist = build_distribution(
        name,
        raw.get("dist").unwrap_or("uniform"),
        &graph,
        &distances,
        distances.default_center(),
    )?;
    let result: ThrottleResult = throttle_estimate(
        &graph,
        &distances,
        variant,
        family,
        &k_range,
        &dist,
        trials,
        seed,
    )
    .map_err(|e| err(name, e))?;

    let best = &result.per_k[&result.best_k];
    let censored_total: u64 = result.per_k.values().map(|s| s.censored).sum();
    let value_stats = CaptureStats {
        mean: result.value,
        std_error: best.std_error,
        trials: best.trials,
        censored: censored_total,
    };
    let vars = scenario_vars(n, result.best_k, distances.radius_and_centers().0, variant.t());
    let verdict = verify_bounds(name, raw, &value_stats, &vars)?;
    let throttle_rows = result.csv_rows(n, suggested_k(rule, n), verdict.csv_bound);
    Ok(ScenarioOutcome {
        name: name.clone(),
        pass: verdict.pass,
        summary: format!(
            "{name}: {} value={:.4} bestK={} lower={:.4} {}",
            if verdict.pass { "pass" } else { "FAIL" },
            result.value,
            result.best_k,
            result.lower_bound,
            verdict.text
        ),
        capture_rows: Vec::new(),
        throttle_rows,
    })
}

pub fn run_scenario(raw: &RawScenario, overrides: &Overrides) -> Result<ScenarioOutcome, ConfigError> {
    let name = &raw.name;
    let (graph, kind_label) = build_graph(name, raw.require("graph")?)?;
    let distances = Arc::new(graph.all_pairs_distances());
    let variant = parse_variant(name, raw.require("variant")?)?;
    let trials = match overrides.trials {
        Some(t) => t,
        None => match raw.get("trials") {
            Some(text) => parse_num(name, "trials", text)?,
            None => 10_000,
        },
    };
    if trials == 0 {
        return Err(err(name, "trials must be at least 1"));
    }
    let seed = match overrides.seed {
        Some(s) => s,
        None => match raw.get("seed") {
            Some(text) => parse_num(name, "seed", text)?,
            None => 0,
        },
    };
    match raw.get("mode").unwrap_or("capture") {
        "capture" => run_capture(raw, graph, distances, kind_label, variant, trials, seed),
        "throttle" => run_throttle(raw, graph, distances, variant, trials, seed),
        other => Err(err(name, format!("unknown mode {other:?}"))),
    }
}
