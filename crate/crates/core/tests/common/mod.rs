//! Shared invariant checkers and independent oracles for the integration
//! and acceptance suites. Everything here recomputes structure directly
//! from the graph rather than trusting the library's construction path.

use pursuit_core::gambler::GamblerDistribution;
use pursuit_core::graph::{Graph, RootedTree, VertexId};
use pursuit_core::partition::{Cover, Limb};
use pursuit_core::rng::{trial_rng, GameRng};
use pursuit_core::strategies::sweep_expected_time;

/// Checks every limb invariant against the tree it was extracted from.
pub fn assert_limb_valid(graph: &Graph, tree: &RootedTree, limb: &Limb, x: usize) {
    let size = limb.vertices.len();
    assert!(
        x < size && size < 2 * x,
        "limb size {size} outside ({x}, {}]",
        2 * x - 1
    );
    assert!(
        limb.vertices.contains(&limb.anchor),
        "anchor not inside the limb"
    );

    // Limb structure: everything except the anchor descends from the
    // anchor, and each anchor branch is taken wholly or not at all.
    let in_limb = |v: VertexId| limb.vertices.binary_search(&v).is_ok();
    for &v in &limb.vertices {
        if v == limb.anchor {
            continue;
        }
        let mut cur = v;
        loop {
            match tree.parent(cur) {
                Some(p) if p == limb.anchor => break,
                Some(p) => {
                    assert!(
                        in_limb(p),
                        "limb member {v} does not descend from the anchor"
                    );
                    cur = p;
                }
                None => panic!("limb member {v} does not descend from the anchor"),
            }
        }
    }
    for &child in tree.children(limb.anchor) {
        let subtree = tree.subtree_vertices(child);
        let taken = subtree.iter().filter(|&&v| in_limb(v)).count();
        assert!(
            taken == 0 || taken == subtree.len(),
            "branch under {child} only partially taken"
        );
    }

    // Removing the limb but keeping the anchor leaves the rest connected.
    let mut rest: Vec<VertexId> = graph
        .vertices()
        .filter(|&v| !in_limb(v) || v == limb.anchor)
        .collect();
    rest.sort_unstable();
    assert!(
        graph.subset_connected(&rest),
        "complement plus anchor is disconnected"
    );
}

/// Checks every cover invariant for a (graph, k) pair.
pub fn assert_cover_valid(graph: &Graph, cover: &Cover, k: usize) {
    let n = graph.vertex_count();
    assert!(
        cover.sector_count() <= k,
        "{} sectors exceed k={k}",
        cover.sector_count()
    );
    let bound = Cover::size_bound(n, k);
    let mut covered = vec![false; n];
    for sector in cover.sectors() {
        assert!(
            sector.vertices.len() <= bound,
            "sector size {} exceeds bound {bound} (n={n}, k={k})",
            sector.vertices.len()
        );
        assert!(sector.vertices.contains(&sector.anchor));
        assert!(
            graph.subset_connected(&sector.vertices),
            "sector not connected"
        );
        for &v in &sector.vertices {
            covered[v.index()] = true;
        }
    }
    assert!(covered.iter().all(|&b| b), "cover misses vertices");
}

/// Sizes of every limb of the tree, by brute-force enumeration over
/// (vertex, branch subset) pairs. Valid for trees because removing whole
/// branches below a vertex always leaves the remainder connected.
pub fn all_limb_sizes(tree: &RootedTree) -> Vec<usize> {
    let mut sizes = Vec::new();
    for v in 0..tree.vertex_count() {
        let v = VertexId::new(v);
        let branch_sizes: Vec<usize> = tree
            .children(v)
            .iter()
            .map(|&c| tree.subtree_vertices(c).len())
            .collect();
        for mask in 0..(1u64 << branch_sizes.len()) {
            let total: usize = branch_sizes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s)
                .sum();
            sizes.push(1 + total);
        }
    }
    sizes
}

/// Exhaustive forward-sweep optimum over wait vectors bounded by
/// `max_wait`, via the closed-form timeline evaluator. Independent of the
/// planner's dynamic program.
pub fn brute_force_sweep_optimum(q: &[f64], max_wait: u32) -> f64 {
    let hold = q
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("some positive mass");
    let mut waits = vec![0u32; q.len()];
    let mut best = f64::INFINITY;
    fn descend(
        q: &[f64],
        waits: &mut Vec<u32>,
        j: usize,
        hold: usize,
        max_wait: u32,
        best: &mut f64,
    ) {
        if j == hold {
            let e = sweep_expected_time(q, waits, hold);
            if e < *best {
                *best = e;
            }
            return;
        }
        for w in 0..=max_wait {
            waits[j] = w;
            descend(q, waits, j + 1, hold, max_wait, best);
        }
        waits[j] = 0;
    }
    descend(q, &mut waits, 0, hold, max_wait, &mut best);
    best
}

/// Deterministic trial RNG for test-local randomness.
pub fn test_rng(seed: u64) -> GameRng {
    trial_rng(seed, 0, 0)
}

/// Harmonic-weight distribution: p_i proportional to 1/(i+1).
pub fn skewed_distribution(n: usize) -> GamblerDistribution {
    let raw: Vec<f64> = (0..n).map(|i| 1.0 / (i + 1) as f64).collect();
    let total: f64 = raw.iter().sum();
    GamblerDistribution::new(raw.iter().map(|r| r / total).collect()).unwrap()
}

/// Uniform over the `count` vertices farthest from `from` (ties broken by
/// ascending index).
pub fn far_set_distribution(
    graph: &Graph,
    distances: &pursuit_core::graph::DistanceMatrix,
    from: VertexId,
    count: usize,
) -> GamblerDistribution {
    let mut by_distance: Vec<VertexId> = graph.vertices().collect();
    by_distance.sort_by_key(|&v| (std::cmp::Reverse(distances.get(from, v)), v));
    GamblerDistribution::uniform(&by_distance[..count], graph.vertex_count()).unwrap()
}

/// A positive random point on the simplex, deterministic in `seed`.
pub fn seeded_random_distribution(n: usize, seed: u64) -> GamblerDistribution {
    let mut rng = test_rng(seed);
    pursuit_core::gambler::random_distribution(n, &mut rng)
}

/// Random composition of `units` grid steps over `cells` cells, or an
/// exhaustive enumeration helper for small grids.
pub fn compositions(units: usize, cells: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; cells];
    fn descend(units: usize, cell: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cell == cur.len() - 1 {
            cur[cell] = units;
            out.push(cur.clone());
            return;
        }
        for u in 0..=units {
            cur[cell] = u;
            descend(units - u, cell + 1, cur, out);
        }
    }
    descend(units, 0, &mut cur, &mut out);
    out
}

