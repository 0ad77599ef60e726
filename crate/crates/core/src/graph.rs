//! Undirected connected graphs with hop metrics, spanning trees, and the
//! standard generator families used by the pursuit experiments.
//!
//! Vertices are 0-based contiguous integers internally; [`VertexId`]'s
//! `Display` impl shows the conventional 1-based labels (`v1`..`vn`).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A vertex index into its owning graph, valid in `[0, n)`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0 + 1)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is out of range or a self-loop for n={2}")]
    InvalidEdge(usize, usize, usize),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("{kind} graph requires n >= {min}, got {n}")]
    InvalidSize {
        kind: &'static str,
        min: usize,
        n: usize,
    },
    #[error("edge list parse error: {0}")]
    Parse(String),
}

/// An immutable undirected connected graph with sorted adjacency lists.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating and symmetrizing.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        assert!(n >= 1, "graph must have at least one vertex");
        let mut sets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(GraphError::InvalidEdge(u, v, n));
            }
            sets[u].insert(VertexId::new(v));
            sets[v].insert(VertexId::new(u));
        }
        let graph = Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        if !graph.is_connected() {
            return Err(GraphError::DisconnectedGraph);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len()).map(VertexId::new)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as (u, v) pairs with u < v, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(VertexId::new(0));
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// BFS hop distances from every vertex.
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.vertex_count();
        let mut dist = vec![0u32; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            let mut seen = vec![false; n];
            seen[s] = true;
            queue.push_back(VertexId::new(s));
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if !seen[v.index()] {
                        seen[v.index()] = true;
                        row[v.index()] = row[u.index()] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    /// BFS spanning tree rooted at `root`; children are visited and stored
    /// in ascending vertex order, so the tree is deterministic.
    pub fn rooted_spanning_tree(&self, root: VertexId) -> RootedTree {
        let n = self.vertex_count();
        assert!(root.index() < n, "root out of range");
        let mut parent: Vec<Option<VertexId>> = vec![None; n];
        let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[root.index()] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    parent[v.index()] = Some(u);
                    children[u.index()].push(v);
                    queue.push_back(v);
                }
            }
        }
        RootedTree {
            root,
            parent,
            children,
        }
    }

    /// The vertex sequence of the path from its lowest-indexed endpoint,
    /// or `None` if the graph is not a path.
    pub fn path_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        if n == 1 {
            return Some(vec![VertexId::new(0)]);
        }
        let mut ends = self.vertices().filter(|&v| self.degree(v) == 1);
        let start = ends.next()?;
        if self.vertices().any(|v| self.degree(v) > 2) || self.edge_count() != n - 1 {
            return None;
        }
        let mut order = Vec::with_capacity(n);
        let mut prev: Option<VertexId> = None;
        let mut cur = start;
        loop {
            order.push(cur);
            let next = self
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| Some(w) != prev);
            match next {
                Some(w) => {
                    prev = Some(cur);
                    cur = w;
                }
                None => break,
            }
        }
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }

    /// The vertex sequence around the cycle starting at v0 toward its
    /// lower-indexed neighbor, or `None` if the graph is not a cycle.
    pub fn cycle_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        if n < 3
            || self.edge_count() != n
            || self.vertices().any(|v| self.degree(v) != 2)
        {
            return None;
        }
        let mut order = Vec::with_capacity(n);
        let start = VertexId::new(0);
        let mut prev = start;
        let mut cur = self.neighbors(start)[0];
        order.push(start);
        while cur != start {
            order.push(cur);
            let next = self
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("degree 2");
            prev = cur;
            cur = next;
        }
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }

    /// The hub of a star (a vertex adjacent to all others while the rest are
    /// leaves), or `None`. For n <= 2 the lowest-indexed vertex qualifies.
    pub fn star_center(&self) -> Option<VertexId> {
        let n = self.vertex_count();
        if n <= 2 {
            return Some(VertexId::new(0));
        }
        let center = self.vertices().find(|&v| self.degree(v) == n - 1)?;
        if self
            .vertices()
            .all(|v| v == center || self.degree(v) == 1)
        {
            Some(center)
        } else {
            None
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.vertices().all(|v| self.degree(v) == n - 1)
    }

    /// Whether the induced subgraph on `verts` is connected.
    pub fn subset_connected(&self, verts: &[VertexId]) -> bool {
        if verts.is_empty() {
            return false;
        }
        let mut member = vec![false; self.vertex_count()];
        for &v in verts {
            member[v.index()] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[verts[0].index()] = true;
        queue.push_back(verts[0]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if member[v.index()] && !seen[v.index()] {
                    seen[v.index()] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        let total = member.iter().filter(|&&b| b).count();
        count == total
    }

    /// Induced subgraph on `verts` (which must be connected in `self`),
    /// together with the local-to-global vertex mapping. Local ids follow
    /// ascending global order.
    pub fn induced_subgraph(&self, verts: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut globals: Vec<VertexId> = verts.to_vec();
        globals.sort_unstable();
        globals.dedup();
        let mut local_of = vec![usize::MAX; self.vertex_count()];
        for (i, &g) in globals.iter().enumerate() {
            local_of[g.index()] = i;
        }
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); globals.len()];
        for (i, &g) in globals.iter().enumerate() {
            for &w in self.neighbors(g) {
                let j = local_of[w.index()];
                if j != usize::MAX {
                    adj[i].push(VertexId::new(j));
                }
            }
        }
        (Graph { adj }, globals)
    }

    /// Parses the edge-list text format: first line `n m`, then `m` lines
    /// `u v` with 0-based endpoints.
    pub fn from_edge_list_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header line {header:?}")))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header line {header:?}")))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.take(m) {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse(format!(
                "expected {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, edges)
    }

    /// Writes the same edge-list format the reader accepts.
    pub fn to_edge_list_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.vertex_count(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", u.index(), v.index()));
        }
        out
    }
}

/// Named generator families.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GraphKind {
    Path,
    Cycle,
    Star,
    Complete,
    RandomTree,
    RandomConnected,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Star => "star",
            GraphKind::Complete => "complete",
            GraphKind::RandomTree => "random_tree",
            GraphKind::RandomConnected => "random_connected",
        }
    }
}

impl std::str::FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "star" => Ok(GraphKind::Star),
            "complete" => Ok(GraphKind::Complete),
            "random_tree" => Ok(GraphKind::RandomTree),
            "random_connected" => Ok(GraphKind::RandomConnected),
            other => Err(format!("unknown graph kind {other:?}")),
        }
    }
}

/// Generates the named graph. Random kinds are pure functions of
/// `(kind, n, seed)`.
pub fn generate(kind: GraphKind, n: usize, seed: u64) -> Result<Graph, GraphError> {
    assert!(n >= 1, "graph must have at least one vertex");
    match kind {
        GraphKind::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        GraphKind::Cycle => {
            if n < 3 {
                return Err(GraphError::InvalidSize {
                    kind: "cycle",
                    min: 3,
                    n,
                });
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphKind::Star => Graph::from_edges(n, (1..n).map(|i| (0, i))),
        GraphKind::Complete => {
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        GraphKind::RandomTree => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<(usize, usize)> = (1..n)
                .map(|i| (rng.random_range(0..i), i))
                .collect();
            Graph::from_edges(n, edges)
        }
        GraphKind::RandomConnected => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let p: f64 = rng.random();
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random::<f64>() < p {
                            edges.push((u, v));
                        }
                    }
                }
                match Graph::from_edges(n, edges) {
                    Ok(g) => return Ok(g),
                    Err(GraphError::DisconnectedGraph) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
}

/// Exact pairwise hop distances of a connected graph.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> u32 {
        self.dist[u.index() * self.n + v.index()]
    }

    pub fn eccentricity(&self, v: VertexId) -> u32 {
        (0..self.n)
            .map(|u| self.get(v, VertexId::new(u)))
            .max()
            .unwrap_or(0)
    }

    /// Minimum eccentricity and the sorted set of vertices achieving it.
    pub fn radius_and_centers(&self) -> (u32, Vec<VertexId>) {
        let eccs: Vec<u32> = (0..self.n)
            .map(|v| self.eccentricity(VertexId::new(v)))
            .collect();
        let radius = *eccs.iter().min().expect("non-empty graph");
        let centers = (0..self.n)
            .filter(|&v| eccs[v] == radius)
            .map(VertexId::new)
            .collect();
        (radius, centers)
    }

    /// The lowest-indexed center, the default cop start everywhere.
    pub fn default_center(&self) -> VertexId {
        self.radius_and_centers().1[0]
    }
}

/// A rooted spanning tree of a connected graph.
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
}

impl RootedTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.index()]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    /// Number of vertices in each rooted subtree.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut sizes = vec![1usize; n];
        for v in self.postorder() {
            for &c in self.children(v) {
                sizes[v.index()] += sizes[c.index()];
            }
        }
        sizes
    }

    /// Vertices of the subtree rooted at `v`, ascending.
    pub fn subtree_vertices(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(self.children(u));
        }
        out.sort_unstable();
        out
    }

    fn postorder(&self) -> Vec<VertexId> {
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend_from_slice(self.children(u));
        }
        order.reverse();
        order
    }

    /// The closed walk visiting every vertex by depth-first traversal,
    /// starting and ending at the root: 2(n-1) steps. The root itself is
    /// not included as the leading element.
    pub fn closed_walk(&self) -> Vec<VertexId> {
        let mut walk = Vec::with_capacity(2 * (self.vertex_count().saturating_sub(1)));
        self.walk_from(self.root, &mut walk);
        walk
    }

    fn walk_from(&self, v: VertexId, walk: &mut Vec<VertexId>) {
        for &c in self.children(v) {
            walk.push(c);
            self.walk_from(c, walk);
            walk.push(v);
        }
    }
}
