//! Balanced connected decompositions: limb extraction from rooted trees and
//! connected covers with at most k sectors of size at most 2*floor(n/(k+1))+1,
//! plus the per-sector color labelings consumed by the distributed strategies.
//!
//! A branch of a rooted tree is a vertex together with one of its children's
//! subtrees; a limb is a vertex together with any subset of its branches.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, RootedTree, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("extraction parameter x={x} must satisfy 2 <= x < n (n={n})")]
    InvalidX { x: usize, n: usize },
}

/// A limb `S` with its anchor `v`: the induced subtree on `S` is the anchor
/// plus a subset of the anchor's branches, and the rest of the graph stays
/// connected through the anchor.
#[derive(Clone, Debug)]
pub struct Limb {
    pub vertices: Vec<VertexId>,
    pub anchor: VertexId,
}

/// Extracts a limb `S` with `x < |S| <= 2x-1` whose removal (keeping the
/// anchor) leaves the tree connected.
///
/// Follows the constructive recursion: if the whole subtree already fits,
/// take it; otherwise descend into an oversized maximum branch, or take the
/// maximum branch alone, or accumulate next-largest branches at the root
/// until the size exceeds `x`.
pub fn extract_limb(tree: &RootedTree, x: usize) -> Result<Limb, PartitionError> {
    let n = tree.vertex_count();
    if x < 2 || x >= n {
        return Err(PartitionError::InvalidX { x, n });
    }
    let sizes = tree.subtree_sizes();
    let mut root = tree.root();
    loop {
        let m = sizes[root.index()];
        debug_assert!(m > x);
        if m < 2 * x {
            return Ok(Limb {
                vertices: tree.subtree_vertices(root),
                anchor: root,
            });
        }
        // Branch sizes at the current root, largest first; ties keep the
        // ascending child order.
        let mut branches: Vec<(VertexId, usize)> = tree
            .children(root)
            .iter()
            .map(|&c| (c, sizes[c.index()] + 1))
            .collect();
        branches.sort_by_key(|&(_, s)| std::cmp::Reverse(s));
        let (largest_child, largest) = branches[0];
        if largest > 2 * x - 1 {
            root = largest_child;
            continue;
        }
        let mut members = Vec::new();
        let mut size = 1usize;
        for &(c, bsize) in &branches {
            members.push(c);
            size += bsize - 1;
            if size > x {
                break;
            }
        }
        debug_assert!(size > x && size < 2 * x);
        let mut vertices = vec![root];
        for c in members {
            vertices.extend(tree.subtree_vertices(c));
        }
        vertices.sort_unstable();
        return Ok(Limb {
            vertices,
            anchor: root,
        });
    }
}

/// The tree witnessing that 2x-1 is tight: a root with three children, each
/// carrying x-2 leaves, for n = 3x-2 vertices. No limb of it has a size
/// strictly between x and 2x-1.
pub fn figure1_tree(x: usize) -> Result<Graph, GraphError> {
    if x < 3 {
        return Err(GraphError::InvalidSize {
            kind: "figure1_tree",
            min: 3,
            n: x,
        });
    }
    let n = 3 * x - 2;
    let mut edges = Vec::with_capacity(n - 1);
    for mid in 1..=3 {
        edges.push((0, mid));
        for leaf in 0..x - 2 {
            edges.push((mid, 4 + (mid - 1) * (x - 2) + leaf));
        }
    }
    Graph::from_edges(n, edges)
}

/// One connected sector of a cover and the anchor it may share with the
/// rest of the cover.
#[derive(Clone, Debug)]
pub struct Sector {
    pub vertices: Vec<VertexId>,
    pub anchor: VertexId,
}

/// A covering of the vertex set by at most k connected sectors of size at
/// most 2*floor(n/(k+1))+1. Consecutive sectors may share their anchors.
#[derive(Clone, Debug)]
pub struct Cover {
    sectors: Vec<Sector>,
}

impl Cover {
    pub fn from_sectors(sectors: Vec<Sector>) -> Self {
        Cover { sectors }
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    /// The guaranteed per-sector size bound for an (n, k) cover.
    pub fn size_bound(n: usize, k: usize) -> usize {
        2 * (n / (k + 1)) + 1
    }

    /// One line per sector: `anchor: v | members: v1 v2 ...`
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sectors {
            let _ = write!(out, "anchor: {} | members:", s.anchor);
            for &v in &s.vertices {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Covers the graph with at most `k` connected sectors of size at most
/// `2*floor(n/(k+1))+1` by repeatedly extracting limbs with
/// `x = floor(n'/(k'+1)) + 1` from a spanning tree of what remains.
pub fn cover_sectors(graph: &Graph, k: usize) -> Cover {
    assert!(k >= 1, "need at least one sector");
    let mut active: Vec<VertexId> = graph.vertices().collect();
    let mut remaining = k;
    let mut sectors = Vec::new();
    loop {
        let n_act = active.len();
        if remaining == 1 {
            sectors.push(Sector {
                anchor: active[0],
                vertices: active,
            });
            break;
        }
        if n_act <= remaining {
            for &v in &active {
                sectors.push(Sector {
                    vertices: vec![v],
                    anchor: v,
                });
            }
            break;
        }
        let x = n_act / (remaining + 1) + 1;
        let (sub, globals) = graph.induced_subgraph(&active);
        let tree = sub.rooted_spanning_tree(VertexId::new(0));
        let limb = extract_limb(&tree, x).expect("2 <= x < n by construction");
        let anchor = globals[limb.anchor.index()];
        let sector_verts: Vec<VertexId> =
            limb.vertices.iter().map(|v| globals[v.index()]).collect();
        let mut in_sector = vec![false; graph.vertex_count()];
        for &v in &sector_verts {
            in_sector[v.index()] = true;
        }
        sectors.push(Sector {
            vertices: sector_verts,
            anchor,
        });
        active.retain(|&v| !in_sector[v.index()] || v == anchor);
        remaining -= 1;
    }
    Cover { sectors }
}

/// Per-sector color labels. A vertex shared between sectors holds one color
/// in each containing sector.
#[derive(Clone, Debug)]
pub struct ColorMap {
    by_color: Vec<BTreeMap<usize, VertexId>>,
    by_vertex: Vec<BTreeMap<VertexId, usize>>,
}

impl ColorMap {
    fn from_assignments(assignments: Vec<Vec<(VertexId, usize)>>) -> Self {
        let mut by_color = Vec::with_capacity(assignments.len());
        let mut by_vertex = Vec::with_capacity(assignments.len());
        for sector in assignments {
            let mut cmap = BTreeMap::new();
            let mut vmap = BTreeMap::new();
            for (v, c) in sector {
                let prev = cmap.insert(c, v);
                debug_assert!(prev.is_none(), "duplicate color {c} in sector");
                vmap.insert(v, c);
            }
            by_color.push(cmap);
            by_vertex.push(vmap);
        }
        ColorMap { by_color, by_vertex }
    }

    pub fn sector_count(&self) -> usize {
        self.by_color.len()
    }

    pub fn vertex_with_color(&self, sector: usize, color: usize) -> Option<VertexId> {
        self.by_color[sector].get(&color).copied()
    }

    pub fn color_in_sector(&self, sector: usize, v: VertexId) -> Option<usize> {
        self.by_vertex[sector].get(&v).copied()
    }

    /// The color of `v` in its lowest-indexed containing sector.
    pub fn resolve_color(&self, v: VertexId) -> Option<usize> {
        self.by_vertex.iter().find_map(|m| m.get(&v).copied())
    }
}

/// Colors each sector's vertices 1..=|sector| in ascending vertex order.
pub fn color_sectors(cover: &Cover) -> ColorMap {
    let assignments = cover
        .sectors()
        .iter()
        .map(|s| {
            s.vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i + 1))
                .collect()
        })
        .collect();
    ColorMap::from_assignments(assignments)
}

/// Star-hub coloring: in every sector the hub takes the fixed top color
/// while the other vertices are colored 1.. in ascending order. `top_color`
/// must exceed every sector's non-hub count.
pub fn color_sectors_star(cover: &Cover, hub: VertexId, top_color: usize) -> ColorMap {
    let assignments = cover
        .sectors()
        .iter()
        .map(|s| {
            let mut out = Vec::with_capacity(s.vertices.len());
            let mut next = 1;
            for &v in &s.vertices {
                if v == hub {
                    out.push((v, top_color));
                } else {
                    debug_assert!(next < top_color, "top color not above leaf colors");
                    out.push((v, next));
                    next += 1;
                }
            }
            out
        })
        .collect();
    ColorMap::from_assignments(assignments)
}
