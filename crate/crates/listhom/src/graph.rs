//! Undirected graphs with loops, BFS distance layers, induced subgraphs,
//! and homomorphism checking.
//!
//! Vertices are dense integers `0..n`. Loops are stored as ordinary edges
//! `{u, u}`; breadth-first search and distance layers ignore them, while
//! homomorphism checking includes them.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected graph on vertices `0..n`. No multi-edges; loops allowed.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Normalized `(u, v)` with `u <= v`, sorted, deduplicated.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbour lists; a loop puts `u` into `adj[u]` once.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized edge pairs `(u, v)` with `u <= v`; a loop appears as `(u, u)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `u` in ascending order; `u` itself appears iff it has a loop.
    pub fn neighbours(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_edge(u, u)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Loopless complete graph on `k` vertices.
    pub fn complete(k: usize) -> Graph {
        let mut edges = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        build_graph(k, &edges).expect("complete graph edges are in range")
    }

    /// Complement within the simple (loopless) edges; loops of `self` are dropped.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        build_graph(self.n, &edges).expect("complement edges are in range")
    }
}

/// Builds a normalized graph: endpoints range-checked, pairs stored once
/// regardless of input order, duplicates collapsed.
pub fn build_graph(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(u, v) in edge_list {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for graph on {n} vertices"
            )));
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    edges.dedup();

    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        if u != v {
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, edges, adj })
}

/// Partition of the vertices into maximal connected sets, each sorted,
/// ordered by smallest member. Loops do not affect connectivity.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbours(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Distance layers of a connected graph from a start vertex.
/// `layers[i]` holds the vertices at graph distance exactly `i`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceLayers {
    pub start: usize,
    pub layers: Vec<Vec<usize>>,
}

impl DistanceLayers {
    /// Eccentricity of the start vertex: index of the last layer.
    pub fn z(&self) -> usize {
        self.layers.len() - 1
    }
}

/// BFS layers from `v0`. Loops are ignored for distance. Fails with
/// `NotConnected` if any vertex of `g` is unreachable from `v0`.
pub fn bfs_layers(g: &Graph, v0: usize) -> Result<DistanceLayers> {
    if v0 >= g.n {
        return Err(Error::InvalidInput(format!(
            "start vertex {v0} out of range for graph on {} vertices",
            g.n
        )));
    }
    let mut dist = vec![usize::MAX; g.n];
    dist[v0] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(v0);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbours(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    if reached < g.n {
        let unreachable = (0..g.n).find(|&v| dist[v] == usize::MAX).unwrap();
        return Err(Error::NotConnected {
            start: v0,
            unreachable,
        });
    }
    let z = dist.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); z + 1];
    for v in 0..g.n {
        layers[dist[v]].push(v);
    }
    // Vertices were pushed in ascending order, so each layer is sorted.
    Ok(DistanceLayers { start: v0, layers })
}

/// Old-vertex/new-vertex correspondence for an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    /// `to_old[new]` is the parent-graph vertex behind `new`.
    pub to_old: Vec<usize>,
    to_new: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.to_new.get(old).copied().flatten()
    }
}

/// Subgraph induced by `vertices`, re-indexed so that `vertices[i]` becomes
/// vertex `i`. Keeps exactly the edges (and loops) with both ends inside.
/// Entries must be distinct and in range.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> (Graph, VertexMap) {
    let mut to_new = vec![None; g.n];
    for (new, &old) in vertices.iter().enumerate() {
        assert!(old < g.n, "induced_subgraph: vertex {old} out of range");
        assert!(
            to_new[old].is_none(),
            "induced_subgraph: duplicate vertex {old}"
        );
        to_new[old] = Some(new);
    }
    let mut edges = Vec::new();
    for (new_u, &old_u) in vertices.iter().enumerate() {
        for &old_v in g.neighbours(old_u) {
            if old_v < old_u {
                continue; // each edge visited once, from its smaller end
            }
            if let Some(new_v) = to_new[old_v] {
                edges.push((new_u, new_v));
            }
        }
    }
    let sub = build_graph(vertices.len(), &edges).expect("induced edges are in range");
    (
        sub,
        VertexMap {
            to_old: vertices.to_vec(),
            to_new,
        },
    )
}

/// A total map `V(G) -> V(H)`, the witness returned by the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub image: Vec<usize>,
}

impl Homomorphism {
    pub fn new(image: Vec<usize>) -> Self {
        Homomorphism { image }
    }
}

/// True iff `f` is total on `V(g)`, maps into `V(h)`, and sends every edge
/// of `g` (loops included) to an edge of `h`.
pub fn is_homomorphism(g: &Graph, h: &Graph, f: &Homomorphism) -> bool {
    if f.image.len() != g.n {
        return false;
    }
    if f.image.iter().any(|&c| c >= h.vertex_count()) {
        return false;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| h.has_edge(f.image[u], f.image[v]))
}

/// Per-vertex subsets of the target's vertices. Lists are kept sorted and
/// deduplicated; an empty list is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListMapping {
    lists: Vec<Vec<usize>>,
}

impl ListMapping {
    pub fn new(mut lists: Vec<Vec<usize>>) -> Self {
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
        }
        ListMapping { lists }
    }

    /// All of `0..k` allowed on each of `n` vertices.
    pub fn full(n: usize, k: usize) -> Self {
        ListMapping {
            lists: vec![(0..k).collect(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, x: usize) -> &[usize] {
        &self.lists[x]
    }

    pub fn contains(&self, x: usize, colour: usize) -> bool {
        self.lists[x].binary_search(&colour).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.lists.iter().map(|l| l.as_slice())
    }

    /// Lists for the subgraph described by `map`, in the new indexing.
    pub fn restrict_vertices(&self, map: &VertexMap) -> ListMapping {
        ListMapping {
            lists: map
                .to_old
                .iter()
                .map(|&old| self.lists[old].clone())
                .collect(),
        }
    }

    /// Checks every listed colour against a target on `k` vertices.
    pub fn validate(&self, k: usize) -> Result<()> {
        for (x, list) in self.lists.iter().enumerate() {
            if let Some(&c) = list.iter().find(|&&c| c >= k) {
                return Err(Error::InvalidInput(format!(
                    "list of vertex {x} mentions colour {c}, but the target has {k} vertices"
                )));
            }
        }
        Ok(())
    }
}

/// True iff every vertex is mapped into its list.
pub fn obeys_lists(f: &Homomorphism, p: &ListMapping) -> bool {
    f.image.len() == p.len() && f.image.iter().enumerate().all(|(x, &c)| p.contains(x, c))
}
