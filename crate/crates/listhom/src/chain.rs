//! Multi-chain orderings: distance layers in which every pair of consecutive
//! layers induces a chain graph (a bipartite graph with no induced 2K_2)
//! across the layer boundary.
//!
//! Layers are ordered internally by decreasing `d_minus`, the number of
//! neighbours in the previous layer, ties broken by increasing vertex index.
//! In a chain graph this ordering puts the next-layer neighbours of any
//! vertex at the beginning of that layer, so a multi-chain ordering can be
//! verified by one prefix check per vertex in `O(m)` time.

use crate::error::{Error, Result};
use crate::graph::{bfs_layers, DistanceLayers, Graph};

/// Distance layers plus within-layer vertex order and cross-layer degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiChainOrdering {
    pub layers: DistanceLayers,
    /// Per layer, vertices sorted by decreasing `d_minus`, ties by index.
    pub order: Vec<Vec<usize>>,
    /// Neighbour count in the previous layer (0 on layer 0).
    pub d_minus: Vec<usize>,
    /// Neighbour count in the next layer (0 on the last layer).
    pub d_plus: Vec<usize>,
    /// Layer index of each vertex.
    pub layer_index: Vec<usize>,
    /// Position of each vertex within its layer's order.
    pub position: Vec<usize>,
}

impl MultiChainOrdering {
    pub fn z(&self) -> usize {
        self.layers.z()
    }

    /// Re-checks every structural invariant against `g`: layer degrees,
    /// non-increasing `d_minus` along each order, the prefix-neighbourhood
    /// property, chain graphs between consecutive layers, and a vertex in
    /// each layer adjacent to all of the next. Used for cross-validation.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(format!("ordering invariant: {msg}")));
        let z = self.z();
        for i in 0..=z {
            let layer = &self.layers.layers[i];
            let order = &self.order[i];
            if order.len() != layer.len() {
                return fail(format!("layer {i} order length mismatch"));
            }
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != *layer {
                return fail(format!("layer {i} order is not a permutation of the layer"));
            }
            for w in order.windows(2) {
                if self.d_minus[w[0]] < self.d_minus[w[1]] {
                    return fail(format!("layer {i} not sorted by decreasing d_minus"));
                }
            }
        }
        for v in 0..g.vertex_count() {
            let i = self.layer_index[v];
            let mut dm = 0;
            let mut dp = 0;
            for &u in g.neighbours(v) {
                let j = self.layer_index[u];
                if i + 1 == j {
                    dp += 1;
                } else if j + 1 == i {
                    dm += 1;
                }
            }
            if dm != self.d_minus[v] || dp != self.d_plus[v] {
                return fail(format!("degree mismatch at vertex {v}"));
            }
            // Prefix-neighbourhood property.
            if i < z {
                for &u in g.neighbours(v) {
                    if self.layer_index[u] == i + 1 && self.position[u] >= self.d_plus[v] {
                        return fail(format!(
                            "neighbours of {v} are not a prefix of layer {}",
                            i + 1
                        ));
                    }
                }
            }
        }
        for i in 0..z {
            if !is_chain_between(g, &self.order[i], &self.order[i + 1]) {
                return fail(format!(
                    "layers {i} and {} do not form a chain graph",
                    i + 1
                ));
            }
            let next_len = self.order[i + 1].len();
            if !self.order[i].iter().any(|&v| self.d_plus[v] == next_len) {
                return fail(format!(
                    "no vertex of layer {i} covers all of layer {}",
                    i + 1
                ));
            }
        }
        Ok(())
    }
}

/// Chain-graph test on the cross edges between two disjoint vertex sequences:
/// true iff the next-layer neighbourhoods of the `a` vertices are pairwise
/// nested. Runs the degree-sorted prefix test rather than pairwise nesting.
pub fn is_chain_between(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut in_a = vec![false; n];
    for &u in a {
        in_a[u] = true;
    }
    let mut b_slot = vec![usize::MAX; n];
    for (idx, &v) in b.iter().enumerate() {
        debug_assert!(!in_a[v], "is_chain_between: sides must be disjoint");
        b_slot[v] = idx;
    }
    let mut cross_degree = vec![0usize; b.len()];
    for &v in b {
        cross_degree[b_slot[v]] = g.neighbours(v).iter().filter(|&&u| in_a[u]).count();
    }
    let mut sorted: Vec<usize> = (0..b.len()).collect();
    sorted.sort_by_key(|&idx| (std::cmp::Reverse(cross_degree[idx]), b[idx]));
    let mut pos = vec![0usize; b.len()];
    for (p, &idx) in sorted.iter().enumerate() {
        pos[idx] = p;
    }
    for &u in a {
        let mut count = 0;
        let mut max_pos = 0;
        for &v in g.neighbours(u) {
            if b_slot[v] != usize::MAX {
                count += 1;
                max_pos = max_pos.max(pos[b_slot[v]]);
            }
        }
        if count > 0 && max_pos + 1 > count {
            return false;
        }
    }
    true
}

/// Builds the distance layers of a connected graph from `v0`, orders each
/// layer by decreasing `d_minus`, and verifies the prefix-neighbourhood
/// property for every vertex. Returns `None` when the layers from `v0` do
/// not form a multi-chain ordering.
pub fn ordering_from(g: &Graph, v0: usize) -> Result<Option<MultiChainOrdering>> {
    let layers = bfs_layers(g, v0)?;
    let n = g.vertex_count();
    let z = layers.z();

    let mut layer_index = vec![0usize; n];
    for (i, layer) in layers.layers.iter().enumerate() {
        for &v in layer {
            layer_index[v] = i;
        }
    }
    let mut d_minus = vec![0usize; n];
    let mut d_plus = vec![0usize; n];
    for v in 0..n {
        for &u in g.neighbours(v) {
            if layer_index[u] + 1 == layer_index[v] {
                d_minus[v] += 1;
            } else if layer_index[v] + 1 == layer_index[u] {
                d_plus[v] += 1;
            }
        }
    }

    // Counting sort within each layer: decreasing d_minus, ties by index.
    let mut order = Vec::with_capacity(z + 1);
    let mut position = vec![0usize; n];
    for (i, layer) in layers.layers.iter().enumerate() {
        let max_deg = if i == 0 {
            0
        } else {
            layers.layers[i - 1].len()
        };
        let mut buckets = vec![Vec::new(); max_deg + 1];
        for &v in layer {
            buckets[d_minus[v]].push(v); // layers are sorted, so buckets stay sorted
        }
        let mut layer_order = Vec::with_capacity(layer.len());
        for bucket in buckets.iter().rev() {
            layer_order.extend_from_slice(bucket);
        }
        for (p, &v) in layer_order.iter().enumerate() {
            position[v] = p;
        }
        order.push(layer_order);
    }

    // Prefix check: the next-layer neighbours of every vertex must occupy
    // the first d_plus positions of that layer.
    for v in 0..n {
        if layer_index[v] == z {
            continue;
        }
        for &u in g.neighbours(v) {
            if layer_index[u] == layer_index[v] + 1 && position[u] >= d_plus[v] {
                return Ok(None);
            }
        }
    }

    Ok(Some(MultiChainOrdering {
        layers,
        order,
        d_minus,
        d_plus,
        layer_index,
        position,
    }))
}

/// Searches for a multi-chain ordering of a connected graph: the hint vertex
/// first when given, then every vertex in increasing index order. Returns the
/// first ordering found.
pub fn find_ordering(g: &Graph, hint: Option<usize>) -> Result<Option<MultiChainOrdering>> {
    if let Some(v) = hint {
        if let Some(ordering) = ordering_from(g, v)? {
            return Ok(Some(ordering));
        }
    }
    for v in 0..g.vertex_count() {
        if hint == Some(v) {
            continue;
        }
        if let Some(ordering) = ordering_from(g, v)? {
            return Ok(Some(ordering));
        }
    }
    Ok(None)
}

/// Start vertex for graphs built by the permutation edge rule
/// (`x_i x_j` for `i < j` with `pi(i) < pi(j)`): the last vertex.
///
/// Orienting edges from lower to higher index is transitive on such graphs
/// and on their complements, and the last vertex is a sink in both, so BFS
/// from it yields a multi-chain ordering of its component. Callers should
/// still validate via `ordering_from`.
pub fn permutation_start_vertex(n: usize) -> usize {
    assert!(n > 0, "permutation on zero elements has no vertices");
    n - 1
}

/// Start vertex for interval intersection graphs: the index of the interval
/// with the leftmost left endpoint. Requires all `2n` endpoints distinct.
pub fn interval_start_vertex(intervals: &[(f64, f64)]) -> Result<usize> {
    if intervals.is_empty() {
        return Err(Error::InvalidInput("no intervals given".into()));
    }
    let mut endpoints: Vec<f64> = intervals.iter().flat_map(|&(l, r)| [l, r]).collect();
    endpoints.sort_by(f64::total_cmp);
    if endpoints.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(
            "interval endpoints must be distinct".into(),
        ));
    }
    let mut best = 0;
    for (i, &(l, _)) in intervals.iter().enumerate() {
        if l < intervals[best].0 {
            best = i;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        build_graph(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        build_graph(n, &edges).unwrap()
    }

    fn subdivided_claw() -> Graph {
        build_graph(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn two_k2_is_not_a_chain() {
        let g = build_graph(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(!is_chain_between(&g, &[0, 1], &[2, 3]));
    }

    #[test]
    fn complete_bipartite_is_a_chain() {
        let g = build_graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_chain_between(&g, &[0, 1], &[2, 3]));
    }

    #[test]
    fn single_vertex_side_is_a_chain() {
        let g = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_chain_between(&g, &[0], &[1, 2, 3]));
    }

    #[test]
    fn path_orders_from_endpoint() {
        let ordering = ordering_from(&path(3), 0).unwrap().unwrap();
        assert_eq!(ordering.layers.layers, vec![vec![0], vec![1], vec![2]]);
        ordering.validate(&path(3)).unwrap();
    }

    #[test]
    fn c5_has_no_ordering_from_any_vertex() {
        let g = cycle(5);
        for v in 0..5 {
            assert!(ordering_from(&g, v).unwrap().is_none());
        }
    }

    #[test]
    fn c4_orders_from_any_vertex() {
        let g = cycle(4);
        let ordering = ordering_from(&g, 0).unwrap().unwrap();
        assert_eq!(ordering.layers.layers, vec![vec![0], vec![1, 3], vec![2]]);
        // Both boundary bipartite graphs are complete, hence chains.
        assert!(is_chain_between(&g, &ordering.order[0], &ordering.order[1]));
        assert!(is_chain_between(&g, &ordering.order[1], &ordering.order[2]));
        ordering.validate(&g).unwrap();
    }

    #[test]
    fn subdivided_claw_has_no_ordering() {
        assert!(find_ordering(&subdivided_claw(), None).unwrap().is_none());
    }

    #[test]
    fn complement_of_c6_has_no_ordering() {
        let co_c6 = cycle(6).complement();
        assert!(find_ordering(&co_c6, None).unwrap().is_none());
    }

    #[test]
    fn complement_of_claw_has_an_ordering() {
        let g = subdivided_claw().complement();
        assert!(find_ordering(&g, None).unwrap().is_some());
    }

    #[test]
    fn find_ordering_honours_hint() {
        let g = path(4);
        let from_hint = find_ordering(&g, Some(3)).unwrap().unwrap();
        assert_eq!(from_hint.layers.start, 3);
        let unhinted = find_ordering(&g, None).unwrap().unwrap();
        assert_eq!(unhinted.layers.start, 0);
    }

    #[test]
    fn find_ordering_requires_connectivity() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            find_ordering(&g, None),
            Err(Error::NotConnected { .. })
        ));
    }

    #[test]
    fn permutation_start_is_last_index() {
        assert_eq!(permutation_start_vertex(5), 4);
        assert_eq!(permutation_start_vertex(1), 0);
    }

    #[test]
    fn leftmost_interval_is_found() {
        assert_eq!(
            interval_start_vertex(&[(0.0, 5.0), (1.0, 2.0), (3.0, 4.0)]).unwrap(),
            0
        );
        assert_eq!(interval_start_vertex(&[(2.0, 3.0), (0.0, 1.0)]).unwrap(), 1);
    }

    #[test]
    fn duplicate_endpoints_rejected() {
        assert!(matches!(
            interval_start_vertex(&[(0.0, 1.0), (1.0, 2.0)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn loops_do_not_change_orderings() {
        let mut edges = vec![(0, 1), (1, 2), (1, 3), (2, 3)];
        let plain = build_graph(4, &edges).unwrap();
        edges.push((1, 1));
        edges.push((3, 3));
        let looped = build_graph(4, &edges).unwrap();
        for v in 0..4 {
            let a = ordering_from(&plain, v).unwrap();
            let b = ordering_from(&looped, v).unwrap();
            assert_eq!(a, b);
        }
    }
}
