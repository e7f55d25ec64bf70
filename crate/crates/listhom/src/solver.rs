//! The layered list-homomorphism solver.
//!
//! The solver first shrinks the problem: the target is restricted to the
//! colours that actually occur in lists, and whenever the target has a
//! universal vertex `c` (adjacent to every target vertex, itself included)
//! the input shrinks to the vertices whose lists exclude `c` — everything
//! else can map to `c`. Both reductions preserve the answer and are iterated
//! to a fixed point. Inputs whose target has at most two vertices, and
//! single-vertex inputs, are solved directly.
//!
//! Everything else runs through a multi-chain ordering of each connected
//! component: for every layer `L_i` of size `ell` a *configuration* `(i, B)`
//! records, per colour `c`, a bound `B(c)` meaning "`c` is not used on the
//! first `B(c)` vertices of the layer"; `B` must attain both `0` and `ell`.
//! Consecutive configurations are joined by an edge exactly when the layer
//! graph `G_i` admits a homomorphism obeying lists reduced by the two
//! bounds, and the instance is solvable exactly when the configuration
//! graph has a path from the start sentinel to the end sentinel. Each edge
//! stores one homomorphism of its layer; stitching them along a path yields
//! the witness. Edge tests recurse into the full solver, and every
//! recursion level loses at least one colour, so the depth is bounded by
//! the target size.

use std::collections::VecDeque;

use crate::chain::{find_ordering, MultiChainOrdering};
use crate::error::{Error, Result};
use crate::graph::{
    connected_components, induced_subgraph, is_homomorphism, obeys_lists, Graph, Homomorphism,
    ListMapping, VertexMap,
};

/// Outcome of a solve: a witness, or a proof-free "no".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// A list homomorphism exists; here is one.
    True(Homomorphism),
    /// No list homomorphism exists.
    False,
}

impl SolveResult {
    pub fn is_true(&self) -> bool {
        matches!(self, SolveResult::True(_))
    }

    pub fn witness(&self) -> Option<&Homomorphism> {
        match self {
            SolveResult::True(f) => Some(f),
            SolveResult::False => None,
        }
    }

    pub fn into_witness(self) -> Option<Homomorphism> {
        match self {
            SolveResult::True(f) => Some(f),
            SolveResult::False => None,
        }
    }
}

/// Work counters for one solve, recursion included.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Configuration pairs submitted to the edge test.
    pub edge_tests: u64,
    /// Configurations enumerated across all configuration graphs.
    pub configurations: u64,
    /// Deepest recursion level reached (the top-level call is 0).
    pub max_depth: usize,
}

/// Per-layer colour bounds. `bounds[c] = b` asserts that colour `c` is not
/// used on the first `b` vertices of the layer; non-sentinel configurations
/// attain both `0` and the layer size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub layer: usize,
    pub bounds: Vec<usize>,
}

impl Configuration {
    /// The all-zero configuration bracketing the layered graph (layers `0`
    /// and `z+1`).
    pub fn sentinel(layer: usize, k: usize) -> Self {
        Configuration {
            layer,
            bounds: vec![0; k],
        }
    }

    /// Bounds-validity against a layer of size `ell`: values in range and
    /// both extremes attained.
    pub fn is_valid_for(&self, ell: usize) -> bool {
        self.bounds.iter().all(|&b| b <= ell)
            && self.bounds.contains(&0)
            && self.bounds.contains(&ell)
    }
}

/// A realized configuration-graph edge: indices into the adjacent layers'
/// node lists plus one homomorphism of the source layer that proves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEdge {
    pub from: usize,
    pub to: usize,
    pub witness: Homomorphism,
}

/// The layered DAG of configurations. `nodes[t]` holds layer `t`'s
/// configurations (`t = 0` and `t = z+1` are single sentinels); `edges[t]`
/// the realized edges from layer `t` to `t+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigGraph {
    pub nodes: Vec<Vec<Configuration>>,
    pub edges: Vec<Vec<ConfigEdge>>,
}

impl ConfigGraph {
    /// Index of the last real layer; `nodes` spans `0..=z+1`.
    pub fn z(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn node_count(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Position of a configuration within its layer's node list.
    pub fn node_index(&self, layer: usize, cfg: &Configuration) -> Option<usize> {
        self.nodes[layer].iter().position(|c| c == cfg)
    }

    /// Whether the edge `from -> to` across boundary `t` was realized.
    pub fn has_edge(&self, t: usize, from: usize, to: usize) -> bool {
        self.edges[t].iter().any(|e| e.from == from && e.to == to)
    }

    /// Re-checks every stored edge witness against the defining conditions.
    pub fn validate(
        &self,
        g: &Graph,
        p: &ListMapping,
        h: &Graph,
        ordering: &MultiChainOrdering,
    ) -> Result<()> {
        if ordering.z() != self.z() {
            return Err(Error::Internal(
                "configuration graph does not match the ordering".into(),
            ));
        }
        for t in 0..=self.z() {
            let layer = &ordering.order[t];
            let (g_t, _) = induced_subgraph(g, layer);
            for e in &self.edges[t] {
                let s = &self.nodes[t][e.from];
                let s2 = &self.nodes[t + 1][e.to];
                if !verify_edge_witness(s, s2, layer, &g_t, p, &ordering.d_plus, h, &e.witness) {
                    return Err(Error::Internal(format!(
                        "stored witness for boundary {t} edge {} -> {} fails its conditions",
                        e.from, e.to
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Restricts the target to the colours that occur in at least one list.
/// Returns the induced target, the lists rewritten to its numbering, and
/// the colour correspondence. Preserves the answer.
pub fn restrict_target(h: &Graph, p: &ListMapping) -> (Graph, ListMapping, VertexMap) {
    let mut used = vec![false; h.vertex_count()];
    for list in p.iter() {
        for &c in list {
            used[c] = true;
        }
    }
    let kept: Vec<usize> = (0..h.vertex_count()).filter(|&c| used[c]).collect();
    let (h2, map) = induced_subgraph(h, &kept);
    let lists = p
        .iter()
        .map(|list| {
            list.iter()
                .map(|&c| map.to_new(c).expect("used colour survives restriction"))
                .collect()
        })
        .collect();
    (h2, ListMapping::new(lists), map)
}

/// Result of one universal-vertex reduction step.
#[derive(Debug, Clone)]
pub struct UniversalReduction {
    /// The universal target vertex everything removed can map to.
    pub colour: usize,
    /// Input graph induced on the vertices whose lists exclude `colour`.
    pub g: Graph,
    /// Lists of the kept vertices, colours unchanged.
    pub lists: ListMapping,
    /// Kept-vertex correspondence.
    pub vertex_map: VertexMap,
}

/// If the target has a universal vertex `c` — adjacent to every target
/// vertex including itself — drops every input vertex whose list contains
/// `c` (each can map to `c` freely). Returns `None` when no universal
/// vertex exists. Preserves the answer.
pub fn universal_vertex_reduction(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
) -> Option<UniversalReduction> {
    let k = h.vertex_count();
    // Neighbour lists are sorted and deduplicated, so degree k means
    // adjacent to all of 0..k, the loop included.
    let colour = (0..k).find(|&c| h.degree(c) == k)?;
    let kept: Vec<usize> = (0..g.vertex_count())
        .filter(|&x| !p.contains(x, colour))
        .collect();
    let (sub, vertex_map) = induced_subgraph(g, &kept);
    let lists = p.restrict_vertices(&vertex_map);
    Some(UniversalReduction {
        colour,
        g: sub,
        lists,
        vertex_map,
    })
}

/// A witness-reconstruction record for one applied reduction.
enum Frame {
    /// Target restriction: `to_old[new_colour] = old_colour`.
    Colours(Vec<usize>),
    /// Universal-vertex reduction: removed vertices map to `colour`.
    Vertices {
        colour: usize,
        n_before: usize,
        to_old: Vec<usize>,
    },
}

struct Reduced {
    g: Graph,
    p: ListMapping,
    h: Graph,
    frames: Vec<Frame>,
}

/// Alternates target restriction and universal-vertex reduction until
/// neither changes anything. Terminates because a universal vertex of a
/// restricted target occurs in some list, so each reduction round removes
/// at least one input vertex.
fn reduce_fixed_point(g: &Graph, p: &ListMapping, h: &Graph) -> Reduced {
    let mut g = g.clone();
    let mut p = p.clone();
    let mut h = h.clone();
    let mut frames = Vec::new();
    while g.vertex_count() > 0 {
        let (h2, p2, map) = restrict_target(&h, &p);
        if h2.vertex_count() < h.vertex_count() {
            frames.push(Frame::Colours(map.to_old.clone()));
            h = h2;
            p = p2;
        }
        match universal_vertex_reduction(&g, &p, &h) {
            Some(red) => {
                frames.push(Frame::Vertices {
                    colour: red.colour,
                    n_before: g.vertex_count(),
                    to_old: red.vertex_map.to_old.clone(),
                });
                g = red.g;
                p = red.lists;
            }
            None => break,
        }
    }
    Reduced { g, p, h, frames }
}

/// The reduction fixed point by itself, for inspection and export.
pub fn apply_reductions(g: &Graph, p: &ListMapping, h: &Graph) -> (Graph, ListMapping, Graph) {
    let red = reduce_fixed_point(g, p, h);
    (red.g, red.p, red.h)
}

/// Replays reductions backwards, growing a witness of the reduced instance
/// into one of the original instance.
fn unwind_frames(frames: Vec<Frame>, f: Homomorphism) -> Homomorphism {
    let mut image = f.image;
    for frame in frames.into_iter().rev() {
        match frame {
            Frame::Colours(to_old) => {
                for c in &mut image {
                    *c = to_old[*c];
                }
            }
            Frame::Vertices {
                colour,
                n_before,
                to_old,
            } => {
                let mut grown = vec![colour; n_before];
                for (new, &old) in to_old.iter().enumerate() {
                    grown[old] = image[new];
                }
                image = grown;
            }
        }
    }
    Homomorphism::new(image)
}

/// Direct solver for the cases the layer machinery does not handle: a
/// single-vertex input, or a target with at most two vertices and no
/// universal vertex. Components are processed independently.
pub fn solve_base_small(g: &Graph, p: &ListMapping, h: &Graph) -> Result<SolveResult> {
    let n = g.vertex_count();
    if p.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} vertices",
            p.len(),
            n
        )));
    }
    p.validate(h.vertex_count())?;
    if n == 0 {
        return Ok(SolveResult::True(Homomorphism::new(Vec::new())));
    }
    if n == 1 {
        for &c in p.list(0) {
            if !g.has_loop(0) || h.has_edge(c, c) {
                return Ok(SolveResult::True(Homomorphism::new(vec![c])));
            }
        }
        return Ok(SolveResult::False);
    }
    let k = h.vertex_count();
    if k > 2 {
        return Err(Error::Internal(
            "base-case solver needs a single vertex or a target of at most 2 vertices".into(),
        ));
    }
    if k == 2 && h.has_edge(0, 1) {
        if h.has_loop(0) || h.has_loop(1) {
            return Err(Error::Internal(
                "target with a universal vertex reached the base-case solver".into(),
            ));
        }
        Ok(two_colouring(g, p))
    } else {
        Ok(constant_components(g, p, h))
    }
}

/// Adjacent loopless pair: each component has at most two solutions, its
/// bipartition colourings. Any loop or odd cycle is fatal.
fn two_colouring(g: &Graph, p: &ListMapping) -> SolveResult {
    let mut image = vec![0usize; g.vertex_count()];
    let mut side = vec![usize::MAX; g.vertex_count()];
    for comp in connected_components(g) {
        side[comp[0]] = 0;
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbours(u) {
                if v == u {
                    return SolveResult::False; // loop, target has none
                }
                if side[v] == usize::MAX {
                    side[v] = 1 - side[u];
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return SolveResult::False; // odd cycle
                }
            }
        }
        let flip = (0..2).find(|&f| comp.iter().all(|&x| p.contains(x, side[x] ^ f)));
        match flip {
            Some(f) => {
                for &x in &comp {
                    image[x] = side[x] ^ f;
                }
            }
            None => return SolveResult::False,
        }
    }
    SolveResult::True(Homomorphism::new(image))
}

/// Non-adjacent target vertices: adjacent input vertices must share a
/// colour, so each component maps to a single colour, which needs a loop
/// unless the component is edge-free.
fn constant_components(g: &Graph, p: &ListMapping, h: &Graph) -> SolveResult {
    let mut image = vec![0usize; g.vertex_count()];
    for comp in connected_components(g) {
        let has_edge = comp.iter().any(|&x| g.degree(x) > 0);
        let choice = (0..h.vertex_count())
            .find(|&c| (!has_edge || h.has_loop(c)) && comp.iter().all(|&x| p.contains(x, c)));
        match choice {
            Some(c) => {
                for &x in &comp {
                    image[x] = c;
                }
            }
            None => return SolveResult::False,
        }
    }
    SolveResult::True(Homomorphism::new(image))
}

/// All bound functions for a layer of size `ell` over `k` colours that
/// attain both `0` and `ell`, in lexicographic order. Their number is
/// `(ell+1)^k - 2*ell^k + (ell-1)^k`.
pub fn enumerate_configurations(
    layer_index: usize,
    ell: usize,
    k: usize,
) -> Result<Vec<Configuration>> {
    if k < 3 {
        return Err(Error::InvalidInput(format!(
            "configurations need at least 3 colours, got {k}"
        )));
    }
    if ell == 0 {
        return Err(Error::InvalidInput("layers are never empty".into()));
    }
    let mut out = Vec::new();
    let mut bounds = vec![0usize; k];
    loop {
        if bounds.contains(&0) && bounds.contains(&ell) {
            out.push(Configuration {
                layer: layer_index,
                bounds: bounds.clone(),
            });
        }
        // Odometer step, least-significant digit last: lexicographic order.
        let mut pos = k;
        while pos > 0 {
            if bounds[pos - 1] < ell {
                bounds[pos - 1] += 1;
                bounds[pos..].iter_mut().for_each(|b| *b = 0);
                break;
            }
            pos -= 1;
        }
        if pos == 0 {
            return Ok(out);
        }
    }
}

/// Closed form for the number of valid configurations on a layer of size
/// `ell >= 1`: maps `{k colours} -> {0..ell}` minus those missing `0`,
/// minus those missing `ell`, plus those missing both (inclusion–exclusion).
/// `None` on overflow or `ell = 0`.
pub fn configuration_count(ell: usize, k: usize) -> Option<u128> {
    if ell == 0 {
        return None;
    }
    let (ell, k) = (ell as u128, k as u32);
    let all = (ell + 1).checked_pow(k)?;
    let missing_low_or_high = ell.checked_pow(k)?.checked_mul(2)?;
    let missing_both = (ell - 1).checked_pow(k)?;
    all.checked_add(missing_both)?
        .checked_sub(missing_low_or_high)
}

/// Lists for the source layer of a prospective configuration edge
/// `s -> s2`. A colour `c` survives on the vertex at (0-based) position
/// `idx` iff `s` allows it there (`bounds[c] <= idx`) and every colour
/// non-adjacent to `c` keeps a bound in `s2` of at least the vertex's
/// next-layer degree. `layer` must be in multi-chain order; `d_plus` is
/// indexed by vertex.
pub fn reduced_lists_for_edge(
    s: &Configuration,
    s2: &Configuration,
    layer: &[usize],
    p: &ListMapping,
    d_plus: &[usize],
    h: &Graph,
) -> ListMapping {
    debug_assert_eq!(s.layer + 1, s2.layer, "configurations must be consecutive");
    let k = h.vertex_count();
    let lists = layer
        .iter()
        .enumerate()
        .map(|(idx, &x)| {
            p.list(x)
                .iter()
                .copied()
                .filter(|&c| {
                    s.bounds[c] <= idx
                        && (0..k).all(|c2| d_plus[x] <= s2.bounds[c2] || h.has_edge(c, c2))
                })
                .collect()
        })
        .collect();
    ListMapping::new(lists)
}

/// Decides one configuration edge: does the layer graph `g_i` have a
/// homomorphism obeying the reduced lists? Returns its witness if so.
/// `s` and `s2` are the endpoints the lists were reduced for.
pub fn edge_test(
    s: &Configuration,
    s2: &Configuration,
    g_i: &Graph,
    p_prime: &ListMapping,
    h: &Graph,
) -> Result<Option<Homomorphism>> {
    debug_assert_eq!(s.layer + 1, s2.layer, "configurations must be consecutive");
    let (result, _) = lh_solve_detailed(g_i, p_prime, h)?;
    Ok(result.into_witness())
}

/// Independent re-check of a stored edge witness: a homomorphism of the
/// layer graph that obeys the original lists, avoids each colour `c` on the
/// first `bounds[c]` vertices of the source configuration, and whose
/// non-neighbouring colours keep bounds at least `d_plus` in the target
/// configuration.
#[allow(clippy::too_many_arguments)]
pub fn verify_edge_witness(
    s: &Configuration,
    s2: &Configuration,
    layer: &[usize],
    g_i: &Graph,
    p: &ListMapping,
    d_plus: &[usize],
    h: &Graph,
    chi: &Homomorphism,
) -> bool {
    chi.image.len() == layer.len()
        && is_homomorphism(g_i, h, chi)
        && layer.iter().enumerate().all(|(pos, &x)| {
            let c = chi.image[pos];
            p.contains(x, c)
                && s.bounds[c] <= pos
                && (0..h.vertex_count()).all(|c2| h.has_edge(c, c2) || s2.bounds[c2] >= d_plus[x])
        })
}

/// Builds the full configuration graph of a connected input with the given
/// multi-chain ordering: every consecutive configuration pair is submitted
/// to the edge test. Requires a target with at least 3 vertices; apply the
/// reductions first.
pub fn build_configuration_graph(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
    ordering: &MultiChainOrdering,
) -> Result<ConfigGraph> {
    if h.vertex_count() < 3 {
        return Err(Error::InvalidInput(
            "configuration graphs are built for targets with at least 3 vertices".into(),
        ));
    }
    if p.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} vertices",
            p.len(),
            g.vertex_count()
        )));
    }
    p.validate(h.vertex_count())?;
    let mut stats = SolveStats::default();
    build_configuration_graph_inner(g, p, h, ordering, 0, &mut stats)
}

fn build_configuration_graph_inner(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
    ordering: &MultiChainOrdering,
    depth: usize,
    stats: &mut SolveStats,
) -> Result<ConfigGraph> {
    let k = h.vertex_count();
    let z = ordering.z();

    let mut nodes = Vec::with_capacity(z + 2);
    nodes.push(vec![Configuration::sentinel(0, k)]);
    for t in 1..=z {
        nodes.push(enumerate_configurations(t, ordering.order[t].len(), k)?);
    }
    nodes.push(vec![Configuration::sentinel(z + 1, k)]);
    stats.configurations += nodes.iter().map(|l| l.len() as u64).sum::<u64>();

    let mut edges = Vec::with_capacity(z + 1);
    for t in 0..=z {
        let layer = &ordering.order[t];
        let (g_t, _) = induced_subgraph(g, layer);
        let mut boundary = Vec::new();
        for (from, s) in nodes[t].iter().enumerate() {
            for (to, s2) in nodes[t + 1].iter().enumerate() {
                let p_prime = reduced_lists_for_edge(s, s2, layer, p, &ordering.d_plus, h);
                stats.edge_tests += 1;
                let outcome = solve_rec(&g_t, &p_prime, h, depth + 1, stats)?;
                if let SolveResult::True(witness) = outcome {
                    boundary.push(ConfigEdge { from, to, witness });
                }
            }
        }
        edges.push(boundary);
    }
    Ok(ConfigGraph { nodes, edges })
}

/// Start-to-end sentinel reachability over the layered DAG. Returns, per
/// boundary `t`, the index into `edges[t]` of the edge used, or `None` when
/// the end sentinel is unreachable. Deterministic: the first realized edge
/// into each node wins.
pub fn reachability(cg: &ConfigGraph) -> Option<Vec<usize>> {
    let z = cg.z();
    let mut reached: Vec<Vec<bool>> = cg.nodes.iter().map(|l| vec![false; l.len()]).collect();
    let mut pred: Vec<Vec<usize>> = cg.nodes.iter().map(|l| vec![usize::MAX; l.len()]).collect();
    reached[0][0] = true;
    for t in 0..=z {
        for (e_idx, e) in cg.edges[t].iter().enumerate() {
            if reached[t][e.from] && !reached[t + 1][e.to] {
                reached[t + 1][e.to] = true;
                pred[t + 1][e.to] = e_idx;
            }
        }
    }
    if !reached[z + 1][0] {
        return None;
    }
    let mut path = vec![0usize; z + 1];
    let mut node = 0;
    for t in (0..=z).rev() {
        let e_idx = pred[t + 1][node];
        path[t] = e_idx;
        node = cg.edges[t][e_idx].from;
    }
    Some(path)
}

/// The configurations a known homomorphism traces through layers `1..=z`:
/// `bounds[c]` is the position of the first vertex of the layer coloured
/// `c`, or the layer size if `c` is unused there.
pub fn canonical_configurations(
    ordering: &MultiChainOrdering,
    f: &Homomorphism,
    k: usize,
) -> Vec<Configuration> {
    (1..=ordering.z())
        .map(|i| {
            let layer = &ordering.order[i];
            let mut bounds = vec![layer.len(); k];
            for (pos, &v) in layer.iter().enumerate() {
                let c = f.image[v];
                if bounds[c] > pos {
                    bounds[c] = pos;
                }
            }
            Configuration { layer: i, bounds }
        })
        .collect()
}

/// Decides whether a list homomorphism `g -> h` exists and produces a
/// witness when it does. `NotInClass` reports a connected induced subgraph
/// with no multi-chain ordering when one blocks the layer machinery.
pub fn lh_solve(g: &Graph, p: &ListMapping, h: &Graph) -> Result<SolveResult> {
    lh_solve_detailed(g, p, h).map(|(result, _)| result)
}

/// `lh_solve` plus work counters.
pub fn lh_solve_detailed(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
) -> Result<(SolveResult, SolveStats)> {
    if p.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} vertices",
            p.len(),
            g.vertex_count()
        )));
    }
    p.validate(h.vertex_count())?;
    let mut stats = SolveStats::default();
    let result = solve_rec(g, p, h, 0, &mut stats)?;
    Ok((result, stats))
}

fn solve_rec(
    g0: &Graph,
    p0: &ListMapping,
    h0: &Graph,
    depth: usize,
    stats: &mut SolveStats,
) -> Result<SolveResult> {
    stats.max_depth = stats.max_depth.max(depth);
    let Reduced { g, p, h, frames } = reduce_fixed_point(g0, p0, h0);

    let core = if g.vertex_count() == 0 {
        SolveResult::True(Homomorphism::new(Vec::new()))
    } else if h.vertex_count() <= 2 {
        solve_base_small(&g, &p, &h)?
    } else {
        solve_components(&g, &p, &h, depth, stats)?
    };

    match core {
        SolveResult::False => Ok(SolveResult::False),
        SolveResult::True(f) => {
            let full = unwind_frames(frames, f);
            if !is_homomorphism(g0, h0, &full) || !obeys_lists(&full, p0) {
                return Err(Error::Internal(
                    "constructed witness failed validation".into(),
                ));
            }
            Ok(SolveResult::True(full))
        }
    }
}

/// Solves each connected component separately; the whole input is solvable
/// iff every component is. A definite `False` wins over `NotInClass` from
/// another component, since the combined answer is then known to be `False`
/// regardless of the unclassified component.
fn solve_components(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
    depth: usize,
    stats: &mut SolveStats,
) -> Result<SolveResult> {
    let mut image = vec![0usize; g.vertex_count()];
    let mut out_of_class: Option<Error> = None;
    for comp in connected_components(g) {
        let (sub, map) = induced_subgraph(g, &comp);
        let sub_lists = p.restrict_vertices(&map);
        match solve_connected(&sub, &sub_lists, h, depth, stats) {
            Ok(SolveResult::True(f)) => {
                for (new, &old) in map.to_old.iter().enumerate() {
                    image[old] = f.image[new];
                }
            }
            Ok(SolveResult::False) => return Ok(SolveResult::False),
            Err(e @ Error::NotInClass { .. }) => {
                out_of_class.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(e) = out_of_class {
        return Err(e);
    }
    Ok(SolveResult::True(Homomorphism::new(image)))
}

/// Connected input, target with at least 3 vertices: multi-chain ordering,
/// configuration graph, sentinel-to-sentinel path, stitched witness.
fn solve_connected(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
    depth: usize,
    stats: &mut SolveStats,
) -> Result<SolveResult> {
    if g.vertex_count() == 1 {
        return solve_base_small(g, p, h);
    }
    let ordering = match find_ordering(g, None)? {
        Some(o) => o,
        None => {
            return Err(Error::NotInClass {
                subgraph: g.clone(),
            })
        }
    };
    let cg = build_configuration_graph_inner(g, p, h, &ordering, depth, stats)?;
    match reachability(&cg) {
        None => Ok(SolveResult::False),
        Some(path) => {
            let mut image = vec![0usize; g.vertex_count()];
            for (t, &e_idx) in path.iter().enumerate() {
                let edge = &cg.edges[t][e_idx];
                for (pos, &v) in ordering.order[t].iter().enumerate() {
                    image[v] = edge.witness.image[pos];
                }
            }
            Ok(SolveResult::True(Homomorphism::new(image)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::oracle::brute_force;

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        build_graph(n, &edges).unwrap()
    }

    fn assert_true_and_valid(g: &Graph, p: &ListMapping, h: &Graph) -> Homomorphism {
        let result = lh_solve(g, p, h).unwrap();
        let f = result.into_witness().expect("expected a solvable instance");
        assert!(is_homomorphism(g, h, &f));
        assert!(obeys_lists(&f, p));
        f
    }

    #[test]
    fn restrict_drops_unused_colours() {
        let h = Graph::complete(3);
        let p = ListMapping::new(vec![vec![0, 1], vec![1]]);
        let (h2, p2, map) = restrict_target(&h, &p);
        assert_eq!(h2, Graph::complete(2));
        assert_eq!(p2.list(0), &[0, 1]);
        assert_eq!(map.to_old, vec![0, 1]);
    }

    #[test]
    fn restrict_with_empty_lists_empties_target() {
        let h = Graph::complete(3);
        let p = ListMapping::new(vec![vec![], vec![]]);
        let (h2, _, _) = restrict_target(&h, &p);
        assert_eq!(h2.vertex_count(), 0);
        let g = build_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(lh_solve(&g, &p, &h).unwrap(), SolveResult::False);
    }

    #[test]
    fn restrict_is_identity_when_all_used() {
        let h = Graph::complete(3);
        let p = ListMapping::full(2, 3);
        let (h2, p2, _) = restrict_target(&h, &p);
        assert_eq!(h2, h);
        assert_eq!(p2, p);
    }

    #[test]
    fn universal_vertex_cases() {
        // Single loop vertex: universal.
        let loop1 = build_graph(1, &[(0, 0)]).unwrap();
        let g = cycle(4);
        let p = ListMapping::full(4, 1);
        let red = universal_vertex_reduction(&g, &p, &loop1).unwrap();
        assert_eq!(red.colour, 0);
        assert_eq!(red.g.vertex_count(), 0);
        // Loopless K_2: no universal vertex without a loop.
        assert!(
            universal_vertex_reduction(&g, &ListMapping::full(4, 2), &Graph::complete(2)).is_none()
        );
        // Edge plus one loop: the looped end is universal.
        let h = build_graph(2, &[(0, 1), (0, 0)]).unwrap();
        let red = universal_vertex_reduction(&g, &ListMapping::full(4, 2), &h).unwrap();
        assert_eq!(red.colour, 0);
        assert_eq!(red.g.vertex_count(), 0);
    }

    #[test]
    fn universal_reduction_solves_through() {
        let h = build_graph(1, &[(0, 0)]).unwrap();
        let g = cycle(5);
        let f = assert_true_and_valid(&g, &ListMapping::full(5, 1), &h);
        assert_eq!(f.image, vec![0; 5]);
    }

    #[test]
    fn base_even_cycle_is_two_colourable() {
        let g = cycle(6);
        let r = solve_base_small(&g, &ListMapping::full(6, 2), &Graph::complete(2)).unwrap();
        assert!(r.is_true());
    }

    #[test]
    fn base_odd_cycle_is_not() {
        let g = cycle(5);
        let r = solve_base_small(&g, &ListMapping::full(5, 2), &Graph::complete(2)).unwrap();
        assert_eq!(r, SolveResult::False);
    }

    #[test]
    fn base_forced_propagation_witness() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let p = ListMapping::new(vec![vec![0], vec![0, 1], vec![0, 1]]);
        let r = solve_base_small(&g, &p, &Graph::complete(2)).unwrap();
        assert_eq!(r.witness().unwrap().image, vec![0, 1, 0]);
    }

    #[test]
    fn base_rejects_large_targets_and_unreduced_universal() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let p = ListMapping::full(2, 3);
        assert!(matches!(
            solve_base_small(&g, &p, &Graph::complete(3)),
            Err(Error::Internal(_))
        ));
        let h = build_graph(2, &[(0, 1), (0, 0)]).unwrap();
        assert!(matches!(
            solve_base_small(&g, &ListMapping::full(2, 2), &h),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn base_loop_in_input_kills_loopless_pair() {
        let g = build_graph(2, &[(0, 1), (0, 0)]).unwrap();
        let r = solve_base_small(&g, &ListMapping::full(2, 2), &Graph::complete(2)).unwrap();
        assert_eq!(r, SolveResult::False);
    }

    #[test]
    fn base_nonadjacent_pair_constant_components() {
        // Two isolated loopless target vertices: an edge in the input is fatal.
        let h = build_graph(2, &[]).unwrap();
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        let r = solve_base_small(&g, &ListMapping::full(4, 2), &h).unwrap();
        assert_eq!(r, SolveResult::False);
        // With loops, each component picks one colour.
        let h = build_graph(2, &[(0, 0), (1, 1)]).unwrap();
        let p = ListMapping::new(vec![vec![1], vec![1], vec![0], vec![0]]);
        let r = solve_base_small(&g, &p, &h).unwrap();
        assert_eq!(r.witness().unwrap().image, vec![1, 1, 0, 0]);
    }

    #[test]
    fn enumeration_counts_match_spot_checks() {
        assert_eq!(enumerate_configurations(1, 2, 3).unwrap().len(), 12);
        assert_eq!(enumerate_configurations(1, 1, 3).unwrap().len(), 6);
        assert!(enumerate_configurations(1, 0, 3).is_err());
        assert!(enumerate_configurations(1, 2, 2).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_valid() {
        let cfgs = enumerate_configurations(2, 2, 3).unwrap();
        assert_eq!(cfgs.first().unwrap().bounds, vec![0, 0, 2]);
        assert_eq!(cfgs.last().unwrap().bounds, vec![2, 2, 0]);
        for w in cfgs.windows(2) {
            assert!(w[0].bounds < w[1].bounds);
        }
        assert!(cfgs.iter().all(|c| c.is_valid_for(2) && c.layer == 2));
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for k in 3..=5 {
            for ell in 1..=4 {
                let listed = enumerate_configurations(1, ell, k).unwrap().len() as u128;
                assert_eq!(Some(listed), configuration_count(ell, k), "ell={ell} k={k}");
            }
        }
        assert_eq!(configuration_count(1, 4), Some(14)); // 2^4 - 2
        assert_eq!(configuration_count(0, 3), None);
    }

    #[test]
    fn reduced_lists_identity_when_unconstrained() {
        // Bounds all zero on the source and maxed on the target, complete
        // loopless h: both filters pass everything.
        let h = Graph::complete(3);
        let layer = [0, 1];
        let p = ListMapping::new(vec![vec![0, 2], vec![1]]);
        let s = Configuration {
            layer: 1,
            bounds: vec![0, 0, 0],
        };
        let s2 = Configuration {
            layer: 2,
            bounds: vec![3, 3, 3],
        };
        let d_plus = [2, 3];
        let p2 = reduced_lists_for_edge(&s, &s2, &layer, &p, &d_plus, &h);
        assert_eq!(p2.list(0), p.list(0));
        assert_eq!(p2.list(1), p.list(1));
    }

    #[test]
    fn reduced_lists_drop_saturated_colour() {
        let h = Graph::complete(3);
        let layer = [0, 1];
        let p = ListMapping::full(2, 3);
        let s = Configuration {
            layer: 1,
            bounds: vec![2, 0, 1],
        };
        let s2 = Configuration {
            layer: 2,
            bounds: vec![3, 3, 3],
        };
        let d_plus = [0, 0];
        let p2 = reduced_lists_for_edge(&s, &s2, &layer, &p, &d_plus, &h);
        // Colour 0 is barred from the whole layer, colour 2 from position 0.
        assert_eq!(p2.list(0), &[1]);
        assert_eq!(p2.list(1), &[1, 2]);
    }

    #[test]
    fn reduced_lists_ignore_next_bounds_for_zero_degree() {
        let h = build_graph(3, &[]).unwrap(); // no adjacencies at all
        let layer = [0];
        let p = ListMapping::full(1, 3);
        let s = Configuration {
            layer: 1,
            bounds: vec![0, 0, 0],
        };
        let s2 = Configuration {
            layer: 2,
            bounds: vec![0, 0, 1],
        };
        let p2 = reduced_lists_for_edge(&s, &s2, &layer, &p, &[0], &h);
        assert_eq!(p2.list(0), &[0, 1, 2]);
    }

    #[test]
    fn edge_test_on_singleton_layers() {
        let g1 = build_graph(1, &[]).unwrap();
        let s = Configuration::sentinel(0, 3);
        let s2 = Configuration {
            layer: 1,
            bounds: vec![0, 1, 1],
        };
        let h = Graph::complete(3);
        let none = edge_test(&s, &s2, &g1, &ListMapping::new(vec![vec![]]), &h).unwrap();
        assert!(none.is_none());
        let one = edge_test(&s, &s2, &g1, &ListMapping::new(vec![vec![2]]), &h).unwrap();
        assert_eq!(one.unwrap().image, vec![2]);
    }

    #[test]
    fn solve_triangle_with_lists() {
        let g = cycle(3);
        let h = Graph::complete(3);
        let p = ListMapping::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_true_and_valid(&g, &p, &h);
    }

    #[test]
    fn solve_triangle_two_colours_fails() {
        let g = cycle(3);
        let h = Graph::complete(3);
        let p = ListMapping::new(vec![vec![0, 1]; 3]);
        assert_eq!(lh_solve(&g, &p, &h).unwrap(), SolveResult::False);
    }

    #[test]
    fn solve_flags_out_of_class_input() {
        let g = cycle(5);
        let h = Graph::complete(3);
        match lh_solve(&g, &ListMapping::full(5, 3), &h) {
            Err(Error::NotInClass { subgraph }) => assert_eq!(subgraph.vertex_count(), 5),
            other => panic!("expected NotInClass, got {other:?}"),
        }
    }

    #[test]
    fn solve_complete_graph_full_lists() {
        let g = Graph::complete(4);
        let h = Graph::complete(4);
        let f = assert_true_and_valid(&g, &ListMapping::full(4, 4), &h);
        let mut seen = f.image.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 4); // K_4 -> K_4 must be injective
    }

    #[test]
    fn solve_rejects_malformed_lists() {
        let g = cycle(3);
        let h = Graph::complete(3);
        assert!(matches!(
            lh_solve(&g, &ListMapping::full(2, 3), &h),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            lh_solve(&g, &ListMapping::new(vec![vec![7], vec![0], vec![0]]), &h),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn solve_empty_graph() {
        let g = build_graph(0, &[]).unwrap();
        let h = Graph::complete(3);
        let f = assert_true_and_valid(&g, &ListMapping::new(vec![]), &h);
        assert!(f.image.is_empty());
    }

    #[test]
    fn config_graph_path_found_and_validated() {
        let g = cycle(4);
        let h = Graph::complete(3);
        let p = ListMapping::full(4, 3);
        let ordering = find_ordering(&g, None).unwrap().unwrap();
        let cg = build_configuration_graph(&g, &p, &h, &ordering).unwrap();
        cg.validate(&g, &p, &h, &ordering).unwrap();
        assert!(reachability(&cg).is_some());
    }

    #[test]
    fn config_graph_without_path_when_unsolvable() {
        let g = cycle(4);
        let h = build_graph(3, &[]).unwrap(); // edgeless target, input has edges
        let p = ListMapping::full(4, 3);
        let ordering = find_ordering(&g, None).unwrap().unwrap();
        let cg = build_configuration_graph(&g, &p, &h, &ordering).unwrap();
        assert!(reachability(&cg).is_none());
    }

    #[test]
    fn config_graph_needs_three_colours() {
        let g = cycle(4);
        let ordering = find_ordering(&g, None).unwrap().unwrap();
        assert!(matches!(
            build_configuration_graph(&g, &ListMapping::full(4, 2), &Graph::complete(2), &ordering),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn canonical_configurations_of_oracle_witness_are_realized() {
        let g = cycle(4);
        let h = Graph::complete(3);
        let p = ListMapping::full(4, 3);
        let f = brute_force(&g, &p, &h).unwrap().unwrap();
        let ordering = find_ordering(&g, None).unwrap().unwrap();
        let cfgs = canonical_configurations(&ordering, &f, 3);
        assert_eq!(cfgs.len(), ordering.z());
        for (i, cfg) in cfgs.iter().enumerate() {
            assert!(cfg.is_valid_for(ordering.order[i + 1].len()));
        }
        let cg = build_configuration_graph(&g, &p, &h, &ordering).unwrap();
        let mut prev = 0; // start sentinel
        for (i, cfg) in cfgs.iter().enumerate() {
            let here = cg
                .node_index(i + 1, cfg)
                .expect("canonical node enumerated");
            assert!(cg.has_edge(i, prev, here), "missing edge at boundary {i}");
            prev = here;
        }
        assert!(cg.has_edge(ordering.z(), prev, 0));
    }

    #[test]
    fn recursion_depth_is_bounded_by_target_size() {
        let g = Graph::complete(5);
        let h = Graph::complete(5);
        let (result, stats) = lh_solve_detailed(&g, &ListMapping::full(5, 5), &h).unwrap();
        assert!(result.is_true());
        assert!(stats.edge_tests > 0);
        assert!(stats.max_depth <= 5, "depth {} too deep", stats.max_depth);
    }

    #[test]
    fn solver_handles_disconnected_inputs() {
        // One bipartite component, one triangle; K_3 target.
        let g = build_graph(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let h = Graph::complete(3);
        assert_true_and_valid(&g, &ListMapping::full(7, 3), &h);
    }

    #[test]
    fn false_component_beats_out_of_class_component() {
        // Component {0..4} is C_5 (no ordering); component {5,6} is an edge
        // with identical singleton lists, impossible in a loopless target.
        let g = build_graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6)]).unwrap();
        let h = Graph::complete(3);
        let mut lists = vec![vec![0, 1, 2]; 5];
        lists.push(vec![0]);
        lists.push(vec![0]);
        assert_eq!(
            lh_solve(&g, &ListMapping::new(lists), &h).unwrap(),
            SolveResult::False
        );
    }
}
