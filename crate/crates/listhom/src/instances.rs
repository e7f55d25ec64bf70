//! Seeded instance generators: permutation graphs, interval graphs, the
//! known counterexample catalog, and random fuzz instances.
//!
//! Everything here is deterministic in its inputs; random generation is
//! driven by [`SplitMix64`] so the same seed reproduces the same instance
//! bit for bit, in any implementation of the same generator scheme.

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, ListMapping};
use crate::rng::SplitMix64;

/// A permutation of `{0..n-1}`, the defining data of a permutation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSpec {
    pi: Vec<usize>,
}

impl PermutationSpec {
    /// Validates that `pi` is a bijection on `{0..n-1}`.
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n];
        for &v in &pi {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 0..{n}: {pi:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { pi })
    }

    /// Accepts the 1-based form used in I/O, e.g. `[2, 1, 4, 3]`.
    pub fn from_one_based(pi: &[usize]) -> Result<Self> {
        if pi.contains(&0) {
            return Err(Error::InvalidInput(
                "one-based permutation contains a zero".into(),
            ));
        }
        Self::new(pi.iter().map(|&v| v - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.pi
    }
}

/// Real intervals with pairwise distinct endpoints, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSpec {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSpec {
    /// Validates finiteness, `left < right`, and distinctness of all
    /// `2n` endpoints.
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(l, r) in &intervals {
            if !l.is_finite() || !r.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite interval endpoint in ({l}, {r})"
                )));
            }
            if l >= r {
                return Err(Error::InvalidInput(format!(
                    "interval ({l}, {r}) is not increasing"
                )));
            }
        }
        let mut endpoints: Vec<f64> = intervals.iter().flat_map(|&(l, r)| [l, r]).collect();
        endpoints.sort_by(f64::total_cmp);
        if endpoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "interval endpoints must be pairwise distinct".into(),
            ));
        }
        Ok(Self { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }
}

/// Graph of a permutation: vertices `x_0..x_{n-1}`, an edge `x_i x_j` for
/// `i < j` exactly when `pi(i) < pi(j)`.
///
/// Note the convention: edges correspond to *non-inversions* of `pi`, not
/// the inversions used by some texts. Either convention generates the same
/// graph class (replace `pi` by its reversal).
pub fn permutation_graph(spec: &PermutationSpec) -> Graph {
    let n = spec.len();
    let pi = spec.values();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if pi[i] < pi[j] {
                edges.push((i, j));
            }
        }
    }
    build_graph(n, &edges).expect("permutation edges are in range")
}

/// Intersection graph of an interval system.
pub fn interval_graph(spec: &IntervalSpec) -> Graph {
    let ivs = spec.intervals();
    let n = ivs.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = ivs[i];
            let (c, d) = ivs[j];
            if a < d && c < b {
                edges.push((i, j));
            }
        }
    }
    build_graph(n, &edges).expect("interval edges are in range")
}

/// The catalog of small graphs with no multi-chain ordering (and the one
/// complement that has them in every connected subgraph).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counterexample {
    Cycle(usize),
    CoCycle(usize),
    SubdividedClaw,
    CoSubdividedClaw,
}

/// Builds the named catalog graph. Cycles need `n >= 3`.
pub fn counterexample(which: Counterexample) -> Result<Graph> {
    let cycle = |n: usize| -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("cycle needs n >= 3, got {n}")));
        }
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        build_graph(n, &edges)
    };
    // Vertex 0 is the center, 1-3 the middle vertices, 4-6 the leaves.
    let claw = || build_graph(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]);
    match which {
        Counterexample::Cycle(n) => cycle(n),
        Counterexample::CoCycle(n) => Ok(cycle(n)?.complement()),
        Counterexample::SubdividedClaw => claw(),
        Counterexample::CoSubdividedClaw => Ok(claw()?.complement()),
    }
}

/// Uniform random permutation on `{0..n-1}` (Fisher–Yates over identity).
pub fn random_permutation(rng: &mut SplitMix64, n: usize) -> PermutationSpec {
    let mut pi: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut pi);
    PermutationSpec::new(pi).expect("shuffled identity is a permutation")
}

/// Random interval system on `n` vertices: the integers `0..2n-1` are
/// shuffled, consecutive pairs become intervals (smaller endpoint left).
pub fn random_intervals(rng: &mut SplitMix64, n: usize) -> IntervalSpec {
    let mut endpoints: Vec<usize> = (0..2 * n).collect();
    rng.shuffle(&mut endpoints);
    let intervals = endpoints
        .chunks_exact(2)
        .map(|pair| {
            let l = pair[0].min(pair[1]) as f64;
            let r = pair[0].max(pair[1]) as f64;
            (l, r)
        })
        .collect();
    IntervalSpec::new(intervals).expect("distinct integer endpoints")
}

/// The structural family a random instance's input graph is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Permutation,
    Interval,
    /// Erdős–Rényi with edge probability 1/2; capped at 10 vertices so the
    /// oracle stays cheap.
    ArbitrarySmall,
}

/// A generated instance of the list homomorphism problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub g: Graph,
    pub lists: ListMapping,
    pub h: Graph,
}

const ARBITRARY_SMALL_CAP: usize = 10;

/// Seeded random instance: the input graph from the chosen family, then a
/// coin flip between `H = K_k` and an Erdős–Rényi `H` (loops allowed), then
/// per-vertex lists filled colour by colour with probability `list_density`.
///
/// The draw order is fixed as stated — graph, target, lists — so seeds
/// reproduce instances exactly.
pub fn random_instance(
    seed: u64,
    n: usize,
    k: usize,
    list_density: f64,
    family: Family,
) -> Result<RandomInstance> {
    if !(list_density > 0.0 && list_density <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "list density must be in (0, 1], got {list_density}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidInput(
            "target needs at least one vertex".into(),
        ));
    }
    if family == Family::ArbitrarySmall && n > ARBITRARY_SMALL_CAP {
        return Err(Error::InvalidInput(format!(
            "arbitrary_small instances are capped at {ARBITRARY_SMALL_CAP} vertices, got {n}"
        )));
    }
    let mut rng = SplitMix64::new(seed);

    let g = match family {
        Family::Permutation => permutation_graph(&random_permutation(&mut rng, n)),
        Family::Interval => interval_graph(&random_intervals(&mut rng, n)),
        Family::ArbitrarySmall => {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.unit_f64() < 0.5 {
                        edges.push((i, j));
                    }
                }
            }
            build_graph(n, &edges)?
        }
    };

    let h = if rng.below(2) == 0 {
        Graph::complete(k)
    } else {
        let mut edges = Vec::new();
        for c in 0..k {
            for d in c..k {
                if rng.unit_f64() < 0.5 {
                    edges.push((c, d));
                }
            }
        }
        build_graph(k, &edges)?
    };

    let mut lists = Vec::with_capacity(n);
    for _ in 0..n {
        let list: Vec<usize> = (0..k).filter(|_| rng.unit_f64() < list_density).collect();
        lists.push(list);
    }

    Ok(RandomInstance {
        g,
        lists: ListMapping::new(lists),
        h,
    })
}
