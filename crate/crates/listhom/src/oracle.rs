//! Exhaustive backtracking oracle for list homomorphism.
//!
//! Ground truth for differential testing: a depth-first search over vertex
//! assignments in plain index order, no heuristics, independent of the
//! layered solver. Exponential — keep inputs small and rely on the size cap.

use crate::error::{Error, Result};
use crate::graph::{Graph, Homomorphism, ListMapping};

/// Largest input graph the oracle accepts unless a caller raises the cap.
pub const DEFAULT_SIZE_CAP: usize = 20;

/// Finds the lexicographically first list homomorphism `g -> h`, or `None`.
pub fn brute_force(g: &Graph, p: &ListMapping, h: &Graph) -> Result<Option<Homomorphism>> {
    brute_force_with_cap(g, p, h, DEFAULT_SIZE_CAP)
}

/// `brute_force` with an explicit size cap on `|V(g)|`.
pub fn brute_force_with_cap(
    g: &Graph,
    p: &ListMapping,
    h: &Graph,
    cap: usize,
) -> Result<Option<Homomorphism>> {
    check_inputs(g, p, h, cap)?;
    let mut image = Vec::with_capacity(g.vertex_count());
    if extend(g, p, h, &mut image) {
        Ok(Some(Homomorphism { image }))
    } else {
        Ok(None)
    }
}

/// Counts all list homomorphisms `g -> h`.
pub fn count_homomorphisms(g: &Graph, p: &ListMapping, h: &Graph) -> Result<u64> {
    check_inputs(g, p, h, DEFAULT_SIZE_CAP)?;
    let mut image = Vec::with_capacity(g.vertex_count());
    Ok(count_extensions(g, p, h, &mut image))
}

fn check_inputs(g: &Graph, p: &ListMapping, h: &Graph, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::SizeLimitExceeded { n, cap });
    }
    if p.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} vertices",
            p.len(),
            n
        )));
    }
    p.validate(h.vertex_count())
}

/// True iff the partial assignment in `image` extends to all of `g`; on
/// success `image` holds the lexicographically first full extension.
fn extend(g: &Graph, p: &ListMapping, h: &Graph, image: &mut Vec<usize>) -> bool {
    let v = image.len();
    if v == g.vertex_count() {
        return true;
    }
    for &c in p.list(v) {
        if consistent(g, h, image, v, c) {
            image.push(c);
            if extend(g, p, h, image) {
                return true;
            }
            image.pop();
        }
    }
    false
}

fn count_extensions(g: &Graph, p: &ListMapping, h: &Graph, image: &mut Vec<usize>) -> u64 {
    let v = image.len();
    if v == g.vertex_count() {
        return 1;
    }
    let mut total = 0;
    for &c in p.list(v) {
        if consistent(g, h, image, v, c) {
            image.push(c);
            total += count_extensions(g, p, h, image);
            image.pop();
        }
    }
    total
}

/// Checks colour `c` on vertex `v` against every already-assigned neighbour,
/// treating a loop at `v` as the constraint `cc ∈ E(h)`.
fn consistent(g: &Graph, h: &Graph, image: &[usize], v: usize, c: usize) -> bool {
    g.neighbours(v).iter().all(|&u| {
        if u == v {
            h.has_edge(c, c)
        } else if u < v {
            h.has_edge(image[u], c)
        } else {
            true
        }
    })
}
