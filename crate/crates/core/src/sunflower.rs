//! Sunflowers and the edge-disjoint sunflower decomposition.
//!
//! A family of sets is a sunflower when all pairwise intersections equal the
//! common intersection (the core). The search follows the classical
//! Erdős–Rado argument: a greedy maximal matching either has `a` edges
//! already, or one of its at most `u(a − 1)` vertices lies in a
//! `1/(u(a − 1))` fraction of the edges and we recurse into that vertex's
//! link. Consequently a `u`-uniform family with more than `u!(a − 1)^u`
//! edges always yields an `a`-petal sunflower.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorial, pow_sat};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sunflower {
    pub core: VertexSet,
    pub petals: Vec<VertexSet>,
}

impl Sunflower {
    pub fn petal_count(&self) -> usize {
        self.petals.len()
    }

    /// `core ∪ petal` for every petal.
    pub fn edges(&self) -> Vec<VertexSet> {
        self.petals
            .iter()
            .map(|p| self.core.iter().chain(p.iter()).copied().collect())
            .collect()
    }
}

/// Checks whether distinct, equal-size `edges` form a sunflower.
///
/// A single edge is treated as a one-edge matching: empty core, the edge as
/// its only petal.
pub fn is_sunflower(edges: &[VertexSet]) -> Result<Option<Sunflower>> {
    let Some(first) = edges.first() else {
        return Err(Error::InvalidParameter(
            "a sunflower needs at least one edge",
        ));
    };
    if edges.iter().any(|e| e.len() != first.len()) {
        return Err(Error::InvalidParameter(
            "sunflower edges must have equal size",
        ));
    }
    let mut sorted: Vec<&VertexSet> = edges.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("sunflower edges must be distinct"));
    }
    if edges.len() == 1 {
        return Ok(Some(Sunflower {
            core: VertexSet::empty(),
            petals: vec![first.clone()],
        }));
    }
    let core: VertexSet = first
        .iter()
        .copied()
        .filter(|&v| edges.iter().all(|e| e.contains(v)))
        .collect();
    let petals: Vec<VertexSet> = edges
        .iter()
        .map(|e| e.iter().copied().filter(|&v| !core.contains(v)).collect())
        .collect();
    let mut all: Vec<usize> = petals.iter().flat_map(|p| p.iter().copied()).collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != total {
        return Ok(None);
    }
    Ok(Some(Sunflower { core, petals }))
}

/// Core vertices plus the positions (in the input list) of the chosen edges.
type Found = (Vec<usize>, Vec<usize>);

fn search(edges: &[Vec<usize>], a: usize) -> Option<Found> {
    if edges.len() < a {
        return None;
    }
    let mut matched: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if e.iter().all(|v| !matched.contains(v)) {
            matched.extend_from_slice(e);
            chosen.push(i);
            if chosen.len() == a {
                return Some((Vec::new(), chosen));
            }
        }
    }
    // Maximality: every edge meets a matched vertex.
    matched.sort_unstable();
    let degree = |x: usize| edges.iter().filter(|e| e.contains(&x)).count();
    let mut best: Option<(usize, usize)> = None;
    for &x in &matched {
        let d = degree(x);
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((x, d));
        }
    }
    let (pivot, _) = best?;
    let mut positions = Vec::new();
    let mut link = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if e.contains(&pivot) {
            positions.push(i);
            link.push(
                e.iter()
                    .copied()
                    .filter(|&v| v != pivot)
                    .collect::<Vec<_>>(),
            );
        }
    }
    let (mut core, picked) = search(&link, a)?;
    core.push(pivot);
    Some((core, picked.into_iter().map(|j| positions[j]).collect()))
}

fn build(edges: &[Vec<usize>], found: Found) -> Sunflower {
    let core = VertexSet::new(found.0);
    let petals = found
        .1
        .iter()
        .map(|&i| {
            edges[i]
                .iter()
                .copied()
                .filter(|&v| !core.contains(v))
                .collect()
        })
        .collect();
    Sunflower { core, petals }
}

/// `u!(a − 1)^u`: any `u`-uniform family with more edges contains an
/// `a`-petal sunflower.
pub fn erdos_rado_bound(uniformity: usize, a: usize) -> u128 {
    factorial(uniformity as u64)
        .saturating_mul(pow_sat(a.saturating_sub(1) as u128, uniformity as u32))
}

/// Finds a sunflower with exactly `a` petals among the edges of `h`.
///
/// Always succeeds when `e(h) > u!(a − 1)^u`; below that it may still find
/// one.
pub fn find_sunflower(h: &Hypergraph, a: usize) -> Result<Option<Sunflower>> {
    if a == 0 {
        return Err(Error::InvalidParameter("petal count must be at least 1"));
    }
    let edges: Vec<Vec<usize>> = h.edges().map(<[usize]>::to_vec).collect();
    Ok(search(&edges, a).map(|f| build(&edges, f)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SunflowerDecomposition {
    pub petals: usize,
    pub uniformity: usize,
    pub sunflowers: Vec<Sunflower>,
    /// Host edge indices of each sunflower, parallel to `sunflowers`.
    pub sunflower_edges: Vec<Vec<usize>>,
    /// Host edge indices covered by no sunflower.
    pub leftover: Vec<usize>,
}

impl SunflowerDecomposition {
    /// `u!(a − 1)^u`, the leftover bound the extraction guarantees.
    pub fn leftover_bound(&self) -> u128 {
        erdos_rado_bound(self.uniformity, self.petals)
    }

    /// `(u·a)^u`; the leftover is strictly smaller.
    pub fn stated_bound(&self) -> u128 {
        pow_sat(
            (self.uniformity * self.petals) as u128,
            self.uniformity as u32,
        )
    }
}

/// Extracts `a`-petal sunflowers one at a time, deleting their edges, until
/// none remains. The edges left over number at most `u!(a − 1)^u`.
pub fn decompose(h: &Hypergraph, a: usize) -> Result<SunflowerDecomposition> {
    if a == 0 {
        return Err(Error::InvalidParameter("petal count must be at least 1"));
    }
    let mut remaining: Vec<usize> = (0..h.edge_count()).collect();
    let mut sunflowers = Vec::new();
    let mut sunflower_edges = Vec::new();
    loop {
        let edges: Vec<Vec<usize>> = remaining.iter().map(|&e| h.edge(e).to_vec()).collect();
        let Some(found) = search(&edges, a) else {
            break;
        };
        let mut ids: Vec<usize> = found.1.iter().map(|&i| remaining[i]).collect();
        let mut drop = found.1.clone();
        sunflowers.push(build(&edges, found));
        drop.sort_unstable();
        for &i in drop.iter().rev() {
            remaining.remove(i);
        }
        ids.sort_unstable();
        sunflower_edges.push(ids);
    }
    Ok(SunflowerDecomposition {
        petals: a,
        uniformity: h.uniformity(),
        sunflowers,
        sunflower_edges,
        leftover: remaining,
    })
}
