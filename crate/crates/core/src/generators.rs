//! Extremal constructions and seeded random ensembles.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;

/// All `C(n, u)` edges on `n` vertices, in lexicographic order.
pub fn complete(n: usize, u: usize) -> Result<Hypergraph> {
    if u == 0 {
        return Err(Error::Uniformity {
            found: 0,
            expected: ">= 1",
        });
    }
    if n < u {
        return Err(Error::InvalidParameter("complete hypergraph needs n >= u"));
    }
    let mut flat = Vec::new();
    let mut comb: Vec<usize> = (0..u).collect();
    loop {
        flat.extend_from_slice(&comb);
        // advance to the next combination
        let Some(i) = (0..u).rev().find(|&i| comb[i] < n - u + i) else {
            break;
        };
        comb[i] += 1;
        for j in i + 1..u {
            comb[j] = comb[j - 1] + 1;
        }
    }
    Ok(Hypergraph::from_flat(n, u, flat))
}

/// A point of `{1, …, n}^r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridVertex(pub Vec<usize>);

impl GridVertex {
    pub fn coordinate_sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// The `(r + 1)`-uniform grid hypergraph on `{1, …, n}^r`.
///
/// Vertices are flattened row-major with the first coordinate most
/// significant: `(c_1, …, c_r) ↦ Σ (c_i − 1) n^(r−i)`. Each edge is a base
/// vertex `v` together with one vertex `v + c·e_i`, `c ≥ 1`, for every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub n: usize,
    pub r: usize,
    pub hypergraph: Hypergraph,
}

impl Grid {
    pub fn index(&self, v: &GridVertex) -> usize {
        v.0.iter().fold(0, |acc, &c| acc * self.n + (c - 1))
    }

    pub fn coords(&self, mut index: usize) -> GridVertex {
        let mut c = vec![0; self.r];
        for slot in c.iter_mut().rev() {
            *slot = index % self.n + 1;
            index /= self.n;
        }
        GridVertex(c)
    }

    /// Edges in which the all-ones vertex is the base: `(n − 1)^r`.
    pub fn base_role_degree(&self) -> usize {
        (self.n - 1).pow(self.r as u32)
    }
}

pub fn grid(n: usize, r: usize) -> Result<Grid> {
    if n < 2 || r < 1 {
        return Err(Error::InvalidParameter("grid needs n >= 2 and r >= 1"));
    }
    let vertices = n
        .checked_pow(r as u32)
        .ok_or(Error::InvalidParameter("grid too large"))?;
    let strides: Vec<usize> = (0..r).map(|i| n.pow((r - 1 - i) as u32)).collect();
    let mut flat = Vec::new();
    let mut edge = vec![0usize; r + 1];
    let mut coords = vec![0usize; r];
    for base in 0..vertices {
        let mut rem = base;
        for i in 0..r {
            coords[i] = rem / strides[i];
            rem %= strides[i];
        }
        // per axis, the offsets 1..n-1-coord (0-based coordinates)
        let mut steps = vec![1usize; r];
        if coords.iter().any(|&c| c + 1 >= n) {
            continue;
        }
        'edges: loop {
            edge[0] = base;
            for i in 0..r {
                edge[i + 1] = base + steps[i] * strides[i];
            }
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            flat.extend_from_slice(&sorted);
            for i in (0..r).rev() {
                if coords[i] + steps[i] + 1 < n {
                    steps[i] += 1;
                    continue 'edges;
                }
                steps[i] = 1;
            }
            break;
        }
    }
    Ok(Grid {
        n,
        r,
        hypergraph: Hypergraph::from_flat(vertices, r + 1, flat),
    })
}

fn sample_edge(rng: &mut rng::Rng, n: usize, u: usize) -> Vec<usize> {
    let mut e: Vec<usize> = Vec::with_capacity(u);
    while e.len() < u {
        let v = rng::index(rng, n);
        if !e.contains(&v) {
            e.push(v);
        }
    }
    e.sort_unstable();
    e
}

fn random_with(
    n: usize,
    u: usize,
    degree_cap: usize,
    target_m: usize,
    seed: u64,
    linear: bool,
) -> Result<Hypergraph> {
    if u == 0 || n < u {
        return Err(Error::InvalidParameter(
            "random hypergraph needs n >= u >= 1",
        ));
    }
    if degree_cap == 0 {
        return Err(Error::InvalidParameter("degree cap must be at least 1"));
    }
    let mut rng = rng::seeded(seed);
    let mut seen = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    let mut degree = vec![0usize; n];
    let mut flat = Vec::new();
    let mut accepted = 0;
    for _ in 0..target_m.saturating_mul(10) {
        if accepted == target_m {
            break;
        }
        let e = sample_edge(&mut rng, n, u);
        if e.iter().any(|&v| degree[v] >= degree_cap) || seen.contains(&e) {
            continue;
        }
        if linear {
            let mut fresh = Vec::new();
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    fresh.push((a, b));
                }
            }
            if fresh.iter().any(|p| pairs.contains(p)) {
                continue;
            }
            pairs.extend(fresh);
        }
        for &v in &e {
            degree[v] += 1;
        }
        flat.extend_from_slice(&e);
        seen.insert(e);
        accepted += 1;
    }
    Ok(Hypergraph::from_flat(n, u, flat))
}

/// Rejection-sampled simple `u`-uniform hypergraph with maximum degree at
/// most `degree_cap` and at most `target_m` edges (budget `10·target_m`
/// draws).
pub fn random_bounded_degree(
    n: usize,
    u: usize,
    degree_cap: usize,
    target_m: usize,
    seed: u64,
) -> Result<Hypergraph> {
    random_with(n, u, degree_cap, target_m, seed, false)
}

/// As [`random_bounded_degree`], also rejecting any edge that would share two
/// vertices with an accepted edge.
pub fn random_linear(
    n: usize,
    u: usize,
    degree_cap: usize,
    target_m: usize,
    seed: u64,
) -> Result<Hypergraph> {
    random_with(n, u, degree_cap, target_m, seed, true)
}
