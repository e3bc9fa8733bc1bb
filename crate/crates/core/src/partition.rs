//! Local-search partition minimising same-part codegree.
//!
//! For a partition `V_1 ∪ … ∪ V_ℓ` the objective is the sum over parts of
//! `deg(u, v)` across unordered same-part pairs. At a single-vertex-move local
//! optimum every vertex `x` has at most `r·deg(x)/ℓ` codegree mass in its own
//! part, hence at most that many incident edges with another vertex there.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
    part_count: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>, part_count: usize) -> Result<Self> {
        if part_count == 0 {
            return Err(Error::InvalidParameter("partition needs at least one part"));
        }
        if parts.iter().any(|&p| p >= part_count) {
            return Err(Error::InvalidParameter("part index out of range"));
        }
        Ok(Partition { parts, part_count })
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.parts[v]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub(crate) fn assign(&mut self, v: usize, part: usize) {
        self.parts[v] = part;
    }

    /// `Σ_{u ∈ V_a ∖ {x}} deg(u, x)` for `x`'s own part `a`.
    pub fn within_part_codegree(&self, h: &Hypergraph, x: usize) -> usize {
        let own = self.parts[x];
        h.incident(x)
            .iter()
            .map(|&e| {
                h.edge(e)
                    .iter()
                    .filter(|&&w| w != x && self.parts[w] == own)
                    .count()
            })
            .sum()
    }

    /// Edges containing `x` and at least one more vertex of `x`'s part.
    pub fn within_part_edges(&self, h: &Hypergraph, x: usize) -> usize {
        let own = self.parts[x];
        h.incident(x)
            .iter()
            .filter(|&&e| h.edge(e).iter().any(|&w| w != x && self.parts[w] == own))
            .count()
    }

    /// `r·deg(x)/ℓ − within_part_edges(x)`; non-negative at a local optimum.
    pub fn guarantee_slack(&self, h: &Hypergraph, x: usize) -> f64 {
        let bound = (h.rank() * h.vertex_degree(x)) as f64 / self.part_count as f64;
        bound - self.within_part_edges(h, x) as f64
    }

    /// Exact integer form of the per-vertex guarantee:
    /// `ℓ · within_part_edges(x) ≤ r · deg(x)`.
    pub fn satisfies_guarantee(&self, h: &Hypergraph, x: usize) -> bool {
        self.part_count * self.within_part_edges(h, x) <= h.rank() * h.vertex_degree(x)
    }
}

/// `Σ_i Σ_{u,v ∈ V_i} deg(u, v)` over unordered pairs.
pub fn pair_objective(h: &Hypergraph, p: &Partition) -> u64 {
    let mut counts: Vec<(usize, u64)> = Vec::with_capacity(h.uniformity());
    let mut total = 0;
    for e in h.edges() {
        counts.clear();
        for &v in e {
            let part = p.part_of(v);
            match counts.iter_mut().find(|(q, _)| *q == part) {
                Some((_, c)) => *c += 1,
                None => counts.push((part, 1)),
            }
        }
        total += counts.iter().map(|&(_, c)| c * (c - 1) / 2).sum::<u64>();
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCut {
    pub partition: Partition,
    pub moves: u64,
    pub initial_objective: u64,
    pub final_objective: u64,
}

/// Seeded random start followed by best-improvement single-vertex moves,
/// scanning vertices cyclically until a full pass makes no move.
///
/// A move takes `x` to the part with the least codegree mass towards `x`
/// (lowest index on ties) and is taken only on strict improvement, so the
/// objective drops by at least one per move.
pub fn max_cut_partition(h: &Hypergraph, part_count: usize, seed: u64) -> Result<MaxCut> {
    if part_count == 0 {
        return Err(Error::InvalidParameter("partition needs at least one part"));
    }
    let n = h.n();
    let mut rng = rng::seeded(seed);
    let parts = (0..n).map(|_| rng::index(&mut rng, part_count)).collect();
    let mut partition = Partition { parts, part_count };
    let initial_objective = pair_objective(h, &partition);
    let mut objective = initial_objective;
    let mut mass = vec![0u64; part_count];
    let mut touched: Vec<usize> = Vec::new();
    let mut moves = 0;
    let mut quiet = 0;
    let mut x = 0;
    while n > 0 && quiet < n {
        for &e in h.incident(x) {
            for &w in h.edge(e) {
                if w != x {
                    let q = partition.parts[w];
                    if mass[q] == 0 {
                        touched.push(q);
                    }
                    mass[q] += 1;
                }
            }
        }
        let own = partition.parts[x];
        let own_mass = mass[own];
        let mut best = own;
        let mut best_mass = own_mass;
        if own_mass > 0 {
            for (q, &m) in mass.iter().enumerate() {
                if m < best_mass {
                    best = q;
                    best_mass = m;
                    if best_mass == 0 {
                        break;
                    }
                }
            }
        }
        if best != own {
            partition.parts[x] = best;
            objective -= own_mass - best_mass;
            moves += 1;
            quiet = 0;
        } else {
            quiet += 1;
        }
        for &q in &touched {
            mass[q] = 0;
        }
        touched.clear();
        x = (x + 1) % n;
    }
    debug_assert_eq!(objective, pair_objective(h, &partition));
    Ok(MaxCut {
        partition,
        moves,
        initial_objective,
        final_objective: objective,
    })
}
