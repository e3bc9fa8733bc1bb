//! Colouring algorithms and the shared colouring vocabulary.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::rng;

mod greedy;
mod lll;
mod nibble;
mod pipeline;

pub use greedy::{graph_maxcut_colouring, greedy_proper};
pub use lll::naive_lll_linear;
pub use nibble::{nibble_round, NibbleRound};
pub use pipeline::{
    adaptive_colouring, run_engine, theorem1_colouring, Endgame, EndgameKind, EngineConfig,
    EngineRun, Mode,
};

/// A possibly partial vertex colouring.
///
/// `palettes` records the palette size used by each stage that contributed
/// colours; stage palettes are disjoint and consecutive, so every assigned
/// colour is below [`Colouring::palette_total`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    assignment: Vec<Option<usize>>,
    palettes: Vec<usize>,
}

impl Colouring {
    /// An all-uncoloured colouring of `n` vertices.
    pub fn uncoloured(n: usize) -> Self {
        Colouring {
            assignment: vec![None; n],
            palettes: Vec::new(),
        }
    }

    /// Total colouring from explicit colours, one palette of `max + 1`.
    pub fn from_colours(colours: Vec<usize>) -> Self {
        Self::from_assignment(colours.into_iter().map(Some).collect())
    }

    pub fn from_assignment(assignment: Vec<Option<usize>>) -> Self {
        let palette = assignment.iter().flatten().max().map_or(0, |&c| c + 1);
        let palettes = if palette == 0 {
            Vec::new()
        } else {
            vec![palette]
        };
        Colouring {
            assignment,
            palettes,
        }
    }

    pub(crate) fn with_palettes(assignment: Vec<Option<usize>>, palettes: Vec<usize>) -> Self {
        debug_assert!(assignment
            .iter()
            .flatten()
            .all(|&c| c < palettes.iter().sum()));
        Colouring {
            assignment,
            palettes,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn colour(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn palettes(&self) -> &[usize] {
        &self.palettes
    }

    /// Declared colour count: the sum of all stage palettes.
    pub fn palette_total(&self) -> usize {
        self.palettes.iter().sum()
    }

    /// Distinct colours actually assigned.
    pub fn colours_used(&self) -> usize {
        let mut c: Vec<usize> = self.assignment.iter().flatten().copied().collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn uncoloured_vertices(&self) -> VertexSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(v, _)| v)
            .collect()
    }
}

/// Per-round audit record of the nibble pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    pub round: usize,
    /// Palette size `k_i` of the committed (or last failed) attempt.
    pub palette: usize,
    /// Degree bound `Δ_i` of the round's input hypergraph.
    pub degree_bound: usize,
    /// Terrible threshold; also the degree bound on the residual.
    pub threshold: usize,
    pub resamples: u64,
    /// Vertices left uncoloured by the round.
    pub residual: usize,
    /// Palette doublings (theorem mode) or k-search probes (adaptive mode).
    pub attempts: usize,
    pub success: bool,
}

/// Every vertex gets an independent uniform colour in `0..k`.
pub fn uniform_colouring(h: &Hypergraph, k: usize, seed: u64) -> Result<Colouring> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "palette must have at least one colour",
        ));
    }
    let mut rng = rng::seeded(seed);
    let colours = (0..h.n()).map(|_| rng::index(&mut rng, k)).collect();
    Ok(Colouring::with_palettes(
        colours_to_assignment(colours),
        vec![k],
    ))
}

fn colours_to_assignment(colours: Vec<usize>) -> Vec<Option<usize>> {
    colours.into_iter().map(Some).collect()
}

fn check_size(h: &Hypergraph, phi: &Colouring) -> Result<()> {
    if phi.len() != h.n() {
        return Err(Error::ColouringSize {
            expected: h.n(),
            found: phi.len(),
        });
    }
    Ok(())
}

pub(crate) fn edge_is_mono(e: &[usize], colour: impl Fn(usize) -> Option<usize>) -> bool {
    let Some(c) = colour(e[0]) else { return false };
    e[1..].iter().all(|&w| colour(w) == Some(c))
}

/// Monochromatic degree of a coloured vertex. Edges with an uncoloured
/// vertex never count.
pub fn mono_degree(h: &Hypergraph, phi: &Colouring, v: usize) -> Result<usize> {
    check_size(h, phi)?;
    if v >= h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.n(),
        });
    }
    if phi.colour(v).is_none() {
        return Err(Error::Uncoloured { vertex: v });
    }
    Ok(h.incident(v)
        .iter()
        .filter(|&&e| edge_is_mono(h.edge(e), |w| phi.colour(w)))
        .count())
}

/// Monochromatic degree of every vertex (0 for uncoloured vertices).
pub fn mono_degrees(h: &Hypergraph, phi: &Colouring) -> Result<Vec<usize>> {
    check_size(h, phi)?;
    let mut deg = vec![0; h.n()];
    for e in h.edges() {
        if edge_is_mono(e, |w| phi.colour(w)) {
            for &w in e {
                deg[w] += 1;
            }
        }
    }
    Ok(deg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Vertices of monochromatic degree at least `d + 1`.
    pub bad: VertexSet,
    /// Vertices on more than `threshold` bad edges (edges with every vertex bad).
    pub terrible: VertexSet,
    /// Number of bad edges at each vertex.
    pub bad_edges_at: Vec<usize>,
    pub threshold: usize,
}

/// `⌊Δ / 2^r⌋`; a count exceeds it iff it exceeds `2^{-r}·Δ`.
pub(crate) fn halving_threshold(delta: usize, r: usize) -> usize {
    if r >= usize::BITS as usize {
        0
    } else {
        delta >> r
    }
}

/// Bad and terrible vertices of a total colouring. `threshold` defaults to
/// `⌊2^{-r}·Δ(H)⌋`.
pub fn classify(
    h: &Hypergraph,
    phi: &Colouring,
    d: usize,
    threshold: Option<usize>,
) -> Result<Classification> {
    if let Some(v) = phi.uncoloured_vertices().first() {
        return Err(Error::Uncoloured { vertex: *v });
    }
    let threshold = threshold.unwrap_or_else(|| halving_threshold(h.max_degree(), h.rank()));
    let mono = mono_degrees(h, phi)?;
    let is_bad: Vec<bool> = mono.iter().map(|&m| m > d).collect();
    let mut bad_edges_at = vec![0; h.n()];
    for e in h.edges() {
        if e.iter().all(|&w| is_bad[w]) {
            for &w in e {
                bad_edges_at[w] += 1;
            }
        }
    }
    let bad = (0..h.n()).filter(|&v| is_bad[v]).collect();
    let terrible = (0..h.n())
        .filter(|&v| bad_edges_at[v] > threshold)
        .collect();
    Ok(Classification {
        bad,
        terrible,
        bad_edges_at,
        threshold,
    })
}
