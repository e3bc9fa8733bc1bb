//! Multi-round colouring pipelines and the engine front door.
//!
//! Each round colours the current induced subhypergraph `G_i` from a fresh
//! palette, keeps the good vertices and recurses on the bad ones. Palettes of
//! different rounds are disjoint, so no edge spanning two rounds can be
//! monochromatic and the defect of a kept vertex is settled in its round.

use alloc::vec;
use alloc::vec::Vec;

use super::greedy::{graph_maxcut_colouring, greedy_proper};
use super::lll::naive_lll_linear;
use super::nibble::{attempt, NibbleRound};
use super::{halving_threshold, Colouring, RoundTrace};
use crate::arith::floor_scaled_root;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Theorem,
    Adaptive,
    NaiveLll,
    GraphMaxcut,
    GreedyProper,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Theorem,
        Mode::Adaptive,
        Mode::NaiveLll,
        Mode::GraphMaxcut,
        Mode::GreedyProper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Theorem => "theorem",
            Mode::Adaptive => "adaptive",
            Mode::NaiveLll => "naive-lll",
            Mode::GraphMaxcut => "graph-maxcut",
            Mode::GreedyProper => "greedy-proper",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: Mode,
    pub defect: usize,
    pub seed: u64,
    /// Resamples allowed per nibble attempt; `None` means `1000 · n`.
    pub budget: Option<u64>,
    /// Replaces the `⌊2^{-r} Δ_i⌋` terrible threshold of every round.
    pub terrible_threshold: Option<usize>,
}

impl EngineConfig {
    pub fn new(mode: Mode, defect: usize, seed: u64) -> Self {
        EngineConfig {
            mode,
            defect,
            seed,
            budget: None,
            terrible_threshold: None,
        }
    }

    pub fn budget_for(&self, n: usize) -> u64 {
        self.budget.unwrap_or(1000 * n as u64).max(1)
    }

    /// Per-probe budget of the adaptive search; `None` means `10 · n`.
    pub fn probe_budget_for(&self, n: usize) -> u64 {
        self.budget.unwrap_or(10 * n as u64).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndgameKind {
    /// Nothing left to colour.
    None,
    /// One new colour on a residual of maximum degree at most `d`.
    SingleColour,
    /// Greedy proper colouring of the residual.
    GreedyProper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endgame {
    pub kind: EndgameKind,
    pub vertices: usize,
    pub palette: usize,
}

impl Endgame {
    pub(crate) fn none() -> Self {
        Endgame {
            kind: EndgameKind::None,
            vertices: 0,
            palette: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineRun {
    pub colouring: Colouring,
    pub traces: Vec<RoundTrace>,
    pub endgame: Endgame,
}

/// Accumulates per-round partial colourings onto the host vertex set.
struct Assembler {
    assignment: Vec<Option<usize>>,
    palettes: Vec<usize>,
    offset: usize,
}

impl Assembler {
    fn new(n: usize) -> Self {
        Assembler {
            assignment: vec![None; n],
            palettes: Vec::new(),
            offset: 0,
        }
    }

    fn commit(&mut self, hosts: &[usize], local: &Colouring, palette: usize) {
        for (i, &v) in hosts.iter().enumerate() {
            if let Some(c) = local.colour(i) {
                self.assignment[v] = Some(self.offset + c);
            }
        }
        self.palettes.push(palette);
        self.offset += palette;
    }

    fn single(&mut self, hosts: &[usize]) {
        for &v in hosts {
            self.assignment[v] = Some(self.offset);
        }
        self.palettes.push(1);
        self.offset += 1;
    }

    fn finish(self) -> Colouring {
        Colouring::with_palettes(self.assignment, self.palettes)
    }
}

fn require_rank(h: &Hypergraph) -> Result<usize> {
    if h.uniformity() < 2 {
        return Err(Error::Uniformity {
            found: h.uniformity(),
            expected: ">= 2",
        });
    }
    Ok(h.rank())
}

fn greedy_endgame(asm: &mut Assembler, g: &Hypergraph, hosts: &[usize]) -> Result<Endgame> {
    let local = greedy_proper(g)?;
    let palette = local.palette_total();
    asm.commit(hosts, &local, palette);
    Ok(Endgame {
        kind: EndgameKind::GreedyProper,
        vertices: hosts.len(),
        palette,
    })
}

/// Round index and palette mixed into the per-attempt seed.
fn attempt_seed(seed: u64, round: usize, tag: u64) -> u64 {
    rng::derive(seed, ((round as u64) << 40) ^ tag)
}

const SMALL_DEGREE_CUTOFF: usize = 8;
const MAX_ESCALATIONS: usize = 5;

/// Multi-round colouring with `k_i = ⌊49 (Δ_i/(d+1))^{1/r}⌋` and
/// `Δ_{i+1} = ⌊2^{-r} Δ_i⌋`.
///
/// Rounds stop once `Δ_i ≤ max(d, 8)` or `k_i < 2`; the residual then gets a
/// single colour when its maximum degree is at most `d` and a greedy proper
/// colouring otherwise. A round that exhausts its budget retries with a
/// doubled palette up to five times before handing the residual to the
/// greedy endgame.
pub fn theorem1_colouring(h: &Hypergraph, d: usize, config: &EngineConfig) -> Result<EngineRun> {
    let r = require_rank(h)?;
    let mut asm = Assembler::new(h.n());
    let mut traces = Vec::new();
    let mut residual = VertexSet::all(h.n());
    let mut degree_bound = h.max_degree();
    let mut round = 0;
    let endgame = loop {
        if residual.is_empty() {
            break Endgame::none();
        }
        let (g, map) = h.induced(&residual)?;
        if g.max_degree() <= d {
            asm.single(map.hosts());
            break Endgame {
                kind: EndgameKind::SingleColour,
                vertices: g.n(),
                palette: 1,
            };
        }
        let k = floor_scaled_root(49, degree_bound as u64, d as u64 + 1, r as u32) as usize;
        if degree_bound <= d.max(SMALL_DEGREE_CUTOFF) || k < 2 {
            break greedy_endgame(&mut asm, &g, map.hosts())?;
        }
        let threshold = config
            .terrible_threshold
            .unwrap_or_else(|| halving_threshold(degree_bound, r));
        let budget = config.budget_for(g.n());
        let mut result: Option<NibbleRound> = None;
        let mut resamples = 0;
        let mut attempts = 0;
        let mut palette = k;
        for escalation in 0..=MAX_ESCALATIONS {
            palette = k << escalation;
            attempts += 1;
            let out = attempt(
                &g,
                d,
                palette,
                threshold,
                budget,
                attempt_seed(config.seed, round, palette as u64),
            );
            resamples += out.trace.resamples;
            if out.trace.success {
                result = Some(out);
                break;
            }
        }
        let mut trace = RoundTrace {
            round,
            palette,
            degree_bound,
            threshold,
            resamples,
            residual: g.n(),
            attempts,
            success: false,
        };
        let Some(out) = result else {
            traces.push(trace);
            break greedy_endgame(&mut asm, &g, map.hosts())?;
        };
        trace.success = true;
        trace.residual = out.residual.len();
        traces.push(trace);
        asm.commit(map.hosts(), &out.colouring, palette);
        residual = out.residual.iter().map(|&v| map.host(v)).collect();
        degree_bound = threshold;
        round += 1;
    };
    Ok(EngineRun {
        colouring: asm.finish(),
        traces,
        endgame,
    })
}

/// Practical multi-round mode: each round uses the smallest palette (found by
/// doubling from 1, then bisecting) for which a nibble round succeeds within
/// the probe budget, with threshold `⌊2^{-r} Δ(G_i)⌋` on the actual current
/// degree. Probes that succeed rarely need more than a few dozen resamples per
/// vertex, whereas a hopeless palette burns its whole budget, hence the
/// smaller default. Falls back to greedy proper colouring if no palette up to `2·|V(G_i)|`
/// succeeds.
pub fn adaptive_colouring(h: &Hypergraph, d: usize, config: &EngineConfig) -> Result<EngineRun> {
    let r = require_rank(h)?;
    let mut asm = Assembler::new(h.n());
    let mut traces = Vec::new();
    let mut residual = VertexSet::all(h.n());
    let mut round = 0;
    let endgame = loop {
        if residual.is_empty() {
            break Endgame::none();
        }
        let (g, map) = h.induced(&residual)?;
        let delta = g.max_degree();
        if delta <= d {
            asm.single(map.hosts());
            break Endgame {
                kind: EndgameKind::SingleColour,
                vertices: g.n(),
                palette: 1,
            };
        }
        let threshold = config
            .terrible_threshold
            .unwrap_or_else(|| halving_threshold(delta, r));
        let budget = config.probe_budget_for(g.n());
        let cap = 2 * g.n().max(1);
        let mut attempts = 0;
        let mut resamples = 0;
        let mut probe = |k: usize| {
            attempts += 1;
            let out = attempt(
                &g,
                d,
                k,
                threshold,
                budget,
                attempt_seed(config.seed, round, k as u64),
            );
            resamples += out.trace.resamples;
            out.trace.success.then_some(out)
        };
        let mut failed_below = 0;
        let mut k = 1;
        let mut found = None;
        while k <= cap {
            if let Some(out) = probe(k) {
                found = Some((k, out));
                break;
            }
            failed_below = k;
            k *= 2;
        }
        if let Some((mut hi, mut best)) = found.take() {
            let mut lo = failed_below;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match probe(mid) {
                    Some(out) => {
                        hi = mid;
                        best = out;
                    }
                    None => lo = mid,
                }
            }
            found = Some((hi, best));
        }
        let mut trace = RoundTrace {
            round,
            palette: found.as_ref().map_or(k, |f| f.0),
            degree_bound: delta,
            threshold,
            resamples,
            residual: g.n(),
            attempts,
            success: found.is_some(),
        };
        let Some((palette, out)) = found else {
            traces.push(trace);
            break greedy_endgame(&mut asm, &g, map.hosts())?;
        };
        trace.residual = out.residual.len();
        traces.push(trace);
        asm.commit(map.hosts(), &out.colouring, palette);
        residual = out.residual.iter().map(|&v| map.host(v)).collect();
        round += 1;
    };
    Ok(EngineRun {
        colouring: asm.finish(),
        traces,
        endgame,
    })
}

/// Runs the configured mode. Modes that need `Δ ≤ d` to mean "one colour"
/// short-circuit to a single colour class.
pub fn run_engine(h: &Hypergraph, config: &EngineConfig) -> Result<EngineRun> {
    let d = config.defect;
    let plain = |colouring: Colouring| EngineRun {
        colouring,
        traces: Vec::new(),
        endgame: Endgame::none(),
    };
    match config.mode {
        Mode::Theorem => theorem1_colouring(h, d, config),
        Mode::Adaptive => adaptive_colouring(h, d, config),
        Mode::NaiveLll => naive_lll_linear(h, d, config.seed, config.budget_for(h.n())),
        Mode::GraphMaxcut => graph_maxcut_colouring(h, d, config.seed).map(plain),
        Mode::GreedyProper => greedy_proper(h).map(plain),
    }
}
