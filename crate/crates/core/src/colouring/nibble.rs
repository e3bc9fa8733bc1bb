//! One nibble round: random colouring, resampling until no vertex is
//! terrible, then uncolouring the bad vertices.
//!
//! Whether `v` is terrible is decided by the colours on the closed second
//! neighbourhood `N²[v]`, so a violated event is repaired by redrawing exactly
//! those colours. All derived quantities (monochromatic edges, monochromatic
//! degrees, bad vertices, bad edges, bad-edge counts, the terrible set) are
//! updated incrementally after each redraw.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Colouring, RoundTrace};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::rng::{self, Rng};

pub(crate) struct ResampleState<'a> {
    h: &'a Hypergraph,
    d: usize,
    threshold: usize,
    k: usize,
    pub(crate) colour: Vec<usize>,
    mono: Vec<bool>,
    mono_deg: Vec<usize>,
    bad: Vec<bool>,
    bad_edge: Vec<bool>,
    bad_count: Vec<usize>,
    terrible: BTreeSet<usize>,
    vert_stamp: Vec<u32>,
    edge_stamp: Vec<u32>,
    stamp: u32,
}

impl<'a> ResampleState<'a> {
    pub(crate) fn new(
        h: &'a Hypergraph,
        d: usize,
        k: usize,
        threshold: usize,
        rng: &mut Rng,
    ) -> Self {
        let n = h.n();
        let m = h.edge_count();
        let colour: Vec<usize> = (0..n).map(|_| rng::index(rng, k)).collect();
        let mut s = ResampleState {
            h,
            d,
            threshold,
            k,
            colour,
            mono: vec![false; m],
            mono_deg: vec![0; n],
            bad: vec![false; n],
            bad_edge: vec![false; m],
            bad_count: vec![0; n],
            terrible: BTreeSet::new(),
            vert_stamp: vec![0; n],
            edge_stamp: vec![0; m],
            stamp: 0,
        };
        for (i, e) in h.edges().enumerate() {
            if e.iter().all(|&w| s.colour[w] == s.colour[e[0]]) {
                s.mono[i] = true;
                for &w in e {
                    s.mono_deg[w] += 1;
                }
            }
        }
        for v in 0..n {
            s.bad[v] = s.mono_deg[v] > d;
        }
        for (i, e) in h.edges().enumerate() {
            if e.iter().all(|&w| s.bad[w]) {
                s.bad_edge[i] = true;
                for &w in e {
                    s.bad_count[w] += 1;
                }
            }
        }
        s.terrible = (0..n).filter(|&v| s.bad_count[v] > threshold).collect();
        s
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        if self.stamp == u32::MAX {
            self.vert_stamp.iter_mut().for_each(|x| *x = 0);
            self.edge_stamp.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    pub(crate) fn first_terrible(&self) -> Option<usize> {
        self.terrible.first().copied()
    }

    /// Distance-2 ball around `v`.
    pub(crate) fn second_neighbourhood(&mut self, v: usize) -> Vec<usize> {
        let s = self.next_stamp();
        let h = self.h;
        let mut out = vec![v];
        self.vert_stamp[v] = s;
        let mut start = 0;
        for _ in 0..2 {
            let end = out.len();
            for i in start..end {
                let x = out[i];
                for &e in h.incident(x) {
                    for &y in h.edge(e) {
                        if self.vert_stamp[y] != s {
                            self.vert_stamp[y] = s;
                            out.push(y);
                        }
                    }
                }
            }
            start = end;
        }
        out.sort_unstable();
        out
    }

    /// Redraws the colours of `vertices` and restores every derived quantity.
    pub(crate) fn resample(&mut self, vertices: &[usize], rng: &mut Rng) {
        let h = self.h;
        for &v in vertices {
            self.colour[v] = rng::index(rng, self.k);
        }
        // monochromatic edges around the redrawn vertices
        let s = self.next_stamp();
        let mut mono_changed = Vec::new();
        for &v in vertices {
            for &e in h.incident(v) {
                if self.edge_stamp[e] == s {
                    continue;
                }
                self.edge_stamp[e] = s;
                let edge = h.edge(e);
                let now = edge.iter().all(|&w| self.colour[w] == self.colour[edge[0]]);
                if now != self.mono[e] {
                    self.mono[e] = now;
                    for &w in edge {
                        if now {
                            self.mono_deg[w] += 1;
                        } else {
                            self.mono_deg[w] -= 1;
                        }
                        if self.vert_stamp[w] != s {
                            self.vert_stamp[w] = s;
                            mono_changed.push(w);
                        }
                    }
                }
            }
        }
        let mut bad_changed = Vec::new();
        for &w in &mono_changed {
            let now = self.mono_deg[w] > self.d;
            if now != self.bad[w] {
                self.bad[w] = now;
                bad_changed.push(w);
            }
        }
        // bad edges around vertices whose status flipped
        let s = self.next_stamp();
        let mut count_changed = Vec::new();
        for &w in &bad_changed {
            for &e in h.incident(w) {
                if self.edge_stamp[e] == s {
                    continue;
                }
                self.edge_stamp[e] = s;
                let edge = h.edge(e);
                let now = edge.iter().all(|&x| self.bad[x]);
                if now != self.bad_edge[e] {
                    self.bad_edge[e] = now;
                    for &x in edge {
                        if now {
                            self.bad_count[x] += 1;
                        } else {
                            self.bad_count[x] -= 1;
                        }
                        if self.vert_stamp[x] != s {
                            self.vert_stamp[x] = s;
                            count_changed.push(x);
                        }
                    }
                }
            }
        }
        for &x in &count_changed {
            if self.bad_count[x] > self.threshold {
                self.terrible.insert(x);
            } else {
                self.terrible.remove(&x);
            }
        }
    }

    pub(crate) fn is_bad(&self, v: usize) -> bool {
        self.bad[v]
    }

    #[cfg(test)]
    pub(crate) fn snapshot(&self) -> (Vec<usize>, Vec<bool>, Vec<usize>, Vec<usize>) {
        (
            self.mono_deg.clone(),
            self.bad.clone(),
            self.bad_count.clone(),
            self.terrible.iter().copied().collect(),
        )
    }
}

/// Outcome of a successful nibble round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NibbleRound {
    /// Colours in `0..k` on good vertices; bad vertices uncoloured.
    pub colouring: Colouring,
    /// The uncoloured (bad) vertices.
    pub residual: VertexSet,
    pub trace: RoundTrace,
}

/// One round where budget exhaustion is reported through
/// `trace.success == false`, leaving the colouring total.
pub(crate) fn attempt(
    h: &Hypergraph,
    d: usize,
    k: usize,
    threshold: usize,
    budget: u64,
    seed: u64,
) -> NibbleRound {
    let mut rng = rng::seeded(seed);
    let mut st = ResampleState::new(h, d, k, threshold, &mut rng);
    let mut resamples = 0u64;
    // with one colour the state never changes, so resampling cannot help
    let stuck = k == 1;
    while let Some(v) = st.first_terrible() {
        if stuck || resamples >= budget {
            break;
        }
        let ball = st.second_neighbourhood(v);
        st.resample(&ball, &mut rng);
        resamples += 1;
    }
    let success = st.first_terrible().is_none();
    let (assignment, residual): (Vec<Option<usize>>, VertexSet) = if success {
        (
            (0..h.n())
                .map(|v| (!st.is_bad(v)).then_some(st.colour[v]))
                .collect(),
            (0..h.n()).filter(|&v| st.is_bad(v)).collect(),
        )
    } else {
        (
            st.colour.iter().map(|&c| Some(c)).collect(),
            VertexSet::empty(),
        )
    };
    let residual_len = residual.len();
    NibbleRound {
        colouring: Colouring::with_palettes(assignment, vec![k]),
        residual,
        trace: RoundTrace {
            round: 0,
            palette: k,
            degree_bound: h.max_degree(),
            threshold,
            resamples,
            residual: residual_len,
            attempts: 1,
            success,
        },
    }
}

/// One nibble round with palette `k`.
///
/// On success every still-coloured vertex has monochromatic degree at most
/// `d` and the subhypergraph induced by the residual has maximum degree at
/// most `threshold`.
pub fn nibble_round(
    h: &Hypergraph,
    d: usize,
    k: usize,
    threshold: usize,
    budget: u64,
    seed: u64,
) -> Result<NibbleRound> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "palette must have at least one colour",
        ));
    }
    let out = attempt(h, d, k, threshold, budget, seed);
    if out.trace.success {
        Ok(out)
    } else {
        Err(Error::BudgetExhausted {
            resamples: out.trace.resamples,
        })
    }
}
