//! Verification, the exact oracle, the grid lower-bound witness and Monte
//! Carlo probes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{binom, pow_sat};
use crate::colouring::{mono_degree, mono_degrees, Colouring};
use crate::error::{Error, Result};
use crate::generators::{Grid, GridVertex};
use crate::hypergraph::Hypergraph;
use crate::rng;

/// Exact defect audit of a total colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub defect: usize,
    pub mono_degrees: Vec<usize>,
    pub max_mono_degree: usize,
    /// Vertices with monochromatic degree above `defect`, ascending.
    pub violating: Vec<usize>,
    pub colours_used: usize,
    /// No monochromatic edge at all.
    pub proper: bool,
}

impl DefectReport {
    pub fn is_defective(&self) -> bool {
        self.violating.is_empty()
    }
}

pub fn verify(h: &Hypergraph, phi: &Colouring, d: usize) -> Result<DefectReport> {
    let mono = mono_degrees(h, phi)?;
    if let Some(&v) = phi.uncoloured_vertices().first() {
        return Err(Error::Uncoloured { vertex: v });
    }
    let max_mono_degree = mono.iter().copied().max().unwrap_or(0);
    let violating = (0..h.n()).filter(|&v| mono[v] > d).collect();
    Ok(DefectReport {
        defect: d,
        max_mono_degree,
        violating,
        colours_used: phi.colours_used(),
        proper: max_mono_degree == 0,
        mono_degrees: mono,
    })
}

/// Vertex count above which the oracle refuses to run unless forced.
pub const ORACLE_VERTEX_LIMIT: usize = 16;

struct Search<'a> {
    h: &'a Hypergraph,
    d: usize,
    k: usize,
    colour: Vec<usize>,
    mono: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize, used: usize) -> bool {
        if v == self.h.n() {
            return true;
        }
        // canonical labelling: a new colour is always the next unused one
        for c in 0..(used + 1).min(self.k) {
            self.colour[v] = c;
            let mut closed: Vec<usize> = Vec::new();
            let mut ok = true;
            for &e in self.h.incident(v) {
                let edge = self.h.edge(e);
                // edges complete exactly when their largest vertex is assigned
                if edge[edge.len() - 1] == v && edge.iter().all(|&w| self.colour[w] == c) {
                    closed.push(e);
                    for &w in edge {
                        self.mono[w] += 1;
                        ok &= self.mono[w] <= self.d;
                    }
                }
            }
            if ok && self.extend(v + 1, used.max(c + 1)) {
                return true;
            }
            for &e in &closed {
                for &w in self.h.edge(e) {
                    self.mono[w] -= 1;
                }
            }
        }
        false
    }
}

/// Minimum `k ≤ limit` admitting a `d`-defective `k`-colouring, with a
/// witness. Backtracking over vertices in index order with canonical colour
/// labels and pruning on committed monochromatic degree.
pub fn exact_defective_colouring(
    h: &Hypergraph,
    d: usize,
    limit: usize,
    force: bool,
) -> Result<Option<(usize, Colouring)>> {
    if h.n() > ORACLE_VERTEX_LIMIT && !force {
        return Err(Error::SizeGuard {
            n: h.n(),
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    if h.n() == 0 {
        return Ok(Some((0, Colouring::from_colours(Vec::new()))));
    }
    for k in 1..=limit {
        let mut s = Search {
            h,
            d,
            k,
            colour: vec![0; h.n()],
            mono: vec![0; h.n()],
        };
        if s.extend(0, 0) {
            return Ok(Some((k, Colouring::from_colours(s.colour))));
        }
    }
    Ok(None)
}

pub fn exact_defective_chromatic(
    h: &Hypergraph,
    d: usize,
    limit: usize,
    force: bool,
) -> Result<Option<usize>> {
    Ok(exact_defective_colouring(h, d, limit, force)?.map(|(k, _)| k))
}

/// Pigeonhole certificate that the complete `u`-uniform hypergraph on `n`
/// vertices has no `d`-defective `k`-colouring: some class has at least
/// `⌈n/k⌉` vertices, each of monochromatic degree `C(⌈n/k⌉ − 1, u − 1)`.
pub fn complete_lowerbound(n: usize, u: usize, k: usize, d: usize) -> bool {
    if k == 0 {
        return n > 0;
    }
    let class = n.div_ceil(k);
    if class == 0 || u == 0 {
        return false;
    }
    binom(class as u64 - 1, u as u64 - 1) > d as u128
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWitness {
    pub vertex: usize,
    pub coords: GridVertex,
    /// Colour of the class the deletion procedure started from.
    pub class_colour: usize,
    pub class_size: usize,
    pub survivors: usize,
    /// Edges with `vertex` as base and every other vertex among the survivors.
    pub degree_in_survivors: u128,
    /// Directly counted monochromatic degree of `vertex` in the whole grid.
    pub mono_degree: usize,
}

/// Runs the axis-line deletion argument on the largest colour class of a
/// grid colouring.
///
/// Starting from the largest class `S` (smallest colour on ties), every
/// axis-parallel line holding `m ≥ 1` members of the current set with
/// `(m − 1)^r < d + 1` loses those members; this repeats to a fixed point.
/// Every surviving line then has at least `(d + 1)^{1/r}` members beyond any
/// one of them, so the survivor of smallest coordinate sum is the base of at
/// least `d + 1` edges inside `S`, all monochromatic.
pub fn grid_defect_witness(grid: &Grid, phi: &Colouring, d: usize) -> Result<Option<GridWitness>> {
    let h = &grid.hypergraph;
    verify(h, phi, d)?;
    let (n, r) = (grid.n, grid.r);
    let mut class_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for c in phi.assignment().iter().flatten() {
        *class_sizes.entry(*c).or_default() += 1;
    }
    let Some((class_colour, class_size)) =
        class_sizes
            .iter()
            .fold(None, |best: Option<(usize, usize)>, (&c, &s)| match best {
                Some((_, bs)) if bs >= s => best,
                _ => Some((c, s)),
            })
    else {
        return Ok(None);
    };
    let coords: Vec<GridVertex> = (0..h.n()).map(|v| grid.coords(v)).collect();
    let mut alive: Vec<bool> = (0..h.n())
        .map(|v| phi.colour(v) == Some(class_colour))
        .collect();
    let stride = |axis: usize| n.pow((r - 1 - axis) as u32);
    // a line is identified by its axis and its member with axis coordinate 1
    let line_of = |v: usize, axis: usize| (axis, v - (coords[v].0[axis] - 1) * stride(axis));
    let target = d as u128 + 1;
    loop {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for v in (0..h.n()).filter(|&v| alive[v]) {
            for axis in 0..r {
                *counts.entry(line_of(v, axis)).or_default() += 1;
            }
        }
        let mut deleted = false;
        for v in 0..h.n() {
            if alive[v]
                && (0..r)
                    .any(|axis| pow_sat(counts[&line_of(v, axis)] as u128 - 1, r as u32) < target)
            {
                alive[v] = false;
                deleted = true;
            }
        }
        if !deleted {
            break;
        }
    }
    let survivors = alive.iter().filter(|&&a| a).count();
    let Some(vertex) = (0..h.n())
        .filter(|&v| alive[v])
        .min_by_key(|&v| (coords[v].coordinate_sum(), v))
    else {
        return Ok(None);
    };
    let degree_in_survivors = (0..r)
        .map(|axis| {
            let c = coords[vertex].0[axis];
            (1..=n - c)
                .filter(|&step| alive[vertex + step * stride(axis)])
                .count() as u128
        })
        .product();
    Ok(Some(GridWitness {
        vertex,
        coords: coords[vertex].clone(),
        class_colour,
        class_size,
        survivors,
        degree_in_survivors,
        mono_degree: mono_degree(h, phi, vertex)?,
    }))
}

/// Bernoulli Monte Carlo summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeStats {
    pub trials: u64,
    pub events: u64,
    pub estimate: f64,
    /// `sqrt(p̂ (1 − p̂) / trials)`.
    pub std_error: f64,
}

impl ProbeStats {
    pub fn new(trials: u64, events: u64) -> Self {
        let estimate = if trials == 0 {
            0.0
        } else {
            events as f64 / trials as f64
        };
        let std_error = if trials == 0 {
            0.0
        } else {
            libm::sqrt(estimate * (1.0 - estimate) / trials as f64)
        };
        ProbeStats {
            trials,
            events,
            estimate,
            std_error,
        }
    }

    /// Pools independent runs by summing counts.
    pub fn merge(self, other: ProbeStats) -> ProbeStats {
        ProbeStats::new(self.trials + other.trials, self.events + other.events)
    }

    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        libm::fabs(self.estimate - target) <= sigmas * self.std_error
    }
}

/// `k^{-r}`: probability that a fixed `(r+1)`-edge is monochromatic under a
/// uniform `k`-colouring.
pub fn mono_edge_probability(k: usize, r: usize) -> f64 {
    libm::pow(k as f64, -(r as f64))
}

fn sample_colours(rng: &mut rng::Rng, colours: &mut [usize], k: usize) {
    for c in colours.iter_mut() {
        *c = rng::index(rng, k);
    }
}

/// Estimates the probability that the first edge is monochromatic.
pub fn probe_mono_edge(h: &Hypergraph, k: usize, trials: u64, seed: u64) -> Result<ProbeStats> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidParameter("probe needs at least one edge"));
    }
    if k == 0 {
        return Err(Error::InvalidParameter(
            "palette must have at least one colour",
        ));
    }
    let mut rng = rng::seeded(seed);
    let mut colours = vec![0; h.n()];
    let e = h.edge(0);
    let mut events = 0;
    for _ in 0..trials {
        sample_colours(&mut rng, &mut colours, k);
        if e.iter().all(|&w| colours[w] == colours[e[0]]) {
            events += 1;
        }
    }
    Ok(ProbeStats::new(trials, events))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BadVertexProbe {
    pub stats: ProbeStats,
    /// Markov bound `deg(v)·k^{-r}/(d + 1)` on `P(deg_φ(v) ≥ d + 1)`.
    pub markov_ceiling: f64,
}

impl BadVertexProbe {
    pub fn respects_ceiling(&self, sigmas: f64) -> bool {
        self.stats.estimate <= self.markov_ceiling + sigmas * self.stats.std_error
    }
}

/// Estimates `P(deg_φ(v) ≥ d + 1)` under a uniform `k`-colouring.
pub fn probe_bad_vertex(
    h: &Hypergraph,
    k: usize,
    d: usize,
    v: usize,
    trials: u64,
    seed: u64,
) -> Result<BadVertexProbe> {
    if v >= h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.n(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter(
            "palette must have at least one colour",
        ));
    }
    let mut rng = rng::seeded(seed);
    let mut colours = vec![0; h.n()];
    let mut events = 0;
    for _ in 0..trials {
        sample_colours(&mut rng, &mut colours, k);
        let mono = h
            .incident(v)
            .iter()
            .filter(|&&e| h.edge(e).iter().all(|&w| colours[w] == colours[v]))
            .count();
        if mono > d {
            events += 1;
        }
    }
    let markov_ceiling =
        h.vertex_degree(v) as f64 * mono_edge_probability(k, h.rank()) / (d as f64 + 1.0);
    Ok(BadVertexProbe {
        stats: ProbeStats::new(trials, events),
        markov_ceiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::graph_maxcut_colouring;
    use crate::generators::{complete, grid, random_bounded_degree};

    #[test]
    fn verify_examples() {
        let h = complete(5, 3).unwrap();
        let rainbow = Colouring::from_colours((0..5).collect());
        for d in 0..3 {
            let rep = verify(&h, &rainbow, d).unwrap();
            assert!(rep.proper && rep.is_defective());
            assert_eq!(rep.colours_used, 5);
        }
        let one = Colouring::from_colours(vec![0; 5]);
        let rep = verify(&h, &one, 0).unwrap();
        assert_eq!(rep.violating, [0, 1, 2, 3, 4]);
        assert_eq!(rep.max_mono_degree, 6);
        let partial = Colouring::from_assignment(vec![Some(0), None, Some(1), Some(2), Some(3)]);
        assert_eq!(
            verify(&h, &partial, 0).unwrap_err(),
            Error::Uncoloured { vertex: 1 }
        );
        assert!(verify(&h, &Colouring::from_colours(vec![0; 4]), 0).is_err());
    }

    #[test]
    fn verify_maxcut_outputs() {
        for seed in 0..20 {
            let g = random_bounded_degree(40, 2, 9, 100, seed).unwrap();
            let phi = graph_maxcut_colouring(&g, 1, seed).unwrap();
            assert!(verify(&g, &phi, 1).unwrap().is_defective());
        }
    }

    #[test]
    fn oracle_examples() {
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(exact_defective_chromatic(&e, 0, 5, false).unwrap(), Some(2));
        let k5 = complete(5, 3).unwrap();
        assert_eq!(
            exact_defective_chromatic(&k5, 0, 5, false).unwrap(),
            Some(3)
        );
        assert_eq!(exact_defective_chromatic(&k5, 0, 2, false).unwrap(), None);
        assert_eq!(
            exact_defective_chromatic(&k5, 6, 5, false).unwrap(),
            Some(1)
        );
        let (k, phi) = exact_defective_colouring(&k5, 0, 5, false)
            .unwrap()
            .unwrap();
        assert_eq!(k, 3);
        assert!(verify(&k5, &phi, 0).unwrap().is_defective());
        let big = Hypergraph::empty(17, 3).unwrap();
        assert!(matches!(
            exact_defective_chromatic(&big, 0, 3, false),
            Err(Error::SizeGuard { .. })
        ));
        assert_eq!(
            exact_defective_chromatic(&big, 0, 3, true).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn oracle_matches_exhaustive_enumeration() {
        // all k^n colourings for small random instances
        for seed in 0..15 {
            let h = random_bounded_degree(7, 3, 5, 9, seed).unwrap();
            for d in 0..2 {
                let mut brute = None;
                'k: for k in 1..=7usize {
                    for code in 0..k.pow(7) {
                        let colours: Vec<usize> = (0..7).map(|i| code / k.pow(i) % k).collect();
                        let phi = Colouring::from_colours(colours);
                        if verify(&h, &phi, d).unwrap().is_defective() {
                            brute = Some(k);
                            break 'k;
                        }
                    }
                }
                assert_eq!(exact_defective_chromatic(&h, d, 7, false).unwrap(), brute);
            }
        }
    }

    #[test]
    fn lowerbound_examples() {
        assert!(complete_lowerbound(5, 3, 2, 0));
        assert!(!complete_lowerbound(5, 3, 5, 0));
        assert!(!complete_lowerbound(5, 3, 9, 0));
        assert!(!complete_lowerbound(6, 3, 3, 0));
        let k6 = complete(6, 3).unwrap();
        assert_eq!(
            exact_defective_chromatic(&k6, 0, 6, false).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn grid_witness_examples() {
        let g = grid(4, 2).unwrap();
        let constant = Colouring::from_colours(vec![0; 16]);
        let w = grid_defect_witness(&g, &constant, 0).unwrap().unwrap();
        assert_eq!(w.coords, GridVertex(vec![1, 1]));
        assert!(w.mono_degree >= 1);
        assert_eq!(w.degree_in_survivors, 9);

        let rainbow = Colouring::from_colours((0..16).collect());
        assert_eq!(grid_defect_witness(&g, &rainbow, 0).unwrap(), None);

        let g5 = grid(5, 2).unwrap();
        let stripes = Colouring::from_colours((0..25).map(|v| (v / 5 + v % 5) % 2).collect());
        let w = grid_defect_witness(&g5, &stripes, 0).unwrap().unwrap();
        assert!(w.mono_degree >= 1);
        assert_eq!(
            w.mono_degree,
            mono_degree(&g5.hypergraph, &stripes, w.vertex).unwrap()
        );
        assert!(verify(&g5.hypergraph, &stripes, 0)
            .unwrap()
            .violating
            .contains(&w.vertex));
    }

    #[test]
    fn grid_witness_degree_bound_with_defect() {
        let g = grid(6, 2).unwrap();
        let constant = Colouring::from_colours(vec![0; 36]);
        for d in 0..12 {
            if let Some(w) = grid_defect_witness(&g, &constant, d).unwrap() {
                assert!(w.degree_in_survivors > d as u128);
                assert!(w.mono_degree > d);
            }
        }
    }

    #[test]
    fn probe_examples() {
        let h = complete(4, 3).unwrap();
        let s = probe_mono_edge(&h, 1, 1000, 0).unwrap();
        assert_eq!(s.estimate, 1.0);
        let g = Hypergraph::new(2, 2, [[0, 1]]).unwrap();
        let s = probe_mono_edge(&g, 2, 100_000, 5).unwrap();
        assert!(s.within(0.5, 4.0));
        assert!(probe_mono_edge(&Hypergraph::empty(3, 2).unwrap(), 2, 10, 0).is_err());

        let p = probe_bad_vertex(&h, 3, 3, 0, 1000, 0).unwrap();
        assert_eq!(p.stats.estimate, 0.0);
        let p = probe_bad_vertex(&h, 1, 1, 0, 1000, 0).unwrap();
        assert_eq!(p.stats.estimate, 1.0);
    }

    #[test]
    fn probe_standard_error_halves_with_four_times_trials() {
        let h = complete(3, 3).unwrap();
        let a = probe_mono_edge(&h, 3, 20_000, 1).unwrap();
        let b = probe_mono_edge(&h, 3, 80_000, 2).unwrap();
        let ratio = a.std_error / b.std_error;
        assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
        let merged = a.merge(b);
        assert_eq!(merged.trials, 100_000);
    }
}
