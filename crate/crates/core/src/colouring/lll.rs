use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::pipeline::{Endgame, EngineRun};
use super::{Colouring, RoundTrace};
use crate::arith::floor_scaled_root;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;

/// Single-palette colouring of a linear hypergraph with
/// `k = ⌊100 (Δ/(d+1))^{1/r}⌋` colours.
///
/// The bad events are "some `d + 1` edges through a common vertex are all
/// monochromatic", i.e. a vertex of monochromatic degree above `d`. While
/// one exists, the colours on the closed neighbourhood of the lowest such
/// vertex are redrawn.
pub fn naive_lll_linear(h: &Hypergraph, d: usize, seed: u64, budget: u64) -> Result<EngineRun> {
    if h.uniformity() < 2 {
        return Err(Error::Uniformity {
            found: h.uniformity(),
            expected: ">= 2",
        });
    }
    if !h.is_linear() {
        return Err(Error::NotLinear);
    }
    let n = h.n();
    let delta = h.max_degree();
    let k = (floor_scaled_root(100, delta as u64, d as u64 + 1, h.rank() as u32) as usize).max(1);
    let mut rng = rng::seeded(seed);
    let mut colour: Vec<usize> = (0..n).map(|_| rng::index(&mut rng, k)).collect();
    let mut mono = vec![false; h.edge_count()];
    let mut mono_deg = vec![0usize; n];
    for (i, e) in h.edges().enumerate() {
        if e.iter().all(|&w| colour[w] == colour[e[0]]) {
            mono[i] = true;
            for &w in e {
                mono_deg[w] += 1;
            }
        }
    }
    let mut bad: BTreeSet<usize> = (0..n).filter(|&v| mono_deg[v] > d).collect();
    let mut stamp = vec![0u32; h.edge_count()];
    let mut resamples = 0u64;
    while let Some(&v) = bad.first() {
        if resamples >= budget || k == 1 {
            return Err(Error::BudgetExhausted { resamples });
        }
        resamples += 1;
        let ball = h.ball(v, 1);
        for &w in &ball {
            colour[w] = rng::index(&mut rng, k);
        }
        let s = resamples as u32;
        for &w in &ball {
            for &e in h.incident(w) {
                if stamp[e] == s {
                    continue;
                }
                stamp[e] = s;
                let edge = h.edge(e);
                let now = edge.iter().all(|&x| colour[x] == colour[edge[0]]);
                if now != mono[e] {
                    mono[e] = now;
                    for &x in edge {
                        if now {
                            mono_deg[x] += 1;
                        } else {
                            mono_deg[x] -= 1;
                        }
                        if mono_deg[x] > d {
                            bad.insert(x);
                        } else {
                            bad.remove(&x);
                        }
                    }
                }
            }
        }
    }
    let trace = RoundTrace {
        round: 0,
        palette: k,
        degree_bound: delta,
        threshold: d,
        resamples,
        residual: 0,
        attempts: 1,
        success: true,
    };
    Ok(EngineRun {
        colouring: Colouring::with_palettes(colour.into_iter().map(Some).collect(), vec![k]),
        traces: vec![trace],
        endgame: Endgame::none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::mono_degrees;
    use crate::generators::{complete, random_linear};

    #[test]
    fn low_degree_needs_no_resampling() {
        let h = random_linear(30, 3, 2, 20, 1).unwrap();
        let run = naive_lll_linear(&h, 2, 0, 10).unwrap();
        assert_eq!(run.traces[0].resamples, 0);
    }

    #[test]
    fn random_linear_instances_succeed() {
        for seed in 0..30 {
            let h = random_linear(60, 3, 8, 120, seed).unwrap();
            let run = naive_lll_linear(&h, 0, seed, 10_000).unwrap();
            assert!(mono_degrees(&h, &run.colouring)
                .unwrap()
                .iter()
                .all(|&m| m == 0));
        }
    }

    #[test]
    fn matching_is_properly_coloured() {
        let h = Hypergraph::new(9, 3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
        let run = naive_lll_linear(&h, 0, 3, 10_000).unwrap();
        assert!(run.colouring.palette_total() >= 2);
        for e in h.edges() {
            let c = run.colouring.colour(e[0]);
            assert!(e.iter().any(|&w| run.colouring.colour(w) != c));
        }
    }

    #[test]
    fn rejects_non_linear() {
        assert_eq!(
            naive_lll_linear(&complete(4, 3).unwrap(), 0, 0, 10).unwrap_err(),
            Error::NotLinear
        );
    }
}
