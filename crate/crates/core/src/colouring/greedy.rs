use alloc::vec;
use alloc::vec::Vec;

use super::Colouring;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::partition::max_cut_partition;

/// Proper colouring in vertex order with at most `Δ + 1` colours.
///
/// Vertex `v` avoids colour `c` only when some edge through `v` already has
/// all its other vertices coloured `c`; there are at most `deg(v)` such
/// colours.
pub fn greedy_proper(h: &Hypergraph) -> Result<Colouring> {
    if h.uniformity() < 2 {
        return Err(Error::Uniformity {
            found: h.uniformity(),
            expected: ">= 2",
        });
    }
    let mut colour: Vec<Option<usize>> = vec![None; h.n()];
    let mut forbidden: Vec<usize> = Vec::new();
    for v in 0..h.n() {
        forbidden.clear();
        for &e in h.incident(v) {
            let mut others = h.edge(e).iter().filter(|&&w| w != v).map(|&w| colour[w]);
            let Some(Some(c)) = others.next() else {
                continue;
            };
            if others.all(|x| x == Some(c)) {
                forbidden.push(c);
            }
        }
        forbidden.sort_unstable();
        forbidden.dedup();
        let pick = forbidden
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(forbidden.len(), |(i, _)| i);
        colour[v] = Some(pick);
    }
    Ok(Colouring::from_assignment(colour))
}

/// `d`-defective colouring of a graph with exactly `⌊Δ/(d+1)⌋ + 1` colours:
/// the parts of a locally optimal max-cut partition into that many parts.
///
/// A vertex's same-part degree is at most `deg(x)/ℓ < d + 1`. When a part is
/// empty the partition is already proper, and vertices are moved from parts
/// with at least two members into the empty parts so all `ℓ` colours appear.
pub fn graph_maxcut_colouring(g: &Hypergraph, d: usize, seed: u64) -> Result<Colouring> {
    if g.uniformity() != 2 {
        return Err(Error::Uniformity {
            found: g.uniformity(),
            expected: "2",
        });
    }
    let parts = g.max_degree() / (d + 1) + 1;
    if g.n() == 0 {
        return Ok(Colouring::with_palettes(Vec::new(), vec![parts]));
    }
    let mut partition = max_cut_partition(g, parts, seed)?.partition;
    let mut sizes = vec![0usize; parts];
    for &p in partition.parts() {
        sizes[p] += 1;
    }
    // ℓ ≤ Δ + 1 ≤ n, so every empty part can be filled
    for target in 0..parts {
        if sizes[target] > 0 {
            continue;
        }
        let donor = (0..g.n()).find(|&v| sizes[partition.part_of(v)] >= 2);
        let Some(v) = donor else { break };
        sizes[partition.part_of(v)] -= 1;
        partition.assign(v, target);
        sizes[target] += 1;
    }
    let assignment = partition.parts().iter().map(|&p| Some(p)).collect();
    Ok(Colouring::with_palettes(assignment, vec![parts]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{mono_degree, mono_degrees};
    use crate::generators::{complete, random_bounded_degree};

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, 2, (0..n).map(|i| [i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let e = Hypergraph::empty(5, 3).unwrap();
        assert_eq!(greedy_proper(&e).unwrap().palette_total(), 1);
        let k4 = complete(4, 2).unwrap();
        let c = greedy_proper(&k4).unwrap();
        assert!(c.palette_total() <= 4);
        assert!(mono_degrees(&k4, &c).unwrap().iter().all(|&m| m == 0));
        let k5 = complete(5, 3).unwrap();
        let c = greedy_proper(&k5).unwrap();
        assert!(c.palette_total() <= 7);
        assert!(mono_degrees(&k5, &c).unwrap().iter().all(|&m| m == 0));
    }

    #[test]
    fn greedy_is_proper_on_random_instances() {
        for seed in 0..30 {
            let h = random_bounded_degree(50, 2 + seed as usize % 3, 10, 120, seed).unwrap();
            let c = greedy_proper(&h).unwrap();
            assert!(c.palette_total() <= h.max_degree() + 1);
            assert!(mono_degrees(&h, &c).unwrap().iter().all(|&m| m == 0));
        }
    }

    #[test]
    fn maxcut_colouring_examples() {
        let c5 = cycle(5);
        let phi = graph_maxcut_colouring(&c5, 1, 0).unwrap();
        assert_eq!(phi.palette_total(), 2);
        assert_eq!(phi.colours_used(), 2);
        assert!((0..5).all(|v| mono_degree(&c5, &phi, v).unwrap() <= 1));

        let star = Hypergraph::new(7, 2, (1..7).map(|i| [0, i])).unwrap();
        let phi = graph_maxcut_colouring(&star, 2, 5).unwrap();
        assert_eq!(phi.palette_total(), 3);
        assert!(mono_degree(&star, &phi, 0).unwrap() <= 2);

        let k5 = complete(5, 2).unwrap();
        let phi = graph_maxcut_colouring(&k5, 0, 1).unwrap();
        assert_eq!(phi.colours_used(), 5);
        assert!(mono_degrees(&k5, &phi).unwrap().iter().all(|&m| m == 0));

        assert!(graph_maxcut_colouring(&complete(4, 3).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn five_cycle_two_colour_defect_one_exhaustive() {
        // every 2-colouring of C5 with defect 1 found by brute force passes, and the
        // engine's output is among them
        let c5 = cycle(5);
        let mut valid = 0;
        for code in 0..32usize {
            let phi = Colouring::from_colours((0..5).map(|i| code >> i & 1).collect());
            if mono_degrees(&c5, &phi).unwrap().iter().all(|&m| m <= 1) {
                valid += 1;
            }
        }
        assert!(valid > 0);
        for seed in 0..20 {
            let phi = graph_maxcut_colouring(&c5, 1, seed).unwrap();
            assert!(mono_degrees(&c5, &phi).unwrap().iter().all(|&m| m <= 1));
        }
    }
}
