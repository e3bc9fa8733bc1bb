//! Uniform hypergraphs on dense vertex indices.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Sorted set of distinct vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// Every vertex `0..n`.
    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset(&self, other: &[usize]) -> bool {
        is_sorted_subset(&self.0, other)
    }
}

impl Deref for VertexSet {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Relabelling from a derived hypergraph's vertices back to the host's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    to_host: Vec<usize>,
}

impl IndexMap {
    /// Host vertex of local vertex `local`.
    pub fn host(&self, local: usize) -> usize {
        self.to_host[local]
    }

    /// Local index of `host`, if the host vertex survived.
    pub fn local(&self, host: usize) -> Option<usize> {
        self.to_host.binary_search(&host).ok()
    }

    pub fn hosts(&self) -> &[usize] {
        &self.to_host
    }

    pub fn len(&self) -> usize {
        self.to_host.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_host.is_empty()
    }
}

/// A `u`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored flat as sorted `u`-tuples and a vertex-to-edge incidence
/// index is built at construction time. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    uniformity: usize,
    edges: Vec<usize>,
    incidence: Vec<Vec<usize>>,
    max_degree: usize,
    // Reserved for multihypergraphs; public constructors always reject duplicates.
    multigraph: bool,
}

impl Hypergraph {
    /// Builds a hypergraph, validating every edge.
    ///
    /// Edges may be given in any vertex order. Rejects out-of-range vertices,
    /// edges without exactly `uniformity` distinct vertices and duplicate
    /// edges. `uniformity` must be at least 1; 1-uniform hypergraphs arise as
    /// links of graphs.
    pub fn new<E: AsRef<[usize]>>(
        n: usize,
        uniformity: usize,
        edges: impl IntoIterator<Item = E>,
    ) -> Result<Self> {
        if uniformity == 0 {
            return Err(Error::Uniformity {
                found: 0,
                expected: ">= 1",
            });
        }
        let mut flat = Vec::new();
        let mut scratch = Vec::with_capacity(uniformity);
        for (i, e) in edges.into_iter().enumerate() {
            scratch.clear();
            scratch.extend_from_slice(e.as_ref());
            scratch.sort_unstable();
            scratch.dedup();
            if let Some(&v) = scratch.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if scratch.len() != uniformity || e.as_ref().len() != uniformity {
                return Err(Error::EdgeSize {
                    edge: i,
                    expected: uniformity,
                    found: scratch.len(),
                });
            }
            flat.extend_from_slice(&scratch);
        }
        let m = flat.len() / uniformity;
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_unstable_by(|&a, &b| {
            flat[a * uniformity..(a + 1) * uniformity]
                .cmp(&flat[b * uniformity..(b + 1) * uniformity])
        });
        for w in order.windows(2) {
            let (a, b) = (w[0], w[1]);
            if flat[a * uniformity..(a + 1) * uniformity]
                == flat[b * uniformity..(b + 1) * uniformity]
            {
                return Err(Error::DuplicateEdge { edge: a.max(b) });
            }
        }
        Ok(Self::from_flat(n, uniformity, flat))
    }

    /// The edgeless hypergraph on `n` vertices.
    pub fn empty(n: usize, uniformity: usize) -> Result<Self> {
        Self::new::<[usize; 0]>(n, uniformity, [])
    }

    /// `flat` must hold sorted, valid, pairwise distinct edges.
    pub(crate) fn from_flat(n: usize, uniformity: usize, flat: Vec<usize>) -> Self {
        debug_assert!(uniformity >= 1 && flat.len().is_multiple_of(uniformity));
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in flat.chunks_exact(uniformity).enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        let max_degree = incidence.iter().map(Vec::len).max().unwrap_or(0);
        Hypergraph {
            n,
            uniformity,
            edges: flat,
            incidence,
            max_degree,
            multigraph: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices per edge (`r + 1`).
    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    /// `uniformity - 1`, the exponent `r` in the colour bounds.
    pub fn rank(&self) -> usize {
        self.uniformity - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.uniformity
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i * self.uniformity..(i + 1) * self.uniformity]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.edges.chunks_exact(self.uniformity)
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Number of edges containing every vertex of `s`; `e(H)` for `s = ∅`.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        for &v in s.iter() {
            self.check_vertex(v)?;
        }
        let Some(&pivot) = s.iter().min_by_key(|&&v| self.incidence[v].len()) else {
            return Ok(self.edge_count());
        };
        Ok(self.incidence[pivot]
            .iter()
            .filter(|&&e| s.is_subset(self.edge(e)))
            .count())
    }

    /// `deg(x, y)`: edges containing both vertices. `x == y` gives `deg(x)`.
    pub fn codegree(&self, x: usize, y: usize) -> usize {
        let (a, b) = if self.incidence[x].len() <= self.incidence[y].len() {
            (x, y)
        } else {
            (y, x)
        };
        self.incidence[a]
            .iter()
            .filter(|&&e| self.edge(e).binary_search(&b).is_ok())
            .count()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Index of the edge with exactly these vertices.
    pub fn find_edge(&self, vertices: &[usize]) -> Option<usize> {
        let set = VertexSet::new(vertices.iter().copied());
        if set.len() != self.uniformity || set.iter().any(|&v| v >= self.n) {
            return None;
        }
        self.incidence[set[0]]
            .iter()
            .copied()
            .find(|&e| self.edge(e) == set.as_slice())
    }

    /// Link hypergraph of `v`: vertex set `V ∖ {v}` relabelled to `0..n-1`,
    /// one edge `e ∖ {v}` per edge `e ∋ v`.
    pub fn link(&self, v: usize) -> Result<(Hypergraph, IndexMap)> {
        self.check_vertex(v)?;
        if self.uniformity < 2 {
            return Err(Error::Uniformity {
                found: self.uniformity,
                expected: ">= 2",
            });
        }
        let to_host: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        let relabel = |w: usize| if w < v { w } else { w - 1 };
        let mut flat = Vec::with_capacity(self.incidence[v].len() * (self.uniformity - 1));
        for &e in &self.incidence[v] {
            flat.extend(
                self.edge(e)
                    .iter()
                    .filter(|&&w| w != v)
                    .map(|&w| relabel(w)),
            );
        }
        let link = Hypergraph::from_flat(self.n - 1, self.uniformity - 1, flat);
        Ok((link, IndexMap { to_host }))
    }

    /// Subhypergraph induced by `w`, relabelled to `0..|w|`.
    pub fn induced(&self, w: &VertexSet) -> Result<(Hypergraph, IndexMap)> {
        for &v in w.iter() {
            self.check_vertex(v)?;
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in w.iter().enumerate() {
            local[v] = i;
        }
        let mut flat = Vec::new();
        let mut seen = vec![false; self.edge_count()];
        for &v in w.iter() {
            for &e in &self.incidence[v] {
                if seen[e] {
                    continue;
                }
                seen[e] = true;
                let edge = self.edge(e);
                if edge.iter().all(|&x| local[x] != usize::MAX) {
                    // relabelling is monotone, so the edge stays sorted
                    flat.extend(edge.iter().map(|&x| local[x]));
                }
            }
        }
        let g = Hypergraph::from_flat(w.len(), self.uniformity, flat);
        Ok((
            g,
            IndexMap {
                to_host: w.as_slice().to_vec(),
            },
        ))
    }

    /// True iff any two distinct edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        let mut pairs = BTreeSet::new();
        for e in self.edges() {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    if !pairs.insert((a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Vertices at distance at most `radius` from `v` (two vertices are
    /// adjacent when some edge contains both), sorted.
    pub fn ball(&self, v: usize, radius: usize) -> Vec<usize> {
        let mut mark = vec![false; self.n];
        let mut visited_edge = vec![false; self.edge_count()];
        mark[v] = true;
        let mut frontier = vec![v];
        let mut out = vec![v];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &x in &frontier {
                for &e in &self.incidence[x] {
                    if visited_edge[e] {
                        continue;
                    }
                    visited_edge[e] = true;
                    for &y in self.edge(e) {
                        if !mark[y] {
                            mark[y] = true;
                            next.push(y);
                            out.push(y);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out.sort_unstable();
        out
    }
}

pub(crate) fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, grid};

    fn single() -> Hypergraph {
        Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap()
    }

    #[test]
    fn degree_examples() {
        let k5 = complete(5, 3).unwrap();
        assert_eq!(k5.degree(&VertexSet::new([0])).unwrap(), 6);
        assert_eq!(k5.degree(&VertexSet::empty()).unwrap(), 10);
        assert_eq!(single().degree(&VertexSet::new([0, 1])).unwrap(), 1);
        assert!(matches!(
            single().degree(&VertexSet::new([7])),
            Err(Error::VertexOutOfRange { vertex: 7, n: 3 })
        ));
    }

    #[test]
    fn link_examples() {
        let (l, map) = complete(4, 3).unwrap().link(0).unwrap();
        assert_eq!(l.n(), 3);
        assert_eq!(l.uniformity(), 2);
        let edges: Vec<&[usize]> = l.edges().collect();
        assert_eq!(edges, [&[0, 1][..], &[0, 2], &[1, 2]]);
        assert_eq!(map.hosts(), &[1, 2, 3]);

        let h = Hypergraph::new(4, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(h.link(3).unwrap().0.edge_count(), 0);

        let (l, map) = single().link(0).unwrap();
        assert_eq!(l.edge_count(), 1);
        let host: Vec<usize> = l.edge(0).iter().map(|&x| map.host(x)).collect();
        assert_eq!(host, [1, 2]);
    }

    #[test]
    fn graph_link_is_one_uniform() {
        let g = Hypergraph::new(3, 2, [[0, 1], [0, 2]]).unwrap();
        let (l, _) = g.link(0).unwrap();
        assert_eq!(l.uniformity(), 1);
        assert_eq!(l.edge_count(), 2);
        assert!(l.link(0).is_err());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(complete(5, 3).unwrap().max_degree(), 6);
        assert_eq!(Hypergraph::empty(4, 3).unwrap().max_degree(), 0);
        assert_eq!(grid(3, 2).unwrap().hypergraph.max_degree(), 4);
    }

    #[test]
    fn induced_examples() {
        let k5 = complete(5, 3).unwrap();
        let (all, _) = k5.induced(&VertexSet::all(5)).unwrap();
        assert_eq!(all, k5);
        let (none, _) = k5.induced(&VertexSet::empty()).unwrap();
        assert_eq!((none.n(), none.edge_count()), (0, 0));
        let (part, _) = single().induced(&VertexSet::new([0, 1])).unwrap();
        assert_eq!(part.edge_count(), 0);
    }

    #[test]
    fn linearity() {
        let matching = Hypergraph::new(6, 3, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(matching.is_linear());
        let two = Hypergraph::new(4, 3, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(!two.is_linear());
        assert!(!complete(4, 3).unwrap().is_linear());
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(3, 3, [[0, 1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, [[0, 1, 1]]),
            Err(Error::EdgeSize { edge: 0, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, [[0, 1, 2], [1, 3, 0], [2, 1, 0]]),
            Err(Error::DuplicateEdge { edge: 2 })
        ));
        assert!(Hypergraph::new(3, 0, Vec::<Vec<usize>>::new()).is_err());
        let z = Hypergraph::empty(0, 3).unwrap();
        assert_eq!((z.n(), z.edge_count(), z.max_degree()), (0, 0, 0));
        assert!(!z.is_multigraph());
    }

    #[test]
    fn balls() {
        // path 0-1-2-3-4 as a graph
        let p = Hypergraph::new(5, 2, [[0, 1], [1, 2], [2, 3], [3, 4]]).unwrap();
        assert_eq!(p.ball(0, 0), [0]);
        assert_eq!(p.ball(0, 2), [0, 1, 2]);
        assert_eq!(p.ball(2, 1), [1, 2, 3]);
        assert_eq!(p.ball(4, 10), [0, 1, 2, 3, 4]);
        assert_eq!(p.codegree(1, 2), 1);
        assert_eq!(p.codegree(0, 2), 0);
    }
}
