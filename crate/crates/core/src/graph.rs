//! Undirected simple graphs over vertex indices `0..n-1`.
//!
//! Adjacency is stored as a dense symmetric bit matrix (one row of `u64`
//! words per vertex). Every graph treated by this crate is small enough
//! (n up to a few thousand) that O(1) edge queries and trivially correct
//! symmetry beat sparse cleverness.

use crate::{Error, Result};

/// Kite (lollipop) graph parameters: a path of order `r` glued at an end
/// vertex to one vertex of a complete graph `K_s`. The realized graph
/// `P_r · K_s` has order `r + s - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KiteSpec {
    r: usize,
    s: usize,
}

impl KiteSpec {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r < 1 || s < 2 {
            return Err(Error::InvalidKite { r, s });
        }
        Ok(KiteSpec { r, s })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Order of the realized graph.
    pub fn n(&self) -> usize {
        self.r + self.s - 1
    }
}

/// Maximal pendant path of a graph: `vertices[0]` has degree 1, the rest
/// have degree 2, and the path attaches to `attachment`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantPath {
    pub vertices: Vec<usize>,
    pub attachment: usize,
}

/// Undirected simple graph with a dense symmetric bitset adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Empty graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
            degrees: vec![0; n],
        })
    }

    /// Graph with exactly the given edges; duplicates collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Realizes a kite `P_r · K_s`: vertices `0..r-1` are the pendant path
    /// (vertex 0 is the free end), vertex `r-1` is the attachment, and
    /// vertices `r-1..r+s-2` form the clique.
    pub fn kite(spec: KiteSpec) -> Self {
        let r = spec.r();
        let n = spec.n();
        let mut g = Graph::empty(n).expect("kite order >= 2");
        for i in 0..r.saturating_sub(1) {
            g.add_edge(i, i + 1);
        }
        for u in (r - 1)..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (wu, bu) = (v / 64, v % 64);
        if self.rows[u * self.words + wu] >> bu & 1 == 0 {
            self.rows[u * self.words + wu] |= 1 << bu;
            self.rows[v * self.words + u / 64] |= 1 << (u % 64);
            self.degrees[u] += 1;
            self.degrees[v] += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.iter().all(|&d| d == self.degrees[0])
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| {
            let base = w * 64;
            BitIter(bits).map(move |b| base + b)
        })
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff a single search from vertex 0 reaches all `n` vertices.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// BFS distances from `src` (`usize::MAX` for unreachable vertices).
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// The longest maximal pendant path, rooted at a degree-1 vertex, plus
    /// the first vertex of degree >= 3 it attaches to. Ties between equally
    /// long paths break toward the lexicographically smallest vertex
    /// sequence. For a bare path graph (no vertex of degree >= 3) the path
    /// is rooted at the smaller-labelled endpoint and the opposite endpoint
    /// is reported as the attachment. `None` if no vertex has degree 1.
    pub fn find_pendant_path(&self) -> Option<PendantPath> {
        let mut best: Option<PendantPath> = None;
        for start in 0..self.n {
            if self.degrees[start] != 1 {
                continue;
            }
            let mut path = vec![start];
            let mut prev = start;
            let mut cur = self.neighbors(start).next().expect("degree 1");
            while self.degrees[cur] == 2 {
                path.push(cur);
                let next = self
                    .neighbors(cur)
                    .find(|&w| w != prev)
                    .expect("degree 2 vertex has a forward neighbor");
                prev = cur;
                cur = next;
            }
            let candidate = if self.degrees[cur] >= 3 {
                PendantPath {
                    vertices: path,
                    attachment: cur,
                }
            } else {
                // Bare path graph: `cur` is the opposite degree-1 endpoint.
                if start > cur {
                    continue;
                }
                PendantPath {
                    vertices: path,
                    attachment: cur,
                }
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    candidate.vertices.len() > b.vertices.len()
                        || (candidate.vertices.len() == b.vertices.len()
                            && candidate.vertices < b.vertices)
                }
            };
            if better {
                best = Some(candidate);
            }
        }
        best
    }

    /// Image of the graph under the vertex relabelling `perm` (vertex `v`
    /// becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::build(self.n, &edges)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(g.is_connected());
        assert!(g.is_regular());
    }

    #[test]
    fn builds_single_vertex() {
        let g = Graph::build(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::build(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::build(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(Graph::build(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(Graph::empty(0), Err(Error::EmptyGraph));
    }

    #[test]
    fn paw_equals_kite_2_3() {
        let paw = Graph::build(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        let kite = Graph::kite(KiteSpec::new(2, 3).unwrap());
        assert_eq!(paw, kite);
        let mut degs = paw.degrees().to_vec();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 2, 2, 3]);
    }

    #[test]
    fn degenerate_kite_is_complete() {
        let g = Graph::kite(KiteSpec::new(1, 5).unwrap());
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 10);
        assert!(g.is_regular());
    }

    #[test]
    fn kite_edge_count_formula() {
        // (r - 1) path edges plus s(s-1)/2 clique edges
        let g = Graph::kite(KiteSpec::new(3, 4).unwrap());
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 2 + 6);
    }

    #[test]
    fn kite_degree_multiset() {
        for r in 2..=8 {
            for s in 2..=8 {
                let g = Graph::kite(KiteSpec::new(r, s).unwrap());
                let mut got = g.degrees().to_vec();
                got.sort_unstable();
                let mut want = vec![1];
                want.extend(std::iter::repeat_n(2, r - 2));
                want.push(s);
                want.extend(std::iter::repeat_n(s - 1, s - 1));
                want.sort_unstable();
                assert_eq!(got, want, "kite({r},{s})");
            }
        }
    }

    #[test]
    fn kite_rejects_bad_spec() {
        assert!(KiteSpec::new(0, 3).is_err());
        assert!(KiteSpec::new(1, 1).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap().is_connected());
        assert!(!Graph::build(2, &[]).unwrap().is_connected());
        assert!(Graph::kite(KiteSpec::new(5, 7).unwrap()).is_connected());
    }

    #[test]
    fn pendant_path_of_kite() {
        let g = Graph::kite(KiteSpec::new(4, 5).unwrap());
        let pp = g.find_pendant_path().unwrap();
        assert_eq!(pp.vertices, vec![0, 1, 2]);
        assert_eq!(pp.attachment, 3);
    }

    #[test]
    fn pendant_path_absent_in_complete_graph() {
        let g = Graph::kite(KiteSpec::new(1, 4).unwrap());
        assert_eq!(g.find_pendant_path(), None);
    }

    #[test]
    fn pendant_path_of_bare_path() {
        // P5 labelled along the path: root at the smaller endpoint, the far
        // endpoint is the attachment, and the path has n-1 vertices.
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let pp = g.find_pendant_path().unwrap();
        assert_eq!(pp.vertices, vec![0, 1, 2, 3]);
        assert_eq!(pp.attachment, 4);

        // Same graph with endpoints labelled 4 and 2: root at 2.
        let g = Graph::build(5, &[(4, 1), (1, 0), (0, 3), (3, 2)]).unwrap();
        let pp = g.find_pendant_path().unwrap();
        assert_eq!(pp.vertices, vec![2, 3, 0, 1]);
        assert_eq!(pp.attachment, 4);
    }

    #[test]
    fn pendant_path_length_invariant() {
        for r in 2..=8 {
            for s in 3..=8 {
                let g = Graph::kite(KiteSpec::new(r, s).unwrap());
                let pp = g.find_pendant_path().unwrap();
                assert_eq!(pp.vertices.len(), r - 1, "kite({r},{s})");
                assert_eq!(pp.attachment, r - 1);
            }
        }
    }

    #[test]
    fn pendant_path_tie_break_lexicographic() {
        // Star with two legs of length 2 hanging off vertex 0:
        // 0-1-2 and 0-3-4, plus a triangle 0-5-6 to give 0 degree >= 3.
        let g = Graph::build(
            7,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (0, 6), (5, 6)],
        )
        .unwrap();
        let pp = g.find_pendant_path().unwrap();
        // Both legs have length 2; [1,2] reversed from the leaf is [2,1],
        // [4,3] from the other leaf; lexicographically smallest is [2,1].
        assert_eq!(pp.vertices, vec![2, 1]);
        assert_eq!(pp.attachment, 0);
    }

    #[test]
    fn permutation_preserves_structure() {
        let g = Graph::kite(KiteSpec::new(3, 4).unwrap());
        let perm = [5, 0, 3, 1, 4, 2];
        let h = g.permuted(&perm).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        let mut got = h.degrees().to_vec();
        let mut want = g.degrees().to_vec();
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(got, want);
    }
}
