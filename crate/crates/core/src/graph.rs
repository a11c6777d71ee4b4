//! Simple undirected graphs on up to [`MAX_ORDER`] vertices.
//!
//! Vertices are `0..n`. Adjacency is stored as one [`VertexSet`] row per
//! vertex; the representation is always symmetric and loop-free. All the
//! degree bookkeeping that the singularity machinery leans on (degree
//! multisets, degree classes, regularity) lives here.

use crate::bitset::{VertexSet, MAX_ORDER};
use crate::Error;

/// An undirected graph without loops or multi-edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, Error> {
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::empty(); n],
        })
    }

    /// Build from symmetric loop-free adjacency rows over vertices < 128.
    /// Hot path for generated graphs; callers guarantee well-formedness.
    pub(crate) fn from_rows_u128(rows: &[u128]) -> Self {
        let n = rows.len();
        debug_assert!(n <= 128);
        debug_assert!(rows
            .iter()
            .enumerate()
            .all(|(v, &r)| r & (1u128 << v) == 0 && (n == 128 || r >> n == 0)));
        debug_assert!((0..n).all(|v| (0..v)
            .all(|u| (rows[v] >> u) & 1 == (rows[u] >> v) & 1)));
        Graph {
            n,
            adj: rows.iter().map(|&r| VertexSet::from_low_bits(r)).collect(),
        }
    }

    /// Build from an explicit edge list. Rejects out-of-range endpoints and
    /// loops; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    v: u.max(v),
                    order: n,
                });
            }
            if u == v {
                return Err(Error::LoopEdge { v: u });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Insert the edge `uv`. Panics on out-of-range indices or loops; use
    /// [`Graph::from_edges`] for untrusted input.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u},{v})");
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighbourhood of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Degree of `v` counted inside the set `s` only.
    #[inline]
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        self.adj[v].count_intersect(s)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Complement on the same vertex set (loop-free).
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut row = full.minus(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `keep`, in the given vertex order: vertex `i` of
    /// the result corresponds to `keep[i]`. Rejects out-of-range and
    /// repeated indices.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph, Error> {
        let mut seen = VertexSet::empty();
        for &v in keep {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { v, order: self.n });
            }
            if seen.contains(v) {
                return Err(Error::DuplicateVertex { v });
            }
            seen.insert(v);
        }
        let mut g = Graph::empty(keep.len())?;
        for i in 0..keep.len() {
            for j in (i + 1)..keep.len() {
                if self.has_edge(keep[i], keep[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Relabel under a permutation: vertex `p[v]` of the result plays the
    /// role of `v`. `p` must be a permutation of `0..n`.
    pub fn relabel(&self, p: &[usize]) -> Graph {
        assert_eq!(p.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![VertexSet::empty(); self.n],
        };
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    g.add_edge(p[u], p[v]);
                }
            }
        }
        g
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, Error> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        Ok(g)
    }

    /// True if every vertex has the same degree (vacuously true for n <= 1).
    pub fn is_regular(&self) -> bool {
        match self.n {
            0 | 1 => true,
            _ => {
                let d = self.degree(0);
                (1..self.n).all(|v| self.degree(v) == d)
            }
        }
    }

    /// Partition of the vertices by degree, ascending in degree.
    pub fn degree_classes(&self) -> DegreeClassPartition {
        let mut by_degree: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in 0..self.n {
            let d = self.degree(v);
            match by_degree.iter_mut().find(|(deg, _)| *deg == d) {
                Some((_, vs)) => vs.push(v),
                None => by_degree.push((d, vec![v])),
            }
        }
        by_degree.sort_by_key(|(d, _)| *d);
        DegreeClassPartition {
            classes: by_degree
                .into_iter()
                .map(|(degree, vertices)| DegreeClass { degree, vertices })
                .collect(),
        }
    }

    /// Chromatic number by iterative deepening over the number of colours,
    /// with descending-degree vertex order and new-colour symmetry breaking.
    /// Intended for small graphs (patterns and induced sets).
    pub fn chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        if self.edge_count() == 0 {
            return 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut colors = vec![usize::MAX; self.n];
        for t in 2..self.n {
            if self.color_with(&order, &mut colors, 0, t, 0) {
                return t;
            }
        }
        self.n
    }

    fn color_with(
        &self,
        order: &[usize],
        colors: &mut [usize],
        idx: usize,
        t: usize,
        used: usize,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // Allowing at most one brand-new colour per step prunes permutations
        // of the colour names.
        let limit = t.min(used + 1);
        for c in 0..limit {
            let clash = self.adj[v]
                .iter()
                .any(|u| colors[u] == c);
            if clash {
                continue;
            }
            colors[v] = c;
            if self.color_with(order, colors, idx + 1, t, used.max(c + 1)) {
                return true;
            }
            colors[v] = usize::MAX;
        }
        false
    }

    /// Connectivity of the whole graph (true for n <= 1).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut reached = VertexSet::singleton(0);
        let mut frontier = VertexSet::singleton(0);
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(&self.adj[v]);
            }
            let next = next.minus(&reached);
            reached = reached.union(&next);
            frontier = next;
        }
        reached.count() == self.n
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Vertices grouped by degree, ascending in degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClassPartition {
    pub classes: Vec<DegreeClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub degree: usize,
    pub vertices: Vec<usize>,
}

impl DegreeClassPartition {
    /// Class sizes, in ascending-degree order.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.vertices.len()).collect()
    }

    /// The distinct degrees, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.degree).collect()
    }

    /// `(size, degree)` pairs in ascending-degree order.
    pub fn size_degree_pairs(&self) -> Vec<(usize, usize)> {
        self.classes
            .iter()
            .map(|c| (c.vertices.len(), c.degree))
            .collect()
    }
}
