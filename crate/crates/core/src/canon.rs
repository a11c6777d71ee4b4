//! Canonical labelling and isomorphism testing.
//!
//! The canonical form of a graph is the lexicographically least
//! column-major upper-triangle bit string obtainable by relabelling the
//! graph consistently with its iterated degree refinement. Two graphs are
//! isomorphic iff their canonical keys agree, and the key doubles as an
//! exact deduplication token during isomorphism-free generation.
//!
//! The search individualises one vertex of the first non-singleton cell of
//! the refined partition, re-refines, and recurses, keeping the least leaf
//! key. Two standard accelerations keep the tree tiny in practice:
//! refinement to an *equitable* partition (every cell sees every other cell
//! with a uniform neighbour count), and a short-circuit at nodes whose
//! equitable partition is *homogeneous* (every cell is internally empty or
//! complete and joined completely or not at all to every other cell) —
//! there every consistent labelling yields the same key, so no branching is
//! needed. That short-circuit is what makes empty graphs, cliques, and
//! complete multipartite graphs constant-time instead of factorial.
//!
//! Supported orders: `n <= 128` (adjacency rows are handled as single
//! `u128` words here; nothing in the exact searches needs more).

use crate::graph::Graph;
use crate::Error;

/// Hard cap for canonical labelling.
pub const MAX_CANON_ORDER: usize = 128;

/// Result of canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub n: usize,
    /// Upper-triangle bits of the relabelled graph, column-major, packed
    /// most-significant-first into 64-bit words. Lexicographic order on
    /// `key` equals lexicographic order on the bit string.
    pub key: Vec<u64>,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    /// The graph relabelled into canonical position.
    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        let mut perm = vec![0usize; self.n];
        for (pos, &v) in self.order.iter().enumerate() {
            perm[v] = pos;
        }
        g.relabel(&perm)
    }

    /// Key packed into one `u128`; only valid for `n <= 16` (120 bits).
    pub fn packed_key(&self) -> u128 {
        debug_assert!(self.n <= 16);
        let w0 = *self.key.first().unwrap_or(&0) as u128;
        let w1 = *self.key.get(1).unwrap_or(&0) as u128;
        (w0 << 64) | w1
    }
}

/// Canonical form of `g` (requires `g.order() <= 128`).
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, Error> {
    let rows = rows_u128(g)?;
    let mut c = Canonizer::new();
    Ok(c.run(g.order(), &rows))
}

/// Isomorphism test via canonical keys.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, Error> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)?.key == canonical_form(b)?.key)
}

/// Adjacency rows as plain `u128` masks (fails above order 128).
pub fn rows_u128(g: &Graph) -> Result<Vec<u128>, Error> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            max: MAX_CANON_ORDER,
        });
    }
    let mut rows = vec![0u128; n];
    for v in 0..n {
        for u in g.neighbors(v).iter() {
            rows[v] |= 1u128 << u;
        }
    }
    Ok(rows)
}

/// Reusable canonical-labelling engine. Keeping one `Canonizer` alive
/// across many calls avoids reallocating the per-depth scratch buffers,
/// which matters when millions of small graphs are keyed during
/// generation.
pub struct Canonizer {
    // Per-depth partition state: vertex order and cell (start, len) lists.
    verts: Vec<Vec<u32>>,
    bounds: Vec<Vec<(u32, u32)>>,
    best_key: Vec<u64>,
    best_order: Vec<u32>,
    have_best: bool,
    key_scratch: Vec<u64>,
    masks: Vec<u128>,
    counts: Vec<u32>,
}

impl Default for Canonizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Canonizer {
    pub fn new() -> Self {
        Canonizer {
            verts: Vec::new(),
            bounds: Vec::new(),
            best_key: Vec::new(),
            best_order: Vec::new(),
            have_best: false,
            key_scratch: Vec::new(),
            masks: Vec::new(),
            counts: Vec::new(),
        }
    }

    /// Canonical form of the graph given by `rows` (`rows.len() == n`,
    /// `n <= 128`). Row `v` has bit `u` set iff `uv` is an edge.
    pub fn run(&mut self, n: usize, rows: &[u128]) -> CanonicalForm {
        assert!(n <= MAX_CANON_ORDER && rows.len() == n);
        self.have_best = false;
        self.best_key.clear();
        self.best_order.clear();
        if n == 0 {
            return CanonicalForm {
                n,
                key: Vec::new(),
                order: Vec::new(),
            };
        }
        self.ensure_depth(0, n);

        // Root partition: cells by degree, ascending.
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| rows[v as usize].count_ones());
        let mut cells: Vec<(u32, u32)> = Vec::new();
        let mut start = 0usize;
        for i in 1..=n {
            if i == n
                || rows[order[i] as usize].count_ones()
                    != rows[order[start] as usize].count_ones()
            {
                cells.push((start as u32, (i - start) as u32));
                start = i;
            }
        }
        self.verts[0].clear();
        self.verts[0].extend_from_slice(&order);
        self.bounds[0].clear();
        self.bounds[0].extend_from_slice(&cells);

        self.search(0, n, rows);

        CanonicalForm {
            n,
            key: self.best_key.clone(),
            order: self.best_order.iter().map(|&v| v as usize).collect(),
        }
    }

    /// Convenience: canonical key packed into one `u128` (`n <= 16`).
    pub fn key_u128(&mut self, n: usize, rows: &[u128]) -> u128 {
        debug_assert!(n <= 16);
        self.run(n, rows).packed_key()
    }

    fn ensure_depth(&mut self, d: usize, n: usize) {
        while self.verts.len() <= d {
            self.verts.push(Vec::with_capacity(n));
            self.bounds.push(Vec::with_capacity(n));
        }
    }

    fn search(&mut self, d: usize, n: usize, rows: &[u128]) {
        self.refine(d, n, rows);

        // Find the first non-singleton cell, if any.
        let target = self.bounds[d].iter().position(|&(_, l)| l > 1);
        let target = match target {
            None => {
                self.consider_leaf(d, n, rows);
                return;
            }
            Some(t) => t,
        };

        if self.is_homogeneous(d, rows) {
            // Every labelling consistent with this partition produces the
            // same key; the current order is as good as any.
            self.consider_leaf(d, n, rows);
            return;
        }

        let (s, l) = self.bounds[d][target];
        let (s, l) = (s as usize, l as usize);
        self.ensure_depth(d + 1, n);
        for pick in 0..l {
            // Child partition: chosen vertex split off in front of its cell.
            let (child_verts, child_bounds) = {
                let verts = &self.verts[d];
                let bounds = &self.bounds[d];
                let mut cv: Vec<u32> = Vec::with_capacity(n);
                cv.extend_from_slice(verts);
                cv.swap(s, s + pick);
                // Keep the remainder of the cell in a deterministic order.
                cv[s + 1..s + l].sort_unstable();
                let mut cb: Vec<(u32, u32)> = Vec::with_capacity(bounds.len() + 1);
                for &(cs, cl) in bounds.iter() {
                    if cs as usize == s {
                        cb.push((cs, 1));
                        cb.push((cs + 1, cl - 1));
                    } else {
                        cb.push((cs, cl));
                    }
                }
                (cv, cb)
            };
            self.verts[d + 1].clear();
            self.verts[d + 1].extend_from_slice(&child_verts);
            self.bounds[d + 1].clear();
            self.bounds[d + 1].extend_from_slice(&child_bounds);
            self.search(d + 1, n, rows);
        }
    }

    /// Refine partition at depth `d` to equitability: repeatedly split
    /// every cell by the vector of neighbour counts into all current
    /// cells, fragments ordered by ascending count vector.
    fn refine(&mut self, d: usize, n: usize, rows: &[u128]) {
        loop {
            let ncells = self.bounds[d].len();
            if ncells == n {
                return; // discrete
            }
            // Cell masks for this round.
            self.masks.clear();
            for &(s, l) in self.bounds[d].iter() {
                let mut m = 0u128;
                for i in s..(s + l) {
                    m |= 1u128 << self.verts[d][i as usize];
                }
                self.masks.push(m);
            }
            // counts[v * ncells + c] = |N(v) /\ cell c|, for all vertices.
            self.counts.resize(n * ncells, 0);
            for i in 0..n {
                let v = self.verts[d][i] as usize;
                let row = rows[v];
                for (c, &m) in self.masks.iter().enumerate() {
                    self.counts[v * ncells + c] = (row & m).count_ones();
                }
            }

            let mut changed = false;
            let old_bounds: Vec<(u32, u32)> = self.bounds[d].clone();
            self.bounds[d].clear();
            for &(s, l) in old_bounds.iter() {
                if l == 1 {
                    self.bounds[d].push((s, l));
                    continue;
                }
                let (s, l) = (s as usize, l as usize);
                let counts = &self.counts;
                self.verts[d][s..s + l].sort_by(|&a, &b| {
                    let ra = &counts[a as usize * ncells..(a as usize + 1) * ncells];
                    let rb = &counts[b as usize * ncells..(b as usize + 1) * ncells];
                    ra.cmp(rb)
                });
                // Emit fragments at count-vector boundaries.
                let mut frag_start = s;
                for i in (s + 1)..=(s + l) {
                    let boundary = i == s + l || {
                        let a = self.verts[d][i - 1] as usize;
                        let b = self.verts[d][i] as usize;
                        self.counts[a * ncells..(a + 1) * ncells]
                            != self.counts[b * ncells..(b + 1) * ncells]
                    };
                    if boundary {
                        self.bounds[d].push((frag_start as u32, (i - frag_start) as u32));
                        if frag_start != s || i != s + l {
                            changed = true;
                        }
                        frag_start = i;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// With the partition at depth `d` equitable, check whether every cell
    /// is internally empty or complete and relates to every other cell
    /// completely or not at all. If so the key no longer depends on
    /// within-cell order.
    fn is_homogeneous(&mut self, d: usize, rows: &[u128]) -> bool {
        let bounds = &self.bounds[d];
        self.masks.clear();
        for &(s, l) in bounds.iter() {
            let mut m = 0u128;
            for i in s..(s + l) {
                m |= 1u128 << self.verts[d][i as usize];
            }
            self.masks.push(m);
        }
        for (a, &(s, l)) in bounds.iter().enumerate() {
            let u = self.verts[d][s as usize] as usize;
            for (b, &(_, lb)) in bounds.iter().enumerate() {
                let m = (rows[u] & self.masks[b]).count_ones();
                let ok = if a == b {
                    m == 0 || m == l - 1
                } else {
                    m == 0 || m == lb
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn consider_leaf(&mut self, d: usize, n: usize, rows: &[u128]) {
        let words = (n * (n - 1) / 2).div_ceil(64);
        self.key_scratch.clear();
        self.key_scratch.resize(words, 0);
        let order = &self.verts[d];
        let mut bit = 0usize;
        for j in 1..n {
            let vj = order[j] as usize;
            for i in 0..j {
                let vi = order[i] as usize;
                if (rows[vi] >> vj) & 1 == 1 {
                    self.key_scratch[bit >> 6] |= 1u64 << (63 - (bit & 63));
                }
                bit += 1;
            }
        }
        if !self.have_best || self.key_scratch < self.best_key {
            self.best_key.clear();
            self.best_key.extend_from_slice(&self.key_scratch);
            self.best_order.clear();
            self.best_order.extend_from_slice(order);
            self.have_best = true;
        }
    }
}
