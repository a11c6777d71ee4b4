//! Isomorphism-free graph generation and R-graph catalogues.
//!
//! Generation is by one-vertex augmentation: every graph of order m+1
//! arises from a graph of order m by attaching a new vertex to some subset,
//! so extending a complete level-m list and deduplicating by canonical key
//! yields a complete level-(m+1) list. Graphs up to order 16 travel as
//! packed 128-bit canonical keys, which keeps whole levels cheap to hold
//! (order 10 has about twelve million classes).
//!
//! An *R-graph* for a pattern pair (f1, f2) is a graph with no f1 subgraph
//! whose complement has no f2 subgraph. Both conditions are preserved by
//! vertex deletion, so R-graph catalogues are generated with the same
//! augmentation scheme, pruning the moment either pattern appears; a new
//! copy can only pass through the new vertex, which keeps the check cheap.

use crate::canon::Canonizer;
use crate::graph::Graph;
use crate::subgraph::{contains_subgraph, contains_subgraph_using};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashSet;

/// Hard practical bound for exhaustive generation.
pub const MAX_GEN_ORDER: usize = 10;

/// Parents per parallel work unit.
const PAR_CHUNK: usize = 256;
/// Parents per memory wave; one wave's candidate keys are buffered at once
/// (at most `WAVE << (m-4)` bytes, ~64 MiB for order-10 children).
const WAVE: usize = 8192;

// ---------------------------------------------------------------------------
// packed canonical keys <-> graphs
// ---------------------------------------------------------------------------

/// Adjacency rows of the graph encoded by a packed canonical key
/// (column-major upper-triangle bit t at u128 bit 127-t).
fn rows_from_key(n: usize, key: u128) -> [u128; 16] {
    debug_assert!(n <= 16);
    let mut rows = [0u128; 16];
    let mut t = 0u32;
    for j in 1..n {
        for i in 0..j {
            if (key >> (127 - t)) & 1 == 1 {
                rows[i] |= 1u128 << j;
                rows[j] |= 1u128 << i;
            }
            t += 1;
        }
    }
    rows
}

/// The graph for a packed canonical key.
fn expand_key(n: usize, key: u128) -> Graph {
    let rows = rows_from_key(n, key);
    Graph::from_rows_u128(&rows[..n])
}

// ---------------------------------------------------------------------------
// full generation
// ---------------------------------------------------------------------------

/// Canonical keys of all order-m children of `parents` (complete level-m
/// key list), in deterministic first-seen order. Canonical keys are
/// computed in parallel, wave by wave; deduplication is sequential.
fn next_level_keys(m: usize, parents: &[u128]) -> Vec<u128> {
    let mut seen: HashSet<u128> = HashSet::with_capacity(parents.len() * 4);
    let mut fresh: Vec<u128> = Vec::new();
    for wave in parents.chunks(WAVE) {
        let batches: Vec<Vec<u128>> = wave
            .par_chunks(PAR_CHUNK)
            .map_init(Canonizer::new, |cz, chunk| {
                let mut out = Vec::with_capacity(chunk.len() << m);
                let mut child = [0u128; 16];
                for &pk in chunk {
                    let prows = rows_from_key(m, pk);
                    for attach in 0..(1u128 << m) {
                        for v in 0..m {
                            child[v] = prows[v] | (((attach >> v) & 1) << m);
                        }
                        child[m] = attach;
                        out.push(cz.key_u128(m + 1, &child[..=m]));
                    }
                }
                out
            })
            .collect();
        for batch in batches {
            for key in batch {
                if seen.insert(key) {
                    fresh.push(key);
                }
            }
        }
    }
    fresh
}

/// Canonical keys of every isomorphism class of order exactly `n`.
fn level_keys(n: usize) -> Result<Vec<u128>> {
    if n == 0 || n > MAX_GEN_ORDER {
        return Err(Error::ExhaustionBound(format!(
            "generation supports orders 1..={MAX_GEN_ORDER}, got {n}"
        )));
    }
    // The single graph of order 1 has an empty key.
    let mut level: Vec<u128> = vec![0];
    for m in 1..n {
        level = next_level_keys(m, &level);
    }
    Ok(level)
}

/// Stream of all canonical graphs of order `n`, one per isomorphism class,
/// in a deterministic order. Generation runs eagerly on creation (keys
/// only); iteration expands keys to graphs.
pub struct GraphStream {
    n: usize,
    keys: std::vec::IntoIter<u128>,
}

impl GraphStream {
    /// Number of classes remaining to be yielded.
    pub fn remaining(&self) -> usize {
        self.keys.len()
    }
}

impl Iterator for GraphStream {
    type Item = Graph;
    fn next(&mut self) -> Option<Graph> {
        self.keys.next().map(|k| expand_key(self.n, k))
    }
    fn size_hint(&self) -> (usize, Option<usize>) {
        self.keys.size_hint()
    }
}

impl ExactSizeIterator for GraphStream {}

/// All graphs of order `n` up to isomorphism (`1 <= n <= 10`), each in
/// canonical form, deterministic order.
pub fn generate_all(n: usize) -> Result<GraphStream> {
    let keys = level_keys(n)?;
    Ok(GraphStream {
        n,
        keys: keys.into_iter(),
    })
}

/// Number of isomorphism classes of order `n` (`1 <= n <= 10`).
pub fn count_all(n: usize) -> Result<usize> {
    Ok(level_keys(n)?.len())
}

// ---------------------------------------------------------------------------
// R-graph catalogues
// ---------------------------------------------------------------------------

/// All R-graphs of one order for a fixed pattern pair.
#[derive(Debug, Clone)]
pub struct RGraphCatalog {
    /// Common order of the members.
    pub n: usize,
    /// Forbidden subgraph of the graphs themselves.
    pub f1: Graph,
    /// Forbidden subgraph of their complements.
    pub f2: Graph,
    /// Canonical representatives, sorted by canonical key; pairwise
    /// non-isomorphic, each f1-free with f2-free complement.
    pub graphs: Vec<Graph>,
}

impl RGraphCatalog {
    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }
}

/// Is `g` f1-free with f2-free complement? Direct (unpruned) check.
pub fn is_r_graph(g: &Graph, f1: &Graph, f2: &Graph) -> bool {
    !contains_subgraph(g, f1) && !contains_subgraph(&g.complement(), f2)
}

/// R-graph keys of order m+1 generated from R-graph parents of order m.
/// Freeness of the parent means any new pattern copy passes through the new
/// vertex, so the pinned containment test suffices.
fn next_r_level(m: usize, parents: &[(u128, Graph)], f1: &Graph, f2: &Graph) -> Vec<(u128, Graph)> {
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out: Vec<(u128, Graph)> = Vec::new();
    let mut cz = Canonizer::new();
    let mut child = [0u128; 16];
    for (_, parent) in parents {
        let prows = crate::canon::rows_u128(parent).expect("generated orders stay small");
        for attach in 0..(1u128 << m) {
            for v in 0..m {
                child[v] = prows[v] | (((attach >> v) & 1) << m);
            }
            child[m] = attach;
            let g = Graph::from_rows_u128(&child[..=m]);
            if contains_subgraph_using(&g, f1, m) {
                continue;
            }
            if contains_subgraph_using(&g.complement(), f2, m) {
                continue;
            }
            let key = cz.key_u128(m + 1, &child[..=m]);
            if seen.insert(key) {
                out.push((key, expand_key(m + 1, key)));
            }
        }
    }
    out.sort_by_key(|&(k, _)| k);
    out
}

fn r_levels_up_to(n: usize, f1: &Graph, f2: &Graph) -> Result<Vec<Vec<(u128, Graph)>>> {
    if n == 0 || n > MAX_GEN_ORDER {
        return Err(Error::ExhaustionBound(format!(
            "R-graph enumeration supports orders 1..={MAX_GEN_ORDER}, got {n}"
        )));
    }
    let k1 = Graph::empty(1)?;
    let mut levels: Vec<Vec<(u128, Graph)>> = Vec::with_capacity(n);
    levels.push(if is_r_graph(&k1, f1, f2) {
        vec![(0u128, k1)]
    } else {
        Vec::new()
    });
    for m in 1..n {
        let next = next_r_level(m, &levels[m - 1], f1, f2);
        levels.push(next);
    }
    Ok(levels)
}

/// Every R-graph of order `n` for the pair (f1, f2), up to isomorphism.
pub fn enumerate_r_graphs(n: usize, f1: &Graph, f2: &Graph) -> Result<RGraphCatalog> {
    let levels = r_levels_up_to(n, f1, f2)?;
    let graphs: Vec<Graph> = levels[n - 1].iter().map(|(_, g)| g.clone()).collect();
    debug_assert!(graphs.iter().all(|g| is_r_graph(g, f1, f2)));
    Ok(RGraphCatalog {
        n,
        f1: f1.clone(),
        f2: f2.clone(),
        graphs,
    })
}

/// The classical two-colour Ramsey number of (f1, f2) by exhaustion: the
/// least n with no R-graph of order n. After the catalogue first empties at
/// n, emptiness at n+1 is re-verified independently of the augmentation
/// scheme by filtering the full order-(n+1) census (when that census is
/// itself within reach).
pub fn ramsey_number(f1: &Graph, f2: &Graph) -> Result<usize> {
    let levels = r_levels_up_to(MAX_GEN_ORDER, f1, f2)?;
    for (idx, level) in levels.iter().enumerate() {
        let n = idx + 1;
        if level.is_empty() {
            let probe = n + 1;
            if probe <= 9 {
                let any = generate_all(probe)?.any(|g| is_r_graph(&g, f1, f2));
                if any {
                    return Err(Error::ExhaustionBound(format!(
                        "augmentation found no R-graph of order {n} but a direct census finds one of order {probe}"
                    )));
                }
            }
            return Ok(n);
        }
    }
    Err(Error::ExhaustionBound(format!(
        "R-graphs still exist at order {MAX_GEN_ORDER}; Ramsey number out of reach"
    )))
}

// ---------------------------------------------------------------------------
// Ramsey stability
// ---------------------------------------------------------------------------

/// How one vertex of an R-graph behaves under delete-and-reattach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStability {
    /// The deleted vertex.
    pub vertex: usize,
    /// How many of the 2^(n-1) labelled one-vertex extensions of h - v are
    /// R-graphs. Always at least 1 (re-attaching to N(v) restores h).
    pub r_extensions: usize,
    /// Attachment sets other than N(v) that also produce R-graphs.
    pub alternatives: Vec<Vec<usize>>,
}

/// Stability verdict with per-vertex evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    /// True iff every vertex has exactly one R-extension.
    pub stable: bool,
    pub per_vertex: Vec<VertexStability>,
}

/// Is the R-graph `h` Ramsey-stable for (f1, f2)? For every vertex v,
/// among all labelled one-vertex extensions of h - v, re-attaching to N(v)
/// must be the only one that yields an R-graph.
pub fn is_ramsey_stable(h: &Graph, f1: &Graph, f2: &Graph) -> Result<StabilityReport> {
    if !is_r_graph(h, f1, f2) {
        return Err(Error::NotRGraph(format!(
            "stability is defined for R-graphs only (order {})",
            h.order()
        )));
    }
    let n = h.order();
    let mut per_vertex = Vec::with_capacity(n);
    for v in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let base = h.induced(&keep)?;
        let brows = crate::canon::rows_u128(&base)?;
        let m = n - 1;
        // N(v) in the labelling of `base`.
        let original: u128 = keep
            .iter()
            .enumerate()
            .filter(|&(_, &u)| h.has_edge(v, u))
            .fold(0u128, |acc, (i, _)| acc | (1u128 << i));
        let mut count = 0usize;
        let mut alternatives = Vec::new();
        let mut child = [0u128; 16];
        for attach in 0..(1u128 << m) {
            for u in 0..m {
                child[u] = brows[u] | (((attach >> u) & 1) << m);
            }
            child[m] = attach;
            let g = Graph::from_rows_u128(&child[..=m]);
            if is_r_graph(&g, f1, f2) {
                count += 1;
                if attach != original {
                    alternatives.push((0..m).filter(|&u| (attach >> u) & 1 == 1).collect());
                }
            }
        }
        debug_assert!(count >= 1, "re-attaching the original vertex restores h");
        per_vertex.push(VertexStability {
            vertex: v,
            r_extensions: count,
            alternatives,
        });
    }
    Ok(StabilityReport {
        stable: per_vertex.iter().all(|pv| pv.r_extensions == 1),
        per_vertex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, is_isomorphic, Canonizer};
    use crate::spec::GraphSpec;

    fn build(s: &str) -> Graph {
        GraphSpec::parse(s).unwrap().build().unwrap()
    }

    /// Independent oracle: bucket all labelled graphs of order n by
    /// canonical key.
    fn bucket_count(n: usize) -> usize {
        let nbits = n * (n - 1) / 2;
        let mut keys = HashSet::new();
        let mut cz = Canonizer::new();
        let mut rows = [0u128; 8];
        for code in 0u64..(1u64 << nbits) {
            rows[..n].fill(0);
            let mut t = 0;
            for j in 1..n {
                for i in 0..j {
                    if (code >> t) & 1 == 1 {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                    t += 1;
                }
            }
            keys.insert(cz.key_u128(n, &rows[..n]));
        }
        keys.len()
    }

    #[test]
    fn census_matches_bucket_oracle_small() {
        for n in 1..=6 {
            assert_eq!(count_all(n).unwrap(), bucket_count(n), "order {n}");
        }
    }

    #[test]
    fn census_totals_through_order_eight() {
        let expected = [1, 2, 4, 11, 34, 156, 1044, 12346];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(count_all(i + 1).unwrap(), want, "order {}", i + 1);
        }
    }

    #[test]
    fn census_total_order_nine() {
        assert_eq!(count_all(9).unwrap(), 274_668);
    }

    #[test]
    fn generated_graphs_are_canonical_and_distinct() {
        let mut seen = HashSet::new();
        for g in generate_all(6).unwrap() {
            let cf = canonical_form(&g).unwrap();
            assert_eq!(cf.canonical_graph(&g), g, "stream yields canonical forms");
            assert!(seen.insert(cf.packed_key()), "duplicate class in stream");
        }
        assert_eq!(seen.len(), 156);
    }

    #[test]
    fn generation_order_is_reproducible() {
        let a: Vec<u128> = level_keys(7).unwrap();
        let b: Vec<u128> = level_keys(7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1044);
    }

    #[test]
    fn out_of_range_orders_are_rejected() {
        assert!(matches!(generate_all(0), Err(Error::ExhaustionBound(_))));
        assert!(matches!(generate_all(11), Err(Error::ExhaustionBound(_))));
    }

    #[test]
    fn triangle_catalogue_of_order_five() {
        let k3 = build("K3");
        let cat = enumerate_r_graphs(5, &k3, &k3).unwrap();
        assert_eq!(cat.len(), 1);
        assert!(is_isomorphic(&cat.graphs[0], &build("C5")).unwrap());
    }

    #[test]
    fn path_catalogue_of_order_four() {
        let p4 = build("P4");
        let cat = enumerate_r_graphs(4, &p4, &p4).unwrap();
        assert_eq!(cat.len(), 2);
        let want = [build("K13"), build("K3+K1")];
        for w in &want {
            assert!(
                cat.graphs.iter().any(|g| is_isomorphic(g, w).unwrap()),
                "missing catalogue member"
            );
        }
    }

    #[test]
    fn catalogue_members_validate_and_sort() {
        let f1 = build("K3");
        let f2 = build("K13");
        let cat = enumerate_r_graphs(5, &f1, &f2).unwrap();
        assert_eq!(cat.len(), 2);
        for g in &cat.graphs {
            assert!(is_r_graph(g, &f1, &f2));
        }
        let keys: Vec<u128> = cat
            .graphs
            .iter()
            .map(|g| canonical_form(g).unwrap().packed_key())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "sorted by key");
    }

    #[test]
    fn classical_ramsey_numbers_by_exhaustion() {
        assert_eq!(ramsey_number(&build("P4"), &build("P4")).unwrap(), 5);
        assert_eq!(ramsey_number(&build("K13"), &build("K13")).unwrap(), 6);
        assert_eq!(ramsey_number(&build("K3"), &build("K13")).unwrap(), 7);
        assert_eq!(ramsey_number(&build("K13"), &build("K3")).unwrap(), 7);
        assert_eq!(ramsey_number(&build("PAW"), &build("PAW")).unwrap(), 7);
    }

    #[test]
    fn five_cycle_is_stable_for_triangles() {
        let c5 = build("C5");
        let k3 = build("K3");
        let rep = is_ramsey_stable(&c5, &k3, &k3).unwrap();
        assert!(rep.stable);
        assert!(rep.per_vertex.iter().all(|pv| pv.r_extensions == 1));
    }

    #[test]
    fn k23_is_unstable_for_triangle_star() {
        let rep = is_ramsey_stable(&build("K23"), &build("K3"), &build("K13")).unwrap();
        assert!(!rep.stable);
        let loose: usize = rep
            .per_vertex
            .iter()
            .map(|pv| pv.alternatives.len())
            .sum();
        assert!(loose > 0, "instability must exhibit an alternative");
    }

    #[test]
    fn stability_requires_an_r_graph() {
        let k4 = build("K4");
        let k3 = build("K3");
        assert!(matches!(
            is_ramsey_stable(&k4, &k3, &k3),
            Err(Error::NotRGraph(_))
        ));
    }
}
