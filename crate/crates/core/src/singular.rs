//! Degree-singularity: singular multisets, singular vertex sets, and
//! singular copies of a pattern inside a host graph.
//!
//! A multiset of naturals is *k-singular* when either all entries are equal
//! or all entries are pairwise distinct with every gap between consecutive
//! sorted entries at least `k`. A vertex set of a graph is k-singular when
//! its multiset of (whole-graph) degrees is, and a *singular copy* of a
//! pattern F is a spanning embedding of F into the induced subgraph on some
//! k-singular set. Note the degrees that matter are taken in the host, not
//! in the induced subgraph.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::subgraph::spanning_embedding;
use crate::{Error, Result};
use itertools::Itertools;

// ---------------------------------------------------------------------------
// multiset predicate and pigeonhole extraction
// ---------------------------------------------------------------------------

/// Is `values` a k-singular multiset? Requires `k >= 1`. Multisets of size
/// zero or one are singular by convention.
pub fn is_k_singular(values: &[usize], k: usize) -> bool {
    assert!(k >= 1, "gap parameter must be at least 1");
    if values.len() <= 1 {
        return true;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if sorted.first() == sorted.last() {
        return true;
    }
    sorted.windows(2).all(|w| w[1] - w[0] >= k)
}

/// A k-singular sub-multiset pulled out of a longer sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularExtraction {
    /// Positions in the input sequence, in the order chosen.
    pub indices: Vec<usize>,
    /// The values at those positions (equal, or ascending with gaps >= k).
    pub values: Vec<usize>,
    /// Which branch produced the extraction.
    pub all_equal: bool,
}

/// Extract a k-singular sub-multiset of size `n` from `values`.
///
/// Guaranteed to succeed whenever `values.len() >= k*(n-1)^2 + 1`: if no
/// value repeats `n` times there are more than `k*(n-1)` distinct values,
/// and taking every k-th distinct value in ascending order yields `n`
/// values with consecutive gaps at least `k`.
pub fn extract_singular(values: &[usize], n: usize, k: usize) -> Result<SingularExtraction> {
    assert!(k >= 1, "gap parameter must be at least 1");
    if n == 0 {
        return Err(Error::InvalidSpec("extraction size must be at least 1".into()));
    }
    let needed = k * (n - 1) * (n - 1) + 1;
    if values.len() < needed {
        return Err(Error::InputTooShort {
            needed,
            got: values.len(),
        });
    }
    // Group positions by value, keyed ascending.
    let mut by_value: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &v) in values.iter().enumerate() {
        by_value.entry(v).or_default().push(i);
    }
    // Equal branch: smallest value occurring at least n times.
    for (&v, idxs) in by_value.iter() {
        if idxs.len() >= n {
            return Ok(SingularExtraction {
                indices: idxs[..n].to_vec(),
                values: vec![v; n],
                all_equal: true,
            });
        }
    }
    // Gap branch: every value occurs <= n-1 times, so the number of
    // distinct values m satisfies m*(n-1) >= len >= k*(n-1)^2 + 1, hence
    // m >= k*(n-1) + 1 and positions 0, k, 2k, ..., (n-1)k all exist.
    let distinct: Vec<(usize, usize)> = by_value
        .iter()
        .map(|(&v, idxs)| (v, idxs[0]))
        .collect();
    debug_assert!(distinct.len() >= k * (n - 1) + 1);
    let mut indices = Vec::with_capacity(n);
    let mut chosen = Vec::with_capacity(n);
    for j in 0..n {
        let (v, i) = distinct[j * k];
        indices.push(i);
        chosen.push(v);
    }
    Ok(SingularExtraction {
        indices,
        values: chosen,
        all_equal: false,
    })
}

// ---------------------------------------------------------------------------
// singular vertex sets of a graph
// ---------------------------------------------------------------------------

/// Lazily enumerate every k-singular vertex set of size `p` in `g`, each
/// yielded as a sorted vertex list.
///
/// Order of production is deterministic: first the all-equal sets
/// (degree classes ascending, subsets lexicographic), then transversal
/// sets (class combinations lexicographic over ascending class degrees,
/// vertex choices in lexicographic product order). When `p == 1` only the
/// singleton pass runs, so no set appears twice.
pub fn singular_sets(g: &Graph, p: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(k >= 1, "gap parameter must be at least 1");
    assert!(p >= 1, "set size must be at least 1");
    let partition = g.degree_classes();
    let classes: Vec<(usize, Vec<usize>)> = partition
        .classes
        .iter()
        .map(|c| (c.degree, c.vertices.clone()))
        .collect();

    let equal_classes = classes.clone();
    let equal = equal_classes
        .into_iter()
        .flat_map(move |(_, verts)| verts.into_iter().combinations(p));

    let transversal_classes = classes;
    let n_classes = transversal_classes.len();
    let transversal = (p >= 2)
        .then(move || {
            (0..n_classes)
                .combinations(p)
                .filter({
                    let cls = transversal_classes.clone();
                    move |combo| {
                        combo
                            .windows(2)
                            .all(|w| cls[w[1]].0 - cls[w[0]].0 >= k)
                    }
                })
                .flat_map({
                    let cls = transversal_classes.clone();
                    move |combo| {
                        combo
                            .iter()
                            .map(|&ci| cls[ci].1.clone())
                            .multi_cartesian_product()
                    }
                })
        })
        .into_iter()
        .flatten();

    equal.chain(transversal).map(|mut set| {
        set.sort_unstable();
        set
    })
}

/// Count the k-singular p-sets of `g` (mostly for diagnostics and tests).
pub fn count_singular_sets(g: &Graph, p: usize, k: usize) -> usize {
    singular_sets(g, p, k).count()
}

// ---------------------------------------------------------------------------
// singular copies
// ---------------------------------------------------------------------------

/// Evidence that a host graph contains a singular copy of a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularWitness {
    /// The k-singular host vertex set carrying the copy, sorted ascending.
    pub vertices: Vec<usize>,
    /// Host degrees of `vertices`, aligned with it.
    pub host_degrees: Vec<usize>,
    /// Whether the degree multiset is of the all-equal kind.
    pub all_equal: bool,
    /// `embedding[i]` is the host vertex playing pattern vertex `i`.
    pub embedding: Vec<usize>,
}

/// Find a k-singular copy of `pattern` in `host`, if any.
pub fn find_singular_copy(host: &Graph, pattern: &Graph, k: usize) -> Option<SingularWitness> {
    let p = pattern.order();
    if p == 0 || p > host.order() {
        return None;
    }
    for set in singular_sets(host, p, k) {
        if let Some(embedding) = spanning_embedding(host, &set, pattern) {
            let degrees: Vec<usize> = set.iter().map(|&v| host.degree(v)).collect();
            let all_equal = degrees.first() == degrees.last();
            return Some(SingularWitness {
                vertices: set,
                host_degrees: degrees,
                all_equal,
                embedding,
            });
        }
    }
    None
}

/// Is `g` free of k-singular copies of `f1` while its complement is free of
/// k-singular copies of `f2`? Singular sets are degree-determined, and
/// complementing maps the degree d to n-1-d, so the singular sets of g and
/// of its complement coincide; both sides are nevertheless checked on their
/// own graph to keep the code honest.
pub fn is_sr_graph(g: &Graph, f1: &Graph, f2: &Graph, k: usize) -> bool {
    if find_singular_copy(g, f1, k).is_some() {
        return false;
    }
    let co = g.complement();
    find_singular_copy(&co, f2, k).is_none()
}

// ---------------------------------------------------------------------------
// guaranteed singular trees
// ---------------------------------------------------------------------------

/// A spanning tree found on a k-singular vertex set, either in the graph or
/// in its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularTree {
    /// The k-singular vertex set, ascending.
    pub vertices: Vec<usize>,
    /// Host degrees of `vertices`.
    pub host_degrees: Vec<usize>,
    /// Tree edges as host vertex pairs.
    pub edges: Vec<(usize, usize)>,
    /// True when the tree lives in the complement of `g`.
    pub in_complement: bool,
}

/// Produce a k-singular set of `n` vertices spanned by a tree of `g` or of
/// its complement. Succeeds whenever `g` has at least `k*(n-1)^2 + 1`
/// vertices: extraction on the degree sequence gives the set, and for any
/// graph at least one of (graph, complement) induced on the set is
/// connected.
pub fn find_singular_tree(g: &Graph, n: usize, k: usize) -> Result<SingularTree> {
    let extraction = extract_singular(&g.degrees(), n, k)?;
    let mut vertices = extraction.indices;
    vertices.sort_unstable();
    let induced = g.induced(&vertices)?;
    let (tree_local, in_complement) = match bfs_tree(&induced) {
        Some(t) => (t, false),
        None => {
            let co = induced.complement();
            let t = bfs_tree(&co).expect("a graph or its complement is connected");
            (t, true)
        }
    };
    let edges = tree_local
        .into_iter()
        .map(|(a, b)| (vertices[a], vertices[b]))
        .collect();
    let degrees = vertices.iter().map(|&v| g.degree(v)).collect();
    Ok(SingularTree {
        vertices,
        host_degrees: degrees,
        edges,
        in_complement,
    })
}

/// BFS spanning tree of `h` rooted at 0, or None if `h` is disconnected.
/// Edges come out as (parent, child).
fn bfs_tree(h: &Graph) -> Option<Vec<(usize, usize)>> {
    let n = h.order();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut seen = VertexSet::singleton(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut edges = Vec::with_capacity(n - 1);
    while let Some(u) = queue.pop_front() {
        for v in h.neighbors(u).minus(&seen).iter() {
            seen.insert(v);
            edges.push((u, v));
            queue.push_back(v);
        }
    }
    (seen.count() == n).then_some(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GraphSpec;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn build(s: &str) -> Graph {
        GraphSpec::parse(s).unwrap().build().unwrap()
    }

    #[test]
    fn multiset_predicate() {
        for k in 1..=5 {
            assert!(is_k_singular(&[3, 3, 3], k));
            assert!(is_k_singular(&[], k));
            assert!(is_k_singular(&[7], k));
        }
        assert!(is_k_singular(&[1, 3, 5], 2));
        assert!(is_k_singular(&[5, 3, 1], 2)); // order of input irrelevant
        assert!(!is_k_singular(&[1, 2, 4], 2));
        assert!(is_k_singular(&[1, 2, 4], 1));
        assert!(!is_k_singular(&[2, 2, 5], 1)); // repeated and distinct mixed
        assert!(is_k_singular(&[1, 4, 9], 3));
        assert!(!is_k_singular(&[1, 4, 9], 4));
    }

    #[test]
    fn extraction_prefers_smallest_equal_value() {
        // k=2, n=3 needs 2*(3-1)^2+1 = 9 entries.
        let vals = [5, 5, 2, 7, 1, 9, 5, 3, 11];
        let e = extract_singular(&vals, 3, 2).unwrap();
        assert!(e.all_equal);
        assert_eq!(e.values, vec![5, 5, 5]);
        assert_eq!(e.indices, vec![0, 1, 6]);
    }

    #[test]
    fn extraction_gap_branch() {
        // All distinct: k=2, n=3 from 0..9 -> picks every 2nd distinct value.
        let vals: Vec<usize> = (0..9).collect();
        let e = extract_singular(&vals, 3, 2).unwrap();
        assert!(!e.all_equal);
        assert_eq!(e.values, vec![0, 2, 4]);
        assert!(is_k_singular(&e.values, 2));
    }

    #[test]
    fn extraction_refuses_short_input() {
        let vals = [1, 2, 3];
        match extract_singular(&vals, 3, 2) {
            Err(Error::InputTooShort { needed: 9, got: 3 }) => {}
            other => panic!("expected InputTooShort, got {other:?}"),
        }
    }

    #[test]
    fn extraction_always_valid_on_random_input() {
        let mut rng = StdRng::seed_from_u64(0xd15c_0b01);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5usize);
            let k = rng.gen_range(1..=4usize);
            let len = k * (n - 1) * (n - 1) + 1 + rng.gen_range(0..8);
            let vals: Vec<usize> = (0..len).map(|_| rng.gen_range(0..30)).collect();
            let e = extract_singular(&vals, n, k).unwrap();
            assert_eq!(e.indices.len(), n);
            assert!(is_k_singular(&e.values, k));
            for (pos, &i) in e.indices.iter().enumerate() {
                assert_eq!(vals[i], e.values[pos]);
            }
            let mut uniq = e.indices.clone();
            uniq.sort_unstable();
            uniq.dedup();
            assert_eq!(uniq.len(), n, "indices must be distinct");
        }
    }

    #[test]
    fn paw_has_all_six_singular_pairs() {
        // Paw degrees are 3,2,2,1: classes {1:[3]}, {2:[1,2]}, {3:[0]}.
        let paw = build("PAW");
        let sets: Vec<_> = singular_sets(&paw, 2, 1).collect();
        assert_eq!(sets.len(), 6);
        let mut sorted = sets.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6, "no duplicates");
    }

    #[test]
    fn regular_graph_sets_are_all_subsets() {
        let c4 = build("C4");
        assert_eq!(count_singular_sets(&c4, 2, 1), 6);
        assert_eq!(count_singular_sets(&c4, 3, 1), 4);
        assert_eq!(count_singular_sets(&c4, 3, 5), 4); // k irrelevant when equal
    }

    #[test]
    fn star_sets_respect_the_gap() {
        // K13 degrees 3,1,1,1: leaf pairs always; centre pairs only when
        // the gap 3-1=2 clears k.
        let star = build("K13");
        assert_eq!(count_singular_sets(&star, 2, 1), 6);
        assert_eq!(count_singular_sets(&star, 2, 2), 6);
        assert_eq!(count_singular_sets(&star, 2, 3), 3);
    }

    #[test]
    fn singleton_sets_not_duplicated() {
        let paw = build("PAW");
        let sets: Vec<_> = singular_sets(&paw, 1, 1).collect();
        assert_eq!(sets.len(), 4);
    }

    #[test]
    fn bull_carries_a_singular_path() {
        // Bull degrees 3,2,3,1,1. A 1-singular transversal {3,0,1} induces
        // the path 3-0-1.
        let bull = build("BULL");
        let w = find_singular_copy(&bull, &build("P3"), 1).expect("copy exists");
        assert!(is_k_singular(&w.host_degrees, 1));
        assert_eq!(w.vertices.len(), 3);
        // With gap 2 no singular triple survives: degree gaps are 1.
        assert!(find_singular_copy(&bull, &build("P3"), 2).is_none());
    }

    #[test]
    fn half_graph_of_order_four_is_sr_for_paths() {
        // Degrees 2,1,1,2: two classes of size two, so no singular triple
        // at all and both sides are trivially safe.
        let h = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let p3 = build("P3");
        assert!(is_sr_graph(&h, &p3, &p3, 1));
        assert!(is_sr_graph(&h, &p3, &p3, 2));
    }

    #[test]
    fn c4_is_not_sr_for_paths() {
        let c4 = build("C4");
        let p3 = build("P3");
        assert!(!is_sr_graph(&c4, &p3, &p3, 1));
    }

    #[test]
    fn complement_sees_the_same_singular_sets() {
        let mut rng = StdRng::seed_from_u64(0xc0_c0a);
        for _ in 0..40 {
            let n = rng.gen_range(2..=8usize);
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j);
                    }
                }
            }
            let co = g.complement();
            for p in 2..=3.min(n) {
                for k in 1..=2 {
                    let mut a: Vec<_> = singular_sets(&g, p, k).collect();
                    let mut b: Vec<_> = singular_sets(&co, p, k).collect();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn tree_in_graph_side() {
        let c5 = build("C5");
        let t = find_singular_tree(&c5, 3, 1).unwrap();
        assert!(!t.in_complement);
        assert_eq!(t.edges.len(), 2);
        assert!(is_k_singular(&t.host_degrees, 1));
        for &(u, v) in &t.edges {
            assert!(c5.has_edge(u, v));
        }
    }

    #[test]
    fn tree_falls_back_to_complement() {
        let e5 = build("5K1");
        let t = find_singular_tree(&e5, 3, 1).unwrap();
        assert!(t.in_complement);
        assert_eq!(t.edges.len(), 2);
    }

    #[test]
    fn tree_requires_enough_vertices() {
        let c4 = build("C4");
        match find_singular_tree(&c4, 3, 2) {
            Err(Error::InputTooShort { needed: 9, got: 4 }) => {}
            other => panic!("expected InputTooShort, got {other:?}"),
        }
    }
}
