//! Upper-bound search machinery.
//!
//! The exact value of a singular Ramsey number is pinned down from two
//! sides.  Lower bounds come from explicit constructions (`construct`).
//! Upper bounds come from closing every order in a finite interval: once
//! no SR-graph exists at any order from the best construction up to the
//! quadratic bound `k(R-1)^2 + 1`, the pigeonhole extraction argument
//! closes every larger order as well.
//!
//! Each order is closed by the cheapest applicable method:
//!
//! * `exhaustive` — stream every graph of that order (feasible through
//!   order ten) and test each for the singular property directly;
//! * `profile-infeasible` — at gap one an SR-graph has at most `R-1`
//!   degree classes of at most `R-1` vertices each, so orders beyond
//!   `(R-1)^2` support no degree-class profile at all;
//! * `substitution` — at gap one, any transversal of the degree classes
//!   induces an R-graph on the class count; when every R-graph of that
//!   order is stable (its vertex deletions re-extend uniquely), an
//!   SR-graph must be a substitution of regular R-graph fills into such
//!   a host, and those candidates can be enumerated outright;
//! * `csp` — profiles whose class count admits an unstable host are
//!   closed by a branch-and-prune search over all graphs with that
//!   degree-class structure;
//! * `trivial-bound` — for gaps of two or more the profile argument is
//!   unsound (class counts are no longer capped), so orders at the
//!   quadratic bound are closed by the extraction argument itself.
//!
//! `certify_rs` drives the ladder across the whole interval and emits a
//! machine-checkable certificate; `complete` is set only when every
//! order closed with a nonexistence outcome and the attached witness
//! re-verified.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{lower_bound_witness, substitute};
use crate::enumerate::{
    count_all, enumerate_r_graphs, generate_all, is_ramsey_stable, ramsey_number, RGraphCatalog,
    MAX_GEN_ORDER,
};
use crate::graph::Graph;
use crate::graph6::g6_encode;
use crate::singular::is_sr_graph;
use crate::spec::GraphSpec;
use crate::VertexSet;
use crate::{Error, Result, TOOL_VERSION};

// ---- search configuration ----

/// Budgets and knobs shared by the long-running searches.
///
/// The node budget is the determinism contract: a search that exhausts it
/// reports `BudgetExceeded` at a reproducible point.  The time budget is a
/// wall-clock safety net on top and may fire nondeterministically.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Total branch nodes a class-structure search may expand.
    pub node_budget: u64,
    /// Wall-clock ceiling in milliseconds.
    pub time_budget_ms: u64,
    /// Requested parallel width; zero means "use the global thread pool".
    pub parallel_width: usize,
    /// Recorded in run manifests; the searches themselves are deterministic.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 50_000_000,
            time_budget_ms: 600_000,
            parallel_width: 0,
            seed: 0,
        }
    }
}

impl SearchConfig {
    /// Both budgets must be positive; a zero budget is a configuration error,
    /// not a request for an instant `BudgetExceeded`.
    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::InvalidSpec("node budget must be positive".into()));
        }
        if self.time_budget_ms == 0 {
            return Err(Error::InvalidSpec("time budget must be positive".into()));
        }
        Ok(())
    }
}

// ---- quadratic upper bound ----

/// The general upper bound `k(R-1)^2 + 1`, where `R` is the classical
/// two-colour Ramsey number of the pattern pair.
///
/// Any graph of at least this order has, on one side or the other, `R`
/// vertices whose degrees can be thinned to a k-singular multiset while
/// still spanning a monochromatic pattern copy.
pub fn quadratic_upper_bound(f1: &Graph, f2: &Graph, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidSpec("the degree gap k must be at least one".into()));
    }
    let r = ramsey_number(f1, f2)?;
    Ok(k * (r - 1) * (r - 1) + 1)
}

// ---- degree-class counting bound ----

/// Maximum number of distinct degree classes an SR-graph of order `n` and
/// minimum degree `delta` can have at gap one: `n - 2*delta`.
///
/// The degree spread is pinched between `delta` and `n - 1 - delta`
/// because the complement is constrained symmetrically.
///
/// Requires `delta <= (n-1)/2`; larger minimum degrees are impossible for
/// a graph whose complement also has minimum degree `delta`.
pub fn max_classes_bound(n: usize, delta: usize) -> usize {
    assert!(n >= 1, "order must be positive");
    assert!(
        2 * delta <= n - 1,
        "minimum degree {delta} impossible alongside its complement at order {n}"
    );
    n - 2 * delta
}

// ---- degree-class profiles ----

/// A multiset of degree-class sizes, stored in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassProfile {
    pub sizes: Vec<usize>,
}

impl ClassProfile {
    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }
}

impl std::fmt::Display for ClassProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text = self.sizes.iter().map(|s| s.to_string()).join("+");
        f.write_str(&text)
    }
}

/// All degree-class profiles an order-`n` SR-graph could have at gap one:
/// partitions of `n` into at most `R-1` parts, each of size at most `R-1`.
///
/// The size cap holds because `R` vertices of equal degree would host an
/// all-equal singular copy; the count cap holds because a transversal of
/// the classes has pairwise-distinct degrees, so `R` classes would host a
/// 1-singular copy.  Profiles are listed in descending lexicographic order.
pub fn class_profiles(n: usize, f1: &Graph, f2: &Graph) -> Result<Vec<ClassProfile>> {
    let r = ramsey_number(f1, f2)?;
    Ok(partitions_desc(n, r - 1, r - 1)
        .into_iter()
        .map(|sizes| ClassProfile { sizes })
        .collect())
}

/// Partitions of `n` into at most `max_parts` parts, each at most
/// `max_size`, in descending lexicographic order.
fn partitions_desc(n: usize, max_parts: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts_left: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 || max_part == 0 {
            return;
        }
        let hi = max_part.min(n);
        let lo = n.div_ceil(parts_left);
        if lo > hi {
            return;
        }
        for first in (lo..=hi).rev() {
            cur.push(first);
            rec(n - first, parts_left - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n, max_parts, max_size, &mut cur, &mut out);
    out
}

// ---- substitution reduction ----

/// A profile whose class count admits an R-graph host that is not stable,
/// so the substitution reduction does not cover it.
#[derive(Clone, Debug)]
pub struct UncoveredProfile {
    pub profile: ClassProfile,
    /// The order-`c` R-graphs that fail the stability check.
    pub unstable_hosts: Vec<Graph>,
    /// Substitutions over the stable hosts of this class count were still
    /// enumerated and produced no witness.
    pub stable_hosts_closed: bool,
}

/// Result of the substitution reduction at one order.
#[derive(Clone, Debug)]
pub struct SubstitutionOutcome {
    /// An SR-graph assembled from a stable host and regular fills, if one
    /// exists.  Verified before being returned.
    pub witness: Option<Graph>,
    /// True when the order is decided: either a witness was found, or
    /// every profile's class count had only stable hosts and every
    /// candidate failed the degree-distinctness law.
    pub conclusive: bool,
    /// Profiles that still need the class-structure search.
    pub uncovered: Vec<UncoveredProfile>,
    /// Substitution candidates whose degree law was evaluated.
    pub candidates_checked: u64,
}

/// Enumerate all substitution candidates for order `n` at gap one.
///
/// For each degree-class profile, every transversal of an SR-graph's
/// classes induces an R-graph on the class count, and when that R-graph is
/// stable the whole SR-graph is a substitution of regular R-graph fills
/// into it.  Candidates are screened by the degree law (fill degree plus
/// the sizes of host-neighbour classes must be pairwise distinct) and any
/// survivor is verified outright.
pub fn substitution_search(n: usize, f1: &Graph, f2: &Graph) -> Result<SubstitutionOutcome> {
    let r = ramsey_number(f1, f2)?;
    let profiles: Vec<ClassProfile> = partitions_desc(n, r - 1, r - 1)
        .into_iter()
        .map(|sizes| ClassProfile { sizes })
        .collect();
    substitution_over_profiles(&profiles, f1, f2)
}

fn is_regular(g: &Graph) -> bool {
    g.degrees().windows(2).all(|w| w[0] == w[1])
}

pub(crate) fn substitution_over_profiles(
    profiles: &[ClassProfile],
    f1: &Graph,
    f2: &Graph,
) -> Result<SubstitutionOutcome> {
    let mut hosts: HashMap<usize, (RGraphCatalog, Vec<bool>)> = HashMap::new();
    let mut reg_fills: HashMap<usize, Vec<Graph>> = HashMap::new();
    let mut uncovered: Vec<UncoveredProfile> = Vec::new();
    let mut candidates: u64 = 0;

    for profile in profiles {
        let c = profile.class_count();
        if c > MAX_GEN_ORDER {
            return Err(Error::ExhaustionBound(format!(
                "profile has {c} classes; host enumeration supports at most {MAX_GEN_ORDER}"
            )));
        }
        if !hosts.contains_key(&c) {
            let cat = enumerate_r_graphs(c, f1, f2)?;
            let stable = cat
                .graphs
                .iter()
                .map(|h| is_ramsey_stable(h, f1, f2).map(|rep| rep.stable))
                .collect::<Result<Vec<bool>>>()?;
            hosts.insert(c, (cat, stable));
        }

        let mut fills_available = true;
        for &s in profile.sizes.iter().unique() {
            if !reg_fills.contains_key(&s) {
                let all = enumerate_r_graphs(s, f1, f2)?;
                reg_fills.insert(s, all.graphs.into_iter().filter(is_regular).collect());
            }
            if reg_fills[&s].is_empty() {
                fills_available = false;
            }
        }

        let (cat, stable) = &hosts[&c];
        if fills_available {
            for (host, &st) in cat.graphs.iter().zip(stable.iter()) {
                if !st {
                    continue;
                }
                if let Some(w) = profile_host_witness(profile, host, &reg_fills, f1, f2, &mut candidates)? {
                    return Ok(SubstitutionOutcome {
                        witness: Some(w),
                        conclusive: true,
                        uncovered: Vec::new(),
                        candidates_checked: candidates,
                    });
                }
            }
        }

        let unstable: Vec<Graph> = cat
            .graphs
            .iter()
            .zip(stable.iter())
            .filter(|(_, &st)| !st)
            .map(|(h, _)| h.clone())
            .collect();
        if !unstable.is_empty() {
            uncovered.push(UncoveredProfile {
                profile: profile.clone(),
                unstable_hosts: unstable,
                stable_hosts_closed: true,
            });
        }
    }

    Ok(SubstitutionOutcome {
        witness: None,
        conclusive: uncovered.is_empty(),
        uncovered,
        candidates_checked: candidates,
    })
}

/// Try every arrangement of the profile's sizes around one stable host
/// with every choice of regular fills; return the first candidate whose
/// class degrees are pairwise distinct.
fn profile_host_witness(
    profile: &ClassProfile,
    host: &Graph,
    reg_fills: &HashMap<usize, Vec<Graph>>,
    f1: &Graph,
    f2: &Graph,
    candidates: &mut u64,
) -> Result<Option<Graph>> {
    let c = host.order();
    for perm in profile.sizes.iter().copied().permutations(c).unique() {
        let options: Vec<&Vec<Graph>> = perm.iter().map(|s| &reg_fills[s]).collect();
        for combo in options.iter().map(|v| v.iter()).multi_cartesian_product() {
            *candidates += 1;
            let mut degs = vec![0usize; c];
            for i in 0..c {
                let external: usize = host.neighbors(i).iter().map(|j| perm[j]).sum();
                degs[i] = combo[i].degree(0) + external;
            }
            let distinct = (0..c).all(|i| (i + 1..c).all(|j| degs[i] != degs[j]));
            if !distinct {
                continue;
            }
            let parts: Vec<Graph> = combo.into_iter().cloned().collect();
            let g = substitute(host, &parts)?;
            if !is_sr_graph(&g, f1, f2, 1) {
                return Err(Error::ConstructionInvalid(
                    "substitution candidate with pairwise-distinct class degrees failed verification"
                        .into(),
                ));
            }
            return Ok(Some(g));
        }
    }
    Ok(None)
}

// ---- exhaustive sweeps ----

/// True when no graph of order `n` is an SR-graph for the pair at gap `k`.
/// Streams the full census in parallel; feasible through order ten.
pub fn exhaustive_no_sr(n: usize, f1: &Graph, f2: &Graph, k: usize) -> Result<bool> {
    let stream = generate_all(n)?;
    Ok(stream.par_bridge().all(|g| !is_sr_graph(&g, f1, f2, k)))
}

/// First SR-graph of order `n` in generation order, if any.  Sequential,
/// so the witness is deterministic; intended for small orders.
pub fn exhaustive_sr_witness(n: usize, f1: &Graph, f2: &Graph, k: usize) -> Result<Option<Graph>> {
    let mut stream = generate_all(n)?;
    Ok(stream.find(|g| is_sr_graph(g, f1, f2, k)))
}

// ---- class-structure search ----

/// Outcome of a branch-and-prune run over one degree-class profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CspOutcome {
    /// A verified SR-graph with exactly this degree-class structure.
    Witness(Graph),
    /// The profile supports no SR-graph; the search space was exhausted.
    NoneExists,
    /// The node or time budget ran out before the space was exhausted.
    BudgetExceeded,
}

/// Search for an SR-graph whose degree classes have exactly the profile's
/// sizes, at gap `k`.
///
/// Every class induces an R-graph (its vertices share a degree, so any
/// pattern copy inside one class would be all-equal singular), which
/// bounds each class's fill to the enumerated R-graph catalog of its
/// size.  The biadjacency rows between classes are then branched over
/// with degree-feasibility pruning, twin-based and first-block symmetry
/// breaking, and — at gap one — bitwise forbidden/forced masks derived
/// from transversal pattern copies, which are complete for that gap.
pub fn csp_search(
    profile: &ClassProfile,
    f1: &Graph,
    f2: &Graph,
    k: usize,
    cfg: &SearchConfig,
) -> Result<CspOutcome> {
    let (outcome, _nodes) = csp_search_counted(profile, f1, f2, k, cfg)?;
    Ok(outcome)
}

pub(crate) fn csp_search_counted(
    profile: &ClassProfile,
    f1: &Graph,
    f2: &Graph,
    k: usize,
    cfg: &SearchConfig,
) -> Result<(CspOutcome, u64)> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::InvalidSpec("the degree gap k must be at least one".into()));
    }
    if profile.sizes.is_empty() || profile.sizes.contains(&0) {
        return Err(Error::InvalidSpec("profile classes must be nonempty".into()));
    }
    let mut sizes = profile.sizes.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let lay = ClassLayout::new(&sizes);
    if lay.c > 32 {
        return Err(Error::InvalidSpec("profiles beyond 32 classes are not supported".into()));
    }

    let mut cats: HashMap<usize, RGraphCatalog> = HashMap::new();
    for &s in sizes.iter().unique() {
        if s > MAX_GEN_ORDER {
            return Err(Error::ExhaustionBound(format!(
                "class of size {s} exceeds the enumeration limit {MAX_GEN_ORDER}"
            )));
        }
        let cat = enumerate_r_graphs(s, f1, f2)?;
        if cat.graphs.is_empty() {
            // A class must induce an R-graph; with no candidate fill of
            // this size the profile supports no SR-graph at all.
            return Ok((CspOutcome::NoneExists, 0));
        }
        cats.insert(s, cat);
    }

    // Picking one vertex per class gives a set with pairwise distinct
    // class degrees, so whenever those degrees are spaced by at least k
    // (always true at gap one) the set is singular and its induced graph
    // must appear in the order-c catalog.  The catalog's vertex-degree
    // window drives strong counting prunes; an empty catalog rules the
    // profile out at gap one outright.
    let trans_window = if lay.c <= MAX_GEN_ORDER {
        let cat = enumerate_r_graphs(lay.c, f1, f2)?;
        if cat.graphs.is_empty() {
            if k == 1 {
                return Ok((CspOutcome::NoneExists, 0));
            }
            // No degree can satisfy this sentinel window, which is exactly
            // right: only the spaced degree vectors are constrained.
            Some((lay.c, 0))
        } else {
            let dmin = cat
                .graphs
                .iter()
                .flat_map(|g| (0..g.order()).map(|v| g.degree(v)))
                .min()
                .unwrap_or(0);
            let dmax = cat
                .graphs
                .iter()
                .flat_map(|g| (0..g.order()).map(|v| g.degree(v)))
                .max()
                .unwrap_or(0);
            Some((dmin, dmax))
        }
    } else {
        None
    };

    // Fill choices per class, with indices non-decreasing along runs of
    // equal-size classes (swapping two same-size classes wholesale is a
    // relabelling, so one representative order suffices).
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; lay.c];
    gen_fill_tuples(&sizes, &cats, 0, &mut cur, &mut tuples);
    if tuples.is_empty() {
        return Ok((CspOutcome::NoneExists, 0));
    }

    let per_tuple_budget = (cfg.node_budget / tuples.len() as u64).max(1);
    let deadline = Instant::now() + Duration::from_millis(cfg.time_budget_ms);

    let results: Vec<(Option<Graph>, bool, u64)> = tuples
        .par_iter()
        .map(|tuple| {
            let fills: Vec<&Graph> = tuple
                .iter()
                .enumerate()
                .map(|(i, &fi)| &cats[&sizes[i]].graphs[fi])
                .collect();
            let mut ts = TupleSearch::new(
                &lay,
                fills,
                tuple.clone(),
                f1,
                f2,
                k,
                trans_window,
                per_tuple_budget,
                deadline,
            );
            match ts.run() {
                Ok(w) => (w, false, ts.nodes),
                Err(Stop::Budget) => (None, true, ts.nodes),
            }
        })
        .collect();

    let total: u64 = results.iter().map(|(_, _, n)| n).sum();
    for (w, _, _) in &results {
        if let Some(g) = w {
            return Ok((CspOutcome::Witness(g.clone()), total));
        }
    }
    if results.iter().any(|(_, b, _)| *b) {
        return Ok((CspOutcome::BudgetExceeded, total));
    }
    Ok((CspOutcome::NoneExists, total))
}

fn gen_fill_tuples(
    sizes: &[usize],
    cats: &HashMap<usize, RGraphCatalog>,
    pos: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == sizes.len() {
        out.push(cur.clone());
        return;
    }
    let start = if pos > 0 && sizes[pos] == sizes[pos - 1] {
        cur[pos - 1]
    } else {
        0
    };
    for idx in start..cats[&sizes[pos]].graphs.len() {
        cur[pos] = idx;
        gen_fill_tuples(sizes, cats, pos + 1, cur, out);
    }
}

/// Static geometry of a layout: classes in non-increasing size order,
/// vertices numbered class by class.
struct ClassLayout {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    /// Sum of the sizes of all classes after each index.
    tail: Vec<usize>,
    n: usize,
    c: usize,
}

impl ClassLayout {
    fn new(sizes: &[usize]) -> Self {
        let c = sizes.len();
        let mut offsets = Vec::with_capacity(c);
        let mut class_of = Vec::new();
        let mut acc = 0usize;
        for (i, &s) in sizes.iter().enumerate() {
            offsets.push(acc);
            for _ in 0..s {
                class_of.push(i);
            }
            acc += s;
        }
        let mut tail = vec![0usize; c];
        for i in (0..c.saturating_sub(1)).rev() {
            tail[i] = tail[i + 1] + sizes[i + 1];
        }
        ClassLayout {
            sizes: sizes.to_vec(),
            offsets,
            class_of,
            tail,
            n: acc,
            c,
        }
    }
}

enum Stop {
    Budget,
}

const TIME_CHECK_MASK: u64 = 0xFFF;
const LEX_GROUP_CAP: usize = 2048;
const AUT_ORDER_CAP: usize = 7;

/// Branch-and-prune over one choice of class fills.
///
/// The outer loop enumerates exact target degree vectors (one shared
/// degree per class: pairwise distinct, strictly ascending along runs of
/// identical classes, and parity-consistent).  For each target the
/// vertices are assigned class-major: each vertex of class `c` chooses,
/// for every earlier class, the bitmask of its neighbours there, under an
/// exact residual-demand discipline — a vertex whose demand is exhausted
/// can take no further edge, so its open pairs are definite non-edges.
/// All pairs between assigned vertices are definite, which lets gap-one
/// pattern copies be refuted bit by bit as rows are chosen.
struct TupleSearch<'a> {
    lay: &'a ClassLayout,
    f1: &'a Graph,
    f2: &'a Graph,
    f1_edges: Vec<(usize, usize)>,
    f2_edges: Vec<(usize, usize)>,
    k: usize,
    fill_idx: Vec<usize>,
    adj: Vec<VertexSet>,
    /// Fill-only adjacency, restored at the start of each degree target.
    pristine_adj: Vec<VertexSet>,
    /// Degree inside the own class fill, per vertex.
    fill_deg: Vec<usize>,
    /// Remaining cross-class edges each vertex must still gain to reach
    /// its class target exactly.
    demand: Vec<usize>,
    /// Vertices whose demand is exhausted; all their open pairs are
    /// definite non-edges.
    zd: VertexSet,
    /// Vertex-degree window over the order-c catalog: any full transversal
    /// with degrees spaced at least k apart induces a catalog member, so
    /// each vertex sees between `dmin` and `dmax` partner classes.
    trans_window: Option<(usize, usize)>,
    /// The window above when it applies to the current degree target.
    win: Option<(usize, usize)>,
    /// Member bits of each class.
    class_mask: Vec<VertexSet>,
    /// Per-vertex assigned row masks, one per earlier class.
    parts: Vec<Vec<u64>>,
    /// Nearest earlier same-class vertex whose transposition with this one
    /// is a fill automorphism; rows between such twins are kept sorted.
    twin_prev: Vec<Option<usize>>,
    /// (row permutation, column permutation) pairs — automorphisms of the
    /// first two fills — under which the first biadjacency block must stay
    /// lexicographically minimal.
    lex_group: Vec<(Vec<usize>, Vec<usize>)>,
    rows01: Vec<u64>,
    nodes: u64,
    #[cfg(test)]
    nodes_at: Vec<u64>,
    #[cfg(test)]
    bounds_dead_at: Vec<u64>,
    #[cfg(test)]
    spread_dead_at: Vec<u64>,
    #[cfg(test)]
    window_dead_at: Vec<u64>,
    #[cfg(test)]
    lex_dead_at: Vec<u64>,
    budget: u64,
    deadline: Instant,
}

impl<'a> TupleSearch<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        lay: &'a ClassLayout,
        fills: Vec<&'a Graph>,
        fill_idx: Vec<usize>,
        f1: &'a Graph,
        f2: &'a Graph,
        k: usize,
        trans_window: Option<(usize, usize)>,
        budget: u64,
        deadline: Instant,
    ) -> Self {
        let n = lay.n;
        let mut adj = vec![VertexSet::empty(); n];
        for (i, fill) in fills.iter().enumerate() {
            let off = lay.offsets[i];
            for (u, w) in fill.edges() {
                adj[off + u].insert(off + w);
                adj[off + w].insert(off + u);
            }
        }
        let fill_deg: Vec<usize> = adj.iter().map(|s| s.count()).collect();

        let mut twin_prev = vec![None; n];
        for (i, fill) in fills.iter().enumerate() {
            let off = lay.offsets[i];
            let s = lay.sizes[i];
            for x in 0..s {
                for u in (0..x).rev() {
                    let twins = (0..s).filter(|&w| w != u && w != x).all(|w| {
                        fill.has_edge(u, w) == fill.has_edge(x, w)
                    });
                    if twins {
                        twin_prev[off + x] = Some(off + u);
                        break;
                    }
                }
            }
        }

        let mut lex_group = Vec::new();
        if lay.c >= 2 && lay.sizes[0] <= AUT_ORDER_CAP && lay.sizes[1] <= AUT_ORDER_CAP {
            let aut_cols = automorphisms(fills[0]);
            let aut_rows = automorphisms(fills[1]);
            'fill: for rho in &aut_rows {
                for kappa in &aut_cols {
                    let identity = rho.iter().enumerate().all(|(i, &p)| i == p)
                        && kappa.iter().enumerate().all(|(i, &p)| i == p);
                    if identity {
                        continue;
                    }
                    lex_group.push((rho.clone(), kappa.clone()));
                    if lex_group.len() >= LEX_GROUP_CAP {
                        break 'fill;
                    }
                }
            }
        }

        TupleSearch {
            lay,
            f1,
            f2,
            f1_edges: f1.edges(),
            f2_edges: f2.edges(),
            k,
            fill_idx,
            pristine_adj: adj.clone(),
            adj,
            fill_deg,
            demand: vec![0; n],
            zd: VertexSet::empty(),
            trans_window,
            win: None,
            class_mask: {
                let mut cm = vec![VertexSet::empty(); lay.c];
                for x in 0..n {
                    cm[lay.class_of[x]].insert(x);
                }
                cm
            },
            parts: vec![Vec::new(); n],
            twin_prev,
            lex_group,
            rows01: Vec::new(),
            nodes: 0,
            #[cfg(test)]
            nodes_at: vec![0; n],
            #[cfg(test)]
            bounds_dead_at: vec![0; n],
            #[cfg(test)]
            spread_dead_at: vec![0; n],
            #[cfg(test)]
            window_dead_at: vec![0; n],
            #[cfg(test)]
            lex_dead_at: vec![0; n],
            budget,
            deadline,
        }
    }

    /// Enumerate target degree vectors and search each one.
    fn run(&mut self) -> std::result::Result<Option<Graph>, Stop> {
        let targets = self.degree_targets();
        for dvec in targets {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Stop::Budget);
            }
            if self.nodes & TIME_CHECK_MASK == 0 && Instant::now() >= self.deadline {
                return Err(Stop::Budget);
            }
            // The transversal window binds whenever the class degrees are
            // spaced by at least k, which is automatic at gap one.
            self.win = match self.trans_window {
                Some(w) if self.k == 1 || spaced_by(&dvec, self.k) => Some(w),
                _ => None,
            };
            if matches!(self.win, Some((lo, hi)) if lo > hi) {
                continue;
            }
            self.adj.clone_from(&self.pristine_adj);
            for p in &mut self.parts {
                p.clear();
            }
            self.rows01.clear();
            self.zd = VertexSet::empty();
            for x in 0..self.lay.n {
                self.demand[x] = dvec[self.lay.class_of[x]] - self.fill_deg[x];
                if self.demand[x] == 0 {
                    self.zd.insert(x);
                }
            }
            if let Some(g) = self.assign(0)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// All target degree vectors consistent with the fills: one value per
    /// class, within reach of every member, pairwise distinct, strictly
    /// ascending along runs of identical (size, fill) classes, with an
    /// even total demand.
    fn degree_targets(&self) -> Vec<Vec<usize>> {
        let lay = self.lay;
        let mut lo = vec![0usize; lay.c];
        let mut hi = vec![0usize; lay.c];
        for i in 0..lay.c {
            let off = lay.offsets[i];
            let s = lay.sizes[i];
            let fd_max = (off..off + s).map(|x| self.fill_deg[x]).max().unwrap_or(0);
            let fd_min = (off..off + s).map(|x| self.fill_deg[x]).min().unwrap_or(0);
            lo[i] = fd_max;
            hi[i] = fd_min + (lay.n - s);
        }
        // Lift the transversal window to whole degrees: each member must
        // be fully adjacent to at least dmin partner classes (its cross
        // demand covers the dmin smallest) and touch at most dmax (its
        // cross demand fits under the dmax largest).  At gap one this
        // tightens the ranges outright; at larger gaps it only filters the
        // spaced vectors, checked after enumeration.
        let mut wlo = vec![0usize; lay.c];
        let mut whi = vec![usize::MAX; lay.c];
        if let Some((dmin, dmax)) = self.trans_window {
            for i in 0..lay.c {
                let off = lay.offsets[i];
                let s = lay.sizes[i];
                let fd_max = (off..off + s).map(|x| self.fill_deg[x]).max().unwrap_or(0);
                let fd_min = (off..off + s).map(|x| self.fill_deg[x]).min().unwrap_or(0);
                let mut others: Vec<usize> = (0..lay.c)
                    .filter(|&j| j != i)
                    .map(|j| lay.sizes[j])
                    .collect();
                others.sort_unstable();
                if dmin > others.len() {
                    wlo[i] = usize::MAX;
                    whi[i] = 0;
                    continue;
                }
                let cd_lo: usize = others[..dmin].iter().sum();
                let cd_hi: usize = others[others.len().saturating_sub(dmax)..].iter().sum();
                wlo[i] = fd_max + cd_lo;
                whi[i] = fd_min + cd_hi;
            }
            if self.k == 1 {
                for i in 0..lay.c {
                    lo[i] = lo[i].max(wlo[i]);
                    hi[i] = hi[i].min(whi[i]);
                    if lo[i] > hi[i] {
                        return Vec::new();
                    }
                }
            }
        }
        fn rec(
            i: usize,
            lay: &ClassLayout,
            fill_idx: &[usize],
            lo: &[usize],
            hi: &[usize],
            cur: &mut Vec<usize>,
            demand_sum: usize,
            fill_deg_sums: &[usize],
            out: &mut Vec<Vec<usize>>,
        ) {
            if i == lay.c {
                if demand_sum % 2 == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut start = lo[i];
            if i > 0 && lay.sizes[i] == lay.sizes[i - 1] && fill_idx[i] == fill_idx[i - 1] {
                start = start.max(cur[i - 1] + 1);
            }
            for d in start..=hi[i] {
                if cur.contains(&d) {
                    continue;
                }
                cur.push(d);
                rec(
                    i + 1,
                    lay,
                    fill_idx,
                    lo,
                    hi,
                    cur,
                    demand_sum + lay.sizes[i] * d - fill_deg_sums[i],
                    fill_deg_sums,
                    out,
                );
                cur.pop();
            }
        }
        let fill_deg_sums: Vec<usize> = (0..lay.c)
            .map(|i| {
                (lay.offsets[i]..lay.offsets[i] + lay.sizes[i])
                    .map(|x| self.fill_deg[x])
                    .sum()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        rec(0, lay, &self.fill_idx, &lo, &hi, &mut cur, 0, &fill_deg_sums, &mut out);
        if self.trans_window.is_some() && self.k >= 2 {
            out.retain(|dvec| {
                !spaced_by(dvec, self.k)
                    || (0..lay.c).all(|i| wlo[i] <= dvec[i] && dvec[i] <= whi[i])
            });
        }
        out
    }

    fn assign(&mut self, v: usize) -> std::result::Result<Option<Graph>, Stop> {
        if v == self.lay.n {
            return Ok(self.leaf());
        }
        if self.lay.class_of[v] == 0 {
            return self.assign(v + 1);
        }
        self.part(v, 0)
    }

    fn part(&mut self, v: usize, b: usize) -> std::result::Result<Option<Graph>, Stop> {
        let cv = self.lay.class_of[v];
        if b == cv {
            return self.assign(v + 1);
        }
        let Some((forced, allowed)) = self.bit_bounds(v, b) else {
            #[cfg(test)]
            {
                self.bounds_dead_at[v] += 1;
            }
            return Ok(None);
        };
        // Only members that still owe edges may take one more.
        let off_b = self.lay.offsets[b];
        let mut open_bits: u64 = 0;
        for j in 0..self.lay.sizes[b] {
            if self.demand[off_b + j] > 0 {
                open_bits |= 1u64 << j;
            }
        }
        if forced & !open_bits != 0 {
            // A forced edge would overfill its endpoint: dead branch.
            #[cfg(test)]
            {
                self.bounds_dead_at[v] += 1;
            }
            return Ok(None);
        }
        let allowed = allowed & open_bits;
        if forced & !allowed != 0 {
            #[cfg(test)]
            {
                self.bounds_dead_at[v] += 1;
            }
            return Ok(None);
        }
        // The row size is pinched by v's own residual demand: it cannot
        // exceed it, and the remaining rows plus later incoming edges must
        // be able to absorb what this row leaves over.
        let rem_v = self.demand[v];
        let pot_after: usize =
            self.lay.sizes[b + 1..cv].iter().sum::<usize>() + self.lay.tail[cv];
        let min_take = rem_v.saturating_sub(pot_after);
        let twin_lb = self.twin_lower_bound(v, b);
        // Interchangeable targets: consecutive fill-twins in class `b`
        // whose decided columns agree are symmetric under transposition,
        // so chosen bits must form a prefix of each such run.
        let mut sym_succ: u64 = 0;
        for j in 1..self.lay.sizes[b] {
            let x = off_b + j;
            if self.twin_prev[x] == Some(x - 1) {
                let mut diff = self.adj[x]
                    .minus(&self.adj[x - 1])
                    .union(&self.adj[x - 1].minus(&self.adj[x]));
                diff.remove(x);
                diff.remove(x - 1);
                if diff.is_empty() {
                    sym_succ |= 1u64 << j;
                }
            }
        }
        let free = allowed & !forced;
        let mut m: u64 = 0;
        loop {
            let mask = m | forced;
            self.nodes += 1;
            #[cfg(test)]
            {
                self.nodes_at[v] += 1;
            }
            if self.nodes > self.budget {
                return Err(Stop::Budget);
            }
            if self.nodes & TIME_CHECK_MASK == 0 && Instant::now() >= self.deadline {
                return Err(Stop::Budget);
            }
            let take = mask.count_ones() as usize;
            let skip = take > rem_v
                || take < min_take
                || mask & sym_succ & !(mask << 1) != 0
                || matches!(twin_lb, Some(lb) if mask < lb);
            if !skip {
                let widened = self.place(v, b, mask);
                self.parts[v].push(mask);
                let mut ok = self.demands_ok(v);
                #[cfg(test)]
                {
                    if !ok {
                        self.spread_dead_at[v] += 1;
                    }
                }
                if ok {
                    if let Some((dmin, dmax)) = self.win {
                        // Only the new row and its target class gained
                        // decided pairs; counts elsewhere move only when
                        // the exhausted set grows.
                        let scope = if widened {
                            VertexSet::full(self.lay.n)
                        } else {
                            let mut s = self.class_mask[b];
                            s.insert(v);
                            s
                        };
                        ok = self.windows_ok(&scope, v, b, dmin, dmax);
                        #[cfg(test)]
                        {
                            if !ok {
                                self.window_dead_at[v] += 1;
                            }
                        }
                    }
                }
                let mut pushed01 = false;
                if ok && cv == 1 && b == 0 {
                    self.rows01.push(mask);
                    pushed01 = true;
                    ok = self.lex01_ok();
                    #[cfg(test)]
                    {
                        if !ok {
                            self.lex_dead_at[v] += 1;
                        }
                    }
                }
                if ok {
                    match self.part(v, b + 1) {
                        Ok(Some(g)) => return Ok(Some(g)),
                        Ok(None) => {}
                        Err(stop) => return Err(stop),
                    }
                }
                if pushed01 {
                    self.rows01.pop();
                }
                self.parts[v].pop();
                self.unplace(v, b, mask);
            }
            if m == free {
                break;
            }
            m = m.wrapping_sub(free) & free;
        }
        Ok(None)
    }

    /// Returns whether some demand was driven to zero, i.e. whether the
    /// exhausted set grew and pair decidedness spread beyond the row.
    fn place(&mut self, v: usize, b: usize, mask: u64) -> bool {
        let off = self.lay.offsets[b];
        let mut newly_zero = false;
        let mut mm = mask;
        while mm != 0 {
            let j = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            let x = off + j;
            self.adj[v].insert(x);
            self.adj[x].insert(v);
            self.demand[x] -= 1;
            if self.demand[x] == 0 {
                self.zd.insert(x);
                newly_zero = true;
            }
        }
        let take = mask.count_ones() as usize;
        if take > 0 {
            self.demand[v] -= take;
            if self.demand[v] == 0 {
                self.zd.insert(v);
                newly_zero = true;
            }
        }
        newly_zero
    }

    fn unplace(&mut self, v: usize, b: usize, mask: u64) {
        let off = self.lay.offsets[b];
        let mut mm = mask;
        while mm != 0 {
            let j = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            let x = off + j;
            self.adj[v].remove(x);
            self.adj[x].remove(v);
            if self.demand[x] == 0 {
                self.zd.remove(x);
            }
            self.demand[x] += 1;
        }
        let take = mask.count_ones() as usize;
        if take > 0 {
            if self.demand[v] == 0 {
                self.zd.remove(v);
            }
            self.demand[v] += take;
        }
    }

    /// Residual-demand feasibility after vertex `v` fixed another row:
    /// every vertex must still be able to collect its outstanding edges,
    /// one at most from each remaining opportunity.
    fn demands_ok(&self, v: usize) -> bool {
        let lay = self.lay;
        let n = lay.n;
        let cv = lay.class_of[v];
        let parts_done = self.parts[v].len();
        for i in 0..lay.c {
            let off = lay.offsets[i];
            let after = off + lay.sizes[i];
            for x in off..after {
                let cap = match x.cmp(&v) {
                    std::cmp::Ordering::Less => {
                        // Fully assigned: future edges come from vertices
                        // after v in later classes, plus possibly v's own
                        // still-unassigned rows.
                        let from_later = n.saturating_sub((v + 1).max(after));
                        let from_v = usize::from(i >= parts_done && i < cv);
                        from_later + from_v
                    }
                    std::cmp::Ordering::Equal => {
                        let pending: usize = lay.sizes[parts_done..cv].iter().sum();
                        pending + lay.tail[cv]
                    }
                    std::cmp::Ordering::Greater => {
                        // Not yet reached: all own rows plus all later
                        // classes remain open.
                        lay.offsets[i] + (n - after)
                    }
                };
                if self.demand[x] > cap {
                    return false;
                }
            }
        }
        true
    }

    /// Counting prune against the transversal degree window, on decided
    /// pairs only.  In the finished graph, picking one partner per class
    /// must always collect between `dmin` and `dmax` neighbours of `x`.
    /// Decided pairs persist, so three counts already refute that future:
    /// partner classes holding a definite neighbour cannot exceed `dmax`
    /// (pick those neighbours); classes with no definite non-neighbour
    /// left must reach `dmin` in number, since only a class that ends
    /// fully adjacent is unavoidable and a present non-edge bars that;
    /// and classes definitely mixed each shift the attainable count by
    /// one, spanning more than the window if they outnumber its width.
    fn windows_ok(&self, scope: &VertexSet, v: usize, b: usize, dmin: usize, dmax: usize) -> bool {
        let lay = self.lay;
        let cv = lay.class_of[v];
        let width = dmax - dmin;
        let zd = &self.zd;
        let mut ones_a = [0usize; 32];
        let mut zeros_a = [0usize; 32];
        for x in scope.iter() {
            let cx = lay.class_of[x];
            let x_zero = self.demand[x] == 0;
            let mut has_one = 0usize;
            let mut no_zero = 0usize;
            let mut mixed = 0usize;
            for bb in 0..lay.c {
                if bb == cx {
                    continue;
                }
                let cm = &self.class_mask[bb];
                let ones = self.adj[x].count_intersect(cm);
                let zeros = if x_zero {
                    lay.sizes[bb] - ones
                } else {
                    // Pairs are decided by the endpoint in the later
                    // class, once its row toward the other's class is in
                    // place; an exhausted endpoint also settles the pair.
                    let decided = if bb < cx {
                        if x < v || (x == v && bb <= b) {
                            *cm
                        } else {
                            cm.intersect(zd)
                        }
                    } else {
                        let frontier = v + usize::from(bb == cv && cx <= b);
                        cm.intersect(&VertexSet::full(frontier)).union(&cm.intersect(zd))
                    };
                    decided.count() - ones
                };
                ones_a[bb] = ones;
                zeros_a[bb] = zeros;
                has_one += usize::from(ones > 0);
                no_zero += usize::from(zeros == 0);
                mixed += usize::from(ones > 0 && zeros > 0);
                if has_one > dmax || mixed > width {
                    return false;
                }
            }
            if no_zero < dmin {
                return false;
            }
            // Demand coupling.  The vertex must end fully adjacent to at
            // least dmin classes, necessarily ones without a definite
            // non-edge, so its residual demand covers the cheapest dmin
            // completions.  And every future edge lands in a class it is
            // allowed to touch: those already touched, plus at most
            // dmax − touched fresh ones with the most room.
            let mut full_costs = [0usize; 32];
            let mut nf = 0usize;
            let mut new_room = [0usize; 32];
            let mut nn = 0usize;
            let mut touched = 0usize;
            let mut fut_hi = 0usize;
            for bb in 0..lay.c {
                if bb == cx {
                    continue;
                }
                let und = lay.sizes[bb] - ones_a[bb] - zeros_a[bb];
                if zeros_a[bb] == 0 {
                    full_costs[nf] = lay.sizes[bb] - ones_a[bb];
                    nf += 1;
                }
                if ones_a[bb] > 0 {
                    touched += 1;
                    fut_hi += und;
                } else {
                    new_room[nn] = und;
                    nn += 1;
                }
            }
            full_costs[..nf].sort_unstable();
            let fut_lo: usize = full_costs[..dmin].iter().sum();
            if self.demand[x] < fut_lo {
                return false;
            }
            if touched < dmax {
                new_room[..nn].sort_unstable();
                let extra = (dmax - touched).min(nn);
                fut_hi += new_room[nn - extra..].iter().sum::<usize>();
            }
            if self.demand[x] > fut_hi {
                return false;
            }
        }
        true
    }

    fn twin_lower_bound(&self, v: usize, b: usize) -> Option<u64> {
        let u = self.twin_prev[v]?;
        if self.parts[v][..] == self.parts[u][..b] {
            Some(self.parts[u][b])
        } else {
            None
        }
    }

    /// Forbidden/forced bit masks for vertex `v`'s row toward class `b` at
    /// gap one.  A bit is forbidden when the hypothetical edge completes a
    /// transversal copy of the first pattern among definite pairs, and
    /// forced when the hypothetical non-edge completes a complement-side
    /// copy of the second pattern.  A transversal copy touches at most one
    /// vertex of class `b`, so per-bit tests are exhaustive.
    fn bit_bounds(&self, v: usize, b: usize) -> Option<(u64, u64)> {
        let sb = self.lay.sizes[b];
        let full: u64 = if sb == 64 { u64::MAX } else { (1u64 << sb) - 1 };
        if self.k != 1 {
            return Some((0, full));
        }
        let c = self.lay.c;
        let f1_fits = self.f1.order() <= c;
        let f2_fits = self.f2.order() <= c;
        if !f1_fits && !f2_fits {
            return Some((0, full));
        }
        let mut forced: u64 = 0;
        let mut allowed = full;
        for j in 0..sb {
            let x = self.lay.offsets[b] + j;
            if f1_fits && self.completes_copy(false, v, x, b, true) {
                allowed &= !(1u64 << j);
            }
            if f2_fits && self.completes_copy(true, v, x, b, false) {
                forced |= 1u64 << j;
            }
            if forced & !allowed != 0 {
                return None;
            }
        }
        Some((forced, allowed))
    }

    /// Does hypothesising status `pin_present` for the pair `(v, x)`
    /// complete a transversal pattern copy among definite pairs?  The
    /// pattern lives in the complement when `co` is set.
    fn completes_copy(&self, co: bool, v: usize, x: usize, b: usize, pin_present: bool) -> bool {
        let (pat, edges) = if co {
            (self.f2, &self.f2_edges)
        } else {
            (self.f1, &self.f1_edges)
        };
        let cv = self.lay.class_of[v];
        let cx = self.lay.class_of[x];
        let mut map = vec![usize::MAX; pat.order()];
        for &(p, q) in edges {
            for (pa, pb) in [(p, q), (q, p)] {
                map[pa] = v;
                map[pb] = x;
                let used = (1u64 << cv) | (1u64 << cx);
                if self.extend_copy(pat, co, &mut map, used, v, b, (v, x), pin_present) {
                    return true;
                }
                map[pa] = usize::MAX;
                map[pb] = usize::MAX;
            }
        }
        false
    }

    fn extend_copy(
        &self,
        pat: &Graph,
        co: bool,
        map: &mut [usize],
        used: u64,
        v: usize,
        b: usize,
        pin: (usize, usize),
        pin_present: bool,
    ) -> bool {
        // Most-constrained unmapped pattern vertex first.
        let mut pick: Option<(usize, usize)> = None;
        for p in 0..pat.order() {
            if map[p] != usize::MAX {
                continue;
            }
            let mapped = pat.neighbors(p).iter().filter(|&q| map[q] != usize::MAX).count();
            let better = match pick {
                None => true,
                Some((cnt, best)) => mapped > cnt || (mapped == cnt && p < best),
            };
            if better {
                pick = Some((mapped, p));
            }
        }
        let Some((_, p)) = pick else {
            return true;
        };
        let required = !co;
        for w in 0..self.lay.n {
            let cw = self.lay.class_of[w];
            if used & (1u64 << cw) != 0 {
                continue;
            }
            let mut ok = true;
            for q in pat.neighbors(p).iter() {
                if map[q] == usize::MAX {
                    continue;
                }
                match self.pair_status(w, map[q], v, b, pin, pin_present) {
                    Some(present) if present == required => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                map[p] = w;
                if self.extend_copy(pat, co, map, used | (1u64 << cw), v, b, pin, pin_present) {
                    map[p] = usize::MAX;
                    return true;
                }
                map[p] = usize::MAX;
            }
        }
        false
    }

    /// Definite adjacency between two vertices of distinct classes, given
    /// that vertex `v` is mid-assignment with rows toward classes `< b`
    /// already chosen.  The hypothesised pair reports `pin_present`.  An
    /// open pair with an exhausted endpoint is a definite non-edge: that
    /// vertex has already reached its target degree.
    fn pair_status(
        &self,
        a: usize,
        bv: usize,
        v: usize,
        b: usize,
        pin: (usize, usize),
        pin_present: bool,
    ) -> Option<bool> {
        let (lo, hi) = if a < bv { (a, bv) } else { (bv, a) };
        let (plo, phi) = if pin.0 < pin.1 { (pin.0, pin.1) } else { (pin.1, pin.0) };
        if (lo, hi) == (plo, phi) {
            return Some(pin_present);
        }
        if hi < v {
            return Some(self.adj[hi].contains(lo));
        }
        if hi == v && self.lay.class_of[lo] < b {
            return Some(self.adj[v].contains(lo));
        }
        if self.demand[lo] == 0 || self.demand[hi] == 0 {
            return Some(false);
        }
        None
    }

    /// Keep the first biadjacency block lexicographically minimal under
    /// the automorphisms of its two fills.  Prefix comparison: reject as
    /// soon as a group image is provably smaller.
    fn lex01_ok(&self) -> bool {
        let rows = &self.rows01;
        'group: for (rho, kappa) in &self.lex_group {
            for i in 0..rows.len() {
                let pi = rho[i];
                if pi >= rows.len() {
                    continue 'group;
                }
                let img = permute_bits(rows[pi], kappa);
                match rows[i].cmp(&img) {
                    std::cmp::Ordering::Less => continue 'group,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn leaf(&mut self) -> Option<Graph> {
        let lay = self.lay;
        // The demand caps force every residual to zero by the last row,
        // so the degree targets are met exactly; distinctness and the
        // ascending order along identical classes were built into the
        // target enumeration.
        debug_assert!(self.demand.iter().all(|&r| r == 0));
        let mut g = Graph::empty(lay.n).ok()?;
        for u in 0..lay.n {
            for w in u + 1..lay.n {
                if self.adj[u].contains(w) {
                    g.add_edge(u, w);
                }
            }
        }
        if is_sr_graph(&g, self.f1, self.f2, self.k) {
            Some(g)
        } else {
            None
        }
    }
}

/// Are the values, once sorted, pairwise at least `k` apart?
fn spaced_by(values: &[usize], k: usize) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[1] - w[0] >= k)
}

fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .permutations(n)
        .filter(|p| {
            (0..n).all(|u| (u + 1..n).all(|w| g.has_edge(u, w) == g.has_edge(p[u], p[w])))
        })
        .collect()
}

fn permute_bits(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut mm = mask;
    while mm != 0 {
        let j = mm.trailing_zeros() as usize;
        mm &= mm - 1;
        out |= 1u64 << perm[j];
    }
    out
}

// ---- certificates ----

/// One closed (or honestly unclosed) order in a certificate sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub method: String,
    pub outcome: String,
    pub nodes: u64,
    pub millis: u64,
}

/// Machine-checkable record of a singular Ramsey computation.
///
/// `claim` is `"Rs exact"` when the sweep closed every order from `value`
/// to the quadratic bound and the attached witness re-verified, else
/// `"Rs lower"` with `value` the best verified lower bound.  `witnesses`
/// holds graph6 encodings; `sweep` records how each order was closed.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub patterns: Vec<String>,
    pub k: usize,
    pub value: usize,
    pub witnesses: Vec<String>,
    pub sweep: Vec<SweepRecord>,
    pub complete: bool,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }
}

/// Certify the singular Ramsey number of a pattern pair at gap `k`.
///
/// The lower bound comes from the construction registry (or, failing
/// that, a small exhaustive scan); the upper bound from closing every
/// order in `[value, k(R-1)^2 + 1]`.  Orders above the quadratic bound
/// are closed by the extraction argument, so a fully closed sweep plus a
/// re-verified witness yields `complete = true` and an exact claim.
pub fn certify_rs(f1: &GraphSpec, f2: &GraphSpec, k: usize, cfg: &SearchConfig) -> Result<Certificate> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::InvalidSpec("the degree gap k must be at least one".into()));
    }
    let g1 = f1.build()?;
    let g2 = f2.build()?;
    if g1.order() < 2 || g2.order() < 2 {
        return Err(Error::InvalidSpec("patterns need at least two vertices".into()));
    }
    let r = ramsey_number(&g1, &g2)?;
    let bound = k * (r - 1) * (r - 1) + 1;

    let mut witness: Option<Graph> = None;
    if let Some(rep) = lower_bound_witness(f1, f2, k)? {
        if rep.verified_sr {
            witness = Some(rep.graph);
        }
    }
    if witness.is_none() {
        let cap = 8usize.min(bound.saturating_sub(1));
        let mut best = None;
        for n in 1..=cap {
            if let Some(g) = exhaustive_sr_witness(n, &g1, &g2, k)? {
                best = Some(g);
            }
        }
        witness = best;
    }
    let mut value = witness.as_ref().map(|g| g.order() + 1).unwrap_or(2);
    if value > bound {
        return Err(Error::ConstructionInvalid(
            "lower-bound witness order contradicts the quadratic bound".into(),
        ));
    }

    let orders: Vec<usize> = (value..=bound).collect();
    let swept: Vec<(SweepRecord, Option<Graph>)> = orders
        .par_iter()
        .map(|&n| sweep_one(n, &g1, &g2, k, r, bound, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut sweep = Vec::with_capacity(swept.len());
    let mut found: Vec<Graph> = Vec::new();
    for (rec, wit) in swept {
        if let Some(g) = wit {
            found.push(g);
        }
        sweep.push(rec);
    }

    let all_closed = sweep.iter().all(|rec| rec.outcome == "no-sr-graph");
    let witness_ok = witness
        .as_ref()
        .map_or(false, |g| g.order() + 1 == value && is_sr_graph(g, &g1, &g2, k));
    let mut witnesses: Vec<String> = witness.iter().map(g6_encode).collect();
    for g in &found {
        value = value.max(g.order() + 1);
        witnesses.push(g6_encode(g));
    }
    let complete = all_closed && witness_ok && found.is_empty();

    Ok(Certificate {
        claim: if complete { "Rs exact" } else { "Rs lower" }.into(),
        patterns: vec![f1.to_string(), f2.to_string()],
        k,
        value,
        witnesses,
        sweep,
        complete,
        tool_version: TOOL_VERSION.into(),
    })
}

fn sweep_one(
    n: usize,
    g1: &Graph,
    g2: &Graph,
    k: usize,
    r: usize,
    bound: usize,
    cfg: &SearchConfig,
) -> Result<(SweepRecord, Option<Graph>)> {
    let t0 = Instant::now();
    let (method, outcome, nodes, wit): (&str, &str, u64, Option<Graph>) = if n <= MAX_GEN_ORDER {
        let closed = exhaustive_no_sr(n, g1, g2, k)?;
        let scanned = count_all(n)? as u64;
        (
            "exhaustive",
            if closed { "no-sr-graph" } else { "witness-found" },
            scanned,
            None,
        )
    } else if k == 1 {
        let profiles: Vec<ClassProfile> = partitions_desc(n, r - 1, r - 1)
            .into_iter()
            .map(|sizes| ClassProfile { sizes })
            .collect();
        if profiles.is_empty() {
            ("profile-infeasible", "no-sr-graph", 0, None)
        } else {
            let sub = substitution_over_profiles(&profiles, g1, g2)?;
            if let Some(w) = sub.witness {
                ("substitution", "witness-found", sub.candidates_checked, Some(w))
            } else if sub.uncovered.is_empty() {
                ("substitution", "no-sr-graph", sub.candidates_checked, None)
            } else {
                let mut nodes = sub.candidates_checked;
                let mut wit = None;
                let mut budget_hit = false;
                for open in &sub.uncovered {
                    let (out, used) = csp_search_counted(&open.profile, g1, g2, 1, cfg)?;
                    nodes += used;
                    match out {
                        CspOutcome::Witness(g) => {
                            wit = Some(g);
                            break;
                        }
                        CspOutcome::BudgetExceeded => budget_hit = true,
                        CspOutcome::NoneExists => {}
                    }
                }
                if wit.is_some() {
                    ("csp", "witness-found", nodes, wit)
                } else if budget_hit {
                    ("csp", "budget-exceeded", nodes, None)
                } else {
                    ("csp", "no-sr-graph", nodes, None)
                }
            }
        }
    } else if n >= bound {
        // The extraction argument closes every order at or above the
        // quadratic bound for any gap.
        ("trivial-bound", "no-sr-graph", 0, None)
    } else {
        // With a gap of two or more the class-profile argument is unsound
        // (equal-degree classes are no longer capped), and this order is
        // beyond exhaustive generation: record it as honestly open.
        ("exhaustive", "not-closed", 0, None)
    };
    Ok((
        SweepRecord {
            n,
            method: method.into(),
            outcome: outcome.into(),
            nodes,
            millis: t0.elapsed().as_millis() as u64,
        },
        wit,
    ))
}

// ---- tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn pat(text: &str) -> Graph {
        GraphSpec::parse(text).unwrap().build().unwrap()
    }

    fn fast_cfg() -> SearchConfig {
        SearchConfig {
            node_budget: 10_000_000,
            time_budget_ms: 600_000,
            parallel_width: 0,
            seed: 0,
        }
    }

    #[test]
    fn config_rejects_zero_budgets() {
        let mut cfg = SearchConfig::default();
        cfg.node_budget = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = SearchConfig::default();
        cfg.time_budget_ms = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn quadratic_bound_examples() {
        let p3 = pat("P3");
        for k in 1..=4 {
            assert_eq!(quadratic_upper_bound(&p3, &p3, k).unwrap(), 4 * k + 1);
        }
        let k3 = pat("K3");
        assert_eq!(quadratic_upper_bound(&k3, &k3, 1).unwrap(), 26);
        let p4 = pat("P4");
        assert_eq!(quadratic_upper_bound(&p4, &p4, 1).unwrap(), 17);
        let c4 = pat("C4");
        assert_eq!(quadratic_upper_bound(&c4, &c4, 1).unwrap(), 26);
        let claw = pat("K13");
        assert_eq!(quadratic_upper_bound(&k3, &claw, 1).unwrap(), 37);
        assert!(quadratic_upper_bound(&p3, &p3, 0).is_err());
    }

    #[test]
    fn class_counting_bound_examples() {
        assert_eq!(max_classes_bound(22, 9), 4);
        assert_eq!(max_classes_bound(25, 12), 1);
        for n in [1, 5, 9, 40] {
            assert_eq!(max_classes_bound(n, 0), n);
        }
    }

    #[test]
    fn triangle_profiles_at_orders_22_25_26() {
        let k3 = pat("K3");
        let got = class_profiles(22, &k3, &k3).unwrap();
        let want: Vec<Vec<usize>> =
            vec![vec![5, 5, 5, 5, 2], vec![5, 5, 5, 4, 3], vec![5, 5, 4, 4, 4]];
        assert_eq!(got.iter().map(|p| p.sizes.clone()).collect::<Vec<_>>(), want);
        let got25 = class_profiles(25, &k3, &k3).unwrap();
        assert_eq!(got25.len(), 1);
        assert_eq!(got25[0].sizes, vec![5, 5, 5, 5, 5]);
        assert!(class_profiles(26, &k3, &k3).unwrap().is_empty());
    }

    #[test]
    fn path_profiles_descend_lexicographically() {
        let p4 = pat("P4");
        let got = class_profiles(13, &p4, &p4).unwrap();
        let sizes: Vec<Vec<usize>> = got.iter().map(|p| p.sizes.clone()).collect();
        assert_eq!(sizes, vec![vec![4, 4, 4, 1], vec![4, 4, 3, 2], vec![4, 3, 3, 3]]);
        for p in &got {
            assert_eq!(p.order(), 13);
            assert!(p.class_count() <= 4);
            assert!(p.sizes.iter().all(|&s| s <= 4));
        }
    }

    #[test]
    fn short_path_order_four_has_one_profile() {
        let p3 = pat("P3");
        let got = class_profiles(4, &p3, &p3).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].sizes, vec![2, 2]);
    }

    #[test]
    fn substitution_finds_an_extremal_triangle_witness_at_21() {
        let k3 = pat("K3");
        let out = substitution_search(21, &k3, &k3).unwrap();
        let w = out.witness.expect("an order-21 SR-graph should exist");
        assert_eq!(w.order(), 21);
        assert!(is_sr_graph(&w, &k3, &k3, 1));
        let mut degs: Vec<usize> = w.degree_classes().degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![8, 9, 10, 11, 12]);
    }

    #[test]
    fn substitution_closes_triangle_orders_22_to_25() {
        let k3 = pat("K3");
        for n in 22..=25 {
            let out = substitution_search(n, &k3, &k3).unwrap();
            assert!(out.witness.is_none(), "unexpected witness at order {n}");
            assert!(out.conclusive, "order {n} should be fully covered");
            assert!(out.uncovered.is_empty());
        }
    }

    #[test]
    fn substitution_closes_path_orders_13_to_16() {
        let p4 = pat("P4");
        for n in 13..=16 {
            let out = substitution_search(n, &p4, &p4).unwrap();
            assert!(out.witness.is_none(), "unexpected witness at order {n}");
            assert!(out.conclusive);
        }
    }

    #[test]
    fn substitution_reports_the_uncovered_star_profile_at_29() {
        let k3 = pat("K3");
        let claw = pat("K13");
        let out = substitution_search(29, &k3, &claw).unwrap();
        assert!(out.witness.is_none());
        assert!(!out.conclusive);
        assert_eq!(out.uncovered.len(), 1);
        let open = &out.uncovered[0];
        assert_eq!(open.profile.sizes, vec![6, 6, 6, 6, 5]);
        assert!(open.stable_hosts_closed);
        assert_eq!(open.unstable_hosts.len(), 1);
        let k23 = pat("K2,3");
        assert!(is_isomorphic(&open.unstable_hosts[0], &k23).unwrap());
    }

    #[test]
    fn exhaustive_sweep_small_path_orders() {
        let p3 = pat("P3");
        assert!(exhaustive_no_sr(5, &p3, &p3, 1).unwrap());
        assert!(!exhaustive_no_sr(4, &p3, &p3, 1).unwrap());
        let w = exhaustive_sr_witness(4, &p3, &p3, 1).unwrap().unwrap();
        assert!(is_sr_graph(&w, &p3, &p3, 1));
    }

    #[test]
    fn exhaustive_sweep_sees_the_gap_two_witness_at_order_eight() {
        let p3 = pat("P3");
        assert!(!exhaustive_no_sr(8, &p3, &p3, 2).unwrap());
    }

    #[test]
    fn class_search_keeps_the_star_profiles_witness_free_at_29_and_30() {
        // The profiles the triangle/star substitution argument leaves
        // open at orders 29 and 30: the unstable complete-bipartite host
        // means blow-ups alone do not decide them. Full refutation costs
        // about 1.4e9 nodes at order 29 (see the ignored closure probe),
        // far past the quick budget, so this guard only pins honesty: the
        // search must never produce a witness and must report exhaustion
        // truthfully when stopped early.
        let k3 = pat("K3");
        let star = pat("K1,3");
        for (n, sizes) in [(29, vec![6, 6, 6, 6, 5]), (30, vec![6, 6, 6, 6, 6])] {
            let profile = ClassProfile { sizes };
            let (out, _) = csp_search_counted(&profile, &k3, &star, 1, &fast_cfg()).unwrap();
            assert!(
                matches!(out, CspOutcome::NoneExists | CspOutcome::BudgetExceeded),
                "order {n}: {out:?}"
            );
        }
    }

    #[test]
    fn class_search_finds_a_witness_on_the_order_four_profile() {
        let p3 = pat("P3");
        let profile = ClassProfile { sizes: vec![2, 2] };
        match csp_search(&profile, &p3, &p3, 1, &fast_cfg()).unwrap() {
            CspOutcome::Witness(g) => {
                assert_eq!(g.order(), 4);
                assert!(is_sr_graph(&g, &p3, &p3, 1));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn class_search_rejects_profiles_without_fills() {
        let p3 = pat("P3");
        let profile = ClassProfile { sizes: vec![3, 1] };
        assert_eq!(
            csp_search(&profile, &p3, &p3, 1, &fast_cfg()).unwrap(),
            CspOutcome::NoneExists
        );
    }

    #[test]
    fn class_search_reports_budget_exhaustion() {
        let p3 = pat("P3");
        let profile = ClassProfile { sizes: vec![2, 2] };
        let cfg = SearchConfig {
            node_budget: 1,
            time_budget_ms: 600_000,
            parallel_width: 0,
            seed: 0,
        };
        assert_eq!(
            csp_search(&profile, &p3, &p3, 1, &cfg).unwrap(),
            CspOutcome::BudgetExceeded
        );
    }

    #[test]
    #[ignore = "profiling probe; run explicitly"]
    fn probe_depth_profile_tight_triangle() {
        let k3 = pat("K3");
        let sizes = vec![5usize, 5, 5, 5, 2];
        let lay = ClassLayout::new(&sizes);
        let cat5 = enumerate_r_graphs(5, &k3, &k3).unwrap();
        let cat2 = enumerate_r_graphs(2, &k3, &k3).unwrap();
        eprintln!("cat5={} cat2={}", cat5.graphs.len(), cat2.graphs.len());
        for t2 in 0..cat2.graphs.len() {
            let fills: Vec<&Graph> = vec![
                &cat5.graphs[0],
                &cat5.graphs[0],
                &cat5.graphs[0],
                &cat5.graphs[0],
                &cat2.graphs[t2],
            ];
            let deadline = Instant::now() + Duration::from_secs(120);
            let win = {
                let ds: Vec<usize> = cat5
                    .graphs
                    .iter()
                    .flat_map(|g| (0..g.order()).map(|v| g.degree(v)))
                    .collect();
                Some((*ds.iter().min().unwrap(), *ds.iter().max().unwrap()))
            };
            let mut ts = TupleSearch::new(
                &lay,
                fills,
                vec![0, 0, 0, 0, t2],
                &k3,
                &k3,
                1,
                win,
                60_000_000,
                deadline,
            );
            let t0 = Instant::now();
            let r = ts.run();
            let done = match r {
                Ok(w) => format!("done witness={}", w.is_some()),
                Err(Stop::Budget) => "stopped".into(),
            };
            eprintln!(
                "tuple {t2}: {done} nodes={} in {:?}\n  trials:     {:?}\n  boundsdead: {:?}\n  spreaddead: {:?}\n  windowdead: {:?}\n  lexdead:    {:?}",
                ts.nodes,
                t0.elapsed(),
                ts.nodes_at,
                ts.bounds_dead_at,
                ts.spread_dead_at,
                ts.window_dead_at,
                ts.lex_dead_at
            );
        }
    }

    #[test]
    #[ignore = "about 1.5e9 nodes; run in release as the slow closure tier"]
    fn slow_class_search_closes_the_star_profiles_at_29_and_30() {
        // Measured closure costs on one core: order 30 at 5.5e7 nodes,
        // order 29 at 1.41e9 nodes, together just under ten minutes in an
        // optimised build.
        let k3 = pat("K3");
        let star = pat("K1,3");
        let big = SearchConfig {
            node_budget: 6_000_000_000,
            time_budget_ms: 5_400_000,
            ..SearchConfig::default()
        };
        for (n, sizes) in [(30usize, vec![6usize, 6, 6, 6, 6]), (29, vec![6, 6, 6, 6, 5])] {
            let profile = ClassProfile { sizes };
            let t0 = Instant::now();
            let (out, nodes) = csp_search_counted(&profile, &k3, &star, 1, &big).unwrap();
            eprintln!("star profile at {n}: {out:?} nodes={nodes} in {:?}", t0.elapsed());
            assert_eq!(out, CspOutcome::NoneExists, "order {n}");
        }
    }

    #[test]
    #[ignore = "profiling probe; run explicitly"]
    fn probe_depth_profile_star_29() {
        let k3 = pat("K3");
        let star = pat("K1,3");
        let sizes = vec![6usize, 6, 6, 6, 5];
        let lay = ClassLayout::new(&sizes);
        let cat6 = enumerate_r_graphs(6, &k3, &star).unwrap();
        let cat5 = enumerate_r_graphs(5, &k3, &star).unwrap();
        eprintln!("cat6={} cat5={}", cat6.graphs.len(), cat5.graphs.len());
        let win = {
            let ds: Vec<usize> = cat5
                .graphs
                .iter()
                .flat_map(|g| (0..g.order()).map(|v| g.degree(v)))
                .collect();
            Some((*ds.iter().min().unwrap(), *ds.iter().max().unwrap()))
        };
        for t5 in 0..cat5.graphs.len() {
            let fills: Vec<&Graph> = vec![
                &cat6.graphs[0],
                &cat6.graphs[0],
                &cat6.graphs[0],
                &cat6.graphs[0],
                &cat5.graphs[t5],
            ];
            let deadline = Instant::now() + Duration::from_secs(240);
            let mut ts = TupleSearch::new(
                &lay,
                fills,
                vec![0, 0, 0, 0, t5],
                &k3,
                &star,
                1,
                win,
                100_000_000,
                deadline,
            );
            let t0 = Instant::now();
            let r = ts.run();
            let done = match r {
                Ok(w) => format!("done witness={}", w.is_some()),
                Err(Stop::Budget) => "stopped".into(),
            };
            eprintln!(
                "tuple {t5}: {done} nodes={} in {:?}\n  trials:     {:?}\n  boundsdead: {:?}\n  spreaddead: {:?}\n  windowdead: {:?}\n  lexdead:    {:?}",
                ts.nodes,
                t0.elapsed(),
                ts.nodes_at,
                ts.bounds_dead_at,
                ts.spread_dead_at,
                ts.window_dead_at,
                ts.lex_dead_at
            );
        }
    }

    #[test]
    fn class_search_closes_the_tight_triangle_profile_at_22() {
        let k3 = pat("K3");
        let profile = ClassProfile {
            sizes: vec![5, 5, 5, 5, 2],
        };
        let t0 = Instant::now();
        let (out, nodes) = csp_search_counted(&profile, &k3, &k3, 1, &fast_cfg()).unwrap();
        eprintln!("tight triangle profile at 22: nodes={nodes} in {:?}", t0.elapsed());
        assert_eq!(out, CspOutcome::NoneExists);
    }

    #[test]
    fn class_search_rediscovers_the_extremal_witness_at_21() {
        let k3 = pat("K3");
        let sub = substitution_search(21, &k3, &k3).unwrap();
        let reference = sub.witness.expect("substitution finds the order-21 witness");
        let profile = ClassProfile {
            sizes: {
                let mut s = reference.degree_classes().sizes();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s
            },
        };
        let t0 = Instant::now();
        let (out, nodes) = csp_search_counted(&profile, &k3, &k3, 1, &fast_cfg()).unwrap();
        eprintln!("witness profile at 21: nodes={nodes} in {:?}", t0.elapsed());
        match out {
            CspOutcome::Witness(g) => {
                assert_eq!(g.order(), 21);
                assert!(is_sr_graph(&g, &k3, &k3, 1));
                let mut sizes = g.degree_classes().sizes();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(sizes, profile.sizes);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn class_search_closes_the_near_extremal_profile_at_21() {
        // The four-pentagon-plus-singleton layout at order 21 admits no
        // SR-graph even though the degree ranges alone leave room: the
        // middle degrees cannot be realised.  This exercises the in-search
        // window pruning rather than the degree-level filter.
        let k3 = pat("K3");
        let profile = ClassProfile {
            sizes: vec![5, 5, 5, 5, 1],
        };
        let t0 = Instant::now();
        let (out, nodes) = csp_search_counted(&profile, &k3, &k3, 1, &fast_cfg()).unwrap();
        eprintln!("near-extremal profile at 21: nodes={nodes} in {:?}", t0.elapsed());
        assert_eq!(out, CspOutcome::NoneExists);
    }

    #[test]
    fn class_search_closes_a_mixed_profile_at_22() {
        let pattern = pat("K3+K1");
        let profile = ClassProfile {
            sizes: vec![5, 5, 5, 4, 3],
        };
        let t0 = Instant::now();
        let (out, nodes) = csp_search_counted(&profile, &pattern, &pattern, 1, &fast_cfg()).unwrap();
        eprintln!("mixed profile at 22: nodes={nodes} in {:?}", t0.elapsed());
        assert_eq!(out, CspOutcome::NoneExists);
    }

    #[test]
    fn short_path_certificate_is_complete() {
        let f = GraphSpec::parse("P3").unwrap();
        let cert = certify_rs(&f, &f, 1, &fast_cfg()).unwrap();
        assert_eq!(cert.value, 5);
        assert!(cert.complete);
        assert_eq!(cert.claim, "Rs exact");
        assert_eq!(cert.sweep.len(), 1);
        assert_eq!(cert.sweep[0].n, 5);
        assert_eq!(cert.sweep[0].method, "exhaustive");
        assert_eq!(cert.sweep[0].outcome, "no-sr-graph");
        assert_eq!(cert.witnesses.len(), 1);
    }

    #[test]
    fn certificate_json_preserves_field_order() {
        let f = GraphSpec::parse("P3").unwrap();
        let cert = certify_rs(&f, &f, 1, &fast_cfg()).unwrap();
        let json = cert.to_json();
        let fields = ["claim", "patterns", "\"k\"", "value", "witnesses", "sweep", "complete", "toolVersion"];
        let mut last = 0usize;
        for f in fields {
            let at = json.find(f).unwrap_or_else(|| panic!("{f} missing from certificate"));
            assert!(at > last || last == 0, "{f} out of order");
            last = at;
        }
    }

    #[test]
    fn path_certificate_closes_by_substitution() {
        let f = GraphSpec::parse("P4").unwrap();
        let cert = certify_rs(&f, &f, 1, &fast_cfg()).unwrap();
        assert_eq!(cert.value, 13);
        assert!(cert.complete);
        assert_eq!(cert.sweep.len(), 5);
        for rec in &cert.sweep[..4] {
            assert_eq!(rec.method, "substitution");
            assert_eq!(rec.outcome, "no-sr-graph");
        }
        assert_eq!(cert.sweep[4].n, 17);
        assert_eq!(cert.sweep[4].method, "profile-infeasible");
    }

    #[test]
    fn gap_three_certificate_closes_at_the_trivial_bound() {
        let f = GraphSpec::parse("P3").unwrap();
        let cert = certify_rs(&f, &f, 3, &fast_cfg()).unwrap();
        assert_eq!(cert.value, 13);
        assert!(cert.complete);
        assert_eq!(cert.sweep.len(), 1);
        assert_eq!(cert.sweep[0].method, "trivial-bound");
    }

    #[test]
    #[ignore = "needs the 1.5e9-node star closure; run in release as the slow tier"]
    fn slow_triangle_star_certificate_is_complete() {
        let k3 = GraphSpec::parse("K3").unwrap();
        let star = GraphSpec::parse("K1,3").unwrap();
        let big = SearchConfig {
            node_budget: 6_000_000_000,
            time_budget_ms: 5_400_000,
            ..SearchConfig::default()
        };
        let cert = certify_rs(&k3, &star, 1, &big).unwrap();
        eprintln!("{}", cert.to_json());
        assert_eq!(cert.value, 29);
        assert!(cert.complete, "sweep: {:?}", cert.sweep);
        assert_eq!(cert.claim, "Rs exact");
        let csp_orders: Vec<usize> = cert
            .sweep
            .iter()
            .filter(|r| r.method == "csp")
            .map(|r| r.n)
            .collect();
        assert_eq!(csp_orders, vec![29, 30]);
    }

    #[test]
    fn certificates_reject_degenerate_inputs() {
        let f = GraphSpec::parse("P3").unwrap();
        assert!(certify_rs(&f, &f, 0, &fast_cfg()).is_err());
        let single = GraphSpec::parse("K1").unwrap();
        assert!(certify_rs(&single, &f, 1, &fast_cfg()).is_err());
    }
}
