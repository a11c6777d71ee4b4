//! Subgraph embedding by backtracking.
//!
//! "Contains" here always means *not necessarily induced*: an injective map
//! of pattern vertices to host vertices under which every pattern edge is a
//! host edge. Pattern non-edges are unconstrained. Pattern vertices are
//! tried in descending pattern-degree order with degree-feasibility
//! pruning, which settles the small dense patterns used throughout this
//! crate in a handful of nodes.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Pattern vertices in descending degree order (ties by index).
fn pattern_order(pattern: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pattern.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    order
}

fn embed(
    host: &Graph,
    candidates: &VertexSet,
    pattern: &Graph,
    order: &[usize],
    pinned: Option<(usize, usize)>,
    assignment: &mut Vec<usize>,
    used: &mut VertexSet,
    depth: usize,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let pdeg = pattern.degree(pv);
    let choices: Box<dyn Iterator<Item = usize>> = match pinned {
        Some((pat, hv)) if pat == pv => Box::new(std::iter::once(hv)),
        _ => Box::new(candidates.minus(used).iter()),
    };
    for hv in choices {
        if used.contains(hv) || !candidates.contains(hv) {
            continue;
        }
        if host.degree_in(hv, candidates) < pdeg {
            continue;
        }
        // All already-placed pattern neighbours must be host neighbours.
        let consistent = order[..depth]
            .iter()
            .all(|&pu| !pattern.has_edge(pv, pu) || host.has_edge(hv, assignment[pu]));
        if !consistent {
            continue;
        }
        assignment[pv] = hv;
        used.insert(hv);
        if embed(host, candidates, pattern, order, pinned, assignment, used, depth + 1) {
            return true;
        }
        used.remove(hv);
    }
    false
}

/// Does `host` contain `pattern` as a subgraph?
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let order = pattern_order(pattern);
    let candidates = VertexSet::full(host.order());
    let mut assignment = vec![0usize; pattern.order()];
    let mut used = VertexSet::empty();
    embed(
        host,
        &candidates,
        pattern,
        &order,
        None,
        &mut assignment,
        &mut used,
        0,
    )
}

/// Does `host` contain a copy of `pattern` whose image includes the host
/// vertex `pinned`? Useful during one-vertex augmentation, where any new
/// copy must pass through the new vertex.
pub fn contains_subgraph_using(host: &Graph, pattern: &Graph, pinned: usize) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let order = pattern_order(pattern);
    let candidates = VertexSet::full(host.order());
    for &pv in order.iter() {
        let mut assignment = vec![0usize; pattern.order()];
        let mut used = VertexSet::empty();
        if embed(
            host,
            &candidates,
            pattern,
            &order,
            Some((pv, pinned)),
            &mut assignment,
            &mut used,
            0,
        ) {
            return true;
        }
    }
    false
}

/// Find a copy of `pattern` using exactly the host vertices `set` (a
/// spanning embedding into the induced subgraph on `set`). Returns the map
/// `pattern vertex -> host vertex` if one exists.
pub fn spanning_embedding(host: &Graph, set: &[usize], pattern: &Graph) -> Option<Vec<usize>> {
    if set.len() != pattern.order() {
        return None;
    }
    let candidates: VertexSet = set.iter().copied().collect();
    debug_assert_eq!(candidates.count(), set.len(), "set has repeats");
    let order = pattern_order(pattern);
    let mut assignment = vec![0usize; pattern.order()];
    let mut used = VertexSet::empty();
    if embed(
        host,
        &candidates,
        pattern,
        &order,
        None,
        &mut assignment,
        &mut used,
        0,
    ) {
        Some(assignment)
    } else {
        None
    }
}
