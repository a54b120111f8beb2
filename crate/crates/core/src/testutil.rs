//! Shared test oracles, compiled only for tests. These stay independent of
//! the implementation paths they check: plain backtracking, no bounds.

use crate::graph::{Graph, VertexSet};

/// Enumerates every clique by exhaustive backtracking and returns the
/// lexicographically-first largest one.
pub(crate) fn exhaustive_max_clique(g: &Graph) -> VertexSet {
    fn go(g: &Graph, cur: &mut Vec<usize>, from: usize, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for v in from..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                go(g, cur, v + 1, best);
                cur.pop();
            }
        }
    }
    let mut best = Vec::new();
    go(g, &mut Vec::new(), 0, &mut best);
    VertexSet::new(best)
}
