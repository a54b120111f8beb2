//! Exact maximum-clique search and the brute-force subset adversary.
//!
//! The exact solver is ground truth for every experiment at desk scale:
//! branch and bound over packed candidate masks with a greedy-coloring upper
//! bound, practical to roughly n = 300 at edge density 1/2.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::combinat::{scan_clique_subsets, ScanOutcome};
use crate::graph::{iter_bits, popcount, Graph, VertexSet};

/// Size of the maximum clique.
pub fn max_clique_size(g: &Graph) -> usize {
    let mut solver = Solver::new(g, None);
    let full = full_mask(g);
    solver.expand(&mut Vec::new(), &full);
    solver.best_size
}

/// A maximum-cardinality clique; among them, the lexicographically smallest
/// vertex set. Computed as size search plus greedy lexicographic completion.
pub fn max_clique_exact(g: &Graph) -> VertexSet {
    let omega = max_clique_size(g);
    let mut chosen: Vec<usize> = Vec::with_capacity(omega);
    let mut cand = full_mask(g);
    while chosen.len() < omega {
        let need = omega - chosen.len();
        let mut picked = None;
        for v in iter_bits(&cand).collect::<Vec<_>>() {
            let mut rest = cand.clone();
            for (m, r) in rest.iter_mut().zip(g.row(v)) {
                *m &= r;
            }
            if exists_clique(g, &rest, need - 1) {
                picked = Some((v, rest));
                break;
            }
            // v cannot start any remaining maximum clique here
            cand[v / 64] &= !(1u64 << (v % 64));
        }
        let (v, rest) = picked.expect("omega-clique must complete");
        chosen.push(v);
        cand = rest;
    }
    VertexSet::from_sorted(chosen)
}

/// True iff the subgraph induced by `cand` contains a clique of size
/// `target` or larger.
fn exists_clique(g: &Graph, cand: &[u64], target: usize) -> bool {
    if target == 0 {
        return true;
    }
    if popcount(cand) < target {
        return false;
    }
    let mut solver = Solver::new(g, Some(target));
    solver.best_size = target - 1; // prune anything that cannot beat target-1
    solver.expand(&mut Vec::new(), cand);
    solver.best_size >= target
}

struct Solver<'g> {
    g: &'g Graph,
    best_size: usize,
    best: Vec<usize>,
    stop_at: Option<usize>,
}

impl<'g> Solver<'g> {
    fn new(g: &'g Graph, stop_at: Option<usize>) -> Self {
        Solver {
            g,
            best_size: 0,
            best: Vec::new(),
            stop_at,
        }
    }

    fn done(&self) -> bool {
        matches!(self.stop_at, Some(t) if self.best_size >= t)
    }

    /// Greedy coloring of `p`: vertices grouped into independent classes;
    /// returns (vertex, color) with colors ascending. A clique can use at
    /// most one vertex per class, so color bounds the clique size within `p`.
    fn color_sort(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(popcount(p));
        let mut uncolored = p.to_vec();
        let mut color = 0;
        while let Some(first) = first_bit(&uncolored) {
            color += 1;
            let mut avail = uncolored.clone();
            let mut v = Some(first);
            while let Some(u) = v {
                clear_bit(&mut avail, u);
                clear_bit(&mut uncolored, u);
                for (a, r) in avail.iter_mut().zip(self.g.row(u)) {
                    *a &= !r;
                }
                out.push((u, color));
                v = first_bit(&avail);
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, p: &[u64]) {
        if popcount(p) == 0 {
            if r.len() > self.best_size {
                self.best_size = r.len();
                self.best = r.clone();
            }
            return;
        }
        let order = self.color_sort(p);
        let mut pool = p.to_vec();
        for &(v, color) in order.iter().rev() {
            if r.len() + color <= self.best_size || self.done() {
                return;
            }
            let mut child = pool.clone();
            for (c, row) in child.iter_mut().zip(self.g.row(v)) {
                *c &= row;
            }
            r.push(v);
            self.expand(r, &child);
            r.pop();
            clear_bit(&mut pool, v);
        }
    }
}

fn full_mask(g: &Graph) -> Vec<u64> {
    g.common_neighbor_mask(&[])
}

fn first_bit(mask: &[u64]) -> Option<usize> {
    mask.iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + mask[i].trailing_zeros() as usize)
}

fn clear_bit(mask: &mut [u64], v: usize) {
    mask[v / 64] &= !(1u64 << (v % 64));
}

/// Scans `k`-subsets in lexicographic order up to `budget`, returning the
/// first `k`-clique found. Exceeding the budget is a normal outcome carrying
/// the number of subsets examined, not an error.
pub fn brute_force_attack(
    g: &Graph,
    k: usize,
    budget: u64,
    wall: &Budget,
) -> ScanOutcome<VertexSet> {
    scan_clique_subsets(g, k, budget, wall, |members, _| {
        Some(VertexSet::new(members.to_vec()))
    })
}

/// Exact binomial coefficient `C(n, k)`: the brute-force work estimate.
pub fn count_steps_estimate(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 1..=k {
        c = c * BigUint::from(n - k + i) / BigUint::from(i);
    }
    c
}
