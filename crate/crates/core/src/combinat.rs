//! Lexicographic subset scans over a graph's vertices.
//!
//! Several attacks walk the size-`s` subsets of `V` in lexicographic order
//! looking for cliques. A plain scan is hopeless at interesting sizes, so the
//! scanner prunes every branch whose prefix is not a clique — no pruned subset
//! could have been accepted — while charging skipped subsets to the running
//! rank with binomial arithmetic. Budgets therefore mean exactly what they
//! would under a naive scan: "stop after examining the first `b` subsets".

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::budget::Budget;
use crate::graph::Graph;
use crate::par;

/// Result of a budgeted subset scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome<T> {
    /// The callback accepted a subset; `subsets_examined` is its 1-based
    /// position in the lexicographic order.
    Found { value: T, subsets_examined: u64 },
    /// Every subset was scanned without an acceptance.
    Exhausted { subsets_examined: u64 },
    /// The subset budget ran out first.
    BudgetExceeded { subsets_examined: u64 },
    /// The wall-clock budget ran out first.
    TimedOut { subsets_examined: u64 },
}

impl<T> ScanOutcome<T> {
    pub fn subsets_examined(&self) -> u64 {
        match self {
            ScanOutcome::Found {
                subsets_examined, ..
            }
            | ScanOutcome::Exhausted { subsets_examined }
            | ScanOutcome::BudgetExceeded { subsets_examined }
            | ScanOutcome::TimedOut { subsets_examined } => *subsets_examined,
        }
    }

    pub fn found(self) -> Option<T> {
        match self {
            ScanOutcome::Found { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Saturating Pascal triangle, `get(n, k) = C(n, k)` capped at `u64::MAX`.
pub(crate) struct BinomTable {
    max_k: usize,
    rows: Vec<u64>,
}

impl BinomTable {
    pub(crate) fn new(max_n: usize, max_k: usize) -> Self {
        let w = max_k + 1;
        let mut rows = vec![0u64; (max_n + 1) * w];
        for n in 0..=max_n {
            rows[n * w] = 1;
            for k in 1..=max_k.min(n) {
                let above = rows[(n - 1) * w + k];
                let left = rows[(n - 1) * w + k - 1];
                rows[n * w + k] = above.saturating_add(left);
            }
        }
        BinomTable { max_k, rows }
    }

    #[inline]
    pub(crate) fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.rows[n * (self.max_k + 1) + k]
        }
    }
}

enum SubtreeEnd<T> {
    Found(T, u64),
    Budget,
    Wall(u64),
}

/// Scans the size-`size` subsets of `g`'s vertices in lexicographic order,
/// invoking `on_clique` for every subset that induces a clique. The callback
/// receives the members plus the packed common-neighbor mask of all members
/// except the last (intersect with the last member's row for the full mask);
/// returning `Some` stops the scan.
///
/// Disjoint first-element subtrees run in parallel; the accepted subset is
/// always the lexicographically first one, independent of thread count.
pub(crate) fn scan_clique_subsets<T, F>(
    g: &Graph,
    size: usize,
    budget: u64,
    wall: &Budget,
    on_clique: F,
) -> ScanOutcome<T>
where
    T: Send,
    F: Fn(&[usize], &[u64]) -> Option<T> + Sync,
{
    let n = g.n();
    if size > n {
        return ScanOutcome::Exhausted {
            subsets_examined: 0,
        };
    }
    if size == 0 {
        if budget == 0 {
            return ScanOutcome::BudgetExceeded {
                subsets_examined: 0,
            };
        }
        let full = g.common_neighbor_mask(&[]);
        return match on_clique(&[], &full) {
            Some(value) => ScanOutcome::Found {
                value,
                subsets_examined: 1,
            },
            None => ScanOutcome::Exhausted {
                subsets_examined: 1,
            },
        };
    }

    let binom = BinomTable::new(n, size);
    let total = binom.get(n, size);

    // lexicographic rank of the first subset starting at each vertex
    let first_count = n - size + 1;
    let mut rank_start = Vec::with_capacity(first_count);
    let mut acc = 0u64;
    for a in 0..first_count {
        rank_start.push(acc);
        acc = acc.saturating_add(binom.get(n - 1 - a, size - 1));
    }

    let found_at = AtomicUsize::new(usize::MAX);
    let high_rank = AtomicU64::new(0);
    let timed_out = AtomicBool::new(false);
    let full_mask = g.common_neighbor_mask(&[]);

    let hit = par::find_map_first(first_count, |a| {
        if rank_start[a] >= budget || found_at.load(Ordering::Relaxed) < a {
            return None;
        }
        let mut scan = Scan {
            g,
            size,
            binom: &binom,
            budget,
            wall,
            on_clique: &on_clique,
            rank: rank_start[a],
            members: Vec::with_capacity(size),
            poll: 0,
            subtree: a,
            found_at: &found_at,
        };
        scan.members.push(a);
        let end = if size == 1 {
            scan.visit_leaf(&full_mask)
        } else {
            let mask = g.common_neighbor_mask(&[a]);
            scan.descend(&mask)
        };
        high_rank.fetch_max(scan.rank, Ordering::Relaxed);
        match end {
            Some(SubtreeEnd::Found(value, rank)) => {
                found_at.fetch_min(a, Ordering::Relaxed);
                Some(SubtreeEnd::Found(value, rank))
            }
            Some(SubtreeEnd::Wall(r)) => {
                timed_out.store(true, Ordering::Relaxed);
                Some(SubtreeEnd::Wall(r))
            }
            Some(SubtreeEnd::Budget) | None => None,
        }
    });

    match hit {
        Some(SubtreeEnd::Found(value, rank)) => ScanOutcome::Found {
            value,
            subsets_examined: rank,
        },
        Some(SubtreeEnd::Wall(r)) => ScanOutcome::TimedOut {
            subsets_examined: r,
        },
        None if timed_out.load(Ordering::Relaxed) => ScanOutcome::TimedOut {
            subsets_examined: high_rank.load(Ordering::Relaxed),
        },
        None => {
            if budget < total {
                ScanOutcome::BudgetExceeded {
                    subsets_examined: budget,
                }
            } else {
                ScanOutcome::Exhausted {
                    subsets_examined: total,
                }
            }
        }
        Some(SubtreeEnd::Budget) => unreachable!("budget ends are folded into None"),
    }
}

struct Scan<'a, T, F>
where
    F: Fn(&[usize], &[u64]) -> Option<T>,
{
    g: &'a Graph,
    size: usize,
    binom: &'a BinomTable,
    budget: u64,
    wall: &'a Budget,
    on_clique: &'a F,
    rank: u64,
    members: Vec<usize>,
    poll: u32,
    subtree: usize,
    found_at: &'a AtomicUsize,
}

impl<T, F> Scan<'_, T, F>
where
    F: Fn(&[usize], &[u64]) -> Option<T>,
{
    /// Walks extensions of the current prefix in ascending order. `mask`
    /// holds the packed common neighbors of `self.members`; `self.rank` is
    /// the virtual lexicographic position including bulk-skipped subtrees.
    fn descend(&mut self, mask: &[u64]) -> Option<SubtreeEnd<T>> {
        let n = self.g.n();
        let last = *self.members.last().unwrap();
        let remaining = self.size - self.members.len();
        debug_assert!(remaining >= 1);

        for v in (last + 1)..n {
            if self.rank >= self.budget {
                return Some(SubtreeEnd::Budget);
            }
            self.poll = self.poll.wrapping_add(1);
            if self.poll & 0xfff == 0 {
                if self.wall.exceeded() {
                    return Some(SubtreeEnd::Wall(self.rank));
                }
                if self.found_at.load(Ordering::Relaxed) < self.subtree {
                    return None;
                }
            }
            let below = self.binom.get(n - 1 - v, remaining - 1);
            if !bit(mask, v) {
                // prefix + v is not a clique; nothing below can be accepted
                self.rank = self.rank.saturating_add(below);
                continue;
            }
            if remaining == 1 {
                self.members.push(v);
                let end = self.visit_leaf(mask);
                self.members.pop();
                if end.is_some() {
                    return end;
                }
                continue;
            }
            let mut next = mask.to_vec();
            for (m, r) in next.iter_mut().zip(self.g.row(v)) {
                *m &= r;
            }
            // any completion needs `remaining - 1` common neighbors above v
            if count_above(&next, v) < remaining - 1 {
                self.rank = self.rank.saturating_add(below);
                continue;
            }
            self.members.push(v);
            let end = self.descend(&next);
            self.members.pop();
            if end.is_some() {
                return end;
            }
        }
        None
    }

    /// `self.members` is a full-size clique; `prefix_mask` covers all members
    /// but the last.
    fn visit_leaf(&mut self, prefix_mask: &[u64]) -> Option<SubtreeEnd<T>> {
        self.rank += 1;
        (self.on_clique)(&self.members, prefix_mask)
            .map(|value| SubtreeEnd::Found(value, self.rank))
    }
}

#[inline]
fn bit(mask: &[u64], v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 == 1
}

/// Set bits strictly greater than `v` (last word of `mask` is assumed clean).
fn count_above(mask: &[u64], v: usize) -> usize {
    let w = v / 64;
    let shift = v % 64;
    let high = if shift == 63 {
        0
    } else {
        mask[w] & (!0u64 << (shift + 1))
    };
    let tail: usize = mask[w + 1..].iter().map(|x| x.count_ones() as usize).sum();
    high.count_ones() as usize + tail
}

/// Lexicographic `k`-combinations of `items`; `f` returns true to stop early.
/// Returns whether the walk was stopped.
pub(crate) fn for_each_combination<T: Copy>(
    items: &[T],
    k: usize,
    f: &mut impl FnMut(&[T]) -> bool,
) -> bool {
    fn go<T: Copy>(
        items: &[T],
        k: usize,
        start: usize,
        cur: &mut Vec<T>,
        f: &mut impl FnMut(&[T]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        if items.len() < need || start > items.len() - need {
            return false;
        }
        for i in start..=(items.len() - need) {
            cur.push(items[i]);
            let stop = go(items, k, i + 1, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if k > items.len() {
        return false;
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn collect_cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
        let seen = std::sync::Mutex::new(Vec::new());
        let out: ScanOutcome<()> =
            scan_clique_subsets(g, size, u64::MAX, &Budget::unlimited(), |m, _| {
                seen.lock().unwrap().push(m.to_vec());
                None
            });
        assert!(matches!(out, ScanOutcome::Exhausted { .. }));
        let mut v = seen.into_inner().unwrap();
        v.sort();
        v
    }

    #[test]
    fn visits_exactly_the_cliques() {
        // square with one diagonal: 0-1, 1-2, 2-3, 0-3, 0-2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert_eq!(collect_cliques(&g, 3), vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(collect_cliques(&g, 4), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn rank_matches_plain_lexicographic_position() {
        let g = Graph::complete(6);
        // on K6 every subset is a clique, so the scan degrades to a plain one
        let expect = AtomicU64::new(0);
        let out: ScanOutcome<()> =
            scan_clique_subsets(&g, 3, u64::MAX, &Budget::unlimited(), |_, _| {
                expect.fetch_add(1, Ordering::SeqCst);
                None
            });
        assert_eq!(out.subsets_examined(), 20);
        assert_eq!(expect.load(Ordering::SeqCst), 20);
    }

    #[test]
    fn found_rank_is_lexicographic_index() {
        // only clique triple is {1, 3, 4}
        let g = Graph::from_edges(5, &[(1, 3), (1, 4), (3, 4)]).unwrap();
        let out = scan_clique_subsets(&g, 3, u64::MAX, &Budget::unlimited(), |m, _| {
            Some(VertexSet::new(m.to_vec()))
        });
        match out {
            ScanOutcome::Found {
                value,
                subsets_examined,
            } => {
                assert_eq!(value, VertexSet::new(vec![1, 3, 4]));
                // lex order of C(5,3): 012 013 014 023 024 034 123 124 134 ...
                assert_eq!(subsets_examined, 9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_cuts_the_scan() {
        let g = Graph::complete(6);
        let out: ScanOutcome<()> = scan_clique_subsets(&g, 3, 5, &Budget::unlimited(), |_, _| None);
        assert_eq!(
            out,
            ScanOutcome::BudgetExceeded {
                subsets_examined: 5
            }
        );
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let mut seen = Vec::new();
        for_each_combination(&[10, 20, 30, 40], 2, &mut |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![10, 20],
                vec![10, 30],
                vec![10, 40],
                vec![20, 30],
                vec![20, 40],
                vec![30, 40]
            ]
        );
    }
}
