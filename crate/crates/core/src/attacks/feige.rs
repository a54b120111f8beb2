//! Clique search by poor-subgraph removal, for general graphs.
//!
//! Working on a vertex set `V"`, each iteration partitions it into parts of
//! `2kt` vertices and looks for a `t`-subset that is a clique with a large
//! common neighborhood; extending by such subsets either drives the working
//! set below `6kt` (success, the accumulated clique is returned) or proves
//! by pigeonhole that `V"` holds no clique of size `|V"|/(2k)`. Such a `V"`
//! is a *poor* subgraph: it can be removed outright without destroying the
//! density guarantee, and a fresh phase starts on what is left.
//!
//! `k` here is the claimed density ratio (max clique >= n/k), named
//! `density_ratio` to keep it apart from the planted clique size.

use crate::budget::Budget;
use crate::combinat::{for_each_combination, BinomTable};
use crate::error::{Error, Result};
use crate::graph::{popcount, Graph, VertexSet};
use crate::oracle;

#[derive(Clone, Debug)]
pub struct FeigeConfig {
    /// Subset size; larger values trade runtime for clique size.
    pub t: usize,
    /// The `k` with "the graph has a clique of size at least n/k".
    pub density_ratio: usize,
}

impl FeigeConfig {
    pub fn for_instance(n: usize, planted_k: usize) -> Self {
        let density_ratio = if planted_k == 0 {
            n.max(1)
        } else {
            (n as f64 / planted_k as f64).round().max(1.0) as usize
        };
        FeigeConfig {
            t: 2,
            density_ratio,
        }
    }

    /// The asymptotic choice `t = ceil(log n / log log n)`.
    pub fn asymptotic_t(n: usize) -> usize {
        let ln = (n.max(3) as f64).ln();
        (ln / ln.ln().max(1.0)).ceil() as usize
    }

    pub fn part_size(&self) -> usize {
        2 * self.density_ratio * self.t
    }

    /// Working sets smaller than this end the phase.
    pub fn min_working(&self) -> usize {
        6 * self.density_ratio * self.t
    }

    fn validate(&self) -> Result<()> {
        if self.t == 0 || self.density_ratio == 0 {
            return Err(Error::InvalidParams(
                "t and density_ratio must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Test-side verifier: a vertex-induced subgraph is poor iff its maximum
/// clique is smaller than `|S| / (2k)`. Exact-oracle scale only.
pub fn is_poor_certificate(g_sub: &Graph, density_ratio: usize) -> bool {
    2 * density_ratio * oracle::max_clique_size(g_sub) < g_sub.n()
}

/// One iteration outcome over the current working set.
#[derive(Clone, Debug)]
pub enum FeigeStep {
    /// A subset extended the clique; the working set shrank to its common
    /// neighborhood.
    Extended {
        working: VertexSet,
        c_acc: VertexSet,
        subsets_examined: u64,
    },
    /// No part offered an extension: the whole working set is poor.
    Poor {
        certificate: VertexSet,
        subsets_examined: u64,
    },
    /// The working set is below `6kt`; the accumulated clique is final.
    Done(VertexSet),
}

/// One iteration on `g` restricted to `working`, with accumulated clique
/// `c_acc` (every member of `working` is adjacent to all of `c_acc`).
///
/// Scans the parts in order and the `t`-subsets of each part
/// lexicographically; accepts the first clique subset `S` with
/// `|N(S)| >= |working|/(2k) - t` common neighbors inside `working`.
pub fn feige_iteration(
    g: &Graph,
    working: &VertexSet,
    c_acc: &VertexSet,
    cfg: &FeigeConfig,
) -> Result<FeigeStep> {
    cfg.validate()?;
    if let Some(v) = working.max_vertex() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    if working.len() < cfg.min_working() {
        return Ok(FeigeStep::Done(c_acc.clone()));
    }
    let words = g.words_per_row();
    let working_mask = working.to_mask(words);
    let members = working.as_slice();
    let per_part_bound = BinomTable::new(cfg.part_size(), cfg.t).get(cfg.part_size(), cfg.t);

    let mut examined = 0u64;
    for part in members.chunks(cfg.part_size()) {
        let mut found: Option<(Vec<usize>, Vec<u64>)> = None;
        let mut in_part = 0u64;
        for_each_combination(part, cfg.t, &mut |subset| {
            in_part += 1;
            if !pairwise_clique(g, subset) {
                return false;
            }
            let mut mask = g.common_neighbor_mask(subset);
            for (m, w) in mask.iter_mut().zip(&working_mask) {
                *m &= w;
            }
            let count = popcount(&mask);
            // |N(S)| >= |working|/(2k) - t, kept in integers
            if 2 * cfg.density_ratio * (count + cfg.t) >= working.len() {
                found = Some((subset.to_vec(), mask));
                true
            } else {
                false
            }
        });
        assert!(
            in_part <= per_part_bound,
            "part scanned {in_part} > C(2kt, t)"
        );
        examined += in_part;
        if let Some((subset, mask)) = found {
            let new_working = VertexSet::from_mask(&mask);
            let new_c_acc = c_acc.union(&VertexSet::new(subset));
            return Ok(FeigeStep::Extended {
                working: new_working,
                c_acc: new_c_acc,
                subsets_examined: examined,
            });
        }
    }
    Ok(FeigeStep::Poor {
        certificate: working.clone(),
        subsets_examined: examined,
    })
}

fn pairwise_clique(g: &Graph, vs: &[usize]) -> bool {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct FeigeOutcome {
    pub clique: VertexSet,
    /// Working sets certified poor and removed, in emission order.
    pub certificates: Vec<VertexSet>,
    pub phases: usize,
    pub subsets_examined: u64,
    pub timed_out: bool,
}

/// Full run: phases over a shrinking graph, each ending in a returned clique
/// or in the removal of a certified-poor working set.
pub fn feige_attack(g: &Graph, cfg: &FeigeConfig, wall: &Budget) -> Result<FeigeOutcome> {
    cfg.validate()?;
    let mut remaining = VertexSet::new((0..g.n()).collect());
    let mut certificates = Vec::new();
    let mut phases = 0;
    let mut examined = 0u64;
    loop {
        phases += 1;
        let mut working = remaining.clone();
        let mut c_acc = VertexSet::empty();
        loop {
            if wall.exceeded() {
                return Ok(FeigeOutcome {
                    clique: c_acc,
                    certificates,
                    phases,
                    subsets_examined: examined,
                    timed_out: true,
                });
            }
            match feige_iteration(g, &working, &c_acc, cfg)? {
                FeigeStep::Done(clique) => {
                    return Ok(FeigeOutcome {
                        clique,
                        certificates,
                        phases,
                        subsets_examined: examined,
                        timed_out: false,
                    });
                }
                FeigeStep::Extended {
                    working: w,
                    c_acc: c,
                    subsets_examined,
                } => {
                    examined += subsets_examined;
                    debug_assert!(g.is_clique(&c).unwrap());
                    working = w;
                    c_acc = c;
                }
                FeigeStep::Poor {
                    certificate,
                    subsets_examined,
                } => {
                    examined += subsets_examined;
                    remaining = remaining.difference(&certificate);
                    certificates.push(certificate);
                    break;
                }
            }
        }
    }
}

/// The weakest form of the guaranteed clique size, `t log_{3k}(n/t) - 3`.
pub fn size_guarantee(n: usize, cfg: &FeigeConfig) -> f64 {
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    let base = (3 * cfg.density_ratio) as f64;
    cfg.t as f64 * ((n as f64 / cfg.t as f64).ln() / base.ln()) - 3.0
}
