//! Three-phase combinatorial recovery of planted cliques of size `c sqrt(n)`,
//! parameterized for general edge probability `p`.
//!
//! Phase 1 repeatedly samples a random vertex subset and keeps only the
//! non-sampled vertices with unusually many neighbors inside it; clique
//! vertices survive at rate `rho` while background vertices die off much
//! faster, so the clique fraction grows every round. Phase 2 reads the
//! (shrunken) clique off a degree threshold, and phase 3 grows it back to the
//! full hidden clique in the original graph.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::normal::phi_bar;
use crate::rng::RngState;

#[derive(Clone, Debug)]
pub struct DekelConfig {
    /// Per-vertex sampling probability of phase 1.
    pub alpha: f64,
    /// Degree threshold offset of phase 1, in standard deviations.
    pub beta: f64,
    /// Edge probability of the instance.
    pub p: f64,
    /// Planted clique size hint; also sets `c = k / sqrt(n)`.
    pub k: usize,
    /// Phase-1 iteration cap; 0 means `ceil(ln n)`.
    pub t_max: usize,
    /// Stop phase 1 once the working graph is at most this large.
    pub min_survivors: usize,
}

impl DekelConfig {
    /// Empirical defaults; the analysis only asserts good parameters exist.
    pub fn for_instance(n: usize, p: f64, k: usize) -> Self {
        let _ = n;
        DekelConfig {
            alpha: 0.5,
            beta: 1.3,
            p,
            k,
            t_max: 0,
            min_survivors: 32,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParams(format!(
                "alpha {} outside (0, 1)",
                self.alpha
            )));
        }
        if self.beta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "beta {} must be positive",
                self.beta
            )));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidProbability(self.p));
        }
        if self.k == 0 {
            return Err(Error::InvalidParams("clique size hint must be >= 1".into()));
        }
        Ok(())
    }
}

/// Expected per-iteration survival rate of clique vertices in phase 1:
/// `(1 - alpha) * phi_bar(beta - c sqrt(alpha) (1-p) / sqrt(p(1-p)))` with
/// `c = k / sqrt(n)`. At `p = 1/2` this reduces to
/// `(1 - alpha) * phi_bar(beta - c sqrt(alpha))`.
pub fn survival_rate(cfg: &DekelConfig, n: usize) -> f64 {
    let c = cfg.k as f64 / (n as f64).sqrt();
    let z = cfg.beta - c * cfg.alpha.sqrt() * (1.0 - cfg.p) / (cfg.p * (1.0 - cfg.p)).sqrt();
    (1.0 - cfg.alpha) * phi_bar(z)
}

#[derive(Clone, Debug, Serialize)]
pub struct DekelIteration {
    pub survivors: usize,
    pub clique_size_estimate: f64,
    pub no_op: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DekelTrace {
    pub rho: f64,
    pub iterations: Vec<DekelIteration>,
}

impl DekelTrace {
    /// Estimated surviving clique size after the recorded iterations.
    pub fn clique_size_estimate(&self, k: usize) -> f64 {
        let effective = self.iterations.iter().filter(|it| !it.no_op).count() as i32;
        k as f64 * self.rho.powi(effective)
    }
}

/// One phase-1 round: sample `S` (each vertex with probability `alpha`), keep
/// the non-sampled vertices with at least `p|S| + beta sqrt(p(1-p)|S|)`
/// neighbors in `S`. Returns the induced subgraph and the mapping from new
/// indices to `g`'s indices; an empty sample is a no-op round.
pub fn dekel_phase1_iterate(
    g: &Graph,
    cfg: &DekelConfig,
    rng: &mut RngState,
) -> Result<(Graph, Vec<usize>, bool)> {
    cfg.validate()?;
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParams(
            "phase 1 needs a nonempty graph".into(),
        ));
    }
    let mut sampled = Vec::new();
    for v in 0..n {
        if rng.next_bernoulli(cfg.alpha)? {
            sampled.push(v);
        }
    }
    if sampled.is_empty() {
        let identity: Vec<usize> = (0..n).collect();
        return Ok((g.clone(), identity, true));
    }
    let s = VertexSet::from(sampled);
    let s_mask = s.to_mask(g.words_per_row());
    let threshold =
        cfg.p * s.len() as f64 + cfg.beta * (cfg.p * (1.0 - cfg.p) * s.len() as f64).sqrt();
    let survivors: Vec<usize> = (0..n)
        .filter(|&v| !s.contains(v) && g.degree_in_mask(v, &s_mask) as f64 >= threshold)
        .collect();
    let (sub, map) = g.induced_subgraph(&VertexSet::new(survivors))?;
    Ok((sub, map, false))
}

/// Phase 2: vertices of the final working graph with degree at least
/// `p |V| + (1-p)/2 * k_t`, where `k_t` is the estimated surviving clique
/// size. Indices are local to `g_t`; the attack maps them back.
pub fn dekel_phase2_extract(g_t: &Graph, trace: &DekelTrace, cfg: &DekelConfig) -> VertexSet {
    let k_t = trace.clique_size_estimate(cfg.k);
    let threshold = cfg.p * g_t.n() as f64 + 0.5 * (1.0 - cfg.p) * k_t;
    VertexSet::new(
        (0..g_t.n())
            .filter(|&v| g_t.degree(v) as f64 >= threshold)
            .collect(),
    )
}

/// Phase 3: grow the partial clique back inside the original graph. `K'`
/// adds every vertex with at least `(1+p)/2 |K̄|` neighbors in `K̄`; the
/// result is the `k` best vertices by neighbor count into `K'`, among those
/// meeting `(1+p)/2 * k`, ties toward the smaller index.
pub fn dekel_phase3_complete(g: &Graph, k_bar: &VertexSet, cfg: &DekelConfig) -> Result<VertexSet> {
    if k_bar.is_empty() {
        return Err(Error::InvalidParams(
            "phase 3 needs a nonempty partial clique".into(),
        ));
    }
    let words = g.words_per_row();
    let kb_mask = k_bar.to_mask(words);
    let join_threshold = 0.5 * (1.0 + cfg.p) * k_bar.len() as f64;
    let mut prime: Vec<usize> = (0..g.n())
        .filter(|&v| g.degree_in_mask(v, &kb_mask) as f64 >= join_threshold)
        .collect();
    for v in k_bar.iter() {
        prime.push(v);
    }
    let k_prime = VertexSet::new(prime);

    let kp_mask = k_prime.to_mask(words);
    let accept = 0.5 * (1.0 + cfg.p) * cfg.k as f64;
    let mut scored: Vec<(usize, usize)> = (0..g.n())
        .map(|v| (v, g.degree_in_mask(v, &kp_mask)))
        .filter(|&(_, score)| score as f64 >= accept)
        .collect();
    scored.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(cfg.k);
    Ok(VertexSet::new(scored.into_iter().map(|(v, _)| v).collect()))
}

#[derive(Clone, Debug)]
pub struct DekelOutcome {
    pub candidate: VertexSet,
    /// Candidate is a clique of size at least `k`.
    pub success: bool,
    /// Fewer than `k` vertices met the final threshold.
    pub undersized: bool,
    pub trace: DekelTrace,
}

/// The full three-phase attack.
pub fn dekel_attack(
    g: &Graph,
    cfg: &DekelConfig,
    rng: &RngState,
    wall: &Budget,
) -> Result<DekelOutcome> {
    cfg.validate()?;
    let n = g.n();
    if n == 0 || cfg.k > n {
        return Err(Error::InvalidParams(format!(
            "instance with n = {n} cannot hold a clique of {}",
            cfg.k
        )));
    }
    let rho = survival_rate(cfg, n);
    let t_max = if cfg.t_max == 0 {
        (n as f64).ln().ceil() as usize
    } else {
        cfg.t_max
    };
    let mut rng = rng.child("dekel");
    let mut trace = DekelTrace {
        rho,
        iterations: Vec::new(),
    };

    let mut current = g.clone();
    // mapping from current-graph indices to original indices
    let mut to_original: Vec<usize> = (0..n).collect();
    let mut effective = 0i32;
    for _ in 0..t_max {
        if current.n() == 0 || wall.exceeded() {
            break;
        }
        let (next, map, no_op) = dekel_phase1_iterate(&current, cfg, &mut rng)?;
        if !no_op {
            effective += 1;
            to_original = map.iter().map(|&i| to_original[i]).collect();
            current = next;
        }
        trace.iterations.push(DekelIteration {
            survivors: current.n(),
            clique_size_estimate: cfg.k as f64 * rho.powi(effective),
            no_op,
        });
        let floor = (cfg.min_survivors as f64).max(4.0 * cfg.k as f64 * rho.powi(effective));
        if (current.n() as f64) <= floor {
            break;
        }
    }

    let failure = |trace: DekelTrace| DekelOutcome {
        candidate: VertexSet::empty(),
        success: false,
        undersized: true,
        trace,
    };
    if current.n() == 0 {
        return Ok(failure(trace));
    }
    let k_bar_local = dekel_phase2_extract(&current, &trace, cfg);
    if k_bar_local.is_empty() {
        return Ok(failure(trace));
    }
    let k_bar = VertexSet::new(k_bar_local.iter().map(|i| to_original[i]).collect());
    let candidate = dekel_phase3_complete(g, &k_bar, cfg)?;
    let undersized = candidate.len() < cfg.k;
    let success = !undersized && g.is_clique(&candidate)?;
    Ok(DekelOutcome {
        candidate,
        success,
        undersized,
        trace,
    })
}
