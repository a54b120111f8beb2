//! Metropolis process on the cliques of a graph.
//!
//! State is a clique `K`. One step: draw a vertex `v` uniformly from `V`;
//! if `v` is outside `K` and adjacent to all of it, add it; if `v` is in `K`,
//! remove it with probability `1/temperature`; otherwise stay. The stationary
//! law weights each clique by `temperature^|K|`, which is what the small-graph
//! instrumentation here verifies exactly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph, VertexSet};
use crate::rng::RngState;

#[derive(Clone, Debug)]
pub struct MetropolisConfig {
    /// The process parameter (>= 1): higher values make removals rarer.
    /// Distinct from any security parameter.
    pub temperature: f64,
    pub max_steps: u64,
    /// Stop as soon as a visited clique reaches this size.
    pub target_size: Option<usize>,
    pub initial_state: VertexSet,
}

impl MetropolisConfig {
    pub fn new(temperature: f64, max_steps: u64) -> Self {
        MetropolisConfig {
            temperature,
            max_steps,
            target_size: None,
            initial_state: VertexSet::empty(),
        }
    }

    /// Step count giving the chain comfortable room at desk scales.
    pub fn default_max_steps(n: usize) -> u64 {
        let n = n.max(2) as f64;
        (n * n * n.ln()) as u64
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.temperature < 1.0 {
            return Err(Error::InvalidParams(format!(
                "temperature {} must be >= 1",
                self.temperature
            )));
        }
        if !g.is_clique(&self.initial_state)? {
            return Err(Error::NotAClique(self.initial_state.as_slice().to_vec()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MetropolisRun {
    /// Largest clique visited, not merely the final state.
    pub best: VertexSet,
    pub steps: u64,
    pub hit_target: bool,
    pub timed_out: bool,
}

/// One kernel step applied to a validated clique state.
pub fn metropolis_step(
    g: &Graph,
    state: &VertexSet,
    cfg: &MetropolisConfig,
    rng: &mut RngState,
) -> Result<VertexSet> {
    if !g.is_clique(state)? {
        return Err(Error::NotAClique(state.as_slice().to_vec()));
    }
    let mut chain = Chain::new(g, state, cfg.temperature);
    chain.step(rng);
    Ok(chain.state())
}

/// Runs the process for up to `max_steps`, returning the largest clique seen.
pub fn metropolis_attack(
    g: &Graph,
    cfg: &MetropolisConfig,
    rng: &RngState,
    wall: &Budget,
) -> Result<MetropolisRun> {
    cfg.validate(g)?;
    if g.n() == 0 {
        return Ok(MetropolisRun {
            best: VertexSet::empty(),
            steps: 0,
            hit_target: false,
            timed_out: false,
        });
    }
    let mut rng = rng.child("metropolis");
    let mut chain = Chain::new(g, &cfg.initial_state, cfg.temperature);
    let mut best_mask = chain.mask.clone();
    let mut best_size = chain.size;
    let mut hit_target = cfg.target_size.is_some_and(|t| best_size >= t);
    let mut timed_out = false;
    let mut steps = 0;
    while steps < cfg.max_steps && !hit_target {
        chain.step(&mut rng);
        steps += 1;
        if chain.size > best_size {
            best_size = chain.size;
            best_mask.copy_from_slice(&chain.mask);
            if cfg.target_size.is_some_and(|t| best_size >= t) {
                hit_target = true;
            }
        }
        if steps & 0x1fff == 0 && wall.exceeded() {
            timed_out = true;
            break;
        }
    }
    Ok(MetropolisRun {
        best: VertexSet::new(iter_bits(&best_mask).collect()),
        steps,
        hit_target,
        timed_out,
    })
}

struct Chain<'g> {
    g: &'g Graph,
    mask: Vec<u64>,
    size: usize,
    remove_prob: f64,
    ticks: u64,
}

impl<'g> Chain<'g> {
    fn new(g: &'g Graph, initial: &VertexSet, temperature: f64) -> Self {
        Chain {
            g,
            mask: initial.to_mask(g.words_per_row().max(1)),
            size: initial.len(),
            remove_prob: 1.0 / temperature,
            ticks: 0,
        }
    }

    #[inline]
    fn step(&mut self, rng: &mut RngState) {
        let v = rng.gen_index(self.g.n());
        let word = v / 64;
        let bit = 1u64 << (v % 64);
        if self.mask[word] & bit != 0 {
            if rng.gen_f64() < self.remove_prob {
                self.mask[word] &= !bit;
                self.size -= 1;
            }
        } else if self.adjacent_to_all(v) {
            self.mask[word] |= bit;
            self.size += 1;
        }
        // sampled state check in debug runs; the add rule keeps the state a
        // clique by induction
        self.ticks = self.ticks.wrapping_add(1);
        debug_assert!(
            self.ticks & 0x3ff != 0
                || self
                    .g
                    .is_clique(&VertexSet::new(iter_bits(&self.mask).collect()))
                    .unwrap()
        );
    }

    #[inline]
    fn adjacent_to_all(&self, v: usize) -> bool {
        self.mask
            .iter()
            .zip(self.g.row(v))
            .all(|(m, r)| m & !r == 0)
    }

    fn state(&self) -> VertexSet {
        VertexSet::new(iter_bits(&self.mask).collect())
    }
}

// ---------------------------------------------------------------------------
// Small-graph instrumentation: exact kernel and stationary law
// ---------------------------------------------------------------------------

const ENUMERATION_LIMIT: usize = 24;

/// Every clique of `g` including the empty one, for graphs small enough to
/// enumerate.
pub fn enumerate_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    if g.n() > ENUMERATION_LIMIT {
        return Err(Error::InvalidParams(format!(
            "clique enumeration limited to n <= {ENUMERATION_LIMIT}, got {}",
            g.n()
        )));
    }
    fn go(g: &Graph, cur: &mut Vec<usize>, from: usize, out: &mut Vec<VertexSet>) {
        out.push(VertexSet::new(cur.clone()));
        for v in from..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                go(g, cur, v + 1, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::new(), 0, &mut out);
    Ok(out)
}

/// Exact one-step transition probability `p(from, to)` of the kernel, as a
/// rational in the rational `temperature`.
pub fn kernel_probability(
    g: &Graph,
    from: &VertexSet,
    to: &VertexSet,
    temperature: &BigRational,
) -> Result<BigRational> {
    if !g.is_clique(from)? || !g.is_clique(to)? {
        return Err(Error::NotAClique(from.as_slice().to_vec()));
    }
    let n = BigRational::from_integer(BigInt::from(g.n()));
    let one_over_n = BigRational::one() / &n;
    if from == to {
        // 1 minus the mass of every move away
        let additions = g.common_neighbors(from)?.len();
        let away = BigRational::from_integer(BigInt::from(additions)) * &one_over_n
            + BigRational::from_integer(BigInt::from(from.len())) * &one_over_n / temperature;
        return Ok(BigRational::one() - away);
    }
    if to.len() == from.len() + 1 && from.is_subset_of(to) {
        let added = to.difference(from);
        let v = added.as_slice()[0];
        let reachable = from.iter().all(|u| g.has_edge(u, v));
        return Ok(if reachable {
            one_over_n
        } else {
            BigRational::zero()
        });
    }
    if from.len() == to.len() + 1 && to.is_subset_of(from) {
        return Ok(one_over_n / temperature);
    }
    Ok(BigRational::zero())
}

/// Unnormalized stationary weight `temperature^|K|`.
pub fn stationary_weight(state: &VertexSet, temperature: &BigRational) -> BigRational {
    let mut w = BigRational::one();
    for _ in 0..state.len() {
        w *= temperature;
    }
    w
}

/// Runs the chain and counts how often each clique is the current state.
/// Intended for graphs small enough to enumerate.
pub fn occupancy_histogram(
    g: &Graph,
    cfg: &MetropolisConfig,
    rng: &RngState,
) -> Result<Vec<(VertexSet, u64)>> {
    cfg.validate(g)?;
    if g.n() > ENUMERATION_LIMIT {
        return Err(Error::InvalidParams(
            "occupancy histogram is for tiny graphs".into(),
        ));
    }
    let mut rng = rng.child("metropolis-occupancy");
    let mut chain = Chain::new(g, &cfg.initial_state, cfg.temperature);
    let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
    for _ in 0..cfg.max_steps {
        chain.step(&mut rng);
        *counts.entry(chain.mask.clone()).or_insert(0) += 1;
    }
    let mut out: Vec<(VertexSet, u64)> = counts
        .into_iter()
        .map(|(mask, c)| (VertexSet::new(iter_bits(&mask).collect()), c))
        .collect();
    out.sort_by(|a, b| a.0.as_slice().cmp(b.0.as_slice()));
    Ok(out)
}
