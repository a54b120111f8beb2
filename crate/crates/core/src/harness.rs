//! Attack orchestration and pseudo-inversion scoring.
//!
//! A registry of attacks runs against the public graph of an instance; the
//! harness validates every candidate, scores inversion (a clique of size at
//! least `k` re-plants to the same public graph), and reports the largest
//! valid clique over the registry. Attacks receive the graph and the public
//! parameters only — the hidden clique stays on the scoring side.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::attacks::dekel::{dekel_attack, DekelConfig};
use crate::attacks::feige::{feige_attack, FeigeConfig};
use crate::attacks::greedy::{greedy_attack, GreedyConfig};
use crate::attacks::metropolis::{metropolis_attack, MetropolisConfig};
use crate::attacks::spectral::{spectral_boosted_attack, SpectralConfig};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{owf_evaluate, PlantParams, PlantedInstance};
use crate::oracle::brute_force_attack;
use crate::par;
use crate::rng::RngState;

/// Registry entry: which attack to run and its tuning. Instance-dependent
/// settings (n, p, k) are filled in from the instance at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AttackSpec {
    Greedy {
        restarts: usize,
    },
    Metropolis {
        temperature: f64,
        max_steps: Option<u64>,
    },
    Spectral {
        subset_budget: u64,
    },
    Dekel {
        alpha: f64,
        beta: f64,
    },
    Feige {
        t: usize,
    },
    BruteForce {
        budget: u64,
    },
}

impl AttackSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AttackSpec::Greedy { .. } => "greedy",
            AttackSpec::Metropolis { .. } => "metropolis",
            AttackSpec::Spectral { .. } => "spectral",
            AttackSpec::Dekel { .. } => "dekel",
            AttackSpec::Feige { .. } => "feige",
            AttackSpec::BruteForce { .. } => "brute",
        }
    }

    /// Default tuning for a named attack.
    pub fn with_defaults(name: &str) -> Option<AttackSpec> {
        match name {
            "greedy" => Some(AttackSpec::Greedy { restarts: 1 }),
            "metropolis" => Some(AttackSpec::Metropolis {
                temperature: 2.0,
                max_steps: None,
            }),
            "spectral" => Some(AttackSpec::Spectral {
                subset_budget: 2_000_000,
            }),
            "dekel" => Some(AttackSpec::Dekel {
                alpha: 0.5,
                beta: 1.3,
            }),
            "feige" => Some(AttackSpec::Feige { t: 2 }),
            "brute" => Some(AttackSpec::BruteForce { budget: 1_000_000 }),
            _ => None,
        }
    }

    /// Every attack with default tuning, in a fixed order.
    pub fn default_registry() -> Vec<AttackSpec> {
        [
            "greedy",
            "metropolis",
            "spectral",
            "dekel",
            "feige",
            "brute",
        ]
        .iter()
        .map(|n| AttackSpec::with_defaults(n).expect("known name"))
        .collect()
    }
}

/// Per-attack outcome on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct AttackReport {
    pub attack: String,
    pub candidate: Option<VertexSet>,
    pub is_valid_clique: bool,
    pub size: usize,
    /// Candidate is a clique of the public graph with size >= k.
    pub inverted: bool,
    /// Candidate equals the hidden clique (evaluation only).
    pub matched_hidden: bool,
    pub steps: u64,
    pub seed: u64,
    /// Wall time is informational; it is excluded from determinism claims.
    pub wall_ms: f64,
}

/// The pseudo-inversion condition: re-planting `candidate` leaves the public
/// graph unchanged, i.e. it is a clique of the public graph of size >= k.
pub fn invert_check(instance: &PlantedInstance, candidate: &VertexSet) -> Result<bool> {
    let is_clique = instance.public_graph.is_clique(candidate)?;
    Ok(is_clique && candidate.len() >= instance.params.k)
}

fn run_attack(
    g: &Graph,
    params: &PlantParams,
    spec: &AttackSpec,
    rng: &RngState,
    wall: &Budget,
) -> Result<(Option<VertexSet>, u64)> {
    match spec {
        AttackSpec::Greedy { restarts } => {
            let cfg = GreedyConfig {
                restarts: *restarts,
            };
            let c = greedy_attack(g, &cfg, rng)?;
            Ok((Some(c), *restarts as u64))
        }
        AttackSpec::Metropolis {
            temperature,
            max_steps,
        } => {
            let mut cfg = MetropolisConfig::new(
                *temperature,
                max_steps.unwrap_or_else(|| MetropolisConfig::default_max_steps(g.n())),
            );
            cfg.target_size = Some(params.k);
            let run = metropolis_attack(g, &cfg, rng, wall)?;
            Ok((Some(run.best), run.steps))
        }
        AttackSpec::Spectral { subset_budget } => {
            let cfg = SpectralConfig::new(params.k);
            let out = spectral_boosted_attack(g, &cfg, *subset_budget, wall)?;
            let examined = out.subsets_examined();
            Ok((out.found(), examined))
        }
        AttackSpec::Dekel { alpha, beta } => {
            let mut cfg = DekelConfig::for_instance(g.n(), params.p, params.k);
            cfg.alpha = *alpha;
            cfg.beta = *beta;
            let out = dekel_attack(g, &cfg, rng, wall)?;
            let steps = out.trace.iterations.len() as u64;
            Ok((out.success.then_some(out.candidate), steps))
        }
        AttackSpec::Feige { t } => {
            let mut cfg = FeigeConfig::for_instance(g.n(), params.k);
            cfg.t = *t;
            let out = feige_attack(g, &cfg, wall)?;
            Ok((Some(out.clique), out.subsets_examined))
        }
        AttackSpec::BruteForce { budget } => {
            let out = brute_force_attack(g, params.k, *budget, wall);
            let examined = out.subsets_examined();
            Ok((out.found(), examined))
        }
    }
}

/// Runs every registered attack against the instance with derived child
/// seeds. Returns the largest valid clique over all reports (ties to the
/// earlier registry position) and the per-attack reports in registry order.
pub fn run_all(
    instance: &PlantedInstance,
    registry: &[AttackSpec],
    rng: &RngState,
    per_attack_timeout: Option<Duration>,
) -> Result<(VertexSet, Vec<AttackReport>)> {
    if registry.is_empty() {
        return Err(Error::InvalidParams("attack registry is empty".into()));
    }
    // labels are name-based (stable under registry growth); repeated names
    // get an occurrence suffix so their streams stay distinct
    let mut seen = std::collections::HashMap::new();
    let labels: Vec<String> = registry
        .iter()
        .map(|spec| {
            let occ = seen.entry(spec.name()).or_insert(0usize);
            let label = if *occ == 0 {
                spec.name().to_string()
            } else {
                format!("{}#{}", spec.name(), occ)
            };
            *occ += 1;
            label
        })
        .collect();

    let reports: Vec<AttackReport> = par::map_indexed(registry.len(), |i| {
        let spec = &registry[i];
        let child = rng.child(&format!("attack:{}", labels[i]));
        let seed = child.seed();
        let wall = match per_attack_timeout {
            Some(limit) => Budget::with_timeout(limit),
            None => Budget::unlimited(),
        };
        let started = Instant::now();
        let outcome = run_attack(
            &instance.public_graph,
            &instance.params,
            spec,
            &child,
            &wall,
        );
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        let (candidate, steps) = outcome.unwrap_or((None, 0));
        let is_valid_clique = match &candidate {
            Some(c) => instance.public_graph.is_clique(c).unwrap_or(false),
            None => false,
        };
        let size = candidate.as_ref().map_or(0, VertexSet::len);
        let inverted = is_valid_clique && size >= instance.params.k;
        let matched_hidden = inverted && candidate.as_ref() == Some(&instance.hidden_clique);
        AttackReport {
            attack: labels[i].clone(),
            candidate,
            is_valid_clique,
            size,
            inverted,
            matched_hidden,
            steps,
            seed,
            wall_ms,
        }
    });

    let mut best = VertexSet::empty();
    for report in &reports {
        if report.is_valid_clique {
            if let Some(c) = &report.candidate {
                if c.len() > best.len() {
                    best = c.clone();
                }
            }
        }
    }
    let max_valid = reports
        .iter()
        .filter(|r| r.is_valid_clique)
        .map(|r| r.size)
        .max()
        .unwrap_or(0);
    assert_eq!(
        best.len(),
        max_valid,
        "best must be the largest valid clique"
    );
    Ok((best, reports))
}

/// Aggregate statistics for one attack across an experiment.
#[derive(Clone, Debug, Serialize)]
pub struct AttackStats {
    pub attack: String,
    pub inversions: usize,
    pub success_rate: f64,
    pub matched_hidden: usize,
    pub matched_rate: f64,
    pub mean_size: f64,
    pub min_size: usize,
    pub max_size: usize,
}

/// Experiment-level summary. Deliberately timing-free: identical root seeds
/// produce byte-identical serializations.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub params: PlantParams,
    pub epsilon: Option<f64>,
    pub standard_range: bool,
    pub trials: usize,
    pub attacks: Vec<AttackStats>,
    pub best_attack: String,
}

/// Generates `trials` instances with derived seeds, runs the registry on
/// each, and aggregates per-attack rates. Deterministic given the root seed.
pub fn run_experiment(
    params: &PlantParams,
    trials: usize,
    registry: &[AttackSpec],
    rng: &RngState,
    per_attack_timeout: Option<Duration>,
) -> Result<(ExperimentSummary, Vec<Vec<AttackReport>>)> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be >= 1".into()));
    }
    params.validate()?;
    let per_trial: Vec<Result<Vec<AttackReport>>> = par::map_indexed(trials, |t| {
        let trial_rng = rng.child_indexed("trial", t as u64);
        let instance = owf_evaluate(params, &trial_rng)?;
        let (_, reports) = run_all(&instance, registry, &trial_rng, per_attack_timeout)?;
        Ok(reports)
    });
    let mut all_reports = Vec::with_capacity(trials);
    for r in per_trial {
        all_reports.push(r?);
    }

    let mut attacks = Vec::with_capacity(registry.len());
    for i in 0..registry.len() {
        let rows: Vec<&AttackReport> = all_reports.iter().map(|tr| &tr[i]).collect();
        let inversions = rows.iter().filter(|r| r.inverted).count();
        let matched = rows.iter().filter(|r| r.matched_hidden).count();
        let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        attacks.push(AttackStats {
            attack: rows[0].attack.clone(),
            inversions,
            success_rate: inversions as f64 / trials as f64,
            matched_hidden: matched,
            matched_rate: matched as f64 / trials as f64,
            mean_size: sizes.iter().sum::<usize>() as f64 / trials as f64,
            min_size: sizes.iter().copied().min().unwrap_or(0),
            max_size: sizes.iter().copied().max().unwrap_or(0),
        });
    }
    let best_attack = attacks
        .iter()
        .max_by(|a, b| {
            a.success_rate
                .partial_cmp(&b.success_rate)
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|a| a.attack.clone())
        .unwrap_or_default();
    let summary = ExperimentSummary {
        params: params.clone(),
        epsilon: params.epsilon(),
        standard_range: params.in_standard_range(),
        trials,
        attacks,
        best_attack,
    };
    Ok((summary, all_reports))
}

/// Outcome of the coin-flip distinguishing game: half the trials carry a
/// plant, half do not; the distinguisher guesses "planted" whenever some
/// attack produced a valid clique of size >= k. Both raw rates are reported.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguishSummary {
    pub params: PlantParams,
    pub trials: usize,
    pub planted_trials: usize,
    pub unplanted_trials: usize,
    pub true_positive_rate: f64,
    pub false_positive_rate: f64,
    pub advantage: f64,
}

pub fn run_distinguishing_experiment(
    params: &PlantParams,
    trials: usize,
    registry: &[AttackSpec],
    rng: &RngState,
    per_attack_timeout: Option<Duration>,
) -> Result<DistinguishSummary> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be >= 1".into()));
    }
    params.validate()?;
    let unplanted = PlantParams::new(params.n, params.p, 0)?;
    let outcomes: Vec<Result<(bool, bool)>> = par::map_indexed(trials, |t| {
        let trial_rng = rng.child_indexed("distinguish-trial", t as u64);
        let planted = trial_rng.child("coin").next_bernoulli(0.5)?;
        let gen_params = if planted { params } else { &unplanted };
        let instance = owf_evaluate(gen_params, &trial_rng)?;
        let (best, _) = run_all(&instance, registry, &trial_rng, per_attack_timeout)?;
        let guess_planted = best.len() >= params.k;
        Ok((planted, guess_planted))
    });
    let mut planted_trials = 0;
    let mut tp = 0;
    let mut fp = 0;
    for o in outcomes {
        let (planted, guess) = o?;
        if planted {
            planted_trials += 1;
            if guess {
                tp += 1;
            }
        } else if guess {
            fp += 1;
        }
    }
    let unplanted_trials = trials - planted_trials;
    let tpr = if planted_trials > 0 {
        tp as f64 / planted_trials as f64
    } else {
        0.0
    };
    let fpr = if unplanted_trials > 0 {
        fp as f64 / unplanted_trials as f64
    } else {
        0.0
    };
    Ok(DistinguishSummary {
        params: params.clone(),
        trials,
        planted_trials,
        unplanted_trials,
        true_positive_rate: tpr,
        false_positive_rate: fpr,
        advantage: tpr - fpr,
    })
}
