//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers once its assertions hold. Run with
//! `cargo test -p cliquelab-core --test acceptance -- --nocapture` to see
//! every line. All tolerances are fixed here, not tuned at runtime.

use std::time::Instant;

use num_bigint::BigUint;

use cliquelab_core::advisor::{advise, storage_estimate, AdvisorConfig, SecurityLevel};
use cliquelab_core::attacks::dekel::{dekel_attack, DekelConfig};
use cliquelab_core::attacks::feige::{
    feige_attack, is_poor_certificate, size_guarantee, FeigeConfig,
};
use cliquelab_core::attacks::greedy::{greedy_attack, GreedyConfig};
use cliquelab_core::attacks::metropolis::{
    enumerate_cliques, kernel_probability, occupancy_histogram, stationary_weight, MetropolisConfig,
};
use cliquelab_core::attacks::spectral::{spectral_base_attack, top_two_eigenpairs, SpectralConfig};
use cliquelab_core::budget::Budget;
use cliquelab_core::harness::{invert_check, run_all, run_experiment, AttackSpec};
use cliquelab_core::instance::{
    natural_clique_size_experiment, owf_evaluate, write_instance, PlantParams,
};
use cliquelab_core::oracle::count_steps_estimate;
use cliquelab_core::par;
use cliquelab_core::{RngState, VertexSet};

fn pass(id: u32, name: &str, detail: String, started: Instant) {
    println!(
        "acceptance {id} ({name}): PASS — {detail} [{:.1}s]",
        started.elapsed().as_secs_f64()
    );
}

/// Natural clique size: the criterion asks the exact maximum cliques of 30
/// unplanted G(128, 1/2) samples to average 2 log2(128) = 14 within +/- 2.
///
/// KNOWN RED. The leading-order term overshoots at this scale: the maximum
/// clique of G(n, 1/2) concentrates near
/// 2 log2 n - 2 log2 log2 n + 2 log2(e/2) + 1, which is ~10.3 at n = 128,
/// outside [12, 16] for any correct solver. The exact solver is
/// cross-verified below against an independent lexicographic subset scan on
/// one sample before the criterion is asserted as stated.
#[test]
fn criterion_1_natural_clique_size() {
    let t0 = Instant::now();
    let stats = natural_clique_size_experiment(128, 0.5, 30, &RngState::new(1001)).unwrap();

    // independent verification of the oracle itself on the first sample: a
    // pruned lexicographic scan must find a clique at size omega and prove
    // none exists at omega + 1
    let mut rng = RngState::new(1001).child_indexed("natural-trial", 0);
    let g0 = cliquelab_core::instance::sample_gnp(128, 0.5, &mut rng).unwrap();
    let omega = stats.sizes[0];
    let hit =
        cliquelab_core::oracle::brute_force_attack(&g0, omega, u64::MAX, &Budget::unlimited());
    assert!(
        hit.found().is_some(),
        "scan disagrees with the solver at size {omega}"
    );
    let miss =
        cliquelab_core::oracle::brute_force_attack(&g0, omega + 1, u64::MAX, &Budget::unlimited());
    assert!(
        miss.found().is_none(),
        "scan found a clique larger than the solver's {omega}"
    );

    let verdict = if (stats.mean - 14.0).abs() <= 2.0 {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "acceptance 1 (natural clique size): {verdict} — mean {:.2} over 30 samples \
         (min {}, max {}); criterion window [12, 16]; second-order theory predicts ~10.3 \
         [{:.1}s]",
        stats.mean,
        stats.min,
        stats.max,
        t0.elapsed().as_secs_f64()
    );
    assert!(
        (stats.mean - 14.0).abs() <= 2.0,
        "mean natural clique size {} outside 14 +/- 2 (oracle cross-verified; \
         the criterion window contradicts the known clique-number asymptotics at n = 128; \
         see the decisions ledger)",
        stats.mean
    );
}

/// Greedy expectation: mean clique size over 200 seeds of G(1024, 1/2) lies
/// in [8, 12] (log2 n = 10) with sample standard deviation at most 2.
#[test]
fn criterion_2_greedy_expectation() {
    let t0 = Instant::now();
    let sizes: Vec<usize> = par::map_indexed(200, |s| {
        let root = RngState::new(2000 + s as u64);
        let mut graph_rng = root.child("gnp");
        let g = cliquelab_core::instance::sample_gnp(1024, 0.5, &mut graph_rng).unwrap();
        greedy_attack(&g, &GreedyConfig::default(), &root.child("greedy"))
            .unwrap()
            .len()
    });
    let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
    let var = sizes
        .iter()
        .map(|&s| (s as f64 - mean).powi(2))
        .sum::<f64>()
        / (sizes.len() - 1) as f64;
    let sd = var.sqrt();
    assert!((8.0..=12.0).contains(&mean), "mean {mean} outside [8, 12]");
    assert!(sd <= 2.0, "standard deviation {sd} above 2");
    pass(
        2,
        "greedy expectation",
        format!("mean {mean:.2}, sd {sd:.2} over 200 seeds"),
        t0,
    );
}

/// Metropolis stationary law: occupancy on the single edge within total
/// variation 0.02 of (1,2,2,4)/9 after 1e6 steps at temperature 2, and exact
/// detailed balance on 20 random graphs with n <= 12.
#[test]
fn criterion_3_metropolis_stationary_law() {
    let t0 = Instant::now();
    let g = cliquelab_core::Graph::from_edges(2, &[(0, 1)]).unwrap();
    let cfg = MetropolisConfig::new(2.0, 1_000_000);
    let hist = occupancy_histogram(&g, &cfg, &RngState::new(3003)).unwrap();
    let total: u64 = hist.iter().map(|(_, c)| c).sum();
    let expected = [
        (VertexSet::empty(), 1.0 / 9.0),
        (VertexSet::singleton(0), 2.0 / 9.0),
        (VertexSet::singleton(1), 2.0 / 9.0),
        (VertexSet::new(vec![0, 1]), 4.0 / 9.0),
    ];
    let mut tv = 0.0;
    for (state, pi) in &expected {
        let emp = hist
            .iter()
            .find(|(s, _)| s == state)
            .map(|(_, c)| *c as f64 / total as f64)
            .unwrap_or(0.0);
        tv += (emp - pi).abs();
    }
    tv /= 2.0;
    assert!(tv <= 0.02, "total variation {tv} above 0.02");

    // detailed balance, symbolically, over random small graphs
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let temperature = BigRational::new(BigInt::from(2), BigInt::from(1));
    let mut pairs_checked = 0u64;
    for seed in 0..20u64 {
        let mut rng = RngState::new(3100 + seed);
        let n = 6 + (seed as usize % 7);
        let g = cliquelab_core::instance::sample_gnp(n, 0.5, &mut rng).unwrap();
        let cliques = enumerate_cliques(&g).unwrap();
        for from in &cliques {
            for to in &cliques {
                let d = from.len().abs_diff(to.len());
                if d != 1 || !(from.is_subset_of(to) || to.is_subset_of(from)) {
                    continue;
                }
                let fwd = stationary_weight(from, &temperature)
                    * kernel_probability(&g, from, to, &temperature).unwrap();
                let back = stationary_weight(to, &temperature)
                    * kernel_probability(&g, to, from, &temperature).unwrap();
                assert_eq!(fwd, back, "detailed balance broken: {from:?} <-> {to:?}");
                pairs_checked += 1;
            }
        }
    }
    pass(
        3,
        "metropolis stationary law",
        format!("total variation {tv:.4}; detailed balance exact on {pairs_checked} pairs"),
        t0,
    );
}

/// Spectral recovery: exact hidden-clique recovery rate >= 0.9 over 100
/// seeds at (n=400, k=200) and (n=900, k=300); every eigensolve meets the
/// 1e-8 residual bound; n=64 values match a dense reference within 1e-6.
#[test]
fn criterion_4_spectral_recovery() {
    let t0 = Instant::now();
    let mut rates = Vec::new();
    for &(n, k) in &[(400usize, 200usize), (900, 300)] {
        let params = PlantParams::new(n, 0.5, k).unwrap();
        let results: Vec<(bool, f64, f64)> = par::map_indexed(100, |s| {
            let root = RngState::new(4000 + s as u64);
            let inst = owf_evaluate(&params, &root).unwrap();
            let cfg = SpectralConfig::new(k);
            let q = spectral_base_attack(&inst.public_graph, &cfg).unwrap();
            let recovered = q == inst.hidden_clique;
            // residual check on the same instance's eigenpairs
            let (l1, l2) = top_two_eigenpairs(&inst.public_graph, &cfg).unwrap();
            let r1 = residual(&inst.public_graph, l1.value, &l1.vector);
            let r2 = residual(&inst.public_graph, l2.value, &l2.vector);
            let b1 = r1 / l1.value.abs().max(1.0);
            let b2 = r2 / l2.value.abs().max(1.0);
            (recovered, b1, b2)
        });
        let rate = results.iter().filter(|r| r.0).count() as f64 / 100.0;
        let worst = results.iter().map(|r| r.1.max(r.2)).fold(0.0f64, f64::max);
        assert!(rate >= 0.9, "recovery rate {rate} at n={n}, k={k}");
        assert!(
            worst <= 1e-8,
            "worst relative residual {worst:.3e} at n={n}"
        );
        rates.push((n, rate, worst));
    }

    // n=64 eigenvalues against a dense symmetric eigendecomposition
    let mut rng = RngState::new(4640);
    let g64 = cliquelab_core::instance::sample_gnp(64, 0.5, &mut rng).unwrap();
    let mut cfg = SpectralConfig::new(10);
    cfg.eig_max_iters = Some(1_000_000);
    let (l1, l2) = top_two_eigenpairs(&g64, &cfg).unwrap();
    let mut dense = nalgebra::DMatrix::<f64>::zeros(64, 64);
    for (u, v) in g64.edges() {
        dense[(u, v)] = 1.0;
        dense[(v, u)] = 1.0;
    }
    let mut eigs: Vec<f64> = dense
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    assert!(
        (l1.value - eigs[0]).abs() <= 1e-6,
        "{} vs {}",
        l1.value,
        eigs[0]
    );
    assert!(
        (l2.value - eigs[1]).abs() <= 1e-6,
        "{} vs {}",
        l2.value,
        eigs[1]
    );

    pass(
        4,
        "spectral recovery",
        format!(
            "rates {:.2} (n=400) / {:.2} (n=900); worst relative residual {:.1e}; \
             n=64 dense check ok",
            rates[0].1,
            rates[1].1,
            rates[0].2.max(rates[1].2)
        ),
        t0,
    );
}

fn residual(g: &cliquelab_core::Graph, value: f64, vector: &[f64]) -> f64 {
    let mut r = 0.0;
    for u in 0..g.n() {
        let mut acc = 0.0;
        for v in g.neighbors(u) {
            acc += vector[v];
        }
        r += (acc - value * vector[u]).powi(2);
    }
    r.sqrt()
}

/// Three-phase recovery: rate >= 0.8 over 50 seeds at n=10000, p=1/2,
/// k=300 (c=3); the general-p variant at p=0.7 is reported, with every
/// declared success verified as a clique.
#[test]
fn criterion_5_dekel_recovery() {
    let t0 = Instant::now();
    let params = PlantParams::new(10_000, 0.5, 300).unwrap();
    let recovered: Vec<bool> = par::map_indexed(50, |s| {
        let root = RngState::new(5000 + s as u64);
        let inst = owf_evaluate(&params, &root).unwrap();
        let cfg = DekelConfig::for_instance(10_000, 0.5, 300);
        let out = dekel_attack(
            &inst.public_graph,
            &cfg,
            &root.child("attack"),
            &Budget::unlimited(),
        )
        .unwrap();
        out.success && out.candidate == inst.hidden_clique
    });
    let rate = recovered.iter().filter(|&&r| r).count() as f64 / 50.0;
    assert!(rate >= 0.8, "recovery rate {rate} below 0.8");

    // general p: no reference target exists; verify the success property and
    // log the observed rate
    let params7 = PlantParams::new(10_000, 0.7, 300).unwrap();
    let outcomes: Vec<(bool, bool)> = par::map_indexed(12, |s| {
        let root = RngState::new(5700 + s as u64);
        let inst = owf_evaluate(&params7, &root).unwrap();
        let cfg = DekelConfig::for_instance(10_000, 0.7, 300);
        let out = dekel_attack(
            &inst.public_graph,
            &cfg,
            &root.child("attack"),
            &Budget::unlimited(),
        )
        .unwrap();
        let clique_ok = !out.success || inst.public_graph.is_clique(&out.candidate).unwrap();
        (
            out.success && out.candidate == inst.hidden_clique,
            clique_ok,
        )
    });
    assert!(
        outcomes.iter().all(|o| o.1),
        "a declared success was not a clique"
    );
    let rate7 = outcomes.iter().filter(|o| o.0).count() as f64 / 12.0;

    pass(
        5,
        "dekel recovery",
        format!("rate {rate:.2} at p=0.5 (50 seeds); p=0.7 rate {rate7:.2} (12 seeds, logged)"),
        t0,
    );
}

/// Poor certificates: over 20 seeded runs at n <= 150, every emitted
/// certificate is oracle-confirmed poor, every returned clique is a clique,
/// and the formal size bound holds on every run whose density premise
/// (max clique >= n / density_ratio) is true. The guarantee is conditional
/// on that premise, so half the runs plant a clique making it true by
/// construction, while the other half over-claim density to force
/// certificates out.
#[test]
fn criterion_6_feige_certificates() {
    let t0 = Instant::now();
    let mut certs_total = 0usize;
    let mut bound_checked = 0usize;
    for seed in 0..20u64 {
        let n = 120 + 10 * (seed as usize % 4);
        let mut rng = RngState::new(6000 + seed);
        let g = cliquelab_core::instance::sample_gnp(n, 0.5, &mut rng).unwrap();
        let (g, density_ratio) = if seed % 2 == 0 {
            // over-claimed density: extensions cannot keep up, working sets
            // get certified poor
            (g, 1 + (seed as usize / 2 % 3))
        } else {
            // make the premise true by construction
            let density_ratio = 4 + (seed as usize / 2 % 3);
            let planted = rng.sample_subset(n, n.div_ceil(density_ratio)).unwrap();
            (
                cliquelab_core::instance::plant_clique(&g, &planted).unwrap(),
                density_ratio,
            )
        };
        let cfg = FeigeConfig {
            t: 2,
            density_ratio,
        };
        let out = feige_attack(&g, &cfg, &Budget::unlimited()).unwrap();
        assert!(
            g.is_clique(&out.clique).unwrap(),
            "seed {seed}: result not a clique"
        );
        let premise_holds = cliquelab_core::oracle::max_clique_size(&g) * density_ratio >= n;
        if premise_holds {
            assert!(
                out.clique.len() as f64 >= size_guarantee(n, &cfg),
                "seed {seed}: size {} below the bound",
                out.clique.len()
            );
            bound_checked += 1;
        }
        for cert in &out.certificates {
            let (sub, _) = g.induced_subgraph(cert).unwrap();
            assert!(
                is_poor_certificate(&sub, density_ratio),
                "seed {seed}: certificate of {} vertices refuted by the oracle",
                cert.len()
            );
        }
        certs_total += out.certificates.len();
    }
    assert!(certs_total > 0, "no certificates were exercised");
    assert!(
        bound_checked >= 10,
        "the size bound was exercised on only {bound_checked} runs"
    );
    pass(
        6,
        "feige certificates",
        format!(
            "{certs_total} certificates oracle-confirmed; size bound held on all \
             {bound_checked} premise-true runs"
        ),
        t0,
    );
}

/// Harness correctness: on 50 mixed instances the reported best equals the
/// maximum over valid per-attack reports, and the hidden clique always
/// passes the inversion check.
#[test]
fn criterion_7_harness_correctness() {
    let t0 = Instant::now();
    let registry = vec![
        AttackSpec::Greedy { restarts: 2 },
        AttackSpec::Metropolis {
            temperature: 2.0,
            max_steps: Some(200_000),
        },
        AttackSpec::Feige { t: 2 },
        AttackSpec::BruteForce { budget: 200_000 },
    ];
    let checked: Vec<usize> = par::map_indexed(50, |i| {
        let n = 40 + (i % 8) * 20;
        let p = [0.4, 0.5, 0.6][i % 3];
        let k = 4 + (i % 10);
        let params = PlantParams::new(n, p, k).unwrap();
        let root = RngState::new(7000 + i as u64);
        let inst = owf_evaluate(&params, &root).unwrap();
        assert!(invert_check(&inst, &inst.hidden_clique).unwrap());
        let (best, reports) = run_all(&inst, &registry, &root.child("attacks"), None).unwrap();
        let max_valid = reports
            .iter()
            .filter(|r| r.is_valid_clique)
            .map(|r| r.size)
            .max()
            .unwrap_or(0);
        assert_eq!(
            best.len(),
            max_valid,
            "instance {i}: best != max over valid reports"
        );
        for r in &reports {
            if r.inverted {
                assert!(r.is_valid_clique && r.size >= k);
            }
            if r.matched_hidden {
                assert!(r.inverted);
            }
        }
        1
    });
    pass(
        7,
        "harness correctness",
        format!("{} instances, zero violations", checked.len()),
        t0,
    );
}

/// Advisor fidelity: combined row at lambda=256, p=1/2 is exactly 65536;
/// the brute-force row is verified by the exact binomial; the bit-matrix
/// storage estimate at n=65536 exceeds 130 MB.
#[test]
fn criterion_8_advisor_fidelity() {
    let t0 = Instant::now();
    let rows = advise(
        SecurityLevel::new(256).unwrap(),
        0.5,
        &AdvisorConfig::default(),
    )
    .unwrap();
    let combined = rows.last().unwrap();
    assert_eq!(combined.adversary, "ALL");
    assert_eq!(combined.min_n, Some(BigUint::from(65536u32)));

    let work = count_steps_estimate(65536, 32);
    let log2 = work.bits() - 1;
    assert!(log2 >= 256, "log2 C(65536, 32) = {log2} below 256");

    let bytes = storage_estimate(65536);
    assert!(
        bytes > BigUint::from(130_000_000u64),
        "storage {bytes} bytes"
    );

    pass(
        8,
        "advisor fidelity",
        format!("combined n = 65536; log2 C(65536,32) = {log2}; storage {bytes} bytes"),
        t0,
    );
}

/// Determinism: repeating an experiment with the same root seed yields
/// byte-identical structured output (summaries and instance files).
#[test]
fn criterion_9_determinism() {
    let t0 = Instant::now();
    let params = PlantParams::new(120, 0.5, 12).unwrap();
    let registry = vec![
        AttackSpec::Greedy { restarts: 2 },
        AttackSpec::Metropolis {
            temperature: 2.0,
            max_steps: Some(100_000),
        },
        AttackSpec::Spectral {
            subset_budget: 50_000,
        },
        AttackSpec::Dekel {
            alpha: 0.5,
            beta: 1.3,
        },
        AttackSpec::Feige { t: 2 },
        AttackSpec::BruteForce { budget: 100_000 },
    ];
    let (s1, r1) = run_experiment(&params, 8, &registry, &RngState::new(9009), None).unwrap();
    let (s2, r2) = run_experiment(&params, 8, &registry, &RngState::new(9009), None).unwrap();
    let j1 = serde_json::to_string(&s1).unwrap();
    let j2 = serde_json::to_string(&s2).unwrap();
    assert_eq!(j1, j2, "summaries diverged");
    for (a, b) in r1.iter().flatten().zip(r2.iter().flatten()) {
        assert_eq!(a.attack, b.attack);
        assert_eq!(a.candidate, b.candidate);
        assert_eq!(a.size, b.size);
        assert_eq!(a.inverted, b.inverted);
        assert_eq!(a.matched_hidden, b.matched_hidden);
        assert_eq!(a.steps, b.steps);
        assert_eq!(a.seed, b.seed);
    }

    // instance files serialize byte-identically too
    let inst = owf_evaluate(&params, &RngState::new(424242)).unwrap();
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    write_instance(&mut f1, &inst).unwrap();
    write_instance(&mut f2, &inst).unwrap();
    assert_eq!(f1, f2);

    pass(
        9,
        "determinism",
        format!(
            "summary bytes equal ({} chars); reports and instance files identical",
            j1.len()
        ),
        t0,
    );
}
