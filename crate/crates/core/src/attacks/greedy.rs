//! Randomized greedy clique search.
//!
//! Start from a uniformly random vertex, then repeatedly pick a uniformly
//! random vertex among those adjacent to everything chosen so far, until none
//! remain. The result is a maximal clique of expected size close to
//! `log_{1/p} n` on `G(n, p)`, with small variance.

use crate::error::{Error, Result};
use crate::graph::{iter_bits, popcount, Graph, VertexSet};
use crate::rng::RngState;

#[derive(Clone, Debug)]
pub struct GreedyConfig {
    /// Independent runs; the largest clique over all runs is returned.
    pub restarts: usize,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig { restarts: 1 }
    }
}

/// Best-of-restarts greedy search. Each restart draws from its own child
/// stream, so the restart count does not disturb the draws of any other run.
pub fn greedy_attack(g: &Graph, cfg: &GreedyConfig, rng: &RngState) -> Result<VertexSet> {
    if g.n() == 0 {
        return Err(Error::InvalidParams(
            "greedy search needs at least one vertex".into(),
        ));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidParams("restarts must be >= 1".into()));
    }
    let mut best = VertexSet::empty();
    for i in 0..cfg.restarts {
        let mut r = rng.child_indexed("greedy-restart", i as u64);
        let c = single_run(g, &mut r);
        if c.len() > best.len() {
            best = c;
        }
    }
    Ok(best)
}

fn single_run(g: &Graph, rng: &mut RngState) -> VertexSet {
    // candidates = vertices adjacent to every member of the clique so far
    let mut candidates = g.common_neighbor_mask(&[]);
    let mut clique = Vec::new();
    loop {
        let count = popcount(&candidates);
        if count == 0 {
            break;
        }
        let pick = rng.gen_index(count);
        let v = iter_bits(&candidates).nth(pick).expect("pick < count");
        clique.push(v);
        for (c, row) in candidates.iter_mut().zip(g.row(v)) {
            *c &= row;
        }
    }
    VertexSet::new(clique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::sample_gnp;

    #[test]
    fn complete_graph_yields_all_vertices() {
        let g = Graph::complete(7);
        let c = greedy_attack(&g, &GreedyConfig::default(), &RngState::new(1)).unwrap();
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn edgeless_graph_yields_a_singleton() {
        let g = Graph::edgeless(5);
        let c = greedy_attack(&g, &GreedyConfig::default(), &RngState::new(2)).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn empty_graph_is_an_input_error() {
        assert!(greedy_attack(
            &Graph::edgeless(0),
            &GreedyConfig::default(),
            &RngState::new(3)
        )
        .is_err());
    }

    #[test]
    fn output_is_a_maximal_clique() {
        let mut rng = RngState::new(9);
        let g = sample_gnp(120, 0.5, &mut rng).unwrap();
        let c = greedy_attack(&g, &GreedyConfig::default(), &RngState::new(10)).unwrap();
        assert!(g.is_clique(&c).unwrap());
        // maximality: no vertex extends it
        let ext = g.common_neighbors(&c).unwrap();
        assert!(ext.is_empty(), "extension candidates remain: {ext:?}");
    }

    #[test]
    fn restarts_never_shrink_the_result() {
        let mut rng = RngState::new(12);
        let g = sample_gnp(200, 0.5, &mut rng).unwrap();
        let root = RngState::new(55);
        let one = greedy_attack(&g, &GreedyConfig { restarts: 1 }, &root).unwrap();
        let many = greedy_attack(&g, &GreedyConfig { restarts: 8 }, &root).unwrap();
        assert!(many.len() >= one.len());
    }

    #[test]
    fn mean_size_tracks_log2_n() {
        // 200 seeds on G(1024, 1/2): mean in [8, 12] (log2 1024 = 10),
        // sample standard deviation at most 2.
        let sizes: Vec<usize> = crate::par::map_indexed(200, |s| {
            let mut r = RngState::new(7000 + s as u64);
            let g = sample_gnp(1024, 0.5, &mut r).unwrap();
            greedy_attack(&g, &GreedyConfig::default(), &r.child("attack"))
                .unwrap()
                .len()
        });
        let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
        let var = sizes
            .iter()
            .map(|&s| (s as f64 - mean).powi(2))
            .sum::<f64>()
            / (sizes.len() - 1) as f64;
        assert!((8.0..=12.0).contains(&mean), "mean {mean}");
        assert!(var.sqrt() <= 2.0, "std dev {}", var.sqrt());
    }
}
