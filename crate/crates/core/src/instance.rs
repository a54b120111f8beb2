//! Random-graph sampling and planted-clique instance generation.
//!
//! `owf_evaluate` realizes the candidate one-way function: sample
//! `G ~ G(n, p)`, pick a uniform `k`-subset `K`, connect `K` completely and
//! publish the result. The hidden subset is stored next to the public graph
//! (clearly separated) so attacks can be scored without re-deriving ground
//! truth; attacks themselves only ever see the public graph.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::dimacs;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle;
use crate::par;
use crate::rng::RngState;

/// Generation parameters of a planted instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantParams {
    pub n: usize,
    pub p: f64,
    pub k: usize,
}

impl PlantParams {
    pub fn new(n: usize, p: f64, k: usize) -> Result<Self> {
        let params = PlantParams { n, p, k };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidProbability(self.p));
        }
        if self.k > self.n {
            return Err(Error::InvalidParams(format!(
                "clique size {} exceeds vertex count {}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// The epsilon with `k = (1 + epsilon) * log_{1/p}(n)`; `None` when the
    /// base log is undefined or vanishes (n <= 1, or p outside (0, 1)).
    pub fn epsilon(&self) -> Option<f64> {
        let l = log_base_inv_p(self.n, self.p)?;
        Some(self.k as f64 / l - 1.0)
    }

    /// True when `k` lies in `[log_{1/p} n, 2 log_{1/p} n]`, the range the
    /// hardness conjecture speaks about. Values outside are permitted (the
    /// spectral and combinatorial regimes need `k ~ c sqrt(n)`) but reports
    /// label them nonstandard.
    pub fn in_standard_range(&self) -> bool {
        match log_base_inv_p(self.n, self.p) {
            Some(l) => {
                let k = self.k as f64;
                k >= l && k <= 2.0 * l
            }
            None => false,
        }
    }
}

fn log_base_inv_p(n: usize, p: f64) -> Option<f64> {
    if n <= 1 || p <= 0.0 || p >= 1.0 {
        return None;
    }
    // log_{1/p}(n) = ln n / ln(1/p)
    Some((n as f64).ln() / (1.0 / p).ln())
}

/// A sampled instance: the public graph plus the hidden preimage.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub public_graph: Graph,
    pub hidden_clique: VertexSet,
    pub params: PlantParams,
    pub seed: u64,
}

/// Samples `G(n, p)`: every unordered pair is an edge independently with
/// probability `p`. At `p = 1/2` rows are filled a word at a time.
pub fn sample_gnp(n: usize, p: f64, rng: &mut RngState) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.0 {
        return Ok(Graph::edgeless(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut g = Graph::edgeless(n);
    if p == 0.5 {
        // one random bit per pair, drawn 64 pairs at a time
        let mut word = 0u64;
        let mut left = 0u32;
        for u in 0..n {
            for v in (u + 1)..n {
                if left == 0 {
                    word = rng.next_u64();
                    left = 64;
                }
                if word & 1 == 1 {
                    g.set_edge(u, v);
                }
                word >>= 1;
                left -= 1;
            }
        }
    } else {
        // compare one u64 draw per pair against a fixed threshold
        let threshold = (p * 2f64.powi(64)) as u64;
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.next_u64() < threshold {
                    g.set_edge(u, v);
                }
            }
        }
    }
    Ok(g)
}

/// Returns `g` plus every missing edge inside `k_set`. Never removes edges.
pub fn plant_clique(g: &Graph, k_set: &VertexSet) -> Result<Graph> {
    if let Some(v) = k_set.max_vertex() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    let mut out = g.clone();
    let m = k_set.as_slice();
    for (i, &u) in m.iter().enumerate() {
        for &v in &m[i + 1..] {
            out.set_edge(u, v);
        }
    }
    Ok(out)
}

/// Evaluates the one-way function at a fresh input drawn from `rng`'s seed.
///
/// Child streams are derived from the seed alone, so the recorded seed
/// reproduces the instance bit for bit regardless of prior stream use.
pub fn owf_evaluate(params: &PlantParams, rng: &RngState) -> Result<PlantedInstance> {
    params.validate()?;
    let mut graph_rng = rng.child("gnp");
    let g = sample_gnp(params.n, params.p, &mut graph_rng)?;
    let mut subset_rng = rng.child("plant");
    let hidden = subset_rng.sample_subset(params.n, params.k)?;
    let public = plant_clique(&g, &hidden)?;
    Ok(PlantedInstance {
        public_graph: public,
        hidden_clique: hidden,
        params: params.clone(),
        seed: rng.seed(),
    })
}

/// Mean/min/max of the exact maximum-clique size over unplanted samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliqueSizeStats {
    pub trials: usize,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    pub sizes: Vec<usize>,
}

/// Measures the natural (unplanted) maximum clique size of `G(n, p)` with the
/// exact solver. Intended for `n` small enough for the oracle (n <= ~300).
pub fn natural_clique_size_experiment(
    n: usize,
    p: f64,
    trials: usize,
    rng: &RngState,
) -> Result<CliqueSizeStats> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be >= 1".into()));
    }
    let sizes: Vec<usize> = par::map_indexed(trials, |t| {
        let mut r = rng.child_indexed("natural-trial", t as u64);
        let g = sample_gnp(n, p, &mut r).expect("validated p");
        oracle::max_clique_size(&g)
    });
    let mean = sizes.iter().sum::<usize>() as f64 / trials as f64;
    Ok(CliqueSizeStats {
        trials,
        mean,
        min: sizes.iter().copied().min().unwrap_or(0),
        max: sizes.iter().copied().max().unwrap_or(0),
        sizes,
    })
}

// ---------------------------------------------------------------------------
// Instance container file
// ---------------------------------------------------------------------------

/// Metadata record embedded in the instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMetadata {
    #[serde(rename = "format-version")]
    pub format_version: u32,
    pub n: usize,
    pub p: f64,
    pub k: usize,
    pub epsilon: Option<f64>,
    pub seed: u64,
}

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

/// Writes the single-file instance container: a metadata record, a DIMACS
/// graph block, and the hidden-clique vertex list (1-based, like the DIMACS
/// block). Keep the hidden section away from anything handed to attacks.
pub fn write_instance<W: Write>(mut w: W, inst: &PlantedInstance) -> Result<()> {
    let meta = InstanceMetadata {
        format_version: INSTANCE_FORMAT_VERSION,
        n: inst.params.n,
        p: inst.params.p,
        k: inst.params.k,
        epsilon: inst.params.epsilon(),
        seed: inst.seed,
    };
    writeln!(w, "planted-clique-instance {INSTANCE_FORMAT_VERSION}")?;
    writeln!(
        w,
        "metadata {}",
        serde_json::to_string(&meta).expect("plain struct")
    )?;
    writeln!(w, "graph")?;
    dimacs::write_dimacs(&mut w, &inst.public_graph)?;
    writeln!(w, "end-graph")?;
    let members: Vec<String> = inst
        .hidden_clique
        .iter()
        .map(|v| (v + 1).to_string())
        .collect();
    writeln!(w, "hidden-clique {}", members.join(" "))?;
    Ok(())
}

pub fn read_instance<R: BufRead>(reader: R) -> Result<PlantedInstance> {
    let mut lines = reader.lines();
    let header = next_line(&mut lines)?;
    let version: u32 = header
        .strip_prefix("planted-clique-instance ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse("missing instance header".into()))?;
    if version != INSTANCE_FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format-version {version}"
        )));
    }

    let meta_line = next_line(&mut lines)?;
    let meta_json = meta_line
        .strip_prefix("metadata ")
        .ok_or_else(|| Error::Parse("expected metadata record".into()))?;
    let meta: InstanceMetadata =
        serde_json::from_str(meta_json).map_err(|e| Error::Parse(format!("metadata: {e}")))?;

    if next_line(&mut lines)? != "graph" {
        return Err(Error::Parse("expected 'graph' section".into()));
    }
    let mut graph_block = String::new();
    loop {
        let line = next_line(&mut lines)?;
        if line == "end-graph" {
            break;
        }
        graph_block.push_str(&line);
        graph_block.push('\n');
    }
    let graph = dimacs::read_dimacs(std::io::BufReader::new(graph_block.as_bytes()))?;

    let hidden_line = next_line(&mut lines)?;
    let rest = hidden_line
        .strip_prefix("hidden-clique")
        .ok_or_else(|| Error::Parse("expected 'hidden-clique' section".into()))?;
    let mut hidden = Vec::new();
    for tok in rest.split_ascii_whitespace() {
        let v: usize = tok
            .parse()
            .map_err(|e| Error::Parse(format!("hidden-clique vertex: {e}")))?;
        if v == 0 || v > graph.n() {
            return Err(Error::Parse(format!(
                "hidden-clique vertex {v} out of range"
            )));
        }
        hidden.push(v - 1);
    }

    let params = PlantParams::new(meta.n, meta.p, meta.k)?;
    if graph.n() != meta.n {
        return Err(Error::Parse(format!(
            "metadata n = {} but graph has {} vertices",
            meta.n,
            graph.n()
        )));
    }
    let hidden = VertexSet::new(hidden);
    if hidden.len() != meta.k {
        return Err(Error::Parse(format!(
            "hidden clique has {} vertices, metadata k = {}",
            hidden.len(),
            meta.k
        )));
    }
    if !graph.is_clique(&hidden)? {
        return Err(Error::Parse(
            "hidden-clique section is not a clique of the graph".into(),
        ));
    }
    Ok(PlantedInstance {
        public_graph: graph,
        hidden_clique: hidden,
        params,
        seed: meta.seed,
    })
}

fn next_line<I: Iterator<Item = std::io::Result<String>>>(lines: &mut I) -> Result<String> {
    loop {
        match lines.next() {
            Some(line) => {
                let line = line?;
                let trimmed = line.trim();
                if !trimmed.is_empty() {
                    return Ok(trimmed.to_string());
                }
            }
            None => return Err(Error::Parse("unexpected end of instance file".into())),
        }
    }
}
