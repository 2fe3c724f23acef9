//! Sampling hidden-variable graphs: seeded weight draws (extremal
//! three-point or truncated power law), block-wise edge realization, and the
//! conditional expected subgraph count given a weight vector.
//!
//! Everything stochastic takes an explicit seed and uses ChaCha8 streams, so
//! identical seeds yield identical graphs regardless of scheduling.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::ambiguity::{PowerLawParams, ThreePointDistribution};
use crate::error::{Error, Result};
use crate::kernels::{eval_f, Kernel};
use crate::patterns::{automorphism_count, Pattern};

/// Where a weight vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSource {
    ThreePoint,
    PowerLaw,
    External,
}

#[derive(Debug, Clone)]
pub struct WeightVector {
    pub weights: Vec<f64>,
    pub source: WeightSource,
}

/// An undirected simple graph held as sorted per-vertex neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Build from an edge iterator; duplicate edges and self-loops must have
    /// been filtered by the caller.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            debug_assert!(u != v && (u as usize) < n && (v as usize) < n);
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            edge_count += 1;
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            debug_assert!(nbrs.windows(2).all(|w| w[0] != w[1]));
        }
        Graph { adj, edge_count }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Edges with u < v, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter().filter(move |&&v| (u as u32) < v).map(move |&v| (u as u32, v))
        })
    }

    /// Grow to `n` vertices by appending isolated ones. Edge-list files only
    /// carry vertices with at least one edge, so a graph read back from disk
    /// needs this to recover its true size (the gen sidecar records it).
    pub fn padded_to(mut self, n: usize) -> Graph {
        if n > self.adj.len() {
            self.adj.resize(n, Vec::new());
        }
        self
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// n independent draws from the three-point distribution.
pub fn sample_weights_three_point(
    dist: &ThreePointDistribution,
    n: usize,
    seed: u64,
) -> WeightVector {
    let (a, mu, hc) = dist.support;
    let (pa, pm, _) = dist.probs;
    let mut rng = stream_rng(seed, 0);
    let weights = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < pa {
                a
            } else if u < pa + pm {
                mu
            } else {
                hc
            }
        })
        .collect();
    WeightVector { weights, source: WeightSource::ThreePoint }
}

/// n independent draws from the truncated power law, by inverse transform:
/// h = ((1-u) h_min^{1-tau} + u h_c^{1-tau})^{1/(1-tau)}.
pub fn sample_weights_powerlaw(pl: &PowerLawParams, n: usize, seed: u64) -> WeightVector {
    let mut rng = stream_rng(seed, 0);
    let e = 1.0 - pl.tau;
    let (lo, hi) = (pl.h_min.powf(e), pl.h_c.powf(e));
    let weights = (0..n)
        .map(|_| {
            if pl.h_c == pl.h_min {
                return pl.h_min;
            }
            let u: f64 = rng.gen();
            ((1.0 - u) * lo + u * hi).powf(1.0 / e)
        })
        .collect();
    WeightVector { weights, source: WeightSource::PowerLaw }
}

const BLOCKWISE_MAX_CLASSES: usize = 16;

/// Exact-equality weight classes: distinct values with member lists, or None
/// as soon as more than [`BLOCKWISE_MAX_CLASSES`] distinct values turn up
/// (the continuous regime, where classes are useless).
fn weight_classes(weights: &[f64]) -> Option<(Vec<f64>, Vec<Vec<u32>>)> {
    let mut values: Vec<f64> = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        match values.iter().position(|&v| v.to_bits() == w.to_bits()) {
            Some(c) => members[c].push(i as u32),
            None => {
                if values.len() == BLOCKWISE_MAX_CLASSES {
                    return None;
                }
                values.push(w);
                members.push(vec![i as u32]);
            }
        }
    }
    Some((values, members))
}

/// Realize the hidden-variable graph: every unordered pair {i, j} is present
/// independently with probability f(h_i h_j / h_s²), arguments above 1
/// clamped to 1. With at most 16 distinct weight values generation runs
/// block-wise (Binomial edge count per block pair, placed uniformly without
/// replacement, one ChaCha stream per block pair); otherwise pairwise
/// Bernoulli. Both paths are equal in distribution.
pub fn realize_graph(w: &WeightVector, kernel: &Kernel, h_s: f64, seed: u64) -> Result<Graph> {
    let n = w.weights.len();
    if let Some((values, members)) = weight_classes(&w.weights) {
        let q = values.len();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut stream = 1u64; // stream 0 is reserved for weight sampling
        for ci in 0..q {
            for cj in ci..q {
                let u = (values[ci] * values[cj] / (h_s * h_s)).min(1.0);
                let p = eval_f(kernel, u)?;
                let mut rng = stream_rng(seed, stream);
                stream += 1;
                sample_block(&members[ci], &members[cj], ci == cj, p, &mut rng, &mut edges);
            }
        }
        Ok(Graph::from_edges(n, edges))
    } else {
        let mut rng = stream_rng(seed, 1);
        let hs2 = h_s * h_s;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let u = (w.weights[i] * w.weights[j] / hs2).min(1.0);
                let p = eval_f(kernel, u)?;
                if p > 0.0 && rng.gen::<f64>() < p {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Ok(Graph::from_edges(n, edges))
    }
}

/// Draw Binomial(m, p) edges for one block pair and place them uniformly
/// without replacement, by rejection on the pair index space.
fn sample_block(
    left: &[u32],
    right: &[u32],
    diagonal: bool,
    p: f64,
    rng: &mut ChaCha8Rng,
    edges: &mut Vec<(u32, u32)>,
) {
    let m = if diagonal {
        left.len() * left.len().saturating_sub(1) / 2
    } else {
        left.len() * right.len()
    };
    if m == 0 || p <= 0.0 {
        return;
    }
    let count = if p >= 1.0 {
        m as u64
    } else {
        Binomial::new(m as u64, p).expect("valid binomial").sample(rng)
    };
    if count as usize == m {
        if diagonal {
            for a in 0..left.len() {
                for b in (a + 1)..left.len() {
                    edges.push((left[a], left[b]));
                }
            }
        } else {
            for &u in left {
                for &v in right {
                    edges.push((u, v));
                }
            }
        }
        return;
    }
    let mut chosen: HashSet<u64> = HashSet::with_capacity(count as usize);
    while (chosen.len() as u64) < count {
        let idx = rng.gen_range(0..m as u64);
        if chosen.insert(idx) {
            let (u, v) = if diagonal {
                unrank_triangular(idx, left)
            } else {
                (left[(idx as usize) / right.len()], right[(idx as usize) % right.len()])
            };
            edges.push((u, v));
        }
    }
}

// pair index -> (a, b) with a < b within one class
fn unrank_triangular(idx: u64, members: &[u32]) -> (u32, u32) {
    let mut b = ((1.0 + (1.0 + 8.0 * idx as f64).sqrt()) / 2.0) as u64;
    while b * (b - 1) / 2 > idx {
        b -= 1;
    }
    while (b + 1) * b / 2 <= idx {
        b += 1;
    }
    let a = idx - b * (b - 1) / 2;
    (members[a as usize], members[b as usize])
}

const CONDITIONAL_MAX_N: usize = 200;
const CONDITIONAL_MAX_K: usize = 4;

/// Conditional expected number of copies of `pattern` given the weights:
/// (1/Aut(H)) Σ over ordered tuples of distinct vertices of the product of
/// f(h_u h_v / h_s²) over pattern edges. With at most 16 distinct weight
/// values the sum collapses to classes with falling-factorial multiplicities;
/// otherwise it runs over raw tuples and is cost-capped at n ≤ 200, k ≤ 4.
pub fn conditional_expected_count(
    pattern: &Pattern,
    w: &WeightVector,
    kernel: &Kernel,
    h_s: f64,
) -> Result<f64> {
    let k = pattern.k();
    let aut = automorphism_count(pattern) as f64;
    let edges = pattern.edges();

    if let Some((values, members)) = weight_classes(&w.weights) {
        let q = values.len();
        if (q as f64).powi(k as i32) > 2e7 {
            return Err(Error::TooLarge(format!("{q}^{k} weight-class assignments")));
        }
        let mut pair_f = vec![vec![0.0f64; q]; q];
        for i in 0..q {
            for j in 0..q {
                let u = (values[i] * values[j] / (h_s * h_s)).min(1.0);
                pair_f[i][j] = eval_f(kernel, u)?;
            }
        }
        let sizes: Vec<usize> = members.iter().map(Vec::len).collect();
        let mut digits = vec![0usize; k];
        let mut total = 0.0f64;
        loop {
            // ordered tuples of distinct vertices realizing this class assignment
            let mut mult = 1.0f64;
            let mut used = [0usize; BLOCKWISE_MAX_CLASSES + 1];
            for &c in &digits {
                mult *= (sizes[c] as f64) - used[c] as f64;
                used[c] += 1;
            }
            if mult > 0.0 {
                let mut term = mult;
                for &(s, t) in edges {
                    term *= pair_f[digits[s]][digits[t]];
                }
                total += term;
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return Ok(total / aut);
                }
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    let n = w.weights.len();
    if n > CONDITIONAL_MAX_N || k > CONDITIONAL_MAX_K {
        return Err(Error::TooLarge(format!(
            "{n} vertices with more than {BLOCKWISE_MAX_CLASSES} distinct weights and pattern \
             size {k} (limits: n <= {CONDITIONAL_MAX_N}, k <= {CONDITIONAL_MAX_K})"
        )));
    }
    let hs2 = h_s * h_s;
    let mut assignment = vec![usize::MAX; k];
    let mut used = vec![false; n];
    let mut total = 0.0f64;
    tuple_sum(edges, &w.weights, hs2, kernel, 0, &mut assignment, &mut used, 1.0, &mut total)?;
    Ok(total / aut)
}

#[allow(clippy::too_many_arguments)]
fn tuple_sum(
    pattern_edges: &[(usize, usize)],
    weights: &[f64],
    hs2: f64,
    kernel: &Kernel,
    slot: usize,
    assignment: &mut [usize],
    used: &mut [bool],
    partial: f64,
    total: &mut f64,
) -> Result<()> {
    if slot == assignment.len() {
        *total += partial;
        return Ok(());
    }
    for v in 0..weights.len() {
        if used[v] {
            continue;
        }
        let mut term = partial;
        for &(s, t) in pattern_edges {
            let other = if s == slot && t < slot {
                t
            } else if t == slot && s < slot {
                s
            } else {
                continue;
            };
            let u = (weights[v] * weights[assignment[other]] / hs2).min(1.0);
            term *= eval_f(kernel, u)?;
        }
        if term == 0.0 {
            continue;
        }
        assignment[slot] = v;
        used[v] = true;
        tuple_sum(pattern_edges, weights, hs2, kernel, slot + 1, assignment, used, term, total)?;
        used[v] = false;
        assignment[slot] = usize::MAX;
    }
    Ok(())
}

/// Write the edge list in the text format `count` and `stats` ingest:
/// one `u v` pair per line.
pub fn write_edge_list(path: &Path, g: &Graph) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

/// Write the key=value sidecar next to a generated edge list.
pub fn write_metadata(path: &Path, entries: &[(&str, String)]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for (key, value) in entries {
        writeln!(out, "{key}={value}")?;
    }
    out.flush()?;
    Ok(())
}
