//! Exact non-induced motif counting for patterns on up to 5 vertices,
//! edge-list ingestion with degree summary statistics, and the
//! observed-count-to-bound ratio pipeline.

use std::io::BufRead;
use std::path::Path;

use crate::bounds::{self, BoundResult};
use crate::error::{Error, Result};
use crate::graphgen::Graph;
use crate::kernels::Kernel;
use crate::patterns::{automorphism_count, Pattern};

/// Degree summary of a concrete graph, population (divide-by-n) forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mu: f64,
    pub mad: f64,
    pub h_max: usize,
    pub sigma2: f64,
}

/// mu = 2m/n, mad = mean |deg - mu|, sigma2 = mean (deg - mu)^2.
pub fn summary_stats(g: &Graph) -> Result<SummaryStats> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mu = 2.0 * g.edge_count() as f64 / n as f64;
    let mad = degrees.iter().map(|&d| (d as f64 - mu).abs()).sum::<f64>() / n as f64;
    let sigma2 = degrees.iter().map(|&d| (d as f64 - mu).powi(2)).sum::<f64>() / n as f64;
    let h_max = degrees.iter().copied().max().unwrap_or(0);
    let stats = SummaryStats { n, mu, mad, h_max, sigma2 };
    // Jensen: mad <= sigma; holds for any empirical distribution
    debug_assert!(stats.mad <= stats.sigma2.sqrt() + 1e-9);
    Ok(stats)
}

/// What was dropped while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Read a whitespace-separated edge list. Lines starting with '#' or '%' are
/// comments. Self-loops and duplicate edges are dropped (counted in the
/// report) and vertex IDs are remapped densely in order of first appearance.
pub fn read_edge_list(path: &Path) -> Result<(Graph, IngestReport)> {
    let file = std::fs::File::open(path)?;
    read_edge_list_from(std::io::BufReader::new(file))
}

pub fn read_edge_list_from<R: BufRead>(reader: R) -> Result<(Graph, IngestReport)> {
    let mut id_map: std::collections::HashMap<u64, u32> = Default::default();
    let mut next_id = 0u32;
    let mut dense = |raw: u64| -> u32 {
        *id_map.entry(raw).or_insert_with(|| {
            let id = next_id;
            next_id += 1;
            id
        })
    };
    let mut seen: std::collections::HashSet<(u32, u32)> = Default::default();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut report = IngestReport::default();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse = |field: Option<&str>| -> Result<u64> {
            field
                .ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: "expected two vertex ids".into(),
                })?
                .parse()
                .map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: "vertex ids must be non-negative integers".into(),
                })
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        let (du, dv) = (dense(u), dense(v));
        let key = (du.min(dv), du.max(dv));
        if seen.insert(key) {
            edges.push(key);
        } else {
            report.duplicates_dropped += 1;
        }
    }
    Ok((Graph::from_edges(next_id as usize, edges), report))
}

/// Exact count of non-induced copies of `pattern` in `g`: injective
/// embeddings requiring the pattern's edges to be present (non-edges
/// unconstrained), divided by Aut(H). Triangles go through sorted-adjacency
/// intersection and K4 through triangle-edge extension; everything else uses
/// backtracking with anchor-intersection candidate generation.
pub fn count_copies(g: &Graph, pattern: &Pattern) -> Result<u64> {
    let k = pattern.k();
    if k > 5 {
        return Err(Error::PatternTooLarge { k });
    }
    if pattern.is_isomorphic(&crate::patterns::triangle()) {
        return Ok(count_triangles(g));
    }
    if pattern.is_isomorphic(&crate::patterns::clique(4)) {
        return Ok(count_k4(g));
    }
    let aut = automorphism_count(pattern);
    let embeddings = count_injective_embeddings(g, pattern);
    assert!(embeddings.is_multiple_of(aut), "embedding count {embeddings} not divisible by {aut}");
    Ok(embeddings / aut)
}

/// Triangles by rank-ordered forward adjacency intersection.
fn count_triangles(g: &Graph) -> u64 {
    let n = g.n();
    let mut rank = vec![0u32; n];
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&v| (g.degree(v as usize), v));
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    // forward lists sorted by rank
    let mut fwd: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut list: Vec<u32> =
            g.neighbors(v).iter().copied().filter(|&u| rank[u as usize] > rank[v]).collect();
        list.sort_unstable_by_key(|&u| rank[u as usize]);
        fwd[v] = list;
    }
    let mut count = 0u64;
    let mut scratch: Vec<u32> = Vec::new();
    for v in 0..n {
        for &u in &fwd[v] {
            scratch.clear();
            intersect_sorted_by(&fwd[v], &fwd[u as usize], &rank, &mut scratch);
            count += scratch.len() as u64;
        }
    }
    count
}

fn intersect_sorted_by(a: &[u32], b: &[u32], rank: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ra, rb) = (rank[a[i] as usize], rank[b[j] as usize]);
        match ra.cmp(&rb) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// K4s by extending each edge with an adjacent pair from its common
/// neighborhood; every K4 is found once per edge, so divide by 6.
fn count_k4(g: &Graph) -> u64 {
    let mut total = 0u64;
    let mut common: Vec<u32> = Vec::new();
    for (u, v) in g.edges() {
        common.clear();
        intersect_sorted(g.neighbors(u as usize), g.neighbors(v as usize), &mut common);
        for i in 0..common.len() {
            for j in (i + 1)..common.len() {
                if g.has_edge(common[i] as usize, common[j] as usize) {
                    total += 1;
                }
            }
        }
    }
    debug_assert!(total.is_multiple_of(6));
    total / 6
}

fn intersect_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Order pattern vertices so every vertex after the first is adjacent to an
/// earlier one, preferring many placed neighbors then high degree.
fn embedding_order(pattern: &Pattern) -> Vec<usize> {
    let k = pattern.k();
    let degree: Vec<usize> = (0..k).map(|v| pattern.degree_of(v)).collect();
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let first = (0..k).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))).unwrap();
    order.push(first);
    while order.len() < k {
        let next = (0..k)
            .filter(|v| !order.contains(v))
            .max_by_key(|&v| {
                let placed_neighbors =
                    order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (placed_neighbors, degree[v], std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
    }
    order
}

/// Count injective maps of the pattern into g that preserve pattern edges.
fn count_injective_embeddings(g: &Graph, pattern: &Pattern) -> u64 {
    let order = embedding_order(pattern);
    let k = order.len();
    // anchors[t] = slots s < t whose pattern vertex is adjacent to order[t]
    let anchors: Vec<Vec<usize>> = (0..k)
        .map(|t| (0..t).filter(|&s| pattern.has_edge(order[s], order[t])).collect())
        .collect();
    let mut state = EmbedState {
        g,
        anchors,
        images: vec![usize::MAX; k],
        used: vec![false; g.n()],
        candidate_bufs: vec![Vec::new(); k],
        scratch: Vec::new(),
    };
    extend_embedding(&mut state, 0)
}

struct EmbedState<'g> {
    g: &'g Graph,
    anchors: Vec<Vec<usize>>,
    images: Vec<usize>,
    used: Vec<bool>,
    candidate_bufs: Vec<Vec<u32>>,
    scratch: Vec<u32>,
}

fn extend_embedding(st: &mut EmbedState, slot: usize) -> u64 {
    let k = st.anchors.len();
    let last = slot + 1 == k;
    let mut count = 0u64;

    if st.anchors[slot].is_empty() {
        debug_assert_eq!(slot, 0, "pattern is connected, only the root has no anchors");
        for v in 0..st.g.n() {
            st.images[slot] = v;
            st.used[v] = true;
            count += extend_embedding(st, slot + 1);
            st.used[v] = false;
        }
        return count;
    }

    if let [single] = st.anchors[slot][..] {
        let image = st.images[single];
        if last {
            return st.g.neighbors(image).iter().filter(|&&v| !st.used[v as usize]).count()
                as u64;
        }
        // the neighbor slice is borrowed from the graph; walk it by index so
        // the recursion can mutate the rest of the state
        for i in 0..st.g.neighbors(image).len() {
            let v = st.g.neighbors(image)[i] as usize;
            if st.used[v] {
                continue;
            }
            st.images[slot] = v;
            st.used[v] = true;
            count += extend_embedding(st, slot + 1);
            st.used[v] = false;
        }
        return count;
    }

    // several anchors: intersect their adjacency lists, smallest first
    let mut candidates = std::mem::take(&mut st.candidate_bufs[slot]);
    let mut scratch = std::mem::take(&mut st.scratch);
    candidates.clear();
    let base = *st
        .anchors[slot]
        .iter()
        .min_by_key(|&&s| st.g.degree(st.images[s]))
        .unwrap();
    candidates.extend_from_slice(st.g.neighbors(st.images[base]));
    for &s in st.anchors[slot].iter().filter(|&&s| s != base) {
        scratch.clear();
        intersect_sorted(&candidates, st.g.neighbors(st.images[s]), &mut scratch);
        std::mem::swap(&mut candidates, &mut scratch);
        if candidates.is_empty() {
            break;
        }
    }
    if last {
        count = candidates.iter().filter(|&&v| !st.used[v as usize]).count() as u64;
    } else {
        #[allow(clippy::needless_range_loop)] // the body mutates st
        for i in 0..candidates.len() {
            let v = candidates[i] as usize;
            if st.used[v] {
                continue;
            }
            st.images[slot] = v;
            st.used[v] = true;
            count += extend_embedding(st, slot + 1);
            st.used[v] = false;
        }
    }
    st.scratch = scratch;
    st.candidate_bufs[slot] = candidates;
    count
}

/// Which cutoff stands in for h_c when forming bounds from data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffChoice {
    /// h_c = sqrt(mu n), the canonical uncorrelated-network choice.
    SqrtMuN,
    /// h_c = the maximum observed degree.
    HMax,
}

impl CutoffChoice {
    pub fn name(&self) -> &'static str {
        match self {
            CutoffChoice::SqrtMuN => "sqrt-mu-n",
            CutoffChoice::HMax => "h-max",
        }
    }
}

/// Which bound family the ratio is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioVariant {
    /// MAD-based limit with the graph's mean and MAD.
    Mad,
    /// Diminishing-d limit with the graph's mean and variance.
    VarianceMad,
}

impl RatioVariant {
    pub fn name(&self) -> &'static str {
        match self {
            RatioVariant::Mad => "mad",
            RatioVariant::VarianceMad => "variance",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RatioRow {
    pub pattern: Pattern,
    pub observed: u64,
    pub bound: f64,
    /// observed / bound; infinity sentinel when the bound is zero.
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct RatioReport {
    pub stats: SummaryStats,
    pub cutoff: CutoffChoice,
    pub variant: RatioVariant,
    pub h_c_used: f64,
    pub rows: Vec<RatioRow>,
}

/// Count each pattern in the graph and compare against the Chung-Lu bound
/// formed from the graph's own summary statistics.
pub fn bound_ratio(
    g: &Graph,
    patterns: &[Pattern],
    cutoff: CutoffChoice,
    variant: RatioVariant,
) -> Result<RatioReport> {
    let stats = summary_stats(g)?;
    let n = stats.n as u64;
    let h_c = match cutoff {
        CutoffChoice::SqrtMuN => (stats.mu * stats.n as f64).sqrt(),
        CutoffChoice::HMax => stats.h_max as f64,
    };
    let mut rows = Vec::with_capacity(patterns.len());
    for pattern in patterns {
        let observed = count_copies(g, pattern)?;
        let bound: BoundResult = match (variant, cutoff) {
            (RatioVariant::Mad, CutoffChoice::SqrtMuN) => {
                bounds::scaling_mad_chunglu(pattern, stats.mu, stats.mad, n)?
            }
            (RatioVariant::Mad, CutoffChoice::HMax) => {
                let params = crate::ambiguity::AmbiguityParams::new(
                    0.0, stats.mu, stats.mad, h_c, h_c, n,
                )?;
                bounds::scaling_mad(pattern, &params, &Kernel::ChungLu)?
            }
            (RatioVariant::VarianceMad, CutoffChoice::SqrtMuN) => {
                bounds::subgraph_bound_variance_chunglu(pattern, stats.mu, stats.sigma2, n)?
            }
            (RatioVariant::VarianceMad, CutoffChoice::HMax) => {
                bounds::scaling_variance(pattern, stats.mu, stats.sigma2, h_c, n, &Kernel::ChungLu)?
            }
        };
        let ratio = if bound.value == 0.0 { f64::INFINITY } else { observed as f64 / bound.value };
        rows.push(RatioRow { pattern: pattern.clone(), observed, bound: bound.value, ratio });
    }
    Ok(RatioReport { stats, cutoff, variant, h_c_used: h_c, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{self, catalog, clique, triangle};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)))
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                edges.push((u as u32, v as u32));
            }
        }
        Graph::from_edges(n, edges)
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen::<f64>() < p {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    // Brute-force oracle: enumerate every injective map of the pattern.
    fn brute_force_copies(g: &Graph, pattern: &Pattern) -> u64 {
        let k = pattern.k();
        let n = g.n();
        let mut maps = 0u64;
        let mut stack = vec![0usize; k];
        fn rec(
            g: &Graph,
            pattern: &Pattern,
            slot: usize,
            stack: &mut Vec<usize>,
            maps: &mut u64,
        ) {
            let k = pattern.k();
            if slot == k {
                *maps += 1;
                return;
            }
            for v in 0..g.n() {
                if stack[..slot].contains(&v) {
                    continue;
                }
                let ok = (0..slot).all(|s| {
                    !pattern.has_edge(s, slot) || g.has_edge(stack[s], v)
                });
                if ok {
                    stack[slot] = v;
                    rec(g, pattern, slot + 1, stack, maps);
                }
            }
        }
        if n >= 1 {
            rec(g, pattern, 0, &mut stack, &mut maps);
        }
        maps / automorphism_count(pattern)
    }

    #[test]
    fn trivial_counts() {
        assert_eq!(count_copies(&complete(4), &triangle()).unwrap(), 4);
        assert_eq!(count_copies(&cycle(3), &patterns::path_p3()).unwrap(), 3);
        assert_eq!(count_copies(&cycle(5), &patterns::path_p4()).unwrap(), 5);
        assert_eq!(count_copies(&complete(5), &clique(4)).unwrap(), 5);
        assert_eq!(count_copies(&complete(6), &clique(5)).unwrap(), 6);
        assert!(matches!(
            count_copies(&complete(6), &Pattern::from_edge_list(6, &complete_edges(6)).unwrap()),
            Err(Error::PatternTooLarge { k: 6 })
        ));
    }

    fn complete_edges(k: usize) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for v in 1..k {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        edges
    }

    #[test]
    fn closed_form_identities_hold() {
        for seed in 0..5 {
            let g = random_graph(40, 0.2, seed);
            let p3: u64 = (0..g.n()).map(|v| binom2(g.degree(v))).sum();
            assert_eq!(count_copies(&g, &patterns::path_p3()).unwrap(), p3);
            let claws: u64 = (0..g.n()).map(|v| binom3(g.degree(v))).sum();
            assert_eq!(count_copies(&g, &patterns::claw()).unwrap(), claws);
        }
    }

    fn binom2(d: usize) -> u64 {
        (d * d.saturating_sub(1) / 2) as u64
    }

    fn binom3(d: usize) -> u64 {
        if d < 3 {
            0
        } else {
            (d * (d - 1) * (d - 2) / 6) as u64
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let pats = catalog(4).unwrap();
        for seed in 0..10 {
            let g = random_graph(11, 0.35, 100 + seed);
            for p in &pats {
                assert_eq!(
                    count_copies(&g, p).unwrap(),
                    brute_force_copies(&g, p),
                    "seed {seed}, pattern {:?}",
                    p.name()
                );
            }
        }
        // a couple of size-5 patterns as well
        for p in catalog(5).unwrap().iter().take(6) {
            let g = random_graph(9, 0.45, 77);
            assert_eq!(count_copies(&g, p).unwrap(), brute_force_copies(&g, p));
        }
    }

    // Spectral oracle: closed 4-walks give tr(A^4) = 2 Σ d² - 2m + 8 #C4.
    fn c4_by_trace(g: &Graph) -> u64 {
        let n = g.n();
        let mut a = vec![vec![0u64; n]; n];
        for (u, v) in g.edges() {
            a[u as usize][v as usize] = 1;
            a[v as usize][u as usize] = 1;
        }
        let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            let mut out = vec![vec![0u64; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if x[i][k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i][j] += x[i][k] * y[k][j];
                    }
                }
            }
            out
        };
        let a2 = mul(&a, &a);
        let a4 = mul(&a2, &a2);
        let trace: u64 = (0..n).map(|i| a4[i][i]).sum();
        let deg2: u64 = (0..n).map(|v| (g.degree(v) * g.degree(v)) as u64).sum();
        let m = g.edge_count() as u64;
        (trace + 2 * m - 2 * deg2) / 8
    }

    #[test]
    fn triangle_counts_match_cubic_oracle() {
        for seed in 0..4 {
            let g = random_graph(60, 0.15, 400 + seed);
            let mut expected = 0u64;
            for a in 0..g.n() {
                for b in (a + 1)..g.n() {
                    for c in (b + 1)..g.n() {
                        if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                            expected += 1;
                        }
                    }
                }
            }
            assert_eq!(count_copies(&g, &triangle()).unwrap(), expected, "seed {seed}");
        }
    }

    #[test]
    fn c4_counts_match_trace_formula() {
        for seed in 0..6 {
            let g = random_graph(50, 0.12, 300 + seed);
            assert_eq!(
                count_copies(&g, &patterns::cycle_c4()).unwrap(),
                c4_by_trace(&g),
                "seed {seed}"
            );
        }
        // a denser instance exercises the dedup paths
        let g = random_graph(30, 0.4, 9);
        assert_eq!(count_copies(&g, &patterns::cycle_c4()).unwrap(), c4_by_trace(&g));
    }

    // The Petersen graph has girth 5: a known census for every small pattern.
    #[test]
    fn petersen_census() {
        let outer = [(0u32, 1u32), (1, 2), (2, 3), (3, 4), (0, 4)];
        let spokes = [(0u32, 5u32), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5u32, 7u32), (7, 9), (9, 6), (6, 8), (8, 5)];
        let g = Graph::from_edges(10, outer.into_iter().chain(spokes).chain(inner));
        assert_eq!(count_copies(&g, &triangle()).unwrap(), 0);
        assert_eq!(count_copies(&g, &patterns::cycle_c4()).unwrap(), 0);
        assert_eq!(count_copies(&g, &clique(4)).unwrap(), 0);
        assert_eq!(count_copies(&g, &patterns::diamond()).unwrap(), 0);
        assert_eq!(count_copies(&g, &patterns::paw()).unwrap(), 0);
        // 3-regular: Σ C(3,2) path centers and Σ C(3,3) claws
        assert_eq!(count_copies(&g, &patterns::path_p3()).unwrap(), 30);
        assert_eq!(count_copies(&g, &patterns::claw()).unwrap(), 10);
        // girth 5 and no 4-cycles: P4 = Σ_edges (d_u - 1)(d_v - 1)
        assert_eq!(count_copies(&g, &patterns::path_p4()).unwrap(), 60);
        // the classic count of 5-cycles
        let c5 = patterns::by_name("c5").unwrap();
        assert_eq!(count_copies(&g, &c5).unwrap(), 12);
    }

    #[test]
    fn triangle_fast_path_matches_dense_core() {
        // complete graph plus pendant fringe exercises rank ordering
        let mut edges = complete_edges(20)
            .into_iter()
            .map(|(u, v)| (u as u32, v as u32))
            .collect::<Vec<_>>();
        for i in 20u32..60 {
            edges.push((i % 20, i));
        }
        let g = Graph::from_edges(60, edges);
        assert_eq!(count_copies(&g, &triangle()).unwrap(), brute_force_copies(&g, &triangle()));
        assert_eq!(count_copies(&g, &clique(4)).unwrap(), brute_force_copies(&g, &clique(4)));
    }

    #[test]
    fn summary_stats_examples() {
        let s = summary_stats(&cycle(3)).unwrap();
        assert_eq!((s.n, s.h_max), (3, 2));
        assert_eq!((s.mu, s.mad, s.sigma2), (2.0, 0.0, 0.0));

        let star = Graph::from_edges(4, [(0u32, 1u32), (0, 2), (0, 3)]);
        let s = summary_stats(&star).unwrap();
        assert_eq!(s.n, 4);
        assert!((s.mu - 1.5).abs() < 1e-15);
        assert!((s.mad - 0.75).abs() < 1e-15);
        assert_eq!(s.h_max, 3);
        assert!((s.sigma2 - 0.75).abs() < 1e-15);

        assert!(matches!(summary_stats(&Graph::from_edges(0, [])), Err(Error::EmptyGraph)));
    }

    #[test]
    fn ingestion_drops_junk_and_remaps() {
        let text = "# comment\n% another\n10 20\n20 10\n10 10\n20 30\n";
        let (g, report) = read_edge_list_from(std::io::Cursor::new(text)).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(report.self_loops_dropped, 1);
        assert_eq!(report.duplicates_dropped, 1);
        let bad = read_edge_list_from(std::io::Cursor::new("1 x\n"));
        assert!(matches!(bad, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn ratio_zero_bound_uses_infinity_sentinel() {
        // regular graph: mad = 0, so the MAD bound for min-degree-2 patterns is 0
        let g = cycle(6);
        let report =
            bound_ratio(&g, &[patterns::cycle_c4()], CutoffChoice::SqrtMuN, RatioVariant::Mad)
                .unwrap();
        assert_eq!(report.rows[0].bound, 0.0);
        assert!(report.rows[0].ratio.is_infinite());
    }

    #[test]
    fn ratio_report_is_populated() {
        let g = random_graph(60, 0.15, 5);
        let pats = catalog(4).unwrap();
        for cutoff in [CutoffChoice::SqrtMuN, CutoffChoice::HMax] {
            for variant in [RatioVariant::Mad, RatioVariant::VarianceMad] {
                let report = bound_ratio(&g, &pats, cutoff, variant).unwrap();
                assert_eq!(report.rows.len(), 6);
                for row in &report.rows {
                    assert!(row.ratio >= 0.0);
                }
            }
        }
    }
}
