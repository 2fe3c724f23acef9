//! Small connected subgraph patterns H and the combinatorial quantities the
//! bound formulas consume: degree buckets, automorphism counts and the
//! catalogs of all connected graphs on 3, 4 and 5 vertices.

use crate::error::{Error, Result};

pub const MAX_PATTERN_VERTICES: usize = 8;

/// A simple connected undirected graph on k ≤ 8 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    k: usize,
    /// Sorted unordered pairs (u, v) with u < v.
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

/// Degree bookkeeping for a pattern: the bucket counts used by the
/// asymptotic bound formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    /// |E_H|
    pub e_h: usize,
    /// vertices of degree 1
    pub n1: usize,
    /// vertices of degree 2
    pub n2: usize,
    /// degree-2 vertices adjacent to at least one degree-1 vertex
    pub n2_1: usize,
    /// vertices of degree >= 3
    pub n_ge3: usize,
    /// edges whose both endpoints have degree >= 3
    pub e_ge3_ge3: usize,
}

impl Pattern {
    /// Build and validate a pattern from an edge list over {0..k-1}.
    pub fn from_edge_list(k: usize, edges: &[(usize, usize)]) -> Result<Pattern> {
        if !(2..=MAX_PATTERN_VERTICES).contains(&k) {
            return Err(Error::PatternSize { k });
        }
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= k || v >= k {
                return Err(Error::VertexOutOfRange { u, v, k });
            }
            if u == v {
                return Err(Error::NotSimple(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSimple("duplicate edge".into()));
        }
        let p = Pattern { k, edges: canon, name: None };
        if !p.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(p)
    }

    pub fn with_name(mut self, name: &str) -> Pattern {
        self.name = Some(name.to_string());
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// CLI literal form, e.g. "k=4;edges=0-1,1-2,2-3".
    pub fn literal(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("k={};edges={}", self.k, edges.join(","))
    }

    /// Parse the CLI literal form produced by [`Pattern::literal`].
    pub fn parse_literal(s: &str) -> Result<Pattern> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("pattern literal: {msg}") };
        let mut k: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for part in s.split(';') {
            let (key, value) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key.trim() {
                "k" => {
                    k = Some(value.trim().parse().map_err(|_| bad("bad vertex count"))?);
                }
                "edges" => {
                    for pair in value.split(',').filter(|p| !p.trim().is_empty()) {
                        let (u, v) =
                            pair.trim().split_once('-').ok_or_else(|| bad("expected u-v"))?;
                        edges.push((
                            u.parse().map_err(|_| bad("bad endpoint"))?,
                            v.parse().map_err(|_| bad("bad endpoint"))?,
                        ));
                    }
                }
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        let k = k.ok_or_else(|| bad("missing k"))?;
        Pattern::from_edge_list(k, &edges)
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Adjacency bitmasks, one word per vertex.
    pub fn adjacency_masks(&self) -> Vec<u16> {
        let mut masks = vec![0u16; self.k];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    fn is_connected(&self) -> bool {
        let masks = self.adjacency_masks();
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0u16;
            for (v, mask) in masks.iter().enumerate() {
                if frontier & (1 << v) != 0 {
                    next |= mask;
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.k
    }

    /// Canonical edge bitmask: minimum over all vertex relabelings. Two
    /// patterns are isomorphic iff their canonical masks agree.
    fn canonical_mask(&self) -> u64 {
        let mut best = u64::MAX;
        for_each_permutation(self.k, |perm| {
            let mut mask = 0u64;
            for &(u, v) in &self.edges {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                mask |= 1 << pair_index(a, b);
            }
            best = best.min(mask);
        });
        best
    }

    pub fn is_isomorphic(&self, other: &Pattern) -> bool {
        self.k == other.k
            && self.edges.len() == other.edges.len()
            && self.canonical_mask() == other.canonical_mask()
    }
}

// index of pair (a, b) with a < b in the upper-triangle enumeration
fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

/// Call f on every permutation of {0..k-1} (Heap's algorithm).
fn for_each_permutation<F: FnMut(&[usize])>(k: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut stack = vec![0usize; k];
    f(&perm);
    let mut i = 0;
    while i < k {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            f(&perm);
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

/// Exact automorphism count by exhaustive permutation check (k! ≤ 40320).
pub fn automorphism_count(p: &Pattern) -> u64 {
    let masks = p.adjacency_masks();
    let mut count = 0u64;
    for_each_permutation(p.k, |perm| {
        let ok = p.edges.iter().all(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            masks[a] & (1 << b) != 0
        });
        if ok {
            count += 1;
        }
    });
    count
}

/// All degree bucket counts read off the adjacency structure.
pub fn degree_stats(p: &Pattern) -> DegreeStats {
    let degrees: Vec<usize> = (0..p.k).map(|v| p.degree_of(v)).collect();
    let n1 = degrees.iter().filter(|&&d| d == 1).count();
    let n2 = degrees.iter().filter(|&&d| d == 2).count();
    let n_ge3 = degrees.iter().filter(|&&d| d >= 3).count();
    let masks = p.adjacency_masks();
    let n2_1 = (0..p.k)
        .filter(|&v| degrees[v] == 2)
        .filter(|&v| (0..p.k).any(|u| masks[v] & (1 << u) != 0 && degrees[u] == 1))
        .count();
    let e_ge3_ge3 = p
        .edges
        .iter()
        .filter(|&&(u, v)| degrees[u] >= 3 && degrees[v] >= 3)
        .count();
    DegreeStats { degrees, e_h: p.edges.len(), n1, n2, n2_1, n_ge3, e_ge3_ge3 }
}

/// c^{n1} / Aut(H), the frequency-ordering constant with c = 2μ/d.
pub fn leading_constant(p: &Pattern, c: f64) -> f64 {
    assert!(c > 0.0, "leading_constant requires c > 0");
    let stats = degree_stats(p);
    c.powi(stats.n1 as i32) / automorphism_count(p) as f64
}

fn named(k: usize, edges: &[(usize, usize)], name: &str) -> Pattern {
    Pattern::from_edge_list(k, edges).expect("builtin pattern").with_name(name)
}

pub fn edge_k2() -> Pattern {
    named(2, &[(0, 1)], "k2")
}

pub fn path_p3() -> Pattern {
    named(3, &[(0, 1), (1, 2)], "p3")
}

pub fn triangle() -> Pattern {
    named(3, &[(0, 1), (1, 2), (0, 2)], "triangle")
}

pub fn path_p4() -> Pattern {
    named(4, &[(0, 1), (1, 2), (2, 3)], "p4")
}

pub fn claw() -> Pattern {
    named(4, &[(0, 1), (0, 2), (0, 3)], "claw")
}

pub fn paw() -> Pattern {
    named(4, &[(0, 1), (1, 2), (0, 2), (0, 3)], "paw")
}

pub fn cycle_c4() -> Pattern {
    named(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], "c4")
}

pub fn diamond() -> Pattern {
    named(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)], "diamond")
}

pub fn clique(k: usize) -> Pattern {
    let mut edges = Vec::new();
    for v in 1..k {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    let name = format!("k{k}");
    Pattern::from_edge_list(k, &edges).expect("clique").with_name(&name)
}

/// Look up a built-in pattern by its stable name. Size-5 patterns other than
/// the handful with common names are addressed as "g5-<index>" into
/// [`catalog`]\(5\).
pub fn by_name(name: &str) -> Option<Pattern> {
    match name {
        "k2" | "edge" => Some(edge_k2()),
        "p3" => Some(path_p3()),
        "triangle" | "k3" => Some(triangle()),
        "p4" => Some(path_p4()),
        "claw" => Some(claw()),
        "paw" => Some(paw()),
        "c4" => Some(cycle_c4()),
        "diamond" => Some(diamond()),
        "k4" => Some(clique(4)),
        "k5" => Some(clique(5)),
        _ => {
            if let Some(idx) = name.strip_prefix("g5-") {
                let idx: usize = idx.parse().ok()?;
                catalog(5).ok()?.into_iter().nth(idx)
            } else {
                catalog(5).ok()?.into_iter().find(|p| p.name() == Some(name))
            }
        }
    }
}

/// All connected simple graphs on k vertices up to isomorphism, for
/// k ∈ {3, 4, 5}: sizes 2, 6 and 21. Enumerates every edge subset of the
/// complete graph, keeps connected ones and deduplicates by canonical form.
/// Ordering is deterministic: by edge count, then by canonical mask.
pub fn catalog(k: usize) -> Result<Vec<Pattern>> {
    if !(3..=5).contains(&k) {
        return Err(Error::PatternSize { k });
    }
    let all_pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for b in 1..k {
            for a in 0..b {
                v.push((a, b));
            }
        }
        v
    };
    let m = all_pairs.len();
    let mut reps: Vec<(usize, u64, Pattern)> = Vec::new();
    for subset in 0u32..(1 << m) {
        let edges: Vec<(usize, usize)> =
            (0..m).filter(|&i| subset & (1 << i) != 0).map(|i| all_pairs[i]).collect();
        let Ok(p) = Pattern::from_edge_list(k, &edges) else {
            continue;
        };
        let mask = p.canonical_mask();
        if !reps.iter().any(|&(_, seen, _)| seen == mask) {
            reps.push((edges.len(), mask, p));
        }
    }
    reps.sort_by_key(|&(e, mask, _)| (e, mask));
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(i, (_, _, p))| {
            if let Some(b) = builtin_name_for(&p) {
                p.with_name(b)
            } else {
                p.with_name(&format!("g{k}-{i}"))
            }
        })
        .collect())
}

type NamedBuilder = (fn() -> Pattern, &'static str);

fn builtin_name_for(p: &Pattern) -> Option<&'static str> {
    let builtins: &[NamedBuilder] = &[
        (path_p3, "p3"),
        (triangle, "triangle"),
        (path_p4, "p4"),
        (claw, "claw"),
        (paw, "paw"),
        (cycle_c4, "c4"),
        (diamond, "diamond"),
        (|| clique(4), "k4"),
        (|| clique(5), "k5"),
        (|| named(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], "p5"), "p5"),
        (|| named(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], "c5"), "c5"),
        (|| named(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], "star5"), "star5"),
    ];
    builtins.iter().find(|(build, _)| p.is_isomorphic(&build())).map(|&(_, name)| name)
}

/// Number of labeled copies of p on k labeled vertices: k! / Aut(p).
pub fn labeled_copies(p: &Pattern) -> u64 {
    let fact: u64 = (1..=p.k as u64).product();
    fact / automorphism_count(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_canonicalizes() {
        let t = Pattern::from_edge_list(3, &[(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(t.is_isomorphic(&triangle()));
        let p = Pattern::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p.is_isomorphic(&path_p4()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Pattern::from_edge_list(3, &[(0, 1)]),
            Err(Error::NotConnected)
        ));
        assert!(matches!(
            Pattern::from_edge_list(3, &[(0, 0), (0, 1), (1, 2)]),
            Err(Error::NotSimple(_))
        ));
        assert!(matches!(
            Pattern::from_edge_list(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(Error::NotSimple(_))
        ));
        assert!(matches!(
            Pattern::from_edge_list(3, &[(0, 3), (0, 1), (1, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(Pattern::from_edge_list(9, &[]), Err(Error::PatternSize { k: 9 })));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&triangle()), 6);
        assert_eq!(automorphism_count(&path_p4()), 2);
        assert_eq!(automorphism_count(&clique(4)), 24);
        assert_eq!(automorphism_count(&claw()), 6);
        assert_eq!(automorphism_count(&cycle_c4()), 8);
        assert_eq!(automorphism_count(&diamond()), 4);
        assert_eq!(automorphism_count(&paw()), 2);
        assert_eq!(automorphism_count(&clique(5)), 120);
    }

    #[test]
    fn degree_stats_examples() {
        let s = degree_stats(&triangle());
        assert_eq!(s.degrees, vec![2, 2, 2]);
        assert_eq!((s.n1, s.n2, s.n2_1, s.n_ge3, s.e_ge3_ge3), (0, 3, 0, 0, 0));

        let s = degree_stats(&claw());
        assert_eq!((s.n1, s.n2, s.n_ge3, s.e_ge3_ge3), (3, 0, 1, 0));

        let s = degree_stats(&paw());
        assert_eq!((s.n1, s.n2, s.n2_1, s.n_ge3), (1, 2, 0, 1));
        assert_eq!(s.e_ge3_ge3, 0);
    }

    #[test]
    fn catalog_sizes_and_names() {
        let names3: Vec<_> = catalog(3).unwrap().iter().map(|p| p.name().unwrap().to_string()).collect();
        assert_eq!(names3, ["p3", "triangle"]);
        let mut names4: Vec<_> =
            catalog(4).unwrap().iter().map(|p| p.name().unwrap().to_string()).collect();
        names4.sort();
        assert_eq!(names4, ["c4", "claw", "diamond", "k4", "p4", "paw"]);
        assert_eq!(catalog(5).unwrap().len(), 21);
    }

    // Orbit-stabilizer: summing k!/Aut over the catalog must reproduce the
    // number of connected labeled graphs on k vertices (4, 38, 728).
    #[test]
    fn catalog_covers_all_labeled_connected_graphs() {
        for (k, labeled) in [(3usize, 4u64), (4, 38), (5, 728)] {
            let total: u64 = catalog(k).unwrap().iter().map(labeled_copies).sum();
            assert_eq!(total, labeled, "k={k}");
        }
    }

    // Direct orbit-stabilizer oracle: brute-force enumeration of all edge
    // subsets on k labeled vertices finds exactly k!/Aut(p) copies of p.
    #[test]
    fn orbit_stabilizer_by_labeled_enumeration() {
        for k in 3..=5usize {
            let pairs = k * (k - 1) / 2;
            let all_pairs: Vec<(usize, usize)> = {
                let mut v = Vec::new();
                for b in 1..k {
                    for a in 0..b {
                        v.push((a, b));
                    }
                }
                v
            };
            for p in catalog(k).unwrap() {
                let mut labeled = 0u64;
                for subset in 0u32..(1 << pairs) {
                    if subset.count_ones() as usize != p.edge_count() {
                        continue;
                    }
                    let edges: Vec<(usize, usize)> = (0..pairs)
                        .filter(|&i| subset & (1 << i) != 0)
                        .map(|i| all_pairs[i])
                        .collect();
                    if let Ok(candidate) = Pattern::from_edge_list(k, &edges) {
                        if candidate.is_isomorphic(&p) {
                            labeled += 1;
                        }
                    }
                }
                let fact: u64 = (1..=k as u64).product();
                assert_eq!(
                    labeled * automorphism_count(&p),
                    fact,
                    "{:?} on {k} vertices",
                    p.name()
                );
            }
        }
    }

    #[test]
    fn handshake_over_catalogs() {
        for k in 3..=5 {
            for p in catalog(k).unwrap() {
                let s = degree_stats(&p);
                assert_eq!(s.degrees.iter().sum::<usize>(), 2 * s.e_h, "{:?}", p.name());
                assert_eq!(s.n1 + s.n2 + s.n_ge3 + s.degrees.iter().filter(|&&d| d == 0).count(), k);
            }
        }
    }

    #[test]
    fn leading_constant_examples() {
        assert!((leading_constant(&clique(4), 7.0) - 1.0 / 24.0).abs() < 1e-15);
        assert!((leading_constant(&path_p4(), 2.0) - 2.0).abs() < 1e-15);
        assert!((leading_constant(&claw(), 2.0) - 4.0 / 3.0).abs() < 1e-15);
    }

    // Among min-degree-2 patterns the ordering by leading constant is the
    // ordering by 1/Aut, with the clique strictly smallest.
    #[test]
    fn min_degree_two_ordering_is_by_automorphisms() {
        for k in [4usize, 5] {
            let core: Vec<Pattern> = catalog(k)
                .unwrap()
                .into_iter()
                .filter(|p| degree_stats(p).degrees.iter().all(|&d| d >= 2))
                .collect();
            let consts: Vec<f64> = core.iter().map(|p| leading_constant(p, 3.0)).collect();
            let auts: Vec<u64> = core.iter().map(automorphism_count).collect();
            let mut by_const: Vec<usize> = (0..core.len()).collect();
            by_const.sort_by(|&a, &b| consts[a].partial_cmp(&consts[b]).unwrap());
            let mut by_aut: Vec<usize> = (0..core.len()).collect();
            by_aut.sort_by(|&a, &b| auts[b].cmp(&auts[a]));
            assert_eq!(by_const, by_aut);
            let clique_aut = (1..=k as u64).product::<u64>();
            assert_eq!(auts.iter().copied().max().unwrap(), clique_aut);
            assert_eq!(auts.iter().filter(|&&a| a == clique_aut).count(), 1);
        }
    }

    #[test]
    fn size5_catalog_addressing() {
        let cat = catalog(5).unwrap();
        for (i, p) in cat.iter().enumerate() {
            let name = p.name().unwrap();
            let resolved = by_name(name).unwrap();
            assert!(resolved.is_isomorphic(p), "{name}");
            if let Some(idx) = name.strip_prefix("g5-") {
                assert_eq!(idx.parse::<usize>().unwrap(), i);
            }
        }
        // the catalog carries the handful of common size-5 names
        for name in ["p5", "c5", "star5", "k5"] {
            assert!(cat.iter().any(|p| p.name() == Some(name)), "{name} missing");
        }
        assert!(by_name("g5-20").is_some());
        assert!(by_name("g5-21").is_none());
    }

    #[test]
    fn literal_round_trip() {
        for p in catalog(4).unwrap() {
            let back = Pattern::parse_literal(&p.literal()).unwrap();
            assert!(back.is_isomorphic(&p));
        }
        assert!(Pattern::parse_literal("k=4;edges=0-1").is_err());
        assert!(Pattern::parse_literal("edges=0-1").is_err());
    }
}
