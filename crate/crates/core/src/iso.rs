//! Exhaustive isomorphism and induced-subgraph search.
//!
//! Plain backtracking with degree and neighborhood-degree pruning; no
//! canonical-labeling machinery. Searches are complete, so a negative
//! answer is a proof of absence, and all candidate orders are fixed, so
//! results are deterministic. Disconnected graphs are matched component
//! by component (isomorphic components are interchangeable, which makes
//! greedy component assignment complete).

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Default cap for [`all_isomorphisms`]; the list can be factorially large.
pub const DEFAULT_ISO_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{what}: size {actual} exceeds cap {cap}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub cap: usize,
    pub actual: usize,
}

/// A vertex bijection witnessing an isomorphism, stored as `map[g] = h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoWitness {
    map: Vec<u32>,
}

impl IsoWitness {
    pub fn new(map: Vec<u32>) -> Self {
        IsoWitness { map }
    }

    pub fn identity(n: usize) -> Self {
        IsoWitness {
            map: (0..n as u32).collect(),
        }
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.map[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0u32; self.map.len()];
        for (g, &h) in self.map.iter().enumerate() {
            inv[h as usize] = g as u32;
        }
        IsoWitness { map: inv }
    }

    /// Checks that the mapping is a bijection preserving adjacency and
    /// non-adjacency in both directions.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if g.vertex_count() != h.vertex_count() || self.map.len() != g.vertex_count() {
            return false;
        }
        let mut seen = vec![false; h.vertex_count()];
        for &x in &self.map {
            if (x as usize) >= h.vertex_count() || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        for u in g.vertices() {
            for v in u + 1..g.vertex_count() as u32 {
                if g.has_edge(u, v) != h.has_edge(self.apply(u), self.apply(v)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Per-vertex pruning signature: degree plus sorted neighbor degrees.
fn vertex_signatures(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    g.vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// BFS order from the (max degree, min id) vertex; every vertex after the
/// first has an already-ordered neighbor.
fn bfs_order(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let start = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                order.push(w);
            }
        }
    }
    order
}

struct ConnectedMatcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<u32>,
    g_sig: Vec<(usize, Vec<usize>)>,
    h_sig: Vec<(usize, Vec<usize>)>,
}

impl<'a> ConnectedMatcher<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        ConnectedMatcher {
            g,
            h,
            order: bfs_order(g),
            g_sig: vertex_signatures(g),
            h_sig: vertex_signatures(h),
        }
    }

    fn search(&self, depth: usize, map: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let gv = self.order[depth];
        // Candidates: images of an already-mapped neighbor's neighbors for
        // depth > 0, otherwise every h vertex.
        let from_neighbor = self.order[..depth]
            .iter()
            .find(|&&p| self.g.has_edge(p, gv))
            .map(|&p| map[p as usize]);
        let candidates: Vec<u32> = match from_neighbor {
            Some(img) => self.h.neighbors(img).to_vec(),
            None => self.h.vertices().collect(),
        };
        'cand: for hv in candidates {
            if used[hv as usize] || self.g_sig[gv as usize] != self.h_sig[hv as usize] {
                continue;
            }
            for &p in &self.order[..depth] {
                if self.g.has_edge(p, gv) != self.h.has_edge(map[p as usize], hv) {
                    continue 'cand;
                }
            }
            map[gv as usize] = hv;
            used[hv as usize] = true;
            if self.search(depth + 1, map, used) {
                return true;
            }
            used[hv as usize] = false;
        }
        false
    }
}

/// Isomorphism test for connected graphs of equal order.
fn connected_isomorphism(g: &Graph, h: &Graph) -> Option<IsoWitness> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    if n == 0 {
        return Some(IsoWitness::new(Vec::new()));
    }
    let matcher = ConnectedMatcher::new(g, h);
    {
        let mut gs = matcher.g_sig.clone();
        let mut hs = matcher.h_sig.clone();
        gs.sort_unstable();
        hs.sort_unstable();
        if gs != hs {
            return None;
        }
    }
    let mut map = vec![0u32; n];
    let mut used = vec![false; n];
    if matcher.search(0, &mut map, &mut used) {
        Some(IsoWitness::new(map))
    } else {
        None
    }
}

/// Exhaustive isomorphism test with a witness. Disconnected inputs are
/// matched componentwise.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<IsoWitness> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let g_comps = g.connected_components();
    let h_comps = h.connected_components();
    if g_comps.len() != h_comps.len() {
        return None;
    }
    if g_comps.len() <= 1 {
        return connected_isomorphism(g, h);
    }

    struct Part {
        graph: Graph,
        old_of_new: Vec<u32>,
        sig: (usize, usize, Vec<usize>),
    }
    let extract = |g: &Graph, comps: &[VertexSet]| -> Vec<Part> {
        comps
            .iter()
            .map(|c| {
                let (sub, old_of_new) = g.induced_subgraph(c).expect("component in range");
                let sig = (sub.vertex_count(), sub.edge_count(), sub.degree_sequence());
                Part {
                    graph: sub,
                    old_of_new,
                    sig,
                }
            })
            .collect()
    };
    let g_parts = extract(g, &g_comps);
    let h_parts = extract(h, &h_comps);

    // Isomorphic components are interchangeable, so greedy assignment with
    // a signature prefilter is complete.
    let mut used = vec![false; h_parts.len()];
    let mut map = vec![0u32; g.vertex_count()];
    for gp in &g_parts {
        let mut matched = false;
        for (j, hp) in h_parts.iter().enumerate() {
            if used[j] || gp.sig != hp.sig {
                continue;
            }
            if let Some(local) = connected_isomorphism(&gp.graph, &hp.graph) {
                for (new, &old) in gp.old_of_new.iter().enumerate() {
                    map[old as usize] = hp.old_of_new[local.apply(new as u32) as usize];
                }
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    let w = IsoWitness::new(map);
    debug_assert!(w.verify(g, h));
    Some(w)
}

/// The complete list of isomorphisms from `g` to `h`, sorted by mapping
/// vector. Both graphs must have at most `cap` vertices.
pub fn all_isomorphisms(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<Vec<IsoWitness>, CapExceeded> {
    let n = g.vertex_count().max(h.vertex_count());
    if n > cap {
        return Err(CapExceeded {
            what: "all_isomorphisms",
            cap,
            actual: n,
        });
    }
    if g.vertex_count() != h.vertex_count() || g.degree_sequence() != h.degree_sequence() {
        return Ok(Vec::new());
    }
    let g_sig = vertex_signatures(g);
    let h_sig = vertex_signatures(h);
    let mut out = Vec::new();
    let mut map = vec![0u32; g.vertex_count()];
    let mut used = vec![false; h.vertex_count()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        h: &Graph,
        g_sig: &[(usize, Vec<usize>)],
        h_sig: &[(usize, Vec<usize>)],
        depth: u32,
        map: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut Vec<IsoWitness>,
    ) {
        if depth as usize == g.vertex_count() {
            out.push(IsoWitness::new(map.clone()));
            return;
        }
        'cand: for hv in h.vertices() {
            if used[hv as usize] || g_sig[depth as usize] != h_sig[hv as usize] {
                continue;
            }
            for p in 0..depth {
                if g.has_edge(p, depth) != h.has_edge(map[p as usize], hv) {
                    continue 'cand;
                }
            }
            map[depth as usize] = hv;
            used[hv as usize] = true;
            rec(g, h, g_sig, h_sig, depth + 1, map, used, out);
            used[hv as usize] = false;
        }
    }
    rec(g, h, &g_sig, &h_sig, 0, &mut map, &mut used, &mut out);
    Ok(out)
}

/// Bit rows over the host graph, used to intersect candidate sets quickly.
struct BitRows {
    words: usize,
    rows: Vec<u64>,
}

impl BitRows {
    const MAX_HOST: usize = 8192;

    fn build(g: &Graph) -> Option<BitRows> {
        let n = g.vertex_count();
        if n > Self::MAX_HOST {
            return None;
        }
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; words * n];
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                rows[v as usize * words + (w as usize / 64)] |= 1 << (w % 64);
            }
        }
        Some(BitRows { words, rows })
    }

    fn row(&self, v: u32) -> &[u64] {
        &self.rows[v as usize * self.words..(v as usize + 1) * self.words]
    }
}

/// Order the pattern's vertices for induced search: within each component
/// (largest first), open with the least non-edge when one exists, then
/// greedily prefer vertices with many already-placed neighbors.
fn pattern_order(h: &Graph) -> Vec<u32> {
    let n = h.vertex_count();
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut comps = h.connected_components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for comp in comps {
        let members: Vec<u32> = comp.iter().collect();
        let mut first_pair: Option<(u32, u32)> = None;
        'find: for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !h.has_edge(u, v) {
                    first_pair = Some((u, v));
                    break 'find;
                }
            }
        }
        let seeds: Vec<u32> = match first_pair {
            Some((u, v)) => vec![u, v],
            None => vec![members[0]],
        };
        for s in seeds {
            order.push(s);
            placed[s as usize] = true;
        }
        while order.len() < n {
            let next = members
                .iter()
                .copied()
                .filter(|&v| !placed[v as usize])
                .max_by_key(|&v| {
                    let nbrs = h
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| placed[w as usize])
                        .count();
                    (nbrs, std::cmp::Reverse(v))
                });
            match next {
                Some(v) => {
                    order.push(v);
                    placed[v as usize] = true;
                }
                None => break, // component exhausted
            }
        }
    }
    order
}

struct InducedSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<u32>,
    bits: Option<BitRows>,
}

impl<'a> InducedSearch<'a> {
    fn candidates(&self, depth: usize, map: &[u32], used: &[bool]) -> Vec<u32> {
        let hv = self.order[depth];
        let placed = &self.order[..depth];
        if let Some(bits) = &self.bits {
            let n = self.g.vertex_count();
            let mut cand = vec![u64::MAX; bits.words];
            if !n.is_multiple_of(64) {
                cand[bits.words - 1] = (1u64 << (n % 64)) - 1;
            }
            for &p in placed {
                let row = bits.row(map[p as usize]);
                if self.h.has_edge(p, hv) {
                    for (c, r) in cand.iter_mut().zip(row) {
                        *c &= r;
                    }
                } else {
                    for (c, r) in cand.iter_mut().zip(row) {
                        *c &= !r;
                    }
                }
            }
            let mut out = Vec::new();
            for (wi, &word) in cand.iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    let v = (wi * 64 + b) as u32;
                    w &= w - 1;
                    if !used[v as usize] && self.g.degree(v) >= self.h.degree(hv) {
                        out.push(v);
                    }
                }
            }
            out
        } else {
            let base: Vec<u32> = match placed.iter().find(|&&p| self.h.has_edge(p, hv)) {
                Some(&p) => self.g.neighbors(map[p as usize]).to_vec(),
                None => self.g.vertices().collect(),
            };
            base.into_iter()
                .filter(|&gv| {
                    !used[gv as usize]
                        && self.g.degree(gv) >= self.h.degree(hv)
                        && placed.iter().all(|&p| {
                            self.h.has_edge(p, hv) == self.g.has_edge(map[p as usize], gv)
                        })
                })
                .collect()
        }
    }

    fn search(&self, depth: usize, map: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let hv = self.order[depth];
        for gv in self.candidates(depth, map, used) {
            map[hv as usize] = gv;
            used[gv as usize] = true;
            if self.search(depth + 1, map, used) {
                return true;
            }
            used[gv as usize] = false;
        }
        false
    }
}

/// Finds an injective map `V(h) -> V(g)` whose image induces a copy of `h`,
/// or proves there is none. The returned vector is indexed by `h` vertices.
pub fn find_induced_copy(g: &Graph, h: &Graph) -> Option<Vec<u32>> {
    if h.vertex_count() > g.vertex_count() {
        return None;
    }
    if h.vertex_count() == 0 {
        return Some(Vec::new());
    }
    let search = InducedSearch {
        g,
        h,
        order: pattern_order(h),
        bits: BitRows::build(g),
    };
    let mut map = vec![0u32; h.vertex_count()];
    let mut used = vec![false; g.vertex_count()];
    if search.search(0, &mut map, &mut used) {
        debug_assert!(verify_induced(g, h, &map));
        Some(map)
    } else {
        None
    }
}

/// Checks that `map` embeds `h` into `g` as an induced subgraph.
pub fn verify_induced(g: &Graph, h: &Graph, map: &[u32]) -> bool {
    if map.len() != h.vertex_count() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for &v in map {
        if (v as usize) >= g.vertex_count() || !seen.insert(v) {
            return false;
        }
    }
    for u in h.vertices() {
        for v in u + 1..h.vertex_count() as u32 {
            if h.has_edge(u, v) != g.has_edge(map[u as usize], map[v as usize]) {
                return false;
            }
        }
    }
    true
}

/// Groups the components of `g` into isomorphism classes. Returns, per
/// component, the extracted subgraph, its vertex map, and a class index;
/// class indices are assigned in order of first appearance.
pub fn component_iso_classes(g: &Graph) -> Vec<(Graph, Vec<u32>, usize)> {
    let comps = g.connected_components();
    let mut reps: Vec<(usize, Graph)> = Vec::new();
    let mut buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut out = Vec::with_capacity(comps.len());
    for comp in &comps {
        let (sub, old_of_new) = g.induced_subgraph(comp).expect("component in range");
        let key = (sub.vertex_count(), sub.edge_count(), sub.degree_sequence());
        let bucket = buckets.entry(key).or_default();
        let class = bucket
            .iter()
            .copied()
            .find(|&ci| connected_isomorphism(&reps[ci].1, &sub).is_some());
        let class = match class {
            Some(ci) => ci,
            None => {
                let ci = reps.len();
                reps.push((ci, sub.clone()));
                bucket.push(ci);
                ci
            }
        };
        out.push((sub, old_of_new, class));
    }
    out
}
