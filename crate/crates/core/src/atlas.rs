//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Two generators back the test corpora: all graphs on up to 7 vertices
//! (by vertex augmentation with a minimum-mask canonical form) and all
//! connected graphs with a bounded number of edges (by edge augmentation
//! with pairwise isomorphism dedup). Line graphs with a given number of
//! vertices are exactly the line graphs of connected root graphs with that
//! many edges, which keeps the second generator small.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::graph::Graph;
use crate::iso::is_isomorphic;

/// Largest vertex count supported by [`all_graphs`]; the canonical form
/// minimizes over all `n!` permutations, which is only sensible this small.
pub const MAX_ATLAS_VERTICES: usize = 7;

fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

fn mask_to_graph(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if mask >> pair_index(u, v) & 1 == 1 {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Permutations of `0..n` as pair-index relabeling tables.
fn pair_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut perms = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permutations(&mut items, &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let npairs = n * (n - 1) / 2;
            let mut table = vec![0u8; npairs];
            for v in 1..n {
                for u in 0..v {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    table[pair_index(u, v)] = pair_index(a, b) as u8;
                }
            }
            table
        })
        .collect()
}

fn heap_permutations(items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            rec(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    if k == 0 {
        out.push(Vec::new());
    } else {
        rec(k, items, out);
    }
}

fn canonical_mask(mask: u32, tables: &[Vec<u8>]) -> u32 {
    let mut best = u32::MAX;
    for table in tables {
        let mut permuted = 0u32;
        let mut m = mask;
        while m != 0 {
            let bit = m.trailing_zeros() as usize;
            m &= m - 1;
            permuted |= 1 << table[bit];
        }
        best = best.min(permuted);
    }
    best
}

fn atlas_levels() -> &'static Vec<Vec<u32>> {
    static LEVELS: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        let mut levels: Vec<Vec<u32>> = vec![vec![0]]; // n = 0
        for n in 1..=MAX_ATLAS_VERTICES {
            let tables = pair_permutations(n);
            let prev = n - 1;
            let prev_pairs = prev * prev.saturating_sub(1) / 2;
            let mut seen = std::collections::HashSet::new();
            for &base in &levels[n - 1] {
                for subset in 0u32..1 << (n - 1) {
                    let mask = base | (subset << prev_pairs);
                    seen.insert(canonical_mask(mask, &tables));
                }
            }
            let mut level: Vec<u32> = seen.into_iter().collect();
            level.sort_unstable();
            levels.push(level);
        }
        levels
    })
}

/// All graphs on exactly `n <= 7` vertices, one per isomorphism class, in
/// a fixed canonical order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_ATLAS_VERTICES,
        "atlas enumeration is limited to {MAX_ATLAS_VERTICES} vertices"
    );
    atlas_levels()[n]
        .iter()
        .map(|&mask| mask_to_graph(n, mask))
        .collect()
}

/// All graphs on up to `max_n <= 7` vertices, smallest first.
pub fn all_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(all_graphs).collect()
}

/// Invariant key used to bucket candidates before pairwise isomorphism.
type BucketKey = (usize, usize, Vec<(usize, Vec<usize>)>);

fn bucket_key(g: &Graph) -> BucketKey {
    let mut sigs: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    sigs.sort();
    (g.vertex_count(), g.edge_count(), sigs)
}

/// Inserts `g` into `pool` unless an isomorphic graph is already present.
fn insert_up_to_iso(
    pool: &mut Vec<Graph>,
    buckets: &mut HashMap<BucketKey, Vec<usize>>,
    g: Graph,
) {
    let key = bucket_key(&g);
    let entry = buckets.entry(key).or_default();
    for &idx in entry.iter() {
        if is_isomorphic(&pool[idx], &g).is_some() {
            return;
        }
    }
    entry.push(pool.len());
    pool.push(g);
}

fn connected_levels(max_edges: usize) -> Vec<Vec<Graph>> {
    // Level m holds the connected graphs with exactly m edges and no
    // isolated vertices (so at most m + 1 vertices). Every connected graph
    // with m + 1 edges arises from one with m edges by adding either a
    // cycle-closing edge or a pendant vertex.
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty(1)]];
    for m in 0..max_edges {
        let mut pool: Vec<Graph> = Vec::new();
        let mut buckets = HashMap::new();
        for g in &levels[m] {
            let n = g.vertex_count();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if !g.has_edge(u, v) {
                        let mut edges: Vec<(u32, u32)> =
                            g.edges().iter().map(|e| e.endpoints()).collect();
                        edges.push((u, v));
                        insert_up_to_iso(&mut pool, &mut buckets, Graph::from_edges(n, edges));
                    }
                }
            }
            for u in 0..n as u32 {
                let mut edges: Vec<(u32, u32)> =
                    g.edges().iter().map(|e| e.endpoints()).collect();
                edges.push((u, n as u32));
                insert_up_to_iso(&mut pool, &mut buckets, Graph::from_edges(n + 1, edges));
            }
        }
        levels.push(pool);
    }
    levels
}

/// All connected graphs with exactly `m` edges (and no isolated vertices),
/// one per isomorphism class. `m = 0` yields the single vertex.
pub fn connected_graphs_with_edge_count(m: usize) -> Vec<Graph> {
    connected_levels(m).pop().unwrap()
}

/// All connected graphs with `1..=max_edges` edges.
pub fn connected_graphs_up_to_edge_count(max_edges: usize) -> Vec<Graph> {
    connected_levels(max_edges)
        .into_iter()
        .skip(1)
        .flatten()
        .collect()
}

/// The shipped atlas corpus: every graph on up to 7 vertices as canonical
/// graph6 strings, one per line, vertex counts ascending.
pub const ATLAS_G6: &str = include_str!("../data/atlas_le7.g6");

/// Renders the atlas in the shipped corpus format. The shipped file must
/// match this output byte for byte.
pub fn render_atlas_g6() -> String {
    let mut out = String::new();
    for g in all_graphs_up_to(MAX_ATLAS_VERTICES) {
        out.push_str(&crate::graph6::emit_graph6(&g).expect("atlas graphs encode"));
        out.push('\n');
    }
    out
}

/// Parses the shipped corpus.
pub fn shipped_atlas() -> Vec<Graph> {
    ATLAS_G6
        .lines()
        .map(|l| crate::graph6::parse_graph6(l).expect("valid shipped graph6"))
        .collect()
}

/// A connected line graph together with one root graph producing it.
pub struct LineGraphEntry {
    pub graph: Graph,
    pub root: Graph,
}

/// All connected line graphs with `min_v..=max_v` vertices, one per
/// isomorphism class, each paired with a connected root graph whose line
/// graph it is. These are exactly the line graphs of connected root graphs
/// with `min_v..=max_v` edges.
pub fn connected_line_graphs(min_v: usize, max_v: usize) -> Vec<LineGraphEntry> {
    let mut out: Vec<LineGraphEntry> = Vec::new();
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    for m in min_v..=max_v {
        for root in connected_graphs_with_edge_count(m) {
            let (lg, _) = root.line_graph();
            let key = bucket_key(&lg);
            let entry = buckets.entry(key).or_default();
            if entry
                .iter()
                .any(|&i| is_isomorphic(&out[i].graph, &lg).is_some())
            {
                continue;
            }
            entry.push(out.len());
            out.push(LineGraphEntry { graph: lg, root });
        }
    }
    out
}
