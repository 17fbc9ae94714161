//! Exact chromatic number by branch and bound.

use thiserror::Error;

use crate::graph::Graph;
use crate::iso::CapExceeded;

/// Default vertex cap for [`chromatic_number_exact`].
pub const DEFAULT_COLORING_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// Exact chromatic number. The chromatic number of a disjoint union is the
/// maximum over components, so each component is solved independently:
/// a greedy clique gives a lower bound, greedy coloring an upper bound,
/// and the gap is closed by branch and bound over color assignments.
pub fn chromatic_number_exact(g: &Graph, cap: usize) -> Result<usize, ColoringError> {
    if g.vertex_count() > cap {
        return Err(CapExceeded {
            what: "chromatic_number_exact",
            cap,
            actual: g.vertex_count(),
        }
        .into());
    }
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    let mut best = 1;
    for comp in g.connected_components() {
        let (sub, _) = g.induced_subgraph(&comp).expect("component in range");
        best = best.max(component_chromatic(&sub));
    }
    Ok(best)
}

fn component_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    // Vertices in descending degree order; greedy bounds first.
    let mut order: Vec<u32> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let lower = greedy_clique_size(g, &order);
    let upper = greedy_coloring_count(g, &order);
    if lower == upper {
        return lower;
    }

    let mut colors = vec![usize::MAX; n];
    for k in lower..upper {
        colors.fill(usize::MAX);
        if colorable(g, &order, 0, k, &mut colors) {
            return k;
        }
    }
    upper
}

fn greedy_clique_size(g: &Graph, order: &[u32]) -> usize {
    let mut clique: Vec<u32> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.len()
}

fn greedy_coloring_count(g: &Graph, order: &[u32]) -> usize {
    let mut colors = vec![usize::MAX; g.vertex_count()];
    let mut used = 0;
    for &v in order {
        let mut taken: Vec<bool> = vec![false; used + 1];
        for &w in g.neighbors(v) {
            let c = colors[w as usize];
            if c != usize::MAX {
                taken[c] = true;
            }
        }
        let c = (0..=used).find(|&c| !taken[c]).unwrap();
        colors[v as usize] = c;
        used = used.max(c + 1);
    }
    used
}

fn colorable(g: &Graph, order: &[u32], idx: usize, k: usize, colors: &mut Vec<usize>) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let mut taken = vec![false; k];
    let mut max_used = 0;
    for &u in &order[..idx] {
        max_used = max_used.max(colors[u as usize] + 1);
    }
    for &w in g.neighbors(v) {
        let c = colors[w as usize];
        if c != usize::MAX {
            taken[c] = true;
        }
    }
    // Symmetry break: allow at most one brand-new color.
    let limit = k.min(max_used + 1);
    for (c, &is_taken) in taken.iter().enumerate().take(limit) {
        if !is_taken {
            colors[v as usize] = c;
            if colorable(g, order, idx + 1, k, colors) {
                return true;
            }
            colors[v as usize] = usize::MAX;
        }
    }
    false
}
