#![allow(dead_code)] // each test target uses a subset of these helpers

//! Shared helpers for the integration suites: a tiny deterministic PRNG
//! (so frozen expected values never drift), random graph generation, and
//! the family of all line graphs up to a vertex budget, assembled as
//! multisets of connected line graphs.

use linegraph_core::atlas::connected_line_graphs;
use linegraph_core::graph::Graph;

/// splitmix64; deterministic across platforms.
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, permille: u64) -> bool {
        self.next_u64() % 1000 < permille
    }
}

/// G(n, p) with p given in permille.
pub fn random_graph(n: usize, permille: u64, rng: &mut Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.chance(permille) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut Rng) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i + 1));
    }
    perm
}

/// Every line graph with at most `max_vertices` vertices, one per
/// isomorphism class: all multisets of connected line graphs whose sizes
/// sum to at most the budget. The multiset of components is an
/// isomorphism invariant, so the family is duplicate-free.
pub fn all_line_graphs_up_to(max_vertices: usize) -> Vec<Graph> {
    let pool: Vec<Graph> = connected_line_graphs(1, max_vertices)
        .into_iter()
        .map(|e| e.graph)
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        pool: &[Graph],
        start: usize,
        budget: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Graph>,
    ) {
        if !stack.is_empty() {
            let mut g = Graph::empty(0);
            for &i in stack.iter() {
                g = g.disjoint_union(&pool[i]);
            }
            out.push(g);
        }
        for i in start..pool.len() {
            let size = pool[i].vertex_count();
            if size <= budget {
                stack.push(i);
                rec(pool, i, budget - size, stack, out);
                stack.pop();
            }
        }
    }
    rec(&pool, 0, max_vertices, &mut stack, &mut out);
    out
}

/// Independent enumeration of all valid relations on `l` as normalized
/// label vectors over `l.edges()`, by direct backtracking over edge-class
/// assignments under the relation axioms. This is an oracle for the
/// decomposition-based route and never calls into the search under test.
pub fn relations_by_edge_assignment(l: &Graph) -> Vec<Vec<usize>> {
    let edges = l.edges();
    let m = edges.len();
    let mut index_of = std::collections::HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        index_of.insert(e, i);
    }
    struct Class {
        vertices: Vec<u32>,
        edge_count: usize,
    }
    struct Search<'a> {
        l: &'a Graph,
        edges: &'a [linegraph_core::EdgeId],
        index_of: &'a std::collections::HashMap<linegraph_core::EdgeId, usize>,
        assign: Vec<usize>,
        classes: Vec<Class>,
        classes_at: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn class_is_complete(&self, c: usize) -> bool {
            let k = self.classes[c].vertices.len();
            self.classes[c].edge_count == k * (k - 1) / 2
        }

        fn try_assign(&mut self, i: usize, c: usize) -> Option<(Vec<u32>, Vec<u32>)> {
            let (u, v) = self.edges[i].endpoints();
            let mut new_vertices = Vec::new();
            for x in [u, v] {
                if !self.classes[c].vertices.contains(&x) {
                    new_vertices.push(x);
                }
            }
            // Adding the edge must keep the class a clique prefix: every
            // pair inside must be an edge, and pairs with a smaller index
            // must already belong to this class.
            for &x in &new_vertices {
                for &y in &self.classes[c].vertices {
                    if x == y {
                        continue;
                    }
                    if !self.l.has_edge(x, y) {
                        return None;
                    }
                    let idx = self.index_of[&linegraph_core::EdgeId::new(x, y)];
                    if idx < i && self.assign[idx] != c {
                        return None;
                    }
                }
            }
            if new_vertices.len() == 2 && !self.l.has_edge(u, v) {
                return None;
            }
            // A vertex may meet at most two classes.
            let mut new_at = Vec::new();
            for &x in [u, v].iter() {
                if !self.classes_at[x as usize].contains(&c) {
                    if self.classes_at[x as usize].len() >= 2 {
                        return None;
                    }
                    new_at.push(x);
                }
            }
            for &x in &new_vertices {
                self.classes[c].vertices.push(x);
            }
            for &x in &new_at {
                self.classes_at[x as usize].push(c);
            }
            self.classes[c].edge_count += 1;
            self.assign[i] = c;
            Some((new_vertices, new_at))
        }

        fn undo(&mut self, i: usize, c: usize, added: (Vec<u32>, Vec<u32>)) {
            self.assign[i] = usize::MAX;
            self.classes[c].edge_count -= 1;
            for _ in 0..added.0.len() {
                self.classes[c].vertices.pop();
            }
            for x in added.1 {
                self.classes_at[x as usize].pop();
            }
        }

        fn rec(&mut self, i: usize) {
            if i == self.edges.len() {
                if (0..self.classes.len()).all(|c| self.class_is_complete(c)) {
                    self.out.push(self.assign.clone());
                }
                return;
            }
            // Existing classes in order, then one fresh class: restricted
            // growth keeps each partition enumerated once.
            for c in 0..self.classes.len() {
                if let Some(added) = self.try_assign(i, c) {
                    self.rec(i + 1);
                    self.undo(i, c, added);
                }
            }
            self.classes.push(Class {
                vertices: Vec::new(),
                edge_count: 0,
            });
            let c = self.classes.len() - 1;
            if let Some(added) = self.try_assign(i, c) {
                self.rec(i + 1);
                self.undo(i, c, added);
            }
            self.classes.pop();
        }
    }
    let mut search = Search {
        l,
        edges: &edges,
        index_of: &index_of,
        assign: vec![usize::MAX; m],
        classes: Vec::new(),
        classes_at: vec![Vec::new(); l.vertex_count()],
        out: Vec::new(),
    };
    search.rec(0);
    search.out
}
