//! Simple undirected graphs over dense integer vertex ids.
//!
//! Vertices are `0..vertex_count()`. Edges are unordered pairs of distinct
//! vertices, always handled through [`EdgeId`] in normalized `(u, v)` form
//! with `u < v`. All derived data (neighbor lists, edge lists, component
//! lists) is kept sorted so that every operation is deterministic.

use std::fmt;

use thiserror::Error;

/// An undirected edge with normalized endpoints `u < v`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    u: u32,
    v: u32,
}

impl EdgeId {
    /// Normalizes the pair; panics on a self-loop.
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a != b, "self-loop {a}-{b} is not an edge");
        EdgeId {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn endpoints(self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn contains(self, x: u32) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint other than `x`; panics if `x` is not an endpoint.
    pub fn other(self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {x} is not an endpoint of {self:?}");
            self.u
        }
    }

    /// Shared endpoint of two distinct edges, if any. Distinct edges share
    /// at most one vertex.
    pub fn shared_endpoint(self, other: EdgeId) -> Option<u32> {
        if self == other {
            return None;
        }
        if other.contains(self.u) {
            Some(self.u)
        } else if other.contains(self.v) {
            Some(self.v)
        } else {
            None
        }
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn min_vertex(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Sorted intersection of two sets.
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: u32, count: usize },
}

/// A simple undirected graph. Adjacency lists are sorted; no self-loops,
/// no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; panics
    /// on self-loops or out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            assert!(a != b, "self-loop {a}-{b}");
            assert!(
                (a as usize) < n && (b as usize) < n,
                "edge {a}-{b} out of range for {n} vertices"
            );
            g.adj[a as usize].push(b);
            g.adj[b as usize].push(a);
        }
        for nbrs in &mut g.adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.adj.len() as u32
    }

    /// All edges in normalized lexicographic order. This order fixes the
    /// vertex numbering of [`line_graph`](Self::line_graph).
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if v > u {
                    out.push(EdgeId::new(u, v));
                }
            }
        }
        out
    }

    pub fn edges_at(&self, v: u32) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj[v as usize].iter().map(move |&w| EdgeId::new(v, w))
    }

    pub fn is_isolated(&self, v: u32) -> bool {
        self.adj[v as usize].is_empty()
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.adj.len(),
            })
        }
    }

    /// True iff all pairs in `set` are adjacent. Singletons and the empty
    /// set are cliques vacuously.
    pub fn is_clique(&self, set: &VertexSet) -> Result<bool, GraphError> {
        for v in set.iter() {
            self.check_vertex(v)?;
        }
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subgraph induced by `set`, relabeled `0..set.len()` in ascending
    /// original-id order. The returned map sends new ids to original ids.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<u32>), GraphError> {
        for v in set.iter() {
            self.check_vertex(v)?;
        }
        let old_of_new: Vec<u32> = set.iter().collect();
        let mut new_of_old = vec![u32::MAX; self.vertex_count()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let mut sub = Graph::empty(old_of_new.len());
        for (new, &old) in old_of_new.iter().enumerate() {
            sub.adj[new] = self.neighbors(old)
                .iter()
                .filter(|&&w| set.contains(w))
                .map(|&w| new_of_old[w as usize])
                .collect();
            sub.adj[new].sort_unstable();
        }
        Ok((sub, old_of_new))
    }

    /// Partition of the vertices into connected components, ordered by
    /// minimum vertex id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut queue = vec![start];
            seen[start as usize] = true;
            let mut members = Vec::new();
            while let Some(v) = queue.pop() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                    }
                }
            }
            components.push(VertexSet::new(members));
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// The line graph. Vertex `i` of the result corresponds to the `i`-th
    /// edge of `self` in normalized lexicographic order; two vertices are
    /// adjacent iff the edges share an endpoint. The returned vector is
    /// that edge order, i.e. the map from result vertices back to edges.
    pub fn line_graph(&self) -> (Graph, Vec<EdgeId>) {
        let edges = self.edges();
        let mut index_of = std::collections::HashMap::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            index_of.insert(e, i as u32);
        }
        let mut lg = Graph::empty(edges.len());
        // Edges sharing endpoint v form a clique; walk each vertex star once.
        for v in self.vertices() {
            let star: Vec<u32> = self.edges_at(v).map(|e| index_of[&e]).collect();
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    lg.adj[a as usize].push(b);
                    lg.adj[b as usize].push(a);
                }
            }
        }
        for nbrs in &mut lg.adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        (lg, edges)
    }

    /// Vertex-disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count() as u32;
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&w| w + shift).collect()),
        );
        Graph { adj }
    }

    /// Degree sequence in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.adj.iter().map(|n| n.len()).collect();
        ds.sort_unstable();
        ds
    }

    /// Relabels the graph by `perm`, where `perm[old] = new`.
    pub fn relabeled(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for v in self.vertices() {
            let new_v = perm[v as usize] as usize;
            adj[new_v] = self.neighbors(v).iter().map(|&w| perm[w as usize]).collect();
            adj[new_v].sort_unstable();
        }
        Graph { adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.vertex_count())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListParseError {
    #[error("line {line}: expected two vertex ids, got {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: self-loop {v}-{v} rejected")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: invalid vertex count header {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: vertex {vertex} exceeds declared count {count}")]
    BeyondHeader { line: usize, vertex: u32, count: usize },
}

/// Parses the edge-list text format: an optional first line `n=<count>`,
/// then one `u v` pair per line. `#` starts a comment; blank lines are
/// ignored. Without a header the vertex count is the maximum id plus one.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListParseError> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut declared: Option<usize> = None;
    let mut saw_data = false;
    let mut max_id: Option<u32> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if saw_data || declared.is_some() {
                return Err(EdgeListParseError::Malformed {
                    line: line_no,
                    found: line.to_string(),
                });
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| EdgeListParseError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                })?;
            declared = Some(n);
            continue;
        }
        saw_data = true;
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(EdgeListParseError::Malformed {
                    line: line_no,
                    found: line.to_string(),
                })
            }
        };
        let parse_id = |s: &str| -> Result<u32, EdgeListParseError> {
            s.parse().map_err(|_| EdgeListParseError::Malformed {
                line: line_no,
                found: line.to_string(),
            })
        };
        let (a, b) = (parse_id(a)?, parse_id(b)?);
        if a == b {
            return Err(EdgeListParseError::SelfLoop { line: line_no, v: a });
        }
        if let Some(n) = declared {
            let worst = a.max(b);
            if worst as usize >= n {
                return Err(EdgeListParseError::BeyondHeader {
                    line: line_no,
                    vertex: worst,
                    count: n,
                });
            }
        }
        max_id = Some(max_id.map_or(a.max(b), |m| m.max(a.max(b))));
        edges.push((a, b));
    }

    let n = declared.unwrap_or(match max_id {
        Some(m) => m as usize + 1,
        None => 0,
    });
    Ok(Graph::from_edges(n, edges))
}

/// Renders a graph in the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.vertex_count());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_clique(&VertexSet::new(vec![0, 1, 2])).unwrap());
    }

    #[test]
    fn parse_header_only() {
        let g = parse_edge_list("n=3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_duplicate_edge_collapses() {
        let g = parse_edge_list("0 1\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("0 1\nbogus"),
            Err(EdgeListParseError::Malformed {
                line: 2,
                found: "bogus".into()
            })
        );
        assert_eq!(
            parse_edge_list("0 1\n2 2"),
            Err(EdgeListParseError::SelfLoop { line: 2, v: 2 })
        );
        assert_eq!(
            parse_edge_list("n=2\n0 5"),
            Err(EdgeListParseError::BeyondHeader {
                line: 2,
                vertex: 5,
                count: 2
            })
        );
    }

    #[test]
    fn parse_comments_and_blanks() {
        let g = parse_edge_list("# a triangle\nn=4\n\n0 1 # first\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]);
        let text = to_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_of_k4_is_k3() {
        let k4 = complete(4);
        let (sub, map) = k4
            .induced_subgraph(&VertexSet::new(vec![0, 2, 3]))
            .unwrap();
        assert_eq!(sub, complete(3));
        assert_eq!(map, vec![0, 2, 3]);
    }

    #[test]
    fn induced_subgraph_of_c5_path() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let (sub, _) = c5.induced_subgraph(&VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(sub, Graph::from_edges(3, [(0, 1), (1, 2)]));
    }

    #[test]
    fn induced_subgraph_of_claw_center_and_leaf() {
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let (sub, _) = claw.induced_subgraph(&VertexSet::new(vec![0, 2])).unwrap();
        assert_eq!(sub, Graph::from_edges(2, [(0, 1)]));
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let g = Graph::empty(2);
        assert!(g.induced_subgraph(&VertexSet::new(vec![0, 7])).is_err());
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = complete(3).disjoint_union(&complete(2));
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 3);
        assert_eq!(comps[1].len(), 2);

        assert_eq!(Graph::empty(4).connected_components().len(), 4);
        assert_eq!(complete(4).connected_components().len(), 1);
    }

    #[test]
    fn clique_checks() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(!p3.is_clique(&VertexSet::new(vec![0, 1, 2])).unwrap());
        assert!(p3.is_clique(&VertexSet::singleton(2)).unwrap());
        assert!(complete(4).is_clique(&VertexSet::new(vec![1, 2, 3])).unwrap());
        assert!(p3.is_clique(&VertexSet::new(vec![9])).is_err());
    }

    #[test]
    fn line_graph_of_edgeless_has_no_vertices() {
        let (lg, map) = Graph::empty(5).line_graph();
        assert_eq!(lg.vertex_count(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn line_graph_degree_law_small() {
        // deg_L({u,v}) = deg(u) + deg(v) - 2
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let (lg, edges) = g.line_graph();
        for (i, e) in edges.iter().enumerate() {
            let (u, v) = e.endpoints();
            assert_eq!(lg.degree(i as u32), g.degree(u) + g.degree(v) - 2);
        }
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, edges)
    }
}
