//! Line graph decompositions and line graph relations.
//!
//! A decomposition is a collection of cliques partitioning the edge set
//! with every non-isolated vertex in exactly two members and every
//! isolated vertex in exactly one. A relation is the induced partition of
//! the edges; its classes are full clique edge sets and no vertex meets
//! more than two classes. The two views are interconvertible
//! ([`relation_of`] / [`decomposition_of`]) and that bijection is pinned
//! down by the test suite.
//!
//! Enumeration is an exhaustive per-component search: repeatedly take the
//! least uncovered edge and branch over every clique that could be its
//! class, with eager dead-state pruning and failure memoization keyed by
//! the covered-edge set and per-vertex membership counts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::iso::{is_isomorphic, CapExceeded};

/// Default cap on the vertex count of [`enumerate_decompositions`].
pub const DEFAULT_ENUMERATE_CAP: usize = 16;
/// Default per-component cap for the decomposition search in recognition.
pub const DEFAULT_KRAUSZ_COMPONENT_CAP: usize = 24;
/// Default per-component cap for [`canonical_relation`].
pub const DEFAULT_CANONICAL_COMPONENT_CAP: usize = 16;

/// A failed decomposition or relation check, with enough evidence to
/// re-check the failure. Checks run in a fixed order: cliques first, then
/// the edge partition, then per-vertex cardinalities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("set {set:?} is not a clique: {pair:?} not adjacent")]
    NotClique { set: VertexSet, pair: (u32, u32) },
    #[error("class of {set:?} is not a full clique edge set: edge {edge} is assigned elsewhere")]
    ClassIncomplete { set: VertexSet, edge: EdgeId },
    #[error("edge {edge} is covered by more than one set")]
    EdgeOverlap { edge: EdgeId },
    #[error("edge {edge} is not covered")]
    EdgeUncovered { edge: EdgeId },
    #[error("vertex {vertex} lies in {count} sets, expected {expected}")]
    VertexCardinality {
        vertex: u32,
        count: usize,
        expected: usize,
    },
    #[error("edge {edge} is assigned to more than one class")]
    NotEquivalence { edge: EdgeId },
    #[error("vertex {vertex} is incident to classes {labels:?}, more than two")]
    TooManyClassesAtVertex { vertex: u32, labels: Vec<usize> },
}

/// A collection of vertex sets over a host graph, kept sorted. Candidate
/// decompositions are built with [`Decomposition::new`] and checked with
/// [`validate_decomposition`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Decomposition {
    sets: Vec<VertexSet>,
}

impl Decomposition {
    /// Sorts the sets; duplicates are kept and will fail validation.
    pub fn new(sets: Vec<VertexSet>) -> Self {
        for s in &sets {
            assert!(!s.is_empty(), "decomposition sets must be nonempty");
        }
        let mut sets = sets;
        sets.sort();
        Decomposition { sets }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Checks the decomposition axioms on `l`, returning the first violation
/// in documented order. Sets must reference valid vertices.
pub fn validate_decomposition(l: &Graph, d: &Decomposition) -> Result<(), Violation> {
    // Cliques first.
    for set in &d.sets {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !l.has_edge(u, v) {
                    return Err(Violation::NotClique {
                        set: set.clone(),
                        pair: (u, v),
                    });
                }
            }
        }
    }
    // Edge partition.
    let edges = l.edges();
    let index_of: HashMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut covered = vec![false; edges.len()];
    for set in &d.sets {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                let idx = index_of[&EdgeId::new(u, v)];
                if covered[idx] {
                    return Err(Violation::EdgeOverlap {
                        edge: EdgeId::new(u, v),
                    });
                }
                covered[idx] = true;
            }
        }
    }
    if let Some(idx) = covered.iter().position(|&c| !c) {
        return Err(Violation::EdgeUncovered { edge: edges[idx] });
    }
    // Cardinalities: two sets per non-isolated vertex, one per isolated.
    let mut count = vec![0usize; l.vertex_count()];
    for set in &d.sets {
        for v in set.iter() {
            count[v as usize] += 1;
        }
    }
    for v in l.vertices() {
        let expected = if l.is_isolated(v) { 1 } else { 2 };
        if count[v as usize] != expected {
            return Err(Violation::VertexCardinality {
                vertex: v,
                count: count[v as usize],
                expected,
            });
        }
    }
    Ok(())
}

/// A partition of the host graph's edges into classes, each meant to be
/// the edge set of a clique. Class labels are dense and canonical: class
/// `k` is the `k`-th class in order of least edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineGraphRelation {
    edges: Vec<EdgeId>,
    class_of: Vec<usize>,
    classes: Vec<Vec<EdgeId>>,
}

impl LineGraphRelation {
    /// Builds a relation from a label per edge of `l`, in the order of
    /// `l.edges()`. Labels are renumbered canonically.
    pub fn from_assignment(l: &Graph, assignment: &[usize]) -> Self {
        let edges = l.edges();
        assert_eq!(edges.len(), assignment.len(), "assignment must be total");
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(assignment.len());
        for &raw in assignment {
            let next = relabel.len();
            class_of.push(*relabel.entry(raw).or_insert(next));
        }
        let mut classes = vec![Vec::new(); relabel.len()];
        for (i, &label) in class_of.iter().enumerate() {
            classes[label].push(edges[i]);
        }
        LineGraphRelation {
            edges,
            class_of,
            classes,
        }
    }

    /// Builds a relation from explicit class edge lists. Every edge of `l`
    /// must appear in exactly one class; a pair that is not an edge of `l`
    /// fails as [`Violation::NotClique`].
    pub fn from_class_lists(l: &Graph, lists: &[Vec<EdgeId>]) -> Result<Self, Violation> {
        let edges = l.edges();
        let index_of: HashMap<EdgeId, usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut assignment = vec![usize::MAX; edges.len()];
        for (label, class) in lists.iter().enumerate() {
            for &e in class {
                let (u, v) = e.endpoints();
                let Some(&idx) = index_of.get(&e) else {
                    return Err(Violation::NotClique {
                        set: VertexSet::new(vec![u, v]),
                        pair: (u, v),
                    });
                };
                if assignment[idx] != usize::MAX && assignment[idx] != label {
                    return Err(Violation::NotEquivalence { edge: e });
                }
                assignment[idx] = label;
            }
        }
        if let Some(idx) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Violation::EdgeUncovered { edge: edges[idx] });
        }
        Ok(LineGraphRelation::from_assignment(l, &assignment))
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn label_of(&self, e: EdgeId) -> Option<usize> {
        self.edges
            .binary_search(&e)
            .ok()
            .map(|i| self.class_of[i])
    }

    pub fn related(&self, e: EdgeId, f: EdgeId) -> bool {
        match (self.label_of(e), self.label_of(f)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// The normalized label vector over the host edge order; two relations
    /// on the same graph are equal iff these vectors are equal.
    pub fn assignment(&self) -> &[usize] {
        &self.class_of
    }

    /// Labels of the classes incident to `v`, ascending.
    pub fn classes_at(&self, v: u32) -> Vec<usize> {
        let mut labels: Vec<usize> = self
            .edges
            .iter()
            .zip(&self.class_of)
            .filter(|(e, _)| e.contains(v))
            .map(|(_, &c)| c)
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }
}

/// Checks the relation axioms on `l`: each class is the full edge set of a
/// clique, and no vertex is incident to more than two classes.
pub fn validate_relation(l: &Graph, r: &LineGraphRelation) -> Result<(), Violation> {
    assert_eq!(
        r.edges,
        l.edges(),
        "relation is not over this graph's edge set"
    );
    for class in &r.classes {
        let set: VertexSet = class
            .iter()
            .flat_map(|e| {
                let (u, v) = e.endpoints();
                [u, v]
            })
            .collect();
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !l.has_edge(u, v) {
                    return Err(Violation::NotClique {
                        set,
                        pair: (u, v),
                    });
                }
            }
        }
        // All pairs are edges; the class must contain every one of them.
        if class.len() != vs.len() * (vs.len() - 1) / 2 {
            let missing = (0..vs.len())
                .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
                .map(|(i, j)| EdgeId::new(vs[i], vs[j]))
                .find(|e| !class.contains(e))
                .expect("some pair is missing");
            return Err(Violation::ClassIncomplete { set, edge: missing });
        }
    }
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); l.vertex_count()];
    for (e, &label) in r.edges.iter().zip(&r.class_of) {
        let (u, v) = e.endpoints();
        for x in [u, v] {
            if !at[x as usize].contains(&label) {
                at[x as usize].push(label);
            }
        }
    }
    for v in l.vertices() {
        if at[v as usize].len() > 2 {
            let mut labels = at[v as usize].clone();
            labels.sort_unstable();
            return Err(Violation::TooManyClassesAtVertex { vertex: v, labels });
        }
    }
    Ok(())
}

/// The relation induced by a decomposition: two edges are related iff some
/// set covers both. Fails with the decomposition's violation if invalid.
pub fn relation_of(l: &Graph, d: &Decomposition) -> Result<LineGraphRelation, Violation> {
    validate_decomposition(l, d)?;
    let edges = l.edges();
    let index_of: HashMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut assignment = vec![usize::MAX; edges.len()];
    for (label, set) in d.sets.iter().enumerate() {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                assignment[index_of[&EdgeId::new(u, v)]] = label;
            }
        }
    }
    Ok(LineGraphRelation::from_assignment(l, &assignment))
}

/// The decomposition determined by a relation: the class cliques, plus a
/// forced singleton for every vertex incident to fewer than two classes.
pub fn decomposition_of(l: &Graph, r: &LineGraphRelation) -> Result<Decomposition, Violation> {
    validate_relation(l, r)?;
    let mut sets: Vec<VertexSet> = r
        .classes
        .iter()
        .map(|class| {
            class
                .iter()
                .flat_map(|e| {
                    let (u, v) = e.endpoints();
                    [u, v]
                })
                .collect()
        })
        .collect();
    for v in l.vertices() {
        let incident = r.classes_at(v).len();
        if incident < 2 {
            // Isolated vertices land here with zero incident classes.
            sets.push(VertexSet::singleton(v));
        }
    }
    let d = Decomposition::new(sets);
    debug_assert_eq!(validate_decomposition(l, &d), Ok(()));
    Ok(d)
}

/// Restricts a valid relation to the subgraph induced by `u`. Returns the
/// induced subgraph, its new-to-old vertex map, and the restricted
/// relation with labels renumbered. The result always validates;
/// restriction preserves the relation axioms.
pub fn restrict_relation(
    l: &Graph,
    r: &LineGraphRelation,
    u: &VertexSet,
) -> Result<(Graph, Vec<u32>, LineGraphRelation), Violation> {
    validate_relation(l, r)?;
    let (sub, old_of_new) = l
        .induced_subgraph(u)
        .expect("restriction set references valid vertices");
    let assignment: Vec<usize> = sub
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            let old = EdgeId::new(old_of_new[a as usize], old_of_new[b as usize]);
            r.label_of(old).expect("edge of induced subgraph")
        })
        .collect();
    let restricted = LineGraphRelation::from_assignment(&sub, &assignment);
    assert_eq!(
        validate_relation(&sub, &restricted),
        Ok(()),
        "restriction of a valid relation must validate"
    );
    Ok((sub, old_of_new, restricted))
}

/// True iff some clique of `l` contains both edges, i.e. the union of
/// their endpoints induces a clique. Every valid relation is a subset of
/// this relation.
pub fn clique_related(l: &Graph, e: EdgeId, f: EdgeId) -> bool {
    let (a, b) = e.endpoints();
    let (c, d) = f.endpoints();
    let set = VertexSet::new(vec![a, b, c, d]);
    l.is_clique(&set).unwrap_or(false)
}

/// Connected, at least 7 vertices. Such induced subgraphs of line graphs
/// are never singular, so their decomposition is unique.
pub fn is_nice(g: &Graph) -> bool {
    g.vertex_count() >= 7 && g.is_connected()
}

/// Isomorphism test against the four singular graphs.
pub fn is_singular(g: &Graph) -> bool {
    if !(3..=6).contains(&g.vertex_count()) {
        return false;
    }
    crate::catalog::singular_graphs()
        .iter()
        .any(|s| is_isomorphic(g, s).is_some())
}

/// The components of `l` whose induced subgraphs are singular.
pub fn singular_components(l: &Graph) -> Vec<VertexSet> {
    l.connected_components()
        .into_iter()
        .filter(|c| {
            let (sub, _) = l.induced_subgraph(c).expect("component in range");
            is_singular(&sub)
        })
        .collect()
}

// ---------------------------------------------------------------------
// Exhaustive decomposition search over one connected component.
// ---------------------------------------------------------------------

const MAX_COMPONENT_VERTICES: usize = 64;

struct ComponentSearch<'a> {
    g: &'a Graph,
    edges: Vec<EdgeId>,
    edge_idx: Vec<usize>, // n * n matrix
    adj: Vec<u64>,
    covered: Vec<u64>,
    uncovered_at: Vec<u32>,
    slots: Vec<u8>,
    cliques: Vec<u64>,
    solutions: Vec<Vec<u64>>,
    stop_at_first: bool,
    failed: std::collections::HashSet<(Box<[u64]>, u128)>,
}

impl<'a> ComponentSearch<'a> {
    fn new(g: &'a Graph, stop_at_first: bool) -> Self {
        let n = g.vertex_count();
        assert!(n <= MAX_COMPONENT_VERTICES);
        let edges = g.edges();
        let mut edge_idx = vec![usize::MAX; n * n];
        for (i, e) in edges.iter().enumerate() {
            let (u, v) = e.endpoints();
            edge_idx[u as usize * n + v as usize] = i;
            edge_idx[v as usize * n + u as usize] = i;
        }
        let mut adj = vec![0u64; n];
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                adj[v as usize] |= 1 << w;
            }
        }
        ComponentSearch {
            g,
            covered: vec![0u64; edges.len().div_ceil(64)],
            uncovered_at: (0..n as u32).map(|v| g.degree(v) as u32).collect(),
            slots: vec![0; n],
            edges,
            edge_idx,
            adj,
            cliques: Vec::new(),
            solutions: Vec::new(),
            stop_at_first,
            failed: std::collections::HashSet::new(),
        }
    }

    fn eidx(&self, u: u32, v: u32) -> usize {
        self.edge_idx[u as usize * self.g.vertex_count() + v as usize]
    }

    fn is_covered(&self, idx: usize) -> bool {
        self.covered[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn state_key(&self) -> (Box<[u64]>, u128) {
        let mut slots_packed = 0u128;
        for (i, &s) in self.slots.iter().enumerate() {
            slots_packed |= (s as u128) << (2 * i);
        }
        (self.covered.clone().into_boxed_slice(), slots_packed)
    }

    /// Covers the clique's edges and bumps membership counts; returns
    /// false (after rolling back) when a vertex becomes full while still
    /// having uncovered incident edges.
    fn apply(&mut self, q: u64) -> bool {
        let members: Vec<u32> = bits(q).collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                let idx = self.eidx(u, v);
                debug_assert!(!self.is_covered(idx));
                self.covered[idx / 64] |= 1 << (idx % 64);
                self.uncovered_at[u as usize] -= 1;
                self.uncovered_at[v as usize] -= 1;
            }
        }
        for &u in &members {
            self.slots[u as usize] += 1;
        }
        let dead = members
            .iter()
            .any(|&u| self.slots[u as usize] == 2 && self.uncovered_at[u as usize] > 0);
        if dead {
            self.unapply(q);
            return false;
        }
        self.cliques.push(q);
        true
    }

    fn unapply(&mut self, q: u64) {
        let members: Vec<u32> = bits(q).collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                let idx = self.eidx(u, v);
                self.covered[idx / 64] &= !(1 << (idx % 64));
                self.uncovered_at[u as usize] += 1;
                self.uncovered_at[v as usize] += 1;
            }
        }
        for &u in &members {
            self.slots[u as usize] -= 1;
        }
    }

    fn run(&mut self) {
        self.recurse();
    }

    /// Returns true when at least one completion exists below this state.
    fn recurse(&mut self) -> bool {
        let first_uncovered = (0..self.edges.len()).find(|&i| !self.is_covered(i));
        let Some(eidx) = first_uncovered else {
            self.solutions.push(self.cliques.clone());
            return true;
        };
        let key = self.state_key();
        if self.failed.contains(&key) {
            return false;
        }
        let (u, v) = self.edges[eidx].endpoints();
        let mut found = false;
        if self.slots[u as usize] < 2 && self.slots[v as usize] < 2 {
            // Candidates for extending the class of edge (u, v): common
            // neighbors with a free slot and uncovered edges to both ends.
            let mut cand = self.adj[u as usize] & self.adj[v as usize];
            let mut filtered = 0u64;
            for w in bits(cand) {
                if self.slots[w as usize] < 2
                    && !self.is_covered(self.eidx(w, u))
                    && !self.is_covered(self.eidx(w, v))
                {
                    filtered |= 1 << w;
                }
            }
            cand = filtered;
            let base = (1u64 << u) | (1u64 << v);
            found = self.extend_clique(base, cand);
        }
        if !found {
            self.failed.insert(key);
        }
        found
    }

    /// Tries `q` itself as the class, then every extension by a vertex
    /// above the current maximum, enumerating each candidate clique once.
    fn extend_clique(&mut self, q: u64, cand: u64) -> bool {
        let mut found = false;
        if self.apply(q) {
            if self.recurse() {
                found = true;
            }
            let q = self.cliques.pop().expect("clique just pushed");
            self.unapply(q);
            if found && self.stop_at_first {
                return true;
            }
        }
        for w in bits(cand) {
            // Extensions must stay cliques with all internal edges
            // uncovered relative to the new member.
            let mut next = cand & self.adj[w as usize] & !((1u64 << (w + 1)) - 1);
            let mut filtered = 0u64;
            for x in bits(next) {
                if !self.is_covered(self.eidx(x, w)) {
                    filtered |= 1 << x;
                }
            }
            next = filtered;
            let mut ok = true;
            for x in bits(q) {
                if self.is_covered(self.eidx(x, w)) {
                    ok = false;
                    break;
                }
            }
            if !ok || self.slots[w as usize] >= 2 {
                continue;
            }
            if self.extend_clique(q | (1 << w), next) {
                found = true;
                if self.stop_at_first {
                    return true;
                }
            }
        }
        found
    }
}

fn bits(mask: u64) -> BitIter {
    BitIter(mask)
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// All decompositions of one connected component (given as a standalone
/// graph), as sorted lists of vertex sets; empty iff it is not a line
/// graph. When `stop_at_first` is set, at most one decomposition is
/// returned: the first in canonical search order, which for a connected
/// graph on 7 or more vertices is also the unique one.
fn component_decompositions(sub: &Graph, stop_at_first: bool) -> Vec<Vec<VertexSet>> {
    let n = sub.vertex_count();
    if n == 0 {
        return vec![Vec::new()];
    }
    if n == 1 {
        return vec![vec![VertexSet::singleton(0)]];
    }
    let mut search = ComponentSearch::new(sub, stop_at_first);
    search.run();
    let mut out: Vec<Vec<VertexSet>> = search
        .solutions
        .iter()
        .map(|cliques| {
            let mut sets: Vec<VertexSet> = cliques
                .iter()
                .map(|&q| BitIter(q).collect::<VertexSet>())
                .collect();
            let mut count = vec![0usize; n];
            for q in cliques {
                for v in BitIter(*q) {
                    count[v as usize] += 1;
                }
            }
            for v in 0..n as u32 {
                if count[v as usize] == 1 && !sub.is_isolated(v) {
                    sets.push(VertexSet::singleton(v));
                }
            }
            sets.sort();
            sets
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The complete, duplicate-free, lexicographically sorted list of
/// decompositions of `l`; empty iff `l` is not a line graph. Searches run
/// per component and the per-component choices are combined.
pub fn enumerate_decompositions(
    l: &Graph,
    cap: usize,
) -> Result<Vec<Decomposition>, CapExceeded> {
    if l.vertex_count() > cap {
        return Err(CapExceeded {
            what: "enumerate_decompositions",
            cap,
            actual: l.vertex_count(),
        });
    }
    let mut per_component: Vec<Vec<Vec<VertexSet>>> = Vec::new();
    for comp in l.connected_components() {
        let (sub, old_of_new) = l.induced_subgraph(&comp).expect("component in range");
        let local = component_decompositions(&sub, false);
        if local.is_empty() {
            return Ok(Vec::new());
        }
        per_component.push(
            local
                .into_iter()
                .map(|sets| {
                    sets.into_iter()
                        .map(|s| s.iter().map(|v| old_of_new[v as usize]).collect())
                        .collect()
                })
                .collect(),
        );
    }
    let mut result: Vec<Vec<VertexSet>> = vec![Vec::new()];
    for comp_choices in per_component {
        let mut next = Vec::with_capacity(result.len() * comp_choices.len());
        for partial in &result {
            for choice in &comp_choices {
                let mut combined = partial.clone();
                combined.extend(choice.iter().cloned());
                next.push(combined);
            }
        }
        result = next;
    }
    let mut out: Vec<Decomposition> = result.into_iter().map(Decomposition::new).collect();
    out.sort();
    debug_assert!(out.iter().all(|d| validate_decomposition(l, d).is_ok()));
    Ok(out)
}

/// Some valid decomposition of `l` if one exists: the lexicographically
/// least, assembled from per-component choices. Components larger than
/// `component_cap` are refused.
pub fn find_decomposition(
    l: &Graph,
    component_cap: usize,
) -> Result<Option<Decomposition>, CapExceeded> {
    let mut sets: Vec<VertexSet> = Vec::new();
    for comp in l.connected_components() {
        if comp.len() > component_cap {
            return Err(CapExceeded {
                what: "decomposition search component",
                cap: component_cap,
                actual: comp.len(),
            });
        }
        let (sub, old_of_new) = l.induced_subgraph(&comp).expect("component in range");
        // Connected graphs on >= 7 vertices have a unique decomposition,
        // so the first hit is already the least one there.
        let local = component_decompositions(&sub, is_nice(&sub));
        let Some(least) = local.into_iter().min() else {
            return Ok(None);
        };
        sets.extend(
            least
                .into_iter()
                .map(|s| s.iter().map(|v| old_of_new[v as usize]).collect::<VertexSet>()),
        );
    }
    Ok(Some(Decomposition::new(sets)))
}

// ---------------------------------------------------------------------
// Canonical relation for graphs with many (finite) components.
// ---------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("component {index} (minimum vertex {min_vertex}) is not a line graph")]
    NotLineGraph { index: usize, min_vertex: u32 },
    #[error("component {index} (minimum vertex {min_vertex}): {source}")]
    ComponentCap {
        index: usize,
        min_vertex: u32,
        source: CapExceeded,
    },
}

/// Shared memo table mapping a rank-labeled component form to its fixed
/// relation. Deterministic computation makes concurrent get-or-compute
/// trivially consistent: all callers derive the same value per key.
#[derive(Default)]
pub struct RelationCache {
    memo: Mutex<HashMap<String, Arc<Vec<usize>>>>,
}

impl RelationCache {
    pub fn new() -> Self {
        RelationCache::default()
    }

    fn get_or_compute(
        &self,
        key: String,
        compute: &dyn Fn() -> Option<Vec<usize>>,
    ) -> Option<Arc<Vec<usize>>> {
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return Some(hit.clone());
        }
        // Computed outside the lock; the value per key is deterministic,
        // so racing computations insert the same relation.
        let value = Arc::new(compute()?);
        let mut memo = self.memo.lock().unwrap();
        Some(memo.entry(key).or_insert(value).clone())
    }
}

/// The canonical relation of a line graph with small components.
///
/// Each component is relabeled by the rank of its vertices in the global
/// ascending order, producing a labeled form shared by identically-shaped
/// components. A fixed relation is chosen once per labeled form — the one
/// with the lexicographically least normalized label vector over the
/// form's edge order — and copied back through the rank maps, so
/// components with the same form always receive the same relation.
///
/// Uses a run-local memo table with no synchronization; see
/// [`canonical_relation_cached`] to share the table across calls.
pub fn canonical_relation(
    l: &Graph,
    component_cap: usize,
) -> Result<LineGraphRelation, CanonicalError> {
    let mut memo: HashMap<String, Arc<Vec<usize>>> = HashMap::new();
    canonical_relation_with(l, component_cap, |key, compute| {
        if let Some(hit) = memo.get(&key) {
            return Some(hit.clone());
        }
        let value = Arc::new(compute()?);
        memo.insert(key, value.clone());
        Some(value)
    })
}

/// [`canonical_relation`] with a caller-provided shared memo table, so
/// repeated or concurrent runs over related graphs reuse the same fixed
/// relation per labeled form.
pub fn canonical_relation_cached(
    l: &Graph,
    component_cap: usize,
    cache: &RelationCache,
) -> Result<LineGraphRelation, CanonicalError> {
    canonical_relation_with(l, component_cap, |key, compute| {
        cache.get_or_compute(key, compute)
    })
}

fn canonical_relation_with(
    l: &Graph,
    component_cap: usize,
    mut get_or_compute: impl FnMut(String, &dyn Fn() -> Option<Vec<usize>>) -> Option<Arc<Vec<usize>>>,
) -> Result<LineGraphRelation, CanonicalError> {
    let edges = l.edges();
    let index_of: HashMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut assignment = vec![usize::MAX; edges.len()];
    let mut next_label = 0usize;
    for (index, comp) in l.connected_components().into_iter().enumerate() {
        let min_vertex = comp.min_vertex().expect("components are nonempty");
        if comp.len() > component_cap {
            return Err(CanonicalError::ComponentCap {
                index,
                min_vertex,
                source: CapExceeded {
                    what: "canonical_relation component",
                    cap: component_cap,
                    actual: comp.len(),
                },
            });
        }
        // Ranked form: induced_subgraph relabels ascending, which is
        // exactly the rank map.
        let (form, old_of_new) = l.induced_subgraph(&comp).expect("component in range");
        let key = emit_graph6(&form).expect("component within graph6 range");
        let chosen = get_or_compute(key, &|| {
            component_decompositions(&form, false)
                .into_iter()
                .map(|sets| {
                    relation_of(&form, &Decomposition::new(sets))
                        .expect("search output validates")
                        .assignment()
                        .to_vec()
                })
                .min()
        });
        let Some(chosen) = chosen else {
            return Err(CanonicalError::NotLineGraph { index, min_vertex });
        };
        let label_base = next_label;
        let mut max_label = 0usize;
        for (form_edge, &label) in form.edges().iter().zip(chosen.iter()) {
            let (a, b) = form_edge.endpoints();
            let global = EdgeId::new(old_of_new[a as usize], old_of_new[b as usize]);
            assignment[index_of[&global]] = label_base + label;
            max_label = max_label.max(label);
        }
        if !form.edges().is_empty() {
            next_label = label_base + max_label + 1;
        }
    }
    let relation = LineGraphRelation::from_assignment(l, &assignment);
    debug_assert_eq!(validate_relation(l, &relation), Ok(()));
    Ok(relation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete, k0_truncation, k3, octahedron, path, DEFAULT_K0_CAP};

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::new(ids.to_vec())
    }

    #[test]
    fn k3_has_the_two_classic_decompositions() {
        let g = k3();
        let three_edges = Decomposition::new(vec![vs(&[0, 1]), vs(&[1, 2]), vs(&[0, 2])]);
        assert_eq!(validate_decomposition(&g, &three_edges), Ok(()));
        let triangle = Decomposition::new(vec![vs(&[0, 1, 2]), vs(&[0]), vs(&[1]), vs(&[2])]);
        assert_eq!(validate_decomposition(&g, &triangle), Ok(()));

        let bare_triangle = Decomposition::new(vec![vs(&[0, 1, 2])]);
        assert!(matches!(
            validate_decomposition(&g, &bare_triangle),
            Err(Violation::VertexCardinality { vertex: 0, count: 1, expected: 2 })
        ));

        // Sorted order: the singleton {0} sorts before the edge {0, 1}.
        let all = enumerate_decompositions(&g, DEFAULT_ENUMERATE_CAP).unwrap();
        assert_eq!(all, vec![triangle, three_edges]);
    }

    #[test]
    fn validation_violations_in_order() {
        let p3 = path(3);
        let not_clique = Decomposition::new(vec![vs(&[0, 1, 2])]);
        assert_eq!(
            validate_decomposition(&p3, &not_clique),
            Err(Violation::NotClique {
                set: vs(&[0, 1, 2]),
                pair: (0, 2)
            })
        );
        let overlap = Decomposition::new(vec![vs(&[0, 1]), vs(&[0, 1]), vs(&[1, 2])]);
        assert_eq!(
            validate_decomposition(&p3, &overlap),
            Err(Violation::EdgeOverlap {
                edge: EdgeId::new(0, 1)
            })
        );
        let uncovered = Decomposition::new(vec![vs(&[0, 1]), vs(&[0]), vs(&[2])]);
        assert_eq!(
            validate_decomposition(&p3, &uncovered),
            Err(Violation::EdgeUncovered {
                edge: EdgeId::new(1, 2)
            })
        );
    }

    #[test]
    fn relation_round_trips_on_k3() {
        let g = k3();
        let all = enumerate_decompositions(&g, DEFAULT_ENUMERATE_CAP).unwrap();
        let triangle = relation_of(&g, &all[0]).unwrap();
        assert_eq!(triangle.class_count(), 1);
        let three_edges = relation_of(&g, &all[1]).unwrap();
        assert_eq!(three_edges.class_count(), 3);
        assert_eq!(decomposition_of(&g, &triangle).unwrap(), all[0]);
        assert_eq!(decomposition_of(&g, &three_edges).unwrap(), all[1]);
    }

    #[test]
    fn p3_relation() {
        let p3 = path(3);
        let d = Decomposition::new(vec![vs(&[0, 1]), vs(&[1, 2]), vs(&[0]), vs(&[2])]);
        let r = relation_of(&p3, &d).unwrap();
        assert_eq!(r.class_count(), 2);
    }

    #[test]
    fn isolated_vertex_relation_and_decomposition() {
        let g = Graph::empty(1);
        let r = LineGraphRelation::from_assignment(&g, &[]);
        assert_eq!(validate_relation(&g, &r), Ok(()));
        let d = decomposition_of(&g, &r).unwrap();
        assert_eq!(d.sets(), &[vs(&[0])]);
    }

    #[test]
    fn relation_violations() {
        // K4 with each edge its own class: degree-3 vertices meet 3 classes.
        let g = complete(4);
        let assignment: Vec<usize> = (0..g.edge_count()).collect();
        let r = LineGraphRelation::from_assignment(&g, &assignment);
        assert!(matches!(
            validate_relation(&g, &r),
            Err(Violation::TooManyClassesAtVertex { vertex: 0, .. })
        ));

        // P3 with both edges in one class: endpoints not adjacent.
        let p3 = path(3);
        let r = LineGraphRelation::from_assignment(&p3, &[0, 0]);
        assert!(matches!(
            validate_relation(&p3, &r),
            Err(Violation::NotClique { .. })
        ));

        // K3 one class is fine.
        let r = LineGraphRelation::from_assignment(&k3(), &[0, 0, 0]);
        assert_eq!(validate_relation(&k3(), &r), Ok(()));
    }

    #[test]
    fn class_lists_build_errors() {
        let g = k3();
        let e01 = EdgeId::new(0, 1);
        let e02 = EdgeId::new(0, 2);
        let e12 = EdgeId::new(1, 2);
        assert!(matches!(
            LineGraphRelation::from_class_lists(&g, &[vec![e01, e02], vec![e02, e12]]),
            Err(Violation::NotEquivalence { .. })
        ));
        assert!(matches!(
            LineGraphRelation::from_class_lists(&g, &[vec![e01, e02]]),
            Err(Violation::EdgeUncovered { .. })
        ));
        let ok = LineGraphRelation::from_class_lists(&g, &[vec![e01], vec![e02], vec![e12]]);
        assert_eq!(ok.unwrap().class_count(), 3);
    }

    #[test]
    fn restriction_of_octahedron_relation() {
        // The octahedron as the line graph of K4: classes are the four
        // vertex stars, which appear here as four of the eight faces.
        let (lg, edges) = complete(4).line_graph();
        assert!(is_isomorphic(&lg, &octahedron()).is_some());
        let mut assignment = vec![0usize; lg.edge_count()];
        for (i, e) in lg.edges().iter().enumerate() {
            let (a, b) = e.endpoints();
            let shared = edges[a as usize]
                .shared_endpoint(edges[b as usize])
                .expect("adjacent line graph vertices share a root vertex");
            assignment[i] = shared as usize;
        }
        let r = LineGraphRelation::from_assignment(&lg, &assignment);
        assert_eq!(validate_relation(&lg, &r), Ok(()));
        assert_eq!(r.class_count(), 4);

        // Restricting to a class triangle keeps one class; restricting to
        // any other triangle splits into three.
        let mut seen = std::collections::HashSet::new();
        for comp in lg.connected_components() {
            assert_eq!(comp.len(), 6);
        }
        for a in 0..6u32 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let set = vs(&[a, b, c]);
                    if !lg.is_clique(&set).unwrap() {
                        continue;
                    }
                    let (_, _, restricted) = restrict_relation(&lg, &r, &set).unwrap();
                    seen.insert(restricted.class_count());
                }
            }
        }
        assert_eq!(seen, std::collections::HashSet::from([1, 3]));
    }

    #[test]
    fn restriction_to_full_vertex_set_is_identity() {
        let g = k3();
        let r = LineGraphRelation::from_assignment(&g, &[0, 0, 0]);
        let (_, _, restricted) = restrict_relation(&g, &r, &vs(&[0, 1, 2])).unwrap();
        assert_eq!(restricted, r);
    }

    #[test]
    fn restriction_to_edgeless_subset_is_empty() {
        let g = k3();
        let r = LineGraphRelation::from_assignment(&g, &[0, 0, 0]);
        let (_, _, restricted) = restrict_relation(&g, &r, &vs(&[0])).unwrap();
        assert_eq!(restricted.class_count(), 0);
    }

    #[test]
    fn enumerate_examples() {
        // K4 minus an edge has exactly two decompositions.
        let g = crate::catalog::k4_minus();
        assert_eq!(
            enumerate_decompositions(&g, DEFAULT_ENUMERATE_CAP)
                .unwrap()
                .len(),
            2
        );
        // P4 has exactly one.
        assert_eq!(
            enumerate_decompositions(&path(4), DEFAULT_ENUMERATE_CAP)
                .unwrap()
                .len(),
            1
        );
        // The claw has none.
        assert!(enumerate_decompositions(&crate::catalog::claw(), DEFAULT_ENUMERATE_CAP)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumerate_cap() {
        assert!(enumerate_decompositions(&Graph::empty(17), 16).is_err());
    }

    #[test]
    fn find_decomposition_matches_enumeration_minimum() {
        for g in [
            k3(),
            path(4),
            complete(5),
            crate::catalog::k4_minus(),
            octahedron(),
            k3().disjoint_union(&k3()),
            path(3).disjoint_union(&complete(4)),
        ] {
            let found = find_decomposition(&g, DEFAULT_KRAUSZ_COMPONENT_CAP).unwrap();
            let all = enumerate_decompositions(&g, DEFAULT_ENUMERATE_CAP).unwrap();
            assert_eq!(found, all.into_iter().min());
        }
    }

    #[test]
    fn singularity_checks() {
        assert!(is_singular(&octahedron()));
        assert!(is_singular(&k3()));
        assert!(!is_singular(&complete(5)));
        let g = k3().disjoint_union(&path(4));
        let singular = singular_components(&g);
        assert_eq!(singular.len(), 1);
        assert_eq!(singular[0], vs(&[0, 1, 2]));
    }

    #[test]
    fn canonical_relation_identical_components() {
        let g = k3().disjoint_union(&k3());
        let r = canonical_relation(&g, DEFAULT_CANONICAL_COMPONENT_CAP).unwrap();
        assert_eq!(validate_relation(&g, &r), Ok(()));
        // Both triangles get the same copied relation under the rank maps.
        let first: Vec<usize> = r.assignment()[..3].to_vec();
        let second: Vec<usize> = r.assignment()[3..].iter().map(|&l| l - first.iter().max().unwrap() - 1).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn canonical_relation_on_single_edge_components() {
        let g = k0_truncation(1, 2, DEFAULT_K0_CAP).unwrap();
        let r = canonical_relation(&g, DEFAULT_CANONICAL_COMPONENT_CAP).unwrap();
        assert_eq!(r.class_count(), 2);
        for class in r.classes() {
            assert_eq!(class.len(), 1);
        }
    }

    #[test]
    fn canonical_relation_shared_cache_is_consistent() {
        let g = k3().disjoint_union(&path(4)).disjoint_union(&k3());
        let local = canonical_relation(&g, DEFAULT_CANONICAL_COMPONENT_CAP).unwrap();
        let cache = RelationCache::new();
        let results: Vec<LineGraphRelation> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..4)
                .map(|_| {
                    scope.spawn(|| {
                        canonical_relation_cached(&g, DEFAULT_CANONICAL_COMPONENT_CAP, &cache)
                            .unwrap()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in results {
            assert_eq!(r, local);
        }
    }

    #[test]
    fn canonical_relation_rejects_non_line_graphs() {
        let g = k3().disjoint_union(&crate::catalog::claw());
        let err = canonical_relation(&g, DEFAULT_CANONICAL_COMPONENT_CAP).unwrap_err();
        assert_eq!(
            err,
            CanonicalError::NotLineGraph {
                index: 1,
                min_vertex: 3
            }
        );
    }

    #[test]
    fn clique_star_relation_contains_relations() {
        let g = octahedron();
        for d in enumerate_decompositions(&g, DEFAULT_ENUMERATE_CAP).unwrap() {
            let r = relation_of(&g, &d).unwrap();
            for class in r.classes() {
                for (i, &e) in class.iter().enumerate() {
                    for &f in &class[i + 1..] {
                        assert!(clique_related(&g, e, f));
                    }
                }
            }
        }
    }
}
