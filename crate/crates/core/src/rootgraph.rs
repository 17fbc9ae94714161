//! Inverse line graph constructions and Whitney lifting.
//!
//! Two routes build a root graph `G` with `L(G)` isomorphic to a given
//! line graph `L`: from a decomposition (sets become vertices, adjacent
//! when they intersect) and from a relation together with its
//! vertex-to-label incidence (labels become vertices; vertices meeting
//! one label hang off it, vertices meeting two labels become the edge
//! between them, and untouched vertices become fresh isolated edges).
//! Both return the witness bijection from root edges onto the vertices of
//! `L` and assert that it is an isomorphism.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexSet};
use crate::iso::{is_isomorphic, IsoWitness};
use crate::krausz::{
    find_decomposition, validate_decomposition, Decomposition, LineGraphRelation, Violation,
};
use crate::recognition::{is_line_graph_beineke, ForbiddenWitness};

/// Role of a vertex of `L` in the relation-based construction: incident
/// to zero, one, or two classes of the incidence relation.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum VertexRole {
    Isolated,
    OneClass,
    TwoClasses,
}

/// A root graph together with the witnessing bijection from its edges
/// onto the vertices of the line graph it was built from.
#[derive(Clone, Debug)]
pub struct RootWitness {
    pub root: Graph,
    /// Root edges in normalized lexicographic order.
    root_edges: Vec<EdgeId>,
    /// `phi[i]` is the `L`-vertex assigned to `root_edges[i]`.
    phi: Vec<u32>,
    /// Indexed by the vertices of `L`.
    pub vertex_roles: Vec<VertexRole>,
}

impl RootWitness {
    pub fn phi(&self) -> impl Iterator<Item = (EdgeId, u32)> + '_ {
        self.root_edges.iter().copied().zip(self.phi.iter().copied())
    }

    pub fn phi_of(&self, e: EdgeId) -> Option<u32> {
        self.root_edges
            .binary_search(&e)
            .ok()
            .map(|i| self.phi[i])
    }

    pub fn vertices_with_role(&self, role: VertexRole) -> VertexSet {
        self.vertex_roles
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == role)
            .map(|(v, _)| v as u32)
            .collect()
    }

    /// Checks that phi is an isomorphism from the line graph of the root
    /// onto `l`: a bijection onto the vertices, with root edges sharing an
    /// endpoint exactly when their images are adjacent.
    ///
    /// Adjacent root-edge pairs are walked star by star; mapping each to
    /// an edge of `l` and matching the total count pins down equality of
    /// the two edge sets without touching non-adjacent pairs.
    pub fn verify(&self, l: &Graph) -> bool {
        if self.root_edges.len() != l.vertex_count() {
            return false;
        }
        let mut seen = vec![false; l.vertex_count()];
        for &v in &self.phi {
            if (v as usize) >= l.vertex_count() || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        let mut adjacent_pairs = 0usize;
        for v in self.root.vertices() {
            let star: Vec<u32> = self
                .root
                .edges_at(v)
                .map(|e| {
                    self.phi_of(e)
                        .expect("root edges enumerate the witness domain")
                })
                .collect();
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    if !l.has_edge(a, b) {
                        return false;
                    }
                    adjacent_pairs += 1;
                }
            }
        }
        // Two distinct edges share at most one endpoint, so each adjacent
        // pair was counted exactly once.
        adjacent_pairs == l.edge_count()
    }
}

/// Builds the root graph of a valid decomposition: one vertex per set,
/// adjacent when the sets intersect, plus one fresh pendant vertex per
/// isolated vertex of `l` realizing its isolated edge. Set vertices are
/// numbered by the sorted order of the sets; auxiliary vertices follow.
pub fn root_from_decomposition(l: &Graph, d: &Decomposition) -> Result<RootWitness, Violation> {
    validate_decomposition(l, d)?;
    let sets = d.sets();
    // Each non-isolated vertex lies in exactly two sets, which are exactly
    // the endpoints of its root edge; distinct sets share at most one
    // vertex, so no edge arises twice.
    let mut sets_at: Vec<Vec<u32>> = vec![Vec::new(); l.vertex_count()];
    for (i, set) in sets.iter().enumerate() {
        for v in set.iter() {
            sets_at[v as usize].push(i as u32);
        }
    }
    let mut root_edges_raw: Vec<(u32, u32, u32)> = Vec::new(); // (a, b, phi)
    let mut next = sets.len() as u32;
    for v in l.vertices() {
        match sets_at[v as usize].as_slice() {
            [only] => {
                // Isolated vertex: realize its isolated edge with a fresh
                // auxiliary endpoint.
                debug_assert!(l.is_isolated(v));
                root_edges_raw.push((*only, next, v));
                next += 1;
            }
            [a, b] => root_edges_raw.push((*a, *b, v)),
            other => unreachable!("validated membership count {}", other.len()),
        }
    }
    let root = Graph::from_edges(next as usize, root_edges_raw.iter().map(|&(a, b, _)| (a, b)));
    finish_witness(l, root, root_edges_raw, roles_from_decomposition(l, d))
}

fn roles_from_decomposition(l: &Graph, d: &Decomposition) -> Vec<VertexRole> {
    let mut class_count = vec![0usize; l.vertex_count()];
    for set in d.sets() {
        if set.len() >= 2 {
            for v in set.iter() {
                class_count[v as usize] += 1;
            }
        }
    }
    class_count
        .into_iter()
        .map(|c| match c {
            0 => VertexRole::Isolated,
            1 => VertexRole::OneClass,
            _ => VertexRole::TwoClasses,
        })
        .collect()
}

fn finish_witness(
    l: &Graph,
    root: Graph,
    raw: Vec<(u32, u32, u32)>,
    vertex_roles: Vec<VertexRole>,
) -> Result<RootWitness, Violation> {
    let mut pairs: Vec<(EdgeId, u32)> = raw
        .into_iter()
        .map(|(a, b, v)| (EdgeId::new(a, b), v))
        .collect();
    pairs.sort();
    let (root_edges, phi): (Vec<EdgeId>, Vec<u32>) = pairs.into_iter().unzip();
    let witness = RootWitness {
        root,
        root_edges,
        phi,
        vertex_roles,
    };
    assert!(
        witness.verify(l),
        "construction invariant: phi must be an isomorphism onto the input"
    );
    Ok(witness)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IncidenceError {
    #[error(transparent)]
    Relation(Violation),
    #[error("vertex {vertex} meets {count} labels, more than two")]
    TooManyLabelsAtVertex { vertex: u32, count: usize },
}

/// Root construction from a relation plus optional slack incidences.
///
/// Every vertex of `l` is incident to the labels of its edge classes;
/// each entry of `slack` attaches one additional fresh label to the named
/// vertex (fresh labels never carry edges, so each touches exactly one
/// vertex). Vertices split by total incidence into roles: isolated
/// vertices of the incidence become fresh edges, one-label vertices hang
/// off their label, two-label vertices become the edge between their
/// labels. Root vertex order: labels first, then one-label vertices
/// ascending, then the fresh pairs for untouched vertices ascending.
pub fn root_from_incidence(
    l: &Graph,
    r: &LineGraphRelation,
    slack: &[u32],
) -> Result<RootWitness, IncidenceError> {
    crate::krausz::validate_relation(l, r).map_err(IncidenceError::Relation)?;
    let num_labels = r.class_count() + slack.len();
    let mut labels_at: Vec<Vec<usize>> = l
        .vertices()
        .map(|v| r.classes_at(v))
        .collect();
    for (i, &v) in slack.iter().enumerate() {
        assert!(
            (v as usize) < l.vertex_count(),
            "slack vertex {v} out of range"
        );
        labels_at[v as usize].push(r.class_count() + i);
    }
    for v in l.vertices() {
        if labels_at[v as usize].len() > 2 {
            return Err(IncidenceError::TooManyLabelsAtVertex {
                vertex: v,
                count: labels_at[v as usize].len(),
            });
        }
    }

    let roles: Vec<VertexRole> = labels_at
        .iter()
        .map(|ls| match ls.len() {
            0 => VertexRole::Isolated,
            1 => VertexRole::OneClass,
            _ => VertexRole::TwoClasses,
        })
        .collect();

    // Root vertex numbering.
    let mut id_of_one_class = vec![u32::MAX; l.vertex_count()];
    let mut next = num_labels as u32;
    for v in l.vertices() {
        if roles[v as usize] == VertexRole::OneClass {
            id_of_one_class[v as usize] = next;
            next += 1;
        }
    }
    let mut raw: Vec<(u32, u32, u32)> = Vec::with_capacity(l.vertex_count());
    for v in l.vertices() {
        match roles[v as usize] {
            VertexRole::Isolated => {
                raw.push((next, next + 1, v));
                next += 2;
            }
            VertexRole::OneClass => {
                let x = labels_at[v as usize][0] as u32;
                raw.push((id_of_one_class[v as usize], x, v));
            }
            VertexRole::TwoClasses => {
                let (x, y) = (labels_at[v as usize][0], labels_at[v as usize][1]);
                raw.push((x as u32, y as u32, v));
            }
        }
    }
    let root = Graph::from_edges(next as usize, raw.iter().map(|&(a, b, _)| (a, b)));
    finish_witness(l, root, raw, roles).map_err(IncidenceError::Relation)
}

/// Root construction from a valid relation alone.
pub fn root_from_relation(l: &Graph, r: &LineGraphRelation) -> Result<RootWitness, Violation> {
    match root_from_incidence(l, r, &[]) {
        Ok(w) => Ok(w),
        Err(IncidenceError::Relation(v)) => Err(v),
        Err(IncidenceError::TooManyLabelsAtVertex { .. }) => {
            unreachable!("a valid relation meets each vertex at most twice")
        }
    }
}

// ---------------------------------------------------------------------
// Whitney lifting.
// ---------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WhitneyError {
    #[error("the {which} graph is not connected")]
    Disconnected { which: &'static str },
    #[error("phi is not a bijection between the edge sets")]
    NotBijection,
    #[error("phi is not a line graph isomorphism: edges {e} and {f} disagree")]
    NotLineIso { e: EdgeId, f: EdgeId },
}

/// A bijection between the edge sets of two graphs.
#[derive(Clone, Debug)]
pub struct EdgeBijection {
    pairs: Vec<(EdgeId, EdgeId)>,
}

impl EdgeBijection {
    /// Builds and checks totality and injectivity over `E(g)` and `E(h)`.
    pub fn new(
        g: &Graph,
        h: &Graph,
        mut pairs: Vec<(EdgeId, EdgeId)>,
    ) -> Result<Self, WhitneyError> {
        pairs.sort();
        let sources: Vec<EdgeId> = pairs.iter().map(|&(e, _)| e).collect();
        if sources != g.edges() {
            return Err(WhitneyError::NotBijection);
        }
        let mut images: Vec<EdgeId> = pairs.iter().map(|&(_, f)| f).collect();
        images.sort();
        if images != h.edges() {
            return Err(WhitneyError::NotBijection);
        }
        Ok(EdgeBijection { pairs })
    }

    /// Translates an isomorphism between the line graphs of `g` and `h`
    /// into an edge bijection, using the line-graph vertex orders.
    pub fn from_line_graph_iso(g: &Graph, h: &Graph, iso: &IsoWitness) -> Self {
        let g_edges = g.edges();
        let h_edges = h.edges();
        let pairs = g_edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, h_edges[iso.apply(i as u32) as usize]))
            .collect();
        EdgeBijection { pairs }
    }

    pub fn apply(&self, e: EdgeId) -> EdgeId {
        let idx = self
            .pairs
            .binary_search_by_key(&e, |&(s, _)| s)
            .expect("edge in domain");
        self.pairs[idx].1
    }

    pub fn pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.pairs
    }
}

/// Outcome of a lifting attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhitneyResult {
    /// The edge bijection is induced by this vertex isomorphism.
    Induced(IsoWitness),
    /// No inducing isomorphism exists and an exceptional graph explains it.
    Exceptional { name: String },
    /// No inducing isomorphism exists; the named edge witnesses the failure.
    NotInduced { edge: EdgeId },
}

/// Position and name in the exceptional catalog, if `g` is exceptional.
fn exceptional_name(g: &Graph) -> Option<(usize, &'static str)> {
    let candidates = [
        (crate::catalog::k3(), "K3"),
        (crate::catalog::claw(), "K1,3"),
        (crate::catalog::k13_plus(), "K1,3+"),
        (crate::catalog::k4_minus(), "K4-"),
        (crate::catalog::k4(), "K4"),
    ];
    candidates
        .into_iter()
        .enumerate()
        .find(|(_, (c, _))| is_isomorphic(g, c).is_some())
        .map(|(i, (_, name))| (i, name))
}

/// Validates that `phi` is an isomorphism from `L(g)` to `L(h)`: edges
/// share an endpoint exactly when their images do.
fn check_line_iso(g: &Graph, phi: &EdgeBijection) -> Result<(), WhitneyError> {
    let edges = g.edges();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let src = e.shared_endpoint(f).is_some();
            let dst = phi.apply(e).shared_endpoint(phi.apply(f)).is_some();
            if src != dst {
                return Err(WhitneyError::NotLineIso { e, f });
            }
        }
    }
    Ok(())
}

/// The complete list of vertex isomorphisms `g -> h` inducing `phi`
/// (sending each edge `xy` to `phi(xy)`). Connected inputs only; `phi`
/// must be a line graph isomorphism.
pub fn inducing_isomorphisms(
    g: &Graph,
    h: &Graph,
    phi: &EdgeBijection,
) -> Result<Vec<IsoWitness>, WhitneyError> {
    if !g.is_connected() {
        return Err(WhitneyError::Disconnected { which: "first" });
    }
    if !h.is_connected() {
        return Err(WhitneyError::Disconnected { which: "second" });
    }
    check_line_iso(g, phi)?;

    if g.vertex_count() != h.vertex_count() {
        return Ok(Vec::new());
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(vec![IsoWitness::new(Vec::new())]);
    }
    if g.edge_count() == 0 {
        // Connected and edgeless: a single vertex on both sides.
        return Ok(vec![IsoWitness::identity(1)]);
    }

    // Vertices of degree two or more are forced: their image star must
    // have a common endpoint, and two or more distinct edges share at
    // most one.
    let mut forced: Vec<Option<u32>> = vec![None; n];
    for v in g.vertices().filter(|&v| g.degree(v) >= 2) {
        let star: Vec<EdgeId> = g.edges_at(v).map(|e| phi.apply(e)).collect();
        let Some(common) = star[0].shared_endpoint(star[1]) else {
            return Ok(Vec::new());
        };
        if !star.iter().all(|e| e.contains(common)) {
            return Ok(Vec::new());
        }
        forced[v as usize] = Some(common);
    }
    // A degree-one vertex with a forced neighbor takes the other endpoint
    // of its mapped edge.
    let mut candidates: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in g.vertices() {
        match forced[v as usize] {
            Some(w) => candidates[v as usize] = vec![w],
            None => {
                // degree exactly 1 here (connected, some edge exists)
                let u = g.neighbors(v)[0];
                let image = phi.apply(EdgeId::new(u, v));
                match forced[u as usize] {
                    Some(fu) => {
                        if !image.contains(fu) {
                            return Ok(Vec::new());
                        }
                        candidates[v as usize] = vec![image.other(fu)];
                    }
                    None => {
                        // Both endpoints of a single-edge graph.
                        let (a, b) = image.endpoints();
                        candidates[v as usize] = vec![a, b];
                    }
                }
            }
        }
    }

    // The candidate product is at most 4 (only the single-edge graph has
    // any freedom); verify each assignment completely.
    let mut out = Vec::new();
    let mut assignment = vec![0u32; n];
    enumerate_products(&candidates, 0, &mut assignment, &mut |map| {
        let w = IsoWitness::new(map.to_vec());
        if w.verify(g, h) && induces(g, phi, &w) {
            out.push(w);
        }
    });
    Ok(out)
}

fn enumerate_products(
    candidates: &[Vec<u32>],
    depth: usize,
    assignment: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if depth == candidates.len() {
        emit(assignment);
        return;
    }
    for &c in &candidates[depth] {
        assignment[depth] = c;
        enumerate_products(candidates, depth + 1, assignment, emit);
    }
}

fn induces(g: &Graph, phi: &EdgeBijection, sigma: &IsoWitness) -> bool {
    g.edges().iter().all(|&e| {
        let (x, y) = e.endpoints();
        phi.apply(e) == EdgeId::new(sigma.apply(x), sigma.apply(y))
    })
}

/// Lifts a line graph isomorphism to a vertex isomorphism when possible.
/// For connected non-exceptional inputs a lift always exists; when none
/// does, an exceptional input is named, and otherwise the failure is
/// reported with a witness edge.
pub fn whitney_lift(
    g: &Graph,
    h: &Graph,
    phi: &EdgeBijection,
) -> Result<WhitneyResult, WhitneyError> {
    let lifts = inducing_isomorphisms(g, h, phi)?;
    if let Some(sigma) = lifts.into_iter().next() {
        return Ok(WhitneyResult::Induced(sigma));
    }
    // Name the exceptional pair in catalog order, direction-independent.
    let mut matched: Vec<(usize, &'static str)> = [exceptional_name(g), exceptional_name(h)]
        .into_iter()
        .flatten()
        .collect();
    matched.sort();
    matched.dedup();
    if matched.is_empty() {
        Ok(WhitneyResult::NotInduced {
            edge: g
                .edges()
                .first()
                .copied()
                .expect("graphs with no edges always lift"),
        })
    } else {
        let name = matched
            .iter()
            .map(|&(_, n)| n)
            .collect::<Vec<_>>()
            .join("/");
        Ok(WhitneyResult::Exceptional { name })
    }
}

// ---------------------------------------------------------------------
// End-to-end round trip.
// ---------------------------------------------------------------------

/// Report of the recognition/decomposition/reconstruction round trip.
#[derive(Clone, Debug)]
pub enum RoundtripReport {
    LineGraph {
        root_order: usize,
        root_size: usize,
        /// Independent isomorphism check between the root's line graph
        /// and the input.
        iso_holds: bool,
    },
    NotLineGraph { witness: ForbiddenWitness },
}

/// Recognizes `l`; on acceptance takes the least decomposition, builds the
/// root, and re-checks `L(root)` against `l` by isomorphism search.
pub fn verify_roundtrip(
    l: &Graph,
    component_cap: usize,
) -> Result<RoundtripReport, crate::iso::CapExceeded> {
    match find_decomposition(l, component_cap)? {
        Some(d) => {
            let witness =
                root_from_decomposition(l, &d).expect("found decomposition validates");
            let (lg, _) = witness.root.line_graph();
            let iso_holds = is_isomorphic(&lg, l).is_some();
            Ok(RoundtripReport::LineGraph {
                root_order: witness.root.vertex_count(),
                root_size: witness.root.edge_count(),
                iso_holds,
            })
        }
        None => {
            let verdict = is_line_graph_beineke(l);
            let witness = verdict
                .witness()
                .expect("decomposition search and forbidden search agree")
                .clone();
            Ok(RoundtripReport::NotLineGraph { witness })
        }
    }
}
