//! Line graph recognition, two independent ways: by searching for the
//! nine forbidden induced subgraphs, and by searching for a decomposition.
//! The two verdicts agree on every graph; the test suite checks this
//! exhaustively on the small-graph atlas.

use crate::catalog::beineke_graphs;
use crate::graph::{Graph, VertexSet};
use crate::iso::{component_iso_classes, find_induced_copy, verify_induced, CapExceeded};
use crate::krausz::{find_decomposition, Decomposition};

pub use crate::krausz::DEFAULT_KRAUSZ_COMPONENT_CAP;

/// An induced copy of one of the nine forbidden graphs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForbiddenWitness {
    /// Index into the forbidden catalog, 1..=9.
    pub beineke_index: u8,
    /// Injective map from the catalog graph's vertices into the input.
    pub embedding: Vec<u32>,
}

impl ForbiddenWitness {
    /// Re-checks the witness: the image must induce a copy of the named
    /// catalog graph.
    pub fn verify(&self, l: &Graph) -> bool {
        let pattern = &beineke_graphs()[self.beineke_index as usize - 1];
        verify_induced(l, pattern, &self.embedding)
    }
}

/// Verdict of the forbidden-subgraph recognizer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BeinekeVerdict {
    LineGraph,
    Forbidden(ForbiddenWitness),
}

impl BeinekeVerdict {
    pub fn is_line_graph(&self) -> bool {
        matches!(self, BeinekeVerdict::LineGraph)
    }

    pub fn witness(&self) -> Option<&ForbiddenWitness> {
        match self {
            BeinekeVerdict::LineGraph => None,
            BeinekeVerdict::Forbidden(w) => Some(w),
        }
    }
}

/// Above this size, recognition splits into components and checks one
/// representative per isomorphism class.
const DIRECT_SEARCH_LIMIT: usize = 256;

/// Decides line-graph-ness by exhaustive induced-subgraph search. A
/// returned witness carries the smallest forbidden index that embeds.
/// There is no size cap; large graphs are handled per component class.
pub fn is_line_graph_beineke(l: &Graph) -> BeinekeVerdict {
    let patterns = beineke_graphs();
    if l.vertex_count() <= DIRECT_SEARCH_LIMIT {
        for (i, pattern) in patterns.iter().enumerate() {
            if let Some(embedding) = find_induced_copy(l, pattern) {
                return BeinekeVerdict::Forbidden(ForbiddenWitness {
                    beineke_index: i as u8 + 1,
                    embedding,
                });
            }
        }
        return BeinekeVerdict::LineGraph;
    }
    // A connected pattern embeds within a single component, so checking
    // one representative per component isomorphism class suffices.
    let classes = component_iso_classes(l);
    for (i, pattern) in patterns.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        for (sub, old_of_new, class) in &classes {
            if !seen.insert(*class) {
                continue;
            }
            if let Some(local) = find_induced_copy(sub, pattern) {
                let embedding = local.iter().map(|&v| old_of_new[v as usize]).collect();
                return BeinekeVerdict::Forbidden(ForbiddenWitness {
                    beineke_index: i as u8 + 1,
                    embedding,
                });
            }
        }
    }
    BeinekeVerdict::LineGraph
}

/// Decides line-graph-ness by decomposition search, returning the
/// lexicographically least decomposition when one exists. Components
/// larger than `component_cap` are refused; the forbidden-subgraph path
/// has no such cap.
pub fn is_line_graph_krausz(
    l: &Graph,
    component_cap: usize,
) -> Result<Option<Decomposition>, CapExceeded> {
    find_decomposition(l, component_cap)
}

/// One witness per forbidden index that embeds anywhere in `l`; the empty
/// list exactly characterizes line graphs.
pub fn forbidden_witness_all(l: &Graph) -> Vec<ForbiddenWitness> {
    let mut out = Vec::new();
    for (i, pattern) in beineke_graphs().iter().enumerate() {
        if let Some(embedding) = find_induced_copy(l, pattern) {
            out.push(ForbiddenWitness {
                beineke_index: i as u8 + 1,
                embedding,
            });
        }
    }
    out
}

/// Convenience wrapper pairing both recognizers on small graphs; used by
/// the self-check command.
pub fn verdicts_agree(l: &Graph, component_cap: usize) -> Result<bool, CapExceeded> {
    let beineke = is_line_graph_beineke(l).is_line_graph();
    let krausz = is_line_graph_krausz(l, component_cap)?.is_some();
    Ok(beineke == krausz)
}

/// The components of `l`, as vertex sets, that host no forbidden subgraph.
pub fn line_graph_components(l: &Graph) -> Vec<VertexSet> {
    l.connected_components()
        .into_iter()
        .filter(|c| {
            let (sub, _) = l.induced_subgraph(c).expect("component in range");
            is_line_graph_beineke(&sub).is_line_graph()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{claw, complete, k3, octahedron, star};
    use crate::krausz::DEFAULT_ENUMERATE_CAP;

    #[test]
    fn k3_and_octahedron_are_line_graphs() {
        assert!(is_line_graph_beineke(&k3()).is_line_graph());
        assert!(is_line_graph_beineke(&octahedron()).is_line_graph());
    }

    #[test]
    fn claw_rejected_with_identity_witness() {
        let verdict = is_line_graph_beineke(&claw());
        let w = verdict.witness().expect("claw is forbidden");
        assert_eq!(w.beineke_index, 1);
        assert_eq!(w.embedding, vec![0, 1, 2, 3]);
        assert!(w.verify(&claw()));
    }

    #[test]
    fn krausz_accepts_and_rejects() {
        let d = is_line_graph_krausz(&k3(), DEFAULT_KRAUSZ_COMPONENT_CAP)
            .unwrap()
            .expect("triangle is a line graph");
        assert!(crate::krausz::validate_decomposition(&k3(), &d).is_ok());
        assert!(is_line_graph_krausz(&claw(), DEFAULT_KRAUSZ_COMPONENT_CAP)
            .unwrap()
            .is_none());
        // Two isolated vertices decompose into singletons.
        let g = Graph::empty(2);
        let d = is_line_graph_krausz(&g, DEFAULT_KRAUSZ_COMPONENT_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn krausz_cap_refusal() {
        let big = complete(25);
        assert!(is_line_graph_krausz(&big, DEFAULT_KRAUSZ_COMPONENT_CAP).is_err());
        // The forbidden-subgraph path has no cap.
        assert!(is_line_graph_beineke(&big).is_line_graph());
    }

    #[test]
    fn witness_lists() {
        let ws = forbidden_witness_all(&claw());
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].beineke_index, 1);

        assert!(forbidden_witness_all(&complete(5)).is_empty());

        // The 5-wheel is entry 7 and embeds in itself.
        let w5 = crate::catalog::beineke_graphs()[6].clone();
        let ws = forbidden_witness_all(&w5);
        assert!(!ws.is_empty());
        assert!(ws.iter().any(|w| w.beineke_index == 7));
        for w in &ws {
            assert!(w.verify(&w5));
        }
    }

    #[test]
    fn large_clique_union_recognized_per_component_class() {
        // 300 disjoint K4's exceed the direct-search limit.
        let mut g = Graph::empty(0);
        for _ in 0..300 {
            g = g.disjoint_union(&complete(4));
        }
        assert!(is_line_graph_beineke(&g).is_line_graph());
        // Adding one claw component flips the verdict, with a translated witness.
        let g = g.disjoint_union(&claw());
        let verdict = is_line_graph_beineke(&g);
        let w = verdict.witness().expect("claw component is forbidden");
        assert_eq!(w.beineke_index, 1);
        assert!(w.verify(&g));
    }

    #[test]
    fn star_line_graphs_are_complete() {
        for leaves in 1..6 {
            let (lg, _) = star(leaves).line_graph();
            assert!(is_line_graph_beineke(&lg).is_line_graph());
            assert!(
                !crate::krausz::enumerate_decompositions(&lg, DEFAULT_ENUMERATE_CAP)
                    .unwrap()
                    .is_empty()
            );
        }
    }
}
