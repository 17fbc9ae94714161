//! The fixed small graphs the rest of the crate keys on: the nine minimal
//! forbidden subgraphs for line-graph recognition, the four singular
//! graphs (the only connected line graphs with more than one
//! decomposition), and the five exceptional root graphs paired with them.
//! Also the parametric families used by the demos: suffix-agreement clique
//! unions and star forests.
//!
//! The figures in the source material are drawings, not labelings, so this
//! module fixes explicit adjacency encodings. The forbidden graphs are
//! numbered 1..9 reading the figure row by row from the top left (the claw
//! is 1, the 5-wheel is 7); their encodings are spelled out in
//! [`beineke_graphs`]. Everything here is validated against the shipped
//! graph6 fixture file and against vertex/edge counts and degree sequences
//! in the tests.

use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::iso::CapExceeded;

/// Default cap on the string length `m` of [`k0_truncation`].
pub const DEFAULT_K0_CAP: u32 = 16;

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    edges.push((n as u32 - 1, 0));
    Graph::from_edges(n, edges)
}

/// The star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as u32).map(|i| (0, i)))
}

/// `K_3`.
pub fn k3() -> Graph {
    complete(3)
}

/// `K_4`.
pub fn k4() -> Graph {
    complete(4)
}

/// `K_4` minus one edge (here 2-3).
pub fn k4_minus() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
}

/// The claw `K_{1,3}` with center 0.
pub fn claw() -> Graph {
    star(3)
}

/// `K_{1,3}` plus one edge between two leaves (the paw).
pub fn k13_plus() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
}

/// The square pyramid: a 4-cycle 0-1-2-3 plus apex 4 joined to all of it.
pub fn square_pyramid() -> Graph {
    Graph::from_edges(
        5,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 3),
            (0, 4),
            (1, 4),
            (2, 4),
            (3, 4),
        ],
    )
}

/// The octahedron `K_{2,2,2}`; antipodal pairs are (0,3), (1,4), (2,5).
pub fn octahedron() -> Graph {
    let mut edges = Vec::new();
    for u in 0..6u32 {
        for v in u + 1..6 {
            if v != u + 3 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(6, edges)
}

/// The nine minimal forbidden induced subgraphs, indexed 1..9.
///
/// Encodings, reading the figure row by row from the top left:
/// 1. the claw `K_{1,3}`: center 0, leaves 1,2,3;
/// 2. `K_4` minus 2-3 on 0..3, pendant 4 at 2 and pendant 5 at 3;
/// 3. `K_4` on {0,1,2,3} minus 0-1... see below: triangle pair 0,1 joined
///    to both 2 and 3, edge 2-3, vertex 4 joined to 2 and 3, pendant 5 at 4;
/// 4. `K_4` minus 3-4 on {0,2,3,4}, plus 1 joined to 3 and 4;
/// 5. entry 2 plus the edge 4-5;
/// 6. `K_4` on {0,1,2,3} plus 4 joined to 2,3 and 5 joined to 2,3,4;
/// 7. the 5-wheel: hub 0 on the cycle 1-2-3-4-5;
/// 8. two triangles 0-1-3... the 6-vertex ladder-with-diagonals below;
/// 9. `K_5` minus 3-4.
pub fn beineke_graphs() -> Vec<Graph> {
    vec![
        claw(),
        Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 5)]),
        Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 4),
                (4, 5),
            ],
        ),
        Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (2, 3), (2, 4), (1, 3), (1, 4)]),
        Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        ),
        Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 4),
                (2, 5),
                (3, 5),
                (4, 5),
            ],
        ),
        Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 5),
            ],
        ),
        Graph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (3, 4),
                (4, 5),
                (0, 3),
                (1, 4),
                (2, 5),
                (0, 4),
                (1, 5),
            ],
        ),
        Graph::from_edges(
            5,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
            ],
        ),
    ]
}

/// The four singular graphs: the only connected line graphs with more than
/// one line graph decomposition.
pub fn singular_graphs() -> Vec<Graph> {
    vec![k3(), k4_minus(), square_pyramid(), octahedron()]
}

/// The five exceptional graphs: those whose line graphs are singular.
pub fn exceptional_graphs() -> Vec<Graph> {
    vec![k3(), claw(), k13_plus(), k4_minus(), k4()]
}

/// The (root, line graph) pairs of the exceptional catalog:
/// K3 and K1,3 both map to K3, K1,3+ to K4-, K4- to the square pyramid,
/// K4 to the octahedron.
pub fn exceptional_pairs() -> Vec<(Graph, Graph)> {
    vec![
        (k3(), k3()),
        (claw(), k3()),
        (k13_plus(), k4_minus()),
        (k4_minus(), square_pyramid()),
        (k4(), octahedron()),
    ]
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum K0Error {
    #[error("suffix start {k} exceeds string length {m}")]
    BadRange { k: u32, m: u32 },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// The suffix-agreement clique union on binary strings of length `m`:
/// vertex `v` encodes the string whose position-`i` bit is bit `i` of `v`,
/// and two distinct strings are adjacent iff they agree on all positions
/// `>= k`. The result is `2^(m-k)` disjoint cliques of size `2^k`.
pub fn k0_truncation(k: u32, m: u32, m_cap: u32) -> Result<Graph, K0Error> {
    if k > m {
        return Err(K0Error::BadRange { k, m });
    }
    if m > m_cap {
        return Err(K0Error::Cap(CapExceeded {
            what: "k0_truncation string length",
            cap: m_cap as usize,
            actual: m as usize,
        }));
    }
    let n = 1usize << m;
    let block = 1u32 << k;
    let mut edges = Vec::new();
    for base in (0..n as u32).step_by(block as usize) {
        for a in base..base + block {
            for b in a + 1..base + block {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// `components` disjoint copies of the star `K_{1,leaves}`. Component `i`
/// occupies ids `i*(leaves+1)..`, center first. Its line graph is
/// `components` disjoint copies of `K_leaves`.
pub fn star_forest(components: usize, leaves: usize) -> Graph {
    assert!(leaves >= 1, "stars need at least one leaf");
    let span = (leaves + 1) as u32;
    let mut edges = Vec::new();
    for c in 0..components as u32 {
        let center = c * span;
        for l in 1..=leaves as u32 {
            edges.push((center, center + l));
        }
    }
    Graph::from_edges(components * (leaves + 1), edges)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Role {
    Beineke(u8),
    Singular,
    Exceptional,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub graph: Graph,
    pub role: Role,
}

/// Every shipped fixture with its canonical name: `beineke-1..9`, the four
/// `singular-*` and the five `exceptional-*` entries.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (i, g) in beineke_graphs().into_iter().enumerate() {
        let name: &'static str = match i {
            0 => "beineke-1",
            1 => "beineke-2",
            2 => "beineke-3",
            3 => "beineke-4",
            4 => "beineke-5",
            5 => "beineke-6",
            6 => "beineke-7",
            7 => "beineke-8",
            8 => "beineke-9",
            _ => unreachable!(),
        };
        out.push(CatalogEntry {
            name,
            graph: g,
            role: Role::Beineke(i as u8 + 1),
        });
    }
    for (name, g) in [
        ("singular-k3", k3()),
        ("singular-k4-minus", k4_minus()),
        ("singular-square-pyramid", square_pyramid()),
        ("singular-octahedron", octahedron()),
    ] {
        out.push(CatalogEntry {
            name,
            graph: g,
            role: Role::Singular,
        });
    }
    for (name, g) in [
        ("exceptional-k3", k3()),
        ("exceptional-k1-3", claw()),
        ("exceptional-k1-3-plus", k13_plus()),
        ("exceptional-k4-minus", k4_minus()),
        ("exceptional-k4", k4()),
    ] {
        out.push(CatalogEntry {
            name,
            graph: g,
            role: Role::Exceptional,
        });
    }
    out
}

/// Looks up a catalog entry by canonical name or a common alias.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let canonical = match name {
        "claw" | "k1-3" => "beineke-1",
        "k3" => "singular-k3",
        "k4-minus" => "singular-k4-minus",
        "square-pyramid" | "pyramid" => "singular-square-pyramid",
        "octahedron" => "singular-octahedron",
        "k1-3-plus" | "paw" => "exceptional-k1-3-plus",
        "k4" => "exceptional-k4",
        other => other,
    };
    catalog().into_iter().find(|e| e.name == canonical)
}

/// The shipped fixture file: one `name graph6` pair per line.
pub const FIXTURES_G6: &str = include_str!("../data/fixtures.g6");

/// Parses the shipped fixture file into (name, graph) pairs.
pub fn fixtures() -> Vec<(String, Graph)> {
    FIXTURES_G6
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let name = parts.next().expect("fixture name").to_string();
            let g6 = parts.next().expect("fixture graph6");
            (name, parse_graph6(g6).expect("valid fixture graph6"))
        })
        .collect()
}

/// Serializes the current catalog in the fixture file format. The shipped
/// file must match this output byte for byte.
pub fn render_fixtures() -> String {
    let mut out = String::from("# catalog fixtures v1 (name graph6)\n");
    for e in catalog() {
        out.push_str(&format!(
            "{} {}\n",
            e.name,
            emit_graph6(&e.graph).expect("catalog graphs encode")
        ));
    }
    out
}
