//! Output rendering: human-readable text, JSON lines, and DOT.

use linegraph_core::graph::{to_edge_list, Graph};
use linegraph_core::graph6::emit_graph6;
use linegraph_core::krausz::{Decomposition, LineGraphRelation};
use linegraph_core::rootgraph::RootWitness;

pub struct Printer {
    pub json: bool,
    pub dot: bool,
}

impl Printer {
    /// Emits one JSON object per line in JSON mode; otherwise prints the
    /// rendered human text.
    pub fn emit(&self, value: serde_json::Value, human: String) {
        if self.json {
            println!("{value}");
        } else {
            print!("{human}");
        }
    }

    pub fn graph_block(&self, g: &Graph) -> String {
        let mut out = String::new();
        match emit_graph6(g) {
            Ok(g6) => out.push_str(&format!("graph6: {g6}\n")),
            Err(_) => out.push_str("graph6: (too large)\n"),
        }
        out.push_str(&to_edge_list(g));
        if self.dot {
            out.push_str(&render_dot(g));
        }
        out
    }
}

pub fn render_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        if g.is_isolated(v) {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn graph_json(g: &Graph) -> serde_json::Value {
    serde_json::json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|e| {
            let (u, v) = e.endpoints();
            serde_json::json!([u, v])
        }).collect::<Vec<_>>(),
        "graph6": emit_graph6(g).ok(),
    })
}

pub fn decomposition_lines(d: &Decomposition) -> String {
    let mut out = String::new();
    for set in d.sets() {
        let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn decomposition_json(d: &Decomposition) -> serde_json::Value {
    serde_json::json!(d
        .sets()
        .iter()
        .map(|s| s.iter().collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn relation_lines(r: &LineGraphRelation) -> String {
    let mut out = String::new();
    for (label, class) in r.classes().iter().enumerate() {
        let edges: Vec<String> = class.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("class {label}: {}\n", edges.join(" ")));
    }
    out
}

pub fn relation_json(r: &LineGraphRelation) -> serde_json::Value {
    serde_json::json!(r
        .classes()
        .iter()
        .map(|class| class
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                serde_json::json!([u, v])
            })
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn phi_lines(w: &RootWitness) -> String {
    let mut out = String::from("phi (root edge -> vertex):\n");
    for (e, v) in w.phi() {
        out.push_str(&format!("  {e} -> {v}\n"));
    }
    out
}

pub fn phi_json(w: &RootWitness) -> serde_json::Value {
    serde_json::json!(w
        .phi()
        .map(|(e, v)| {
            let (a, b) = e.endpoints();
            serde_json::json!({"edge": [a, b], "vertex": v})
        })
        .collect::<Vec<_>>())
}
