//! The shipped-fixture checks behind `linegraph selfcheck`.

use anyhow::Result;
use serde_json::json;

use linegraph_core::atlas::{all_graphs, render_atlas_g6, ATLAS_G6};
use linegraph_core::catalog::{
    self, exceptional_pairs, fixtures, k0_truncation, render_fixtures, star_forest,
};
use linegraph_core::coloring::chromatic_number_exact;
use linegraph_core::graph::VertexSet;
use linegraph_core::iso::is_isomorphic;
use linegraph_core::krausz::{enumerate_decompositions, Decomposition};
use linegraph_core::recognition::{is_line_graph_beineke, is_line_graph_krausz};
use linegraph_core::rootgraph::{root_from_decomposition, verify_roundtrip, RoundtripReport};

use crate::output::Printer;

type Check = (&'static str, fn() -> Result<String, String>);

fn check_table_round_trips() -> Result<String, String> {
    for (root, partner) in exceptional_pairs() {
        let (lg, _) = root.line_graph();
        if is_isomorphic(&lg, &partner).is_none() {
            return Err(format!("line graph of {root:?} is not {partner:?}"));
        }
    }
    Ok("5 exceptional pairs verified".into())
}

fn check_forbidden_rejection() -> Result<String, String> {
    for (i, g) in catalog::beineke_graphs().iter().enumerate() {
        let verdict = is_line_graph_beineke(g);
        let Some(w) = verdict.witness() else {
            return Err(format!("entry {} accepted", i + 1));
        };
        if !w.verify(g) {
            return Err(format!("entry {} witness fails re-check", i + 1));
        }
        if i == 0 && w.embedding != vec![0, 1, 2, 3] {
            return Err("claw witness is not the identity".into());
        }
        match is_line_graph_krausz(g, 24) {
            Ok(None) => {}
            _ => return Err(format!("entry {} passed the decomposition search", i + 1)),
        }
    }
    Ok("9 forbidden graphs rejected by both recognizers".into())
}

fn check_fixture_files() -> Result<String, String> {
    if fixtures().len() != catalog::catalog().len() {
        return Err("fixture count mismatch".into());
    }
    if catalog::FIXTURES_G6 != render_fixtures() {
        return Err("fixtures.g6 out of date".into());
    }
    if ATLAS_G6 != render_atlas_g6() {
        return Err("atlas_le7.g6 out of date".into());
    }
    Ok("fixture and atlas files match regeneration".into())
}

fn check_atlas_counts() -> Result<String, String> {
    let expected = [1, 1, 2, 4, 11, 34, 156, 1044];
    for (n, &count) in expected.iter().enumerate() {
        if all_graphs(n).len() != count {
            return Err(format!("expected {count} graphs at n={n}"));
        }
    }
    Ok("atlas counts 1,1,2,4,11,34,156,1044".into())
}

fn check_recognizer_agreement() -> Result<String, String> {
    let mut checked = 0;
    for n in 0..=5 {
        for g in all_graphs(n) {
            let beineke = is_line_graph_beineke(&g).is_line_graph();
            let krausz = is_line_graph_krausz(&g, 24)
                .map_err(|e| e.to_string())?
                .is_some();
            if beineke != krausz {
                return Err(format!("recognizers disagree on {g:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs up to 5 vertices agree"))
}

fn check_triangle_enumeration() -> Result<String, String> {
    let count = enumerate_decompositions(&catalog::k3(), 16)
        .map_err(|e| e.to_string())?
        .len();
    if count != 2 {
        return Err(format!("triangle has {count} decompositions, expected 2"));
    }
    Ok("triangle has exactly 2 decompositions".into())
}

fn check_octahedron_roundtrip() -> Result<String, String> {
    match verify_roundtrip(&catalog::octahedron(), 24).map_err(|e| e.to_string())? {
        RoundtripReport::LineGraph {
            root_order,
            root_size,
            iso_holds,
        } => {
            if (root_order, root_size, iso_holds) != (4, 6, true) {
                return Err(format!(
                    "octahedron root is {root_order} vertices / {root_size} edges, iso {iso_holds}"
                ));
            }
            Ok("octahedron roots back to K4".into())
        }
        RoundtripReport::NotLineGraph { .. } => Err("octahedron rejected".into()),
    }
}

fn check_clique_union_demo() -> Result<String, String> {
    let g = k0_truncation(2, 4, 16).map_err(|e| e.to_string())?;
    if g.connected_components().len() != 4 {
        return Err("expected 4 components".into());
    }
    if chromatic_number_exact(&g, 64).map_err(|e| e.to_string())? != 4 {
        return Err("expected chromatic number 4".into());
    }
    let mut sets: Vec<VertexSet> = g.connected_components();
    for v in g.vertices() {
        sets.push(VertexSet::singleton(v));
    }
    let witness =
        root_from_decomposition(&g, &Decomposition::new(sets)).map_err(|e| e.to_string())?;
    if is_isomorphic(&witness.root, &star_forest(4, 4)).is_none() {
        return Err("root is not 4 x K(1,4)".into());
    }
    Ok("clique union (k=2, m=4): 4 components, chromatic 4, star forest root".into())
}

const CHECKS: &[Check] = &[
    ("table-round-trips", check_table_round_trips),
    ("forbidden-rejection", check_forbidden_rejection),
    ("fixture-files", check_fixture_files),
    ("atlas-counts", check_atlas_counts),
    ("recognizer-agreement", check_recognizer_agreement),
    ("triangle-enumeration", check_triangle_enumeration),
    ("octahedron-roundtrip", check_octahedron_roundtrip),
    ("clique-union-demo", check_clique_union_demo),
];

pub fn run(printer: &Printer, jobs: usize) -> Result<u8> {
    let jobs = jobs.max(1).min(CHECKS.len());
    let mut results: Vec<Option<Result<String, String>>> = vec![None; CHECKS.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            handles.push(scope.spawn(move || {
                let mut mine = Vec::new();
                for idx in (worker..CHECKS.len()).step_by(jobs) {
                    mine.push((idx, (CHECKS[idx].1)()));
                }
                mine
            }));
        }
        for handle in handles {
            for (idx, outcome) in handle.join().expect("selfcheck worker panicked") {
                results[idx] = Some(outcome);
            }
        }
    });

    let mut passed = 0usize;
    let mut failed = 0usize;
    for ((name, _), outcome) in CHECKS.iter().zip(&results) {
        let outcome = outcome.as_ref().expect("all checks ran");
        match outcome {
            Ok(detail) => {
                passed += 1;
                printer.emit(
                    json!({"command": "selfcheck", "check": name, "ok": true, "detail": detail}),
                    format!("ok   {name}: {detail}\n"),
                );
            }
            Err(reason) => {
                failed += 1;
                printer.emit(
                    json!({"command": "selfcheck", "check": name, "ok": false, "detail": reason}),
                    format!("FAIL {name}: {reason}\n"),
                );
            }
        }
    }
    printer.emit(
        json!({"command": "selfcheck", "passed": passed, "failed": failed}),
        format!("{passed} passed, {failed} failed\n"),
    );
    Ok(u8::from(failed > 0))
}
