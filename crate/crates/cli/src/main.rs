//! Command-line interface over the line graph library.
//!
//! Exit codes: 0 = affirmative/ok, 1 = negative verdict (e.g. not a line
//! graph, no lift), 2 = usage or parse error, 3 = cap refusal.

mod input;
mod output;
mod selfcheck;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use input::{load_graph, load_phi_table, load_relation_classes, Format};
use linegraph_core::catalog::{self, k0_truncation, star_forest};
use linegraph_core::coloring::{chromatic_number_exact, DEFAULT_COLORING_CAP};
use linegraph_core::graph::VertexSet;
use linegraph_core::iso::{is_isomorphic, CapExceeded};
use linegraph_core::krausz::{
    canonical_relation, enumerate_decompositions, find_decomposition, relation_of,
    validate_relation, CanonicalError, Decomposition, LineGraphRelation,
    DEFAULT_CANONICAL_COMPONENT_CAP, DEFAULT_ENUMERATE_CAP, DEFAULT_KRAUSZ_COMPONENT_CAP,
};
use linegraph_core::recognition::{
    forbidden_witness_all, is_line_graph_beineke, is_line_graph_krausz,
};
use linegraph_core::rootgraph::{
    root_from_decomposition, root_from_relation, whitney_lift, EdgeBijection, VertexRole,
    WhitneyResult,
};
use output::{
    decomposition_json, decomposition_lines, graph_json, phi_json, phi_lines, relation_json,
    relation_lines, Printer,
};

#[derive(Parser)]
#[command(
    name = "linegraph",
    version,
    about = "Line graph recognition, decompositions, and root graph reconstruction"
)]
struct Cli {
    /// Emit one JSON object per line instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Override every size cap (also settable via LINEGRAPH_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Append Graphviz DOT when a graph is printed.
    #[arg(long, global = true)]
    dot: bool,

    /// Force the input format (default: detect .g6 by extension).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, ValueEnum)]
enum Route {
    #[default]
    Decomposition,
    Relation,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is a line graph.
    Recognize { file: PathBuf },
    /// List one forbidden-subgraph witness per forbidden index that embeds.
    Witness { file: PathBuf },
    /// Find one decomposition into edge cliques, if any.
    Decompose { file: PathBuf },
    /// Enumerate all decompositions.
    Enumerate { file: PathBuf },
    /// Compute the canonical relation of a line graph with small components.
    Canonical { file: PathBuf },
    /// Check a relation file against the relation axioms.
    ValidateRelation { graph: PathBuf, relation: PathBuf },
    /// Reconstruct a root graph whose line graph is the input.
    Root {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        via: Route,
    },
    /// Compute the line graph of a graph.
    Linegraph { file: PathBuf },
    /// Lift an edge bijection between two graphs to a vertex isomorphism.
    Whitney {
        first: PathBuf,
        second: PathBuf,
        phi: PathBuf,
    },
    /// Build the suffix-agreement clique union and run the full pipeline.
    K0Demo { suffix_start: u32, length: u32 },
    /// List the shipped catalog, or dump one entry by name.
    CatalogDump { name: Option<String> },
    /// Run the shipped fixture checks.
    Selfcheck {
        /// Number of worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Caps {
    enumerate: usize,
    component: usize,
    canonical: usize,
    k0: u32,
    coloring: usize,
}

impl Caps {
    fn resolve(flag: Option<usize>) -> Caps {
        let env = std::env::var("LINEGRAPH_CAP")
            .ok()
            .and_then(|v| v.parse::<usize>().ok());
        match flag.or(env) {
            Some(c) => Caps {
                enumerate: c,
                component: c,
                canonical: c,
                k0: c.min(u32::MAX as usize) as u32,
                coloring: c,
            },
            None => Caps {
                enumerate: DEFAULT_ENUMERATE_CAP,
                component: DEFAULT_KRAUSZ_COMPONENT_CAP,
                canonical: DEFAULT_CANONICAL_COMPONENT_CAP,
                k0: catalog::DEFAULT_K0_CAP,
                coloring: DEFAULT_COLORING_CAP,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_cap_refusal(&err) { 3 } else { 2 })
        }
    }
}

fn is_cap_refusal(err: &anyhow::Error) -> bool {
    use linegraph_core::catalog::K0Error;
    use linegraph_core::coloring::ColoringError;
    err.chain().any(|c| {
        c.downcast_ref::<CapExceeded>().is_some()
            || matches!(c.downcast_ref::<K0Error>(), Some(K0Error::Cap(_)))
            || matches!(
                c.downcast_ref::<CanonicalError>(),
                Some(CanonicalError::ComponentCap { .. })
            )
            || matches!(
                c.downcast_ref::<ColoringError>(),
                Some(ColoringError::Cap(_))
            )
    })
}

fn run(cli: Cli) -> Result<u8> {
    let caps = Caps::resolve(cli.cap);
    let printer = Printer {
        json: cli.json,
        dot: cli.dot,
    };
    match cli.command {
        Command::Recognize { file } => {
            let g = load_graph(&file, cli.format)?;
            let verdict = is_line_graph_beineke(&g);
            let searched = is_line_graph_krausz(&g, caps.component).ok();
            if let Some(found) = &searched {
                debug_assert_eq!(verdict.is_line_graph(), found.is_some());
            }
            let mut human = String::new();
            let witness_json = match verdict.witness() {
                Some(w) => {
                    human.push_str(&format!(
                        "not a line graph: forbidden graph {} embeds at [{}]\n",
                        w.beineke_index,
                        join(&w.embedding)
                    ));
                    json!({"index": w.beineke_index, "embedding": w.embedding})
                }
                None => {
                    human.push_str("line graph: yes\n");
                    serde_json::Value::Null
                }
            };
            match &searched {
                Some(Some(_)) => human.push_str("decomposition search: found\n"),
                Some(None) => human.push_str("decomposition search: none\n"),
                None => human.push_str("decomposition search: skipped (component cap)\n"),
            }
            printer.emit(
                json!({
                    "command": "recognize",
                    "line_graph": verdict.is_line_graph(),
                    "witness": witness_json,
                    "decomposition_found": searched.map(|s| s.is_some()),
                }),
                human,
            );
            Ok(u8::from(!verdict.is_line_graph()))
        }

        Command::Witness { file } => {
            let g = load_graph(&file, cli.format)?;
            let witnesses = forbidden_witness_all(&g);
            let mut human = String::new();
            if witnesses.is_empty() {
                human.push_str("no forbidden subgraphs: the graph is a line graph\n");
            }
            for w in &witnesses {
                human.push_str(&format!(
                    "forbidden graph {} at [{}]\n",
                    w.beineke_index,
                    join(&w.embedding)
                ));
            }
            printer.emit(
                json!({
                    "command": "witness",
                    "line_graph": witnesses.is_empty(),
                    "witnesses": witnesses.iter().map(|w| json!({
                        "index": w.beineke_index,
                        "embedding": w.embedding,
                    })).collect::<Vec<_>>(),
                }),
                human,
            );
            Ok(u8::from(!witnesses.is_empty()))
        }

        Command::Decompose { file } => {
            let g = load_graph(&file, cli.format)?;
            match find_decomposition(&g, caps.component)? {
                Some(d) => {
                    printer.emit(
                        json!({"command": "decompose", "line_graph": true,
                               "decomposition": decomposition_json(&d)}),
                        decomposition_lines(&d),
                    );
                    Ok(0)
                }
                None => {
                    printer.emit(
                        json!({"command": "decompose", "line_graph": false,
                               "decomposition": null}),
                        "not a line graph\n".into(),
                    );
                    Ok(1)
                }
            }
        }

        Command::Enumerate { file } => {
            let g = load_graph(&file, cli.format)?;
            let all = enumerate_decompositions(&g, caps.enumerate)?;
            let mut human = format!("{} decomposition(s)\n", all.len());
            for d in &all {
                human.push('\n');
                human.push_str(&decomposition_lines(d));
            }
            printer.emit(
                json!({
                    "command": "enumerate",
                    "count": all.len(),
                    "decompositions": all.iter().map(decomposition_json).collect::<Vec<_>>(),
                }),
                human,
            );
            Ok(u8::from(all.is_empty()))
        }

        Command::Canonical { file } => {
            let g = load_graph(&file, cli.format)?;
            match canonical_relation(&g, caps.canonical) {
                Ok(r) => {
                    printer.emit(
                        json!({"command": "canonical", "line_graph": true,
                               "classes": relation_json(&r)}),
                        relation_lines(&r),
                    );
                    Ok(0)
                }
                Err(e @ CanonicalError::NotLineGraph { .. }) => {
                    printer.emit(
                        json!({"command": "canonical", "line_graph": false,
                               "error": e.to_string()}),
                        format!("{e}\n"),
                    );
                    Ok(1)
                }
                Err(e @ CanonicalError::ComponentCap { .. }) => Err(anyhow!(e)),
            }
        }

        Command::ValidateRelation { graph, relation } => {
            let g = load_graph(&graph, cli.format)?;
            let classes = load_relation_classes(&relation, &g)?;
            let outcome = LineGraphRelation::from_class_lists(&g, &classes)
                .and_then(|r| validate_relation(&g, &r).map(|()| r));
            match outcome {
                Ok(r) => {
                    printer.emit(
                        json!({"command": "validate-relation", "valid": true,
                               "classes": r.class_count()}),
                        format!("valid line graph relation with {} class(es)\n", r.class_count()),
                    );
                    Ok(0)
                }
                Err(v) => {
                    printer.emit(
                        json!({"command": "validate-relation", "valid": false,
                               "violation": v.to_string()}),
                        format!("violation: {v}\n"),
                    );
                    Ok(1)
                }
            }
        }

        Command::Root { file, via } => {
            let g = load_graph(&file, cli.format)?;
            let Some(d) = find_decomposition(&g, caps.component)? else {
                let verdict = is_line_graph_beineke(&g);
                let w = verdict.witness().expect("both recognizers agree");
                printer.emit(
                    json!({"command": "root", "line_graph": false,
                           "witness": {"index": w.beineke_index, "embedding": w.embedding}}),
                    format!(
                        "not a line graph: forbidden graph {} embeds at [{}]\n",
                        w.beineke_index,
                        join(&w.embedding)
                    ),
                );
                return Ok(1);
            };
            let witness = match via {
                Route::Decomposition => {
                    root_from_decomposition(&g, &d).map_err(|v| anyhow!("{v}"))?
                }
                Route::Relation => {
                    let r = relation_of(&g, &d).map_err(|v| anyhow!("{v}"))?;
                    root_from_relation(&g, &r).map_err(|v| anyhow!("{v}"))?
                }
            };
            let mut human = format!(
                "root graph: {} vertices, {} edges (via {:?})\n",
                witness.root.vertex_count(),
                witness.root.edge_count(),
                via
            );
            human.push_str(&printer.graph_block(&witness.root));
            human.push_str(&phi_lines(&witness));
            printer.emit(
                json!({
                    "command": "root",
                    "line_graph": true,
                    "via": format!("{via:?}").to_lowercase(),
                    "root": graph_json(&witness.root),
                    "phi": phi_json(&witness),
                }),
                human,
            );
            Ok(0)
        }

        Command::Linegraph { file } => {
            let g = load_graph(&file, cli.format)?;
            let (lg, edges) = g.line_graph();
            let mut human = printer.graph_block(&lg);
            human.push_str("vertex map (line graph vertex -> edge):\n");
            for (i, e) in edges.iter().enumerate() {
                human.push_str(&format!("  {i} -> {e}\n"));
            }
            printer.emit(
                json!({
                    "command": "linegraph",
                    "line_graph": graph_json(&lg),
                    "vertex_map": edges.iter().map(|e| {
                        let (u, v) = e.endpoints();
                        json!([u, v])
                    }).collect::<Vec<_>>(),
                }),
                human,
            );
            Ok(0)
        }

        Command::Whitney { first, second, phi } => {
            let g = load_graph(&first, cli.format)?;
            let h = load_graph(&second, cli.format)?;
            let pairs = load_phi_table(&phi)?;
            let phi = EdgeBijection::new(&g, &h, pairs)?;
            match whitney_lift(&g, &h, &phi)? {
                WhitneyResult::Induced(sigma) => {
                    let mut human = String::from("induced by sigma:\n");
                    for (x, y) in sigma.as_slice().iter().enumerate() {
                        human.push_str(&format!("  {x} -> {y}\n"));
                    }
                    printer.emit(
                        json!({"command": "whitney", "outcome": "induced",
                               "sigma": sigma.as_slice()}),
                        human,
                    );
                    Ok(0)
                }
                WhitneyResult::Exceptional { name } => {
                    printer.emit(
                        json!({"command": "whitney", "outcome": "exceptional", "name": name}),
                        format!("no inducing isomorphism: exceptional pair {name}\n"),
                    );
                    Ok(1)
                }
                WhitneyResult::NotInduced { edge } => {
                    printer.emit(
                        json!({"command": "whitney", "outcome": "not-induced",
                               "edge": edge.to_string()}),
                        format!("no inducing isomorphism; witness edge {edge}\n"),
                    );
                    Ok(1)
                }
            }
        }

        Command::K0Demo {
            suffix_start,
            length,
        } => k0_demo(&printer, &caps, suffix_start, length),

        Command::CatalogDump { name } => {
            match name {
                None => {
                    let mut human = String::new();
                    let entries = catalog::catalog();
                    for e in &entries {
                        human.push_str(&format!(
                            "{:26} n={} m={} {}\n",
                            e.name,
                            e.graph.vertex_count(),
                            e.graph.edge_count(),
                            linegraph_core::graph6::emit_graph6(&e.graph).unwrap(),
                        ));
                    }
                    printer.emit(
                        json!({
                            "command": "catalog-dump",
                            "entries": entries.iter().map(|e| json!({
                                "name": e.name,
                                "graph": graph_json(&e.graph),
                            })).collect::<Vec<_>>(),
                        }),
                        human,
                    );
                    Ok(0)
                }
                Some(name) => {
                    let entry = catalog::lookup(&name)
                        .ok_or_else(|| anyhow!("unknown catalog entry {name:?}"))?;
                    printer.emit(
                        json!({"command": "catalog-dump", "name": entry.name,
                               "graph": graph_json(&entry.graph)}),
                        format!("{}\n{}", entry.name, printer.graph_block(&entry.graph)),
                    );
                    Ok(0)
                }
            }
        }

        Command::Selfcheck { jobs } => selfcheck::run(&printer, jobs),
    }
}

fn join(ids: &[u32]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn k0_demo(printer: &Printer, caps: &Caps, k: u32, m: u32) -> Result<u8> {
    let g = k0_truncation(k, m, caps.k0)?;
    let comps = g.connected_components();
    let expected_comps = 1usize << (m - k);
    let clique_size = 1usize << k;
    let mut ok = comps.len() == expected_comps;
    for c in &comps {
        ok &= c.len() == clique_size && g.is_clique(c).unwrap();
    }

    // Recognition on one representative component (they are all
    // isomorphic by construction); structural clique checks cover the rest.
    let (rep, _) = g.induced_subgraph(&comps[0]).unwrap();
    let recognized = if rep.vertex_count() <= 8192 {
        Some(is_line_graph_beineke(&rep).is_line_graph())
    } else {
        None
    };
    ok &= recognized.unwrap_or(true);

    let chromatic = match chromatic_number_exact(&g, caps.coloring) {
        Ok(chi) => {
            ok &= chi == clique_size;
            Some(chi)
        }
        Err(_) => None,
    };

    // Each clique component plus one singleton per vertex decomposes the
    // graph; its root is a star forest.
    let mut sets: Vec<VertexSet> = comps.iter().filter(|c| c.len() >= 2).cloned().collect();
    for v in g.vertices() {
        sets.push(VertexSet::singleton(v));
    }
    let d = Decomposition::new(sets);
    let witness = root_from_decomposition(&g, &d).map_err(|v| anyhow!("{v}"))?;
    let expected_root = star_forest(expected_comps, clique_size.max(1));
    let root_is_star_forest = is_isomorphic(&witness.root, &expected_root).is_some();
    ok &= root_is_star_forest;
    let isolated = witness.vertices_with_role(VertexRole::Isolated).len();

    let mut human = format!(
        "2^(m-k)={expected_comps} clique(s) of size {clique_size} on {} vertices\n",
        g.vertex_count()
    );
    // Emit the graphs themselves while they stay printable.
    if g.vertex_count() <= 512 {
        human.push_str(&format!(
            "truncation graph6: {}\n",
            linegraph_core::graph6::emit_graph6(&g).unwrap()
        ));
    }
    match recognized {
        Some(true) => human.push_str("line graph: yes\n"),
        Some(false) => human.push_str("line graph: NO (unexpected)\n"),
        None => human.push_str("line graph: yes (clique components; representative too large to search)\n"),
    }
    match chromatic {
        Some(chi) => human.push_str(&format!("chromatic number: {chi}\n")),
        None => human.push_str("chromatic number: skipped (cap; pass --cap)\n"),
    }
    human.push_str(&format!(
        "root isomorphic to {expected_comps} x K(1,{clique_size}): {}\n",
        if root_is_star_forest { "yes" } else { "NO" }
    ));
    if witness.root.vertex_count() <= 512 {
        human.push_str(&format!(
            "root graph6: {}\n",
            linegraph_core::graph6::emit_graph6(&witness.root).unwrap()
        ));
    }
    if isolated > 0 {
        human.push_str(&format!("{isolated} isolated vertices realized as fresh edges\n"));
    }
    printer.emit(
        json!({
            "command": "k0-demo",
            "suffix_start": k,
            "length": m,
            "vertices": g.vertex_count(),
            "components": comps.len(),
            "clique_size": clique_size,
            "recognized": recognized,
            "chromatic": chromatic,
            "root_is_star_forest": root_is_star_forest,
            "truncation_graph6": (g.vertex_count() <= 512)
                .then(|| linegraph_core::graph6::emit_graph6(&g).unwrap()),
            "root_graph6": (witness.root.vertex_count() <= 512)
                .then(|| linegraph_core::graph6::emit_graph6(&witness.root).unwrap()),
        }),
        human,
    );
    Ok(u8::from(!ok))
}
