//! Deterministic exports of the host graph, its distinct colourings, and
//! the reconfiguration graph.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use kempe_core::{
    build_reconfiguration_graph, distinct_colourings, invariant_vector, BuildOptions,
    PolarTriangulation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    /// The triangulation itself.
    Graph,
    /// Distinct colourings with their invariant vectors.
    Colourings,
    /// The reconfiguration graph.
    Reconfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

fn format_ext(format: Format) -> &'static str {
    match format {
        Format::Dot => "dot",
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn what_name(what: What) -> &'static str {
    match what {
        What::Graph => "graph",
        What::Colourings => "colourings",
        What::Reconfig => "reconfig",
    }
}

fn json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Writes one export file and returns its path. Unsupported combinations
/// are usage errors.
pub fn run_export(
    n: usize,
    what: What,
    format: Format,
    out_dir: &Path,
    budget: usize,
) -> Result<PathBuf> {
    let host = Arc::new(PolarTriangulation::build(n)?);
    let body = match (what, format) {
        (What::Graph, Format::Dot) => host.to_dot(),
        (What::Graph, Format::Json) => json_text(&host.to_json()),
        (What::Colourings, Format::Csv) => colourings_csv(&host),
        (What::Colourings, Format::Json) => colourings_json(&host),
        (What::Reconfig, Format::Dot) => {
            build_reconfiguration_graph(&host, &BuildOptions { max_nodes: budget })?.to_dot()
        }
        (What::Reconfig, Format::Json) => json_text(
            &build_reconfiguration_graph(&host, &BuildOptions { max_nodes: budget })?.to_json(),
        ),
        (what, format) => {
            bail!(
                "unsupported combination: --what {} --format {}",
                what_name(what),
                format_ext(format)
            )
        }
    };
    let path = out_dir.join(format!("g{}-{}.{}", n, what_name(what), format_ext(format)));
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// One row per distinct colouring: the colour word in dense vertex order
/// and the invariant vector.
fn colourings_csv(host: &Arc<PolarTriangulation>) -> String {
    let mut out = String::from("colouring,a,b,c,d\n");
    for rep in distinct_colourings(host) {
        let word: String = rep.colour_sequence().iter().map(u8::to_string).collect();
        let v = invariant_vector(&rep).expect("full host");
        out.push_str(&format!("{},{},{},{},{}\n", word, v.a, v.b, v.c, v.d));
    }
    out
}

fn colourings_json(host: &Arc<PolarTriangulation>) -> String {
    let rows: Vec<serde_json::Value> = distinct_colourings(host)
        .iter()
        .map(|rep| {
            let v = invariant_vector(rep).expect("full host");
            serde_json::json!({
                "colouring": rep.to_json(),
                "vector": { "a": v.a, "b": v.b, "c": v.c, "d": v.d },
            })
        })
        .collect();
    json_text(&serde_json::Value::Array(rows))
}
