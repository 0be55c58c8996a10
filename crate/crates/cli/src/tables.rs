//! The master summary table: one CSV row per ring length.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};

use kempe_core::{
    build_reconfiguration_graph, class_count_formula, colouring_count_formula, hn_diameter_bound,
    BuildOptions, PolarTriangulation, VertexId,
};

/// Largest n whose pole-deleted diameter is measured for the table; larger
/// rows leave the column blank.
const DIAMETER_CAP: usize = 7;

pub const TABLE_HEADER: &str =
    "n,distinct_colourings,class_count,constant_count,hn_diameter,hn_diameter_bound";

/// Builds the table body for n = 5..=n_max.
pub fn master_table(n_max: usize, budget: usize) -> Result<String> {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for n in 5..=n_max {
        let distinct = colouring_count_formula(n)?;
        let classes = class_count_formula(n)?;
        let constants = if n % 3 == 2 { 2 * n } else { 0 };
        let diameter = if n <= DIAMETER_CAP {
            let host = Arc::new(PolarTriangulation::build(n)?.remove_pole(VertexId::PoleB)?);
            let graph = build_reconfiguration_graph(&host, &BuildOptions { max_nodes: budget })?;
            graph.diameter()?.to_string()
        } else {
            "-".to_string()
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            n,
            distinct,
            classes,
            constants,
            diameter,
            hn_diameter_bound(n)
        ));
    }
    Ok(out)
}

pub fn run_tables(n_max: usize, out_dir: &Path, budget: usize) -> Result<PathBuf> {
    let body = master_table(n_max, budget)?;
    let path = out_dir.join("tables.csv");
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
