use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use digitopo::geometry::Cover;
use digitopo::Graph;
use serde::Serialize;

/// Graph JSON when the file starts with `{`, an edge list otherwise.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    let g = if text.trim_start().starts_with('{') {
        Graph::parse_json(&text)
    } else {
        Graph::parse_edge_list(name, &text)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

pub fn load_cover(path: &Path) -> Result<Cover> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Cover::parse_json(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            emit(text);
            Ok(())
        }
    }
}

pub fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

/// Prints a line to stdout; a closed pipe ends output quietly.
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(0);
    }
}
