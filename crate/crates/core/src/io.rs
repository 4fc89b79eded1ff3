//! Edge-list and node-metadata readers.
//!
//! Edge lists are UTF-8 text with one `citing<TAB>cited` pair per line;
//! blank lines and lines starting with `#` are skipped. Node metadata is a
//! CSV file with an `id,label,year` header.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeRecord};

/// Parses an edge list, collapsing repeated edges with a warning.
pub fn parse_edge_list<R: Read>(reader: R, name: &str) -> Result<Vec<(String, String)>> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut repeats = 0usize;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(tail), Some(head), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                path: name.to_owned(),
                line: i + 1,
                message: "expected two tab-separated node ids".into(),
            });
        };
        let (tail, head) = (tail.trim(), head.trim());
        if tail.is_empty() || head.is_empty() {
            return Err(Error::Parse {
                path: name.to_owned(),
                line: i + 1,
                message: "empty node id".into(),
            });
        }
        if seen.insert((tail.to_owned(), head.to_owned())) {
            edges.push((tail.to_owned(), head.to_owned()));
        } else {
            repeats += 1;
            log::debug!("{name}:{}: repeated edge {tail} -> {head}", i + 1);
        }
    }
    if repeats > 0 {
        log::warn!("{name}: collapsed {repeats} repeated edge(s)");
    }
    Ok(edges)
}

pub fn read_edge_list(path: &Path) -> Result<Vec<(String, String)>> {
    parse_edge_list(File::open(path)?, &path.display().to_string())
}

#[derive(Debug, Deserialize)]
struct MetaRow {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    year: Option<i32>,
}

pub fn parse_node_csv<R: Read>(reader: R) -> Result<Vec<NodeRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let row: MetaRow = row?;
        out.push(NodeRecord {
            id: row.id,
            label: row.label.filter(|l| !l.is_empty()),
            year: row.year,
        });
    }
    Ok(out)
}

pub fn read_node_csv(path: &Path) -> Result<Vec<NodeRecord>> {
    parse_node_csv(File::open(path)?)
}

/// Loads an edge list and optional node metadata into a [`Dag`].
pub fn load_dag(edges: &Path, nodes: Option<&Path>) -> Result<Dag> {
    let records = match nodes {
        Some(path) => read_node_csv(path)?,
        None => Vec::new(),
    };
    Dag::build(records, read_edge_list(edges)?)
}
