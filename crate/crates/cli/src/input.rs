//! Parsing of command-line values and graph files. Every error names the flag
//! or file position it came from.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use subfree::arrangement::LineSet;
use subfree::schur::Partition;
use subfree::semifield::{parse_big_rational, Semifield};
use subfree::spanning::{digraph_from_json, graph_from_json, WeightedDigraph, WeightedGraph};

use crate::CliError;

fn items(text: &str) -> Vec<&str> {
    let text = text.trim();
    if text.is_empty() {
        return Vec::new();
    }
    text.split(',').map(str::trim).collect()
}

/// `"3,1,0"` is `(3,1)`; the empty string is the empty partition.
pub fn parse_partition(flag: &str, text: &str) -> Result<Partition, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("--{flag}: {e}")))
}

/// Comma-separated semifield elements, e.g. `"1,2,3/4"`.
pub fn parse_values<S: Semifield>(flag: &str, text: &str) -> Result<Vec<S>, CliError> {
    items(text)
        .into_iter()
        .enumerate()
        .map(|(i, raw)| S::parse(raw).map_err(|e| CliError::Input(format!("--{flag}, item {}: {e}", i + 1))))
        .collect()
}

/// Comma-separated signed rationals.
pub fn parse_rationals(flag: &str, text: &str) -> Result<Vec<BigRational>, CliError> {
    items(text)
        .into_iter()
        .enumerate()
        .map(|(i, raw)| {
            parse_big_rational(raw)
                .ok_or_else(|| CliError::Input(format!("--{flag}, item {}: {raw:?} is not a rational number", i + 1)))
        })
        .collect()
}

/// Distinct line labels in `1..=128`, e.g. `"2,4"`.
pub fn parse_index_set(flag: &str, text: &str) -> Result<LineSet, CliError> {
    let mut set = LineSet::empty();
    for (i, raw) in items(text).into_iter().enumerate() {
        let bad = |why: &str| CliError::Input(format!("--{flag}, item {}: {raw:?} {why}", i + 1));
        let line: usize = raw.parse().map_err(|_| bad("is not a positive integer"))?;
        if line == 0 || line > 128 {
            return Err(bad("is outside 1..=128"));
        }
        if set.contains(line) {
            return Err(bad("is repeated"));
        }
        set = set.with(line);
    }
    Ok(set)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_graph<S: Semifield>(path: &Path) -> Result<WeightedGraph<S>, CliError> {
    graph_from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_digraph<S: Semifield>(path: &Path) -> Result<WeightedDigraph<S>, CliError> {
    digraph_from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
