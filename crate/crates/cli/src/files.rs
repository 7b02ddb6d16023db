//! Gram documents. A `Z`-Gram file:
//!
//! ```toml
//! # the cubic lattice
//! rank = 3
//! gram = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
//! ```
//!
//! An `O_K`-Gram file adds the field and writes each entry as `[x, y, z]`
//! for `x + y rho + z rho^2`:
//!
//! ```toml
//! family = "shanks"
//! a = 7
//! rank = 1
//! gram = [[[1, 0, 0]]]
//! ```

use std::path::Path;

use cubiclat::lattice::{GramMatrix, OkGramMatrix};
use cubiclat::{CubicOrder, Family, OrderElement};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GramDoc {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OkGramDoc {
    family: String,
    a: i64,
    rank: usize,
    gram: Vec<Vec<[i64; 3]>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn check_rank(path: &Path, rank: usize, rows: usize) -> Result<(), CliError> {
    if rank != rows {
        return Err(CliError::Parse(format!(
            "{}: rank = {rank} but gram has {rows} rows",
            path.display()
        )));
    }
    Ok(())
}

pub fn parse_gram(text: &str, path: &Path) -> Result<GramMatrix, CliError> {
    let doc: GramDoc = toml::from_str(text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    check_rank(path, doc.rank, doc.gram.len())?;
    let rows = doc
        .gram
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    GramMatrix::new(rows).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_gram(path: &Path) -> Result<GramMatrix, CliError> {
    parse_gram(&read(path)?, path)
}

pub fn read_ok_gram(path: &Path) -> Result<(CubicOrder, OkGramMatrix), CliError> {
    let text = read(path)?;
    let doc: OkGramDoc = toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    check_rank(path, doc.rank, doc.gram.len())?;
    let family: Family = doc
        .family
        .parse()
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let order = CubicOrder::new(family, doc.a)?;
    let entries = doc
        .gram
        .into_iter()
        .map(|row| row.into_iter().map(OrderElement::from).collect())
        .collect();
    let lattice = OkGramMatrix::new(&order, entries).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((order, lattice))
}
