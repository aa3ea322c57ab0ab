//! One module per subcommand, plus argument parsing and loading helpers.

pub mod conjecture;
pub mod construct;
pub mod dump;
pub mod enumerate;
pub mod forcing;
pub mod lp;
pub mod verify;

use std::path::Path;

use muh_core::interchange::{parse_document, Document};
use muh_core::{MuhSystem, PhaseVector, DEFAULT_TOL};

use crate::report::{CliError, CliResult};

/// `"5,-5,0"` as integers.
pub fn parse_vector(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::usage(format!("bad integer {t:?} in {text:?}")))
        })
        .collect()
}

/// `"1,1,0;0,1,1"` as a list of vectors.
pub fn parse_vectors(text: &str) -> CliResult<Vec<Vec<i64>>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(parse_vector)
        .collect()
}

pub fn parse_indices(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("bad index {t:?} in {text:?}")))
        })
        .collect()
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: muh_core::MuhError) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

pub fn load_document(path: &Path) -> CliResult<Document> {
    parse_document(&read_text(path)?, DEFAULT_TOL).map_err(|e| with_path(path, e))
}

/// A validated system; a single matrix becomes a one-member system.
pub fn load_system(path: &Path) -> CliResult<MuhSystem> {
    match load_document(path)? {
        Document::System(s) => Ok(s),
        Document::Matrix(m) => MuhSystem::new(vec![m]).map_err(|e| with_path(path, e)),
        Document::Block(_) => Err(CliError::data(format!(
            "{}: expected a matrix or system, found a column block",
            path.display()
        ))),
    }
}

/// Columns of a block, a matrix, or every member of a system.
pub fn load_columns(path: &Path) -> CliResult<Vec<PhaseVector>> {
    Ok(match load_document(path)? {
        Document::Block(c) => c,
        Document::Matrix(m) => m.columns(),
        Document::System(s) => s.columns(),
    })
}

pub fn to_json<T: serde::Serialize>(v: &T) -> CliResult<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| CliError {
        code: crate::report::EXIT_SOFTWARE,
        message: e.to_string(),
    })
}

/// `"1 class"`, `"4 classes"`.
pub fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}
