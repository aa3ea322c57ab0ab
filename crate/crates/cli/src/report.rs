//! Run reports, exit codes and the output directory.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Component, Path, PathBuf};

use serde::Serialize;
use serde_json::Value as Json;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The claim checked holds.
    Verified,
    /// A search or measurement ran to completion.
    Completed,
    /// The claim fails, or a violation was found.
    Refuted,
    /// A budget stopped the run before it could decide.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified | Verdict::Completed => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// What a subcommand hands back for the report.
#[derive(Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub summary: String,
    pub exhaustive: Option<bool>,
    pub conditional: Option<bool>,
    pub details: Json,
}

impl Outcome {
    pub fn new(verdict: Verdict, summary: impl Into<String>, details: Json) -> Self {
        Self {
            verdict,
            summary: summary.into(),
            exhaustive: None,
            conditional: None,
            details,
        }
    }

    pub fn exhaustive(mut self, v: bool) -> Self {
        self.exhaustive = Some(v);
        self
    }

    pub fn conditional(mut self, v: bool) -> Self {
        self.conditional = Some(v);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub inputs: Json,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditional: Option<bool>,
    pub elapsed_seconds: f64,
    /// Files written, relative to the output directory.
    pub outputs: Vec<String>,
    pub details: Json,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: msg.into(),
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<muh_core::MuhError> for CliError {
    fn from(e: muh_core::MuhError) -> Self {
        use muh_core::MuhError as E;
        let code = match e {
            E::Io(_) => EXIT_IO,
            E::InvalidArgument(_) | E::NotPrime(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<muh_lp::LpError> for CliError {
    fn from(e: muh_lp::LpError) -> Self {
        use muh_lp::LpError as E;
        match e {
            E::Core(c) => c.into(),
            E::Io(_) => Self::io(e.to_string()),
            E::Json(_) => Self::data(e.to_string()),
            E::Invalid(_) | E::WindowTooSmall { .. } => Self::usage(e.to_string()),
            _ => Self {
                code: EXIT_SOFTWARE,
                message: e.to_string(),
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Writes only to relative paths below one directory.
#[derive(Debug)]
pub struct OutDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    pub fn new(root: PathBuf) -> Self {
        Self {
            root,
            written: Vec::new(),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }

    /// Rejects absolute names and any `..`, `.` or prefix component.
    pub fn resolve(&self, name: &str) -> CliResult<PathBuf> {
        let rel = Path::new(name);
        let plain = !name.is_empty() && rel.components().all(|c| matches!(c, Component::Normal(_)));
        if !plain {
            return Err(CliError::usage(format!(
                "output name {name:?} must be a relative path inside the output directory"
            )));
        }
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::io(format!("{}: {e}", parent.display())))?;
        }
        Ok(path)
    }

    pub fn create(&mut self, name: &str) -> CliResult<BufWriter<File>> {
        let path = self.resolve(name)?;
        let f =
            File::create(&path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        self.written.push(name.to_string());
        Ok(BufWriter::new(f))
    }

    pub fn write_json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut w = self.create(name)?;
        serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::io(e.to_string()))?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }
}
