//! Report emission: atomic file writes and provenance tagging. Every file
//! opens with a comment naming the config hash and the operation, so each
//! number in it can be traced back to the exact resolved configuration.

use crate::CliError;
use std::path::{Path, PathBuf};

pub struct Reporter {
    out_dir: PathBuf,
    operation: String,
    hash: String,
    summary_lines: Vec<String>,
}

impl Reporter {
    pub fn new(out_dir: &Path, operation: &str, hash: &str) -> Self {
        Reporter {
            out_dir: out_dir.to_path_buf(),
            operation: operation.to_string(),
            hash: hash.to_string(),
            summary_lines: Vec::new(),
        }
    }

    pub fn tag(&self) -> String {
        format!("{}@{}", self.operation, self.hash)
    }

    /// Queue a summary line; it lands in summary.txt with the provenance tag.
    pub fn note(&mut self, line: impl AsRef<str>) {
        self.summary_lines
            .push(format!("{} | {}", self.tag(), line.as_ref()));
    }

    /// Write report.csv with the provenance comment prepended.
    pub fn write_report_csv(&self, body: &str) -> Result<(), CliError> {
        let content = format!("# provenance: {}\n{body}", self.tag());
        write_atomic(&self.out_dir.join("report.csv"), &content)
    }

    pub fn write_debug_csv(&self, name: &str, body: &str) -> Result<(), CliError> {
        let content = format!("# provenance: {}\n{body}", self.tag());
        write_atomic(&self.out_dir.join("debug").join(name), &content)
    }

    /// Flush the queued summary lines to summary.txt.
    pub fn write_summary(&self) -> Result<(), CliError> {
        let mut content = self.summary_lines.join("\n");
        content.push('\n');
        write_atomic(&self.out_dir.join("summary.txt"), &content)
    }
}

/// Write via a temporary file in the same directory, then rename over the
/// target, so readers never observe a half-written report.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", file_name.to_string_lossy()));
    std::fs::write(&tmp, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::Io(format!("cannot rename into {}: {e}", path.display())))
}
