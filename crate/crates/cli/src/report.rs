//! CSV reports: `#` header lines (tool version, config echo, wall time),
//! one column line, then data rows in task order.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    config: Vec<(String, String)>,
    columns: String,
    rows: Vec<String>,
    notes: Vec<String>,
    /// Set when a property check failed; the process exits with status 2.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &'static str, columns: impl Into<String>) -> Self {
        Self { command, config: Vec::new(), columns: columns.into(), rows: Vec::new(), notes: Vec::new(), failed: false }
    }

    pub fn config(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn row(&mut self, row: impl Into<String>) {
        self.rows.push(row.into());
    }

    /// Trailing `#` line after the data, for summaries.
    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn fail_if(&mut self, failed: bool) {
        self.failed |= failed;
    }

    pub fn render(&self, wall: Duration) -> String {
        let mut out = format!("# nlgap {} {}\n", env!("CARGO_PKG_VERSION"), self.command);
        let config: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("# config: {}\n", config.join(" ")));
        out.push_str(&format!("# wall_time_s={:.3}\n", wall.as_secs_f64()));
        out.push_str(&self.columns);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("# {n}\n"));
        }
        out
    }

    /// Writes to `path`, or standard output when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>, wall: Duration) -> Result<()> {
        write_output(path, &self.render(wall))
    }

    pub fn config_line(&self) -> String {
        self.config.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: PathBuf::from(path), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(text: &str) -> String {
        text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
    }

    #[test]
    fn layout() {
        let mut r = Report::new("demo", "a,b");
        r.config("n", 4).config("q", 1.5);
        r.row("1,2");
        r.note("done");
        let text = r.render(Duration::from_millis(1500));
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# nlgap ") && lines[0].ends_with(" demo"));
        assert_eq!(lines[1], "# config: n=4 q=1.5");
        assert_eq!(lines[2], "# wall_time_s=1.500");
        assert_eq!(&lines[3..], ["a,b", "1,2", "# done"]);
        assert_eq!(body(&text), "a,b\n1,2\n");
    }
}
