//! Structured verification reports: a named list of individual checks, each
//! pass/fail with a human-readable detail line. Serializable to JSON and
//! renderable as an indented text tree with deterministic ordering.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    /// Free-form context lines (counts, enumerated sets, witnesses).
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Absorb another report's checks under a prefixed label.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                label: format!("{prefix}: {}", c.label),
                passed: c.passed,
                detail: c.detail,
            });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "[{status}] {} ({}/{} checks passed)\n",
            self.name,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {mark} {}", c.label));
            if !c.detail.is_empty() {
                out.push_str(&format!(" — {}", c.detail));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("  note {n}\n"));
        }
        out
    }
}
