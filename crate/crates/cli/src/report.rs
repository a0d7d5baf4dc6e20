use std::fs;
use std::path::Path;

use holonomy_core::curvature::CheckResult;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

/// Machine-readable outcome of one subcommand. Contains no timing so that
/// equal inputs give byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, seed: u64, config: Value) -> Self {
        Self {
            schema: SCHEMA,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            config,
            cache: None,
            passed: true,
            checks: Vec::new(),
            payload: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(CheckResult::new(name, pass));
    }

    pub fn extend(&mut self, prefix: &str, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.check(format!("{prefix}: {}", c.name), c.pass);
        }
    }

    pub fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json() + "\n")
    }

    pub fn print_summary(&self) {
        println!("{} (seed {})", self.command, self.seed);
        if let Some(c) = &self.cache {
            println!("cache: {c}");
        }
        for c in &self.checks {
            println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        println!("{} checks, {} failed", self.checks.len(), failed);
    }
}
