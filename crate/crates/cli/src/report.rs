use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: Option<f64>,
    pub limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            passed: true,
            checks: Vec::new(),
            result: Value::Null,
        }
    }

    /// `value ≤ limit`.
    pub fn at_most(&mut self, name: &str, value: f64, limit: f64) {
        self.push(name, value <= limit, Some(value), Some(limit));
    }

    /// `value ≥ limit`.
    pub fn at_least(&mut self, name: &str, value: f64, limit: f64) {
        self.push(name, value >= limit, Some(value), Some(limit));
    }

    pub fn flag(&mut self, name: &str, passed: bool) {
        self.push(name, passed, None, None);
    }

    fn push(&mut self, name: &str, passed: bool, value: Option<f64>, limit: Option<f64>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.to_string(), passed, value: value.filter(|v| v.is_finite()), limit });
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        fs::write(path, serde_json::to_string_pretty(self).map_err(io::Error::other)? + "\n")
    }

    pub fn print_human(&self) {
        println!("{}: {}", self.command, if self.passed { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            match (c.value, c.limit) {
                (Some(v), Some(l)) => println!("  [{mark}] {} = {v:.6e} (limit {l:.1e})", c.name),
                (Some(v), None) => println!("  [{mark}] {} = {v:.6e}", c.name),
                _ => println!("  [{mark}] {}", c.name),
            }
        }
    }
}
