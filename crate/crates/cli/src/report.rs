use std::fmt::Write as _;

use orbibundle::example::Check;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl From<Check> for CheckEntry {
    fn from(c: Check) -> Self {
        CheckEntry {
            name: c.name,
            pass: c.pass,
            detail: c.detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: Value::Object(Default::default()),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckEntry {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        render(&mut out, &self.results, 1);
        let passed = self.checks.iter().filter(|c| c.pass).count();
        writeln!(out, "checks ({passed}/{} passed):", self.checks.len()).unwrap();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(out, "  [{tag}] {}", c.name).unwrap();
            } else {
                writeln!(out, "  [{tag}] {} ({})", c.name, c.detail).unwrap();
            }
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(is_scalar),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if flat(x) {
                    writeln!(out, "{pad}{k}: {}", inline(x)).unwrap();
                } else {
                    writeln!(out, "{pad}{k}:").unwrap();
                    render(out, x, depth + 1);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if flat(x) {
                    writeln!(out, "{pad}- {}", inline(x)).unwrap();
                } else if let Value::Object(map) = x {
                    // first entry shares the bullet line
                    let mut item = String::new();
                    render(&mut item, x, depth + 1);
                    let body = item.trim_start();
                    if map.is_empty() {
                        writeln!(out, "{pad}- {{}}").unwrap();
                    } else {
                        write!(out, "{pad}- {body}").unwrap();
                    }
                } else {
                    writeln!(out, "{pad}-").unwrap();
                    render(out, x, depth + 1);
                }
            }
        }
        other => writeln!(out, "{pad}{}", inline(other)).unwrap(),
    }
}
