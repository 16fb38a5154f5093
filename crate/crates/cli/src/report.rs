//! Report envelope, canonical hashes and the error object.

use hypermod_core::hypergraph::Hypergraph;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// sha256 of the canonical form as compact JSON {"n", "hyperedges"}.
pub fn canonical_hash(h: &Hypergraph) -> String {
    let c = h.canonical_form();
    let text = json!({"n": c.n, "hyperedges": c.edges}).to_string();
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub struct Outcome {
    pub command: &'static str,
    pub input: Option<Hypergraph>,
    pub pass: bool,
    pub report: Value,
}

impl Outcome {
    pub fn new(
        command: &'static str,
        input: Option<&Hypergraph>,
        pass: bool,
        report: Value,
    ) -> Self {
        Outcome {
            command,
            input: input.cloned(),
            pass,
            report,
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        let mut v = json!({
            "tool": "hypermod",
            "version": VERSION,
            "command": self.command,
            "pass": self.pass,
            "report": self.report,
        });
        if let Some(h) = &self.input {
            v["input"] = json!({"n": h.n, "hyperedges": h.edges()});
            v["canonical_hash"] = json!(canonical_hash(h));
        }
        if pretty {
            serde_json::to_string_pretty(&v).expect("json")
        } else {
            v.to_string()
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            message: m.into(),
        }
    }

    pub fn input(m: impl Into<String>) -> Self {
        CliError {
            kind: "input",
            message: m.into(),
        }
    }

    pub fn io(m: impl Into<String>) -> Self {
        CliError {
            kind: "io",
            message: m.into(),
        }
    }

    pub fn compute(m: impl Into<String>) -> Self {
        CliError {
            kind: "computation",
            message: m.into(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({
            "tool": "hypermod",
            "version": VERSION,
            "error": {"kind": self.kind, "message": self.message},
        })
        .to_string()
    }
}
