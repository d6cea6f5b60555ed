//! Verification reports: a digest of the inputs, a status, and the nonzero
//! residual coordinates that witness a failure.

use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::exact::{format_rational, Rational, Scalar};
use crate::hecke::HeckeElem;
use crate::tensor::RingMatrix;

/// Witness lists are truncated to this many entries.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Falsified,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Falsified => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub location: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub inputs: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub timing_ms: u64,
}

impl VerificationReport {
    pub fn new(command: &str, inputs: &Value) -> Self {
        VerificationReport {
            command: command.to_string(),
            inputs: digest(inputs),
            status: Status::Verified,
            witnesses: Vec::new(),
            error: None,
            seed: None,
            details: None,
            timing_ms: 0,
        }
    }

    /// Records residual witnesses; the status becomes falsified if any exist.
    pub fn absorb(&mut self, witnesses: Vec<Witness>) {
        if !witnesses.is_empty() && self.status == Status::Verified {
            self.status = Status::Falsified;
        }
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(witnesses.into_iter().take(room));
    }

    pub fn fail_with(&mut self, message: String) {
        self.status = Status::Error;
        self.error = Some(message);
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_pretty(&self) -> String {
        let mut out = format!("{}: {}", self.command, status_word(self.status));
        if let Some(e) = &self.error {
            out.push_str(&format!("\n  error: {e}"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("\n  {} = {}", w.location, w.value));
        }
        if let Some(Value::String(text)) = &self.details {
            out.push('\n');
            out.push_str(text);
        }
        if let Some(s) = self.seed {
            out.push_str(&format!("\n  seed: {s}"));
        }
        out.push_str(&format!(
            "\n  inputs: {}\n  time: {} ms",
            self.inputs, self.timing_ms
        ));
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Falsified => "falsified",
        Status::Error => "error",
    }
}

/// SHA-256 of the canonical (sorted-key) serialization.
pub fn digest(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("json serializes");
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn matrix_witnesses<S: Scalar + Display>(m: &RingMatrix<S>) -> Vec<Witness> {
    m.nonzero_entries()
        .take(MAX_WITNESSES)
        .map(|(i, j, c)| Witness {
            location: format!("({i},{j})"),
            value: c.to_string(),
        })
        .collect()
}

pub fn rational_matrix_witnesses(m: &RingMatrix<Rational>) -> Vec<Witness> {
    m.nonzero_entries()
        .take(MAX_WITNESSES)
        .map(|(i, j, c)| Witness {
            location: format!("({i},{j})"),
            value: format_rational(c),
        })
        .collect()
}

pub fn hecke_witnesses<S: Scalar + Display>(e: &HeckeElem<S>) -> Vec<Witness> {
    e.terms()
        .take(MAX_WITNESSES)
        .map(|(b, c)| Witness {
            location: b.to_string(),
            value: c.to_string(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use serde_json::json;

    #[test]
    fn status_and_witnesses() {
        let mut r = VerificationReport::new("verify-re", &json!({"a": 1}));
        assert_eq!(r.status.exit_code(), 0);
        r.absorb(vec![]);
        assert_eq!(r.status, Status::Verified);
        let m = RingMatrix::diag(vec![int(0), int(3)]);
        r.absorb(rational_matrix_witnesses(&m));
        assert_eq!(r.status, Status::Falsified);
        assert_eq!(
            r.witnesses,
            vec![Witness {
                location: "(1,1)".into(),
                value: "3".into()
            }]
        );
        assert_eq!(r.to_json()["status"], "falsified");
        assert!(r.render_pretty().contains("(1,1) = 3"));
    }

    #[test]
    fn digests_are_stable() {
        let a = digest(&json!({"x": [1, 2], "y": "z"}));
        assert_eq!(a.len(), 64);
        assert_eq!(a, digest(&json!({"y": "z", "x": [1, 2]})));
        assert_ne!(a, digest(&json!({"x": [2, 1], "y": "z"})));
    }
}
