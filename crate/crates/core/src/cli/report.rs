use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::exterior::basis;
use crate::hodge::Verdict;
use crate::scalar::{Field, Mode};

/// Arrays longer than this are summarized in text output.
const TEXT_ARRAY_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub summary: String,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: &str, mode: Mode, verdict: Verdict, summary: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            input: None,
            mode,
            seed: None,
            verdict,
            summary: summary.into(),
            details: Value::Object(Default::default()),
            timings_ms: None,
        }
    }

    pub fn with_input(mut self, input: Option<String>) -> Self {
        self.input = input;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).expect("report details serialize");
        if let Value::Object(map) = &mut self.details {
            map.insert(key.to_string(), value);
        }
        self
    }

    /// 0 when a verdict was computed, 2 when it is indeterminate.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Indeterminate => 2,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(input) = &self.input {
            let _ = writeln!(out, "input: {input}");
        }
        let _ = writeln!(out, "mode: {}", self.mode);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "verdict: {}", self.summary);
        if let Value::Object(map) = &self.details {
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", text_value(v));
            }
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(out, "  time {k}: {v:.3} ms");
            }
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.len() > TEXT_ARRAY_LIMIT => format!("[{} items; use --json]", a.len()),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelledTerm {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub coeff: crate::scalar::Scalar,
}

/// Nonzero entries of a `H^{p,q}` coefficient vector, labelled by basis element.
pub fn label_vector<F: Field>(n: usize, p: usize, q: usize, v: &[F]) -> Vec<LabelledTerm> {
    let b = basis(n, p, q).unwrap_or_default();
    b.iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| LabelledTerm {
            i: i.to_vec(),
            j: j.to_vec(),
            coeff: c.to_scalar(),
        })
        .collect()
}
