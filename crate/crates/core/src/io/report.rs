//! Run reports: the command, a digest of its inputs and the structured
//! result, rendered as JSON or as indented text.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 over the length-prefixed input files, hex encoded.
    pub input_digest: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn input_digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for x in inputs {
        h.update((x.len() as u64).to_le_bytes());
        h.update(x);
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs: &[&[u8]], result: Value) -> RunReport {
        RunReport {
            command,
            input_digest: input_digest(inputs),
            result,
            timing_ms: None,
        }
    }
}

pub fn emit_report(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let v = serde_json::to_value(r).expect("reports serialize");
            let mut out = String::new();
            render(&v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Array(_))) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn deterministic_and_rendered() {
        let r = RunReport::new(
            vec!["toric".into(), "classify".into()],
            &[b"abc"],
            json!({"complete": true, "rows": [{"twist": ["1"], "dims": [1, 0]}]}),
        );
        let a = emit_report(&r, Format::Json);
        assert_eq!(a, emit_report(&r, Format::Json));
        assert!(!a.contains("timing_ms"));
        let t = emit_report(&r, Format::Text);
        assert!(t.contains("complete: true"), "{t}");
        assert!(t.contains("dims: [1, 0]"), "{t}");
        assert_ne!(input_digest(&[b"ab", b"c"]), input_digest(&[b"a", b"bc"]));
    }
}
