//! The `*.fan.json` document: a fan as rays plus maximal cones.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;

pub const FAN_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A validated document and the warnings raised while normalizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFan {
    pub document: FanDocument,
    pub warnings: Vec<String>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
}

/// Parses and validates a fan document. Non-primitive rays are divided by
/// the gcd of their entries, with a warning.
pub fn parse_fan(text: &str) -> Result<ParsedFan> {
    let mut doc: FanDocument = serde_json::from_str(text).map_err(json_error)?;
    if doc.schema_version != FAN_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: expected {FAN_SCHEMA_VERSION}, found {}",
            doc.schema_version
        )));
    }
    let mut warnings = Vec::new();
    let n = doc.ambient_dim;
    for (i, r) in doc.rays.iter_mut().enumerate() {
        if r.len() != n {
            return Err(Error::Parse(format!(
                "rays[{i}]: expected {n} coordinates, found {}",
                r.len()
            )));
        }
        let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(Error::Parse(format!("rays[{i}]: zero vector")));
        }
        if g != 1 {
            let old = r.clone();
            for x in r.iter_mut() {
                *x /= g;
            }
            warnings.push(format!("rays[{i}]: {old:?} normalized to {r:?}"));
        }
    }
    for (i, r) in doc.rays.iter().enumerate() {
        if let Some(j) = doc.rays[..i].iter().position(|s| s == r) {
            return Err(Error::Parse(format!("rays[{i}]: same ray as rays[{j}]")));
        }
    }
    let k = doc.rays.len();
    for (i, c) in doc.max_cones.iter().enumerate() {
        for (j, &x) in c.iter().enumerate() {
            if x >= k {
                return Err(Error::Parse(format!(
                    "max_cones[{i}][{j}]: ray index {x} out of range ({k} rays)"
                )));
            }
        }
    }
    doc.to_fan()?;
    Ok(ParsedFan {
        document: doc,
        warnings,
    })
}

impl FanDocument {
    pub fn to_fan(&self) -> Result<Fan> {
        let f = Fan::new(self.ambient_dim, self.rays.clone(), self.max_cones.clone())?;
        Ok(match &self.name {
            Some(nm) => f.with_name(nm.clone()),
            None => f,
        })
    }

    pub fn from_fan(f: &Fan) -> FanDocument {
        FanDocument {
            schema_version: FAN_SCHEMA_VERSION,
            name: (!f.name().is_empty()).then(|| f.name().to_string()),
            ambient_dim: f.ambient_dim(),
            rays: f.rays().to_vec(),
            max_cones: f.max_cones().to_vec(),
        }
    }
}

pub fn emit_fan(doc: &FanDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("fan documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_round_trips() {
        let text = r#"{"schema_version": 1, "ambient_dim": 2,
            "rays": [[2, 4], [0, 1], [-1, 0]], "max_cones": [[0, 1], [1, 2]]}"#;
        let p = parse_fan(text).unwrap();
        assert_eq!(p.document.rays[0], vec![1, 2]);
        assert_eq!(p.warnings.len(), 1);
        let again = parse_fan(&emit_fan(&p.document)).unwrap();
        assert_eq!(again.document, p.document);
        assert!(again.warnings.is_empty());
    }

    #[test]
    fn diagnostics() {
        let bad = r#"{"schema_version": 1, "ambient_dim": 2,
            "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 9]]}"#;
        let e = parse_fan(bad).unwrap_err().to_string();
        assert!(e.contains("max_cones[0][1]") && e.contains("9"), "{e}");
        let e = parse_fan(r#"{"schema_version": 1, "ambient_dim": 2, "rays": [[1]], "max_cones": []}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("rays[0]"), "{e}");
        let e = parse_fan("{\n  \"schema_version\": 1,\n  \"rays\": oops\n}").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        let e = parse_fan(r#"{"schema_version": 2, "ambient_dim": 1, "rays": [], "max_cones": []}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("schema_version"), "{e}");
    }
}
