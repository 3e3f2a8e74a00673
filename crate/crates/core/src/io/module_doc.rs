//! The `*.mod.json` document: a submodule of `⊕ S(β_j)` given by its shifts
//! and generators in the polynomial text format.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{CoxRing, GradedSubmodule};
use crate::lattice::{FinAbGroup, GroupElem};

pub const MODULE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub schema_version: u32,
    /// One degree per component, in the coordinates of `A`.
    pub shifts: Vec<Vec<i64>>,
    pub generators: Vec<String>,
}

pub fn parse_module_document(text: &str) -> Result<ModuleDocument> {
    let doc: ModuleDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if doc.schema_version != MODULE_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: expected {MODULE_SCHEMA_VERSION}, found {}",
            doc.schema_version
        )));
    }
    Ok(doc)
}

/// Checks the coordinate count and reduces torsion coordinates.
pub fn degree_from_coords(a: &FinAbGroup, coords: &[i64]) -> Result<GroupElem> {
    if coords.len() != a.ngens() {
        return Err(Error::Parse(format!(
            "degree {coords:?} has {} coordinates, the grading group {} needs {}",
            coords.len(),
            a.structure_string(),
            a.ngens()
        )));
    }
    let mut e: GroupElem = coords.iter().map(|&x| BigInt::from(x)).collect();
    a.reduce(&mut e);
    Ok(e)
}

/// Parses `"c₁:c₂:…"` as a degree.
pub fn parse_degree(a: &FinAbGroup, text: &str) -> Result<GroupElem> {
    let coords: Vec<i64> = text
        .split(':')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree coordinate `{s}` in `{text}`")))
        })
        .collect::<Result<_>>()?;
    degree_from_coords(a, &coords)
}

/// Parses a comma-separated list of degrees.
pub fn parse_degree_list(a: &FinAbGroup, text: &str) -> Result<Vec<GroupElem>> {
    text.split(',').map(|s| parse_degree(a, s)).collect()
}

impl ModuleDocument {
    pub fn to_submodule(&self, ring: &Arc<CoxRing>) -> Result<GradedSubmodule> {
        let a = ring.diagram().group();
        let shifts = self
            .shifts
            .iter()
            .map(|s| degree_from_coords(a, s))
            .collect::<Result<Vec<_>>>()?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let f = ring
                    .poly()
                    .parse(g)
                    .map_err(|e| Error::Parse(format!("generators[{i}]: {e}")))?;
                if f.components().iter().any(|&c| c >= shifts.len()) {
                    return Err(Error::Parse(format!(
                        "generators[{i}]: component out of range ({} shifts)",
                        shifts.len()
                    )));
                }
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        GradedSubmodule::new(ring.clone(), shifts, gens)
    }

    pub fn from_submodule(n: &GradedSubmodule) -> Result<ModuleDocument> {
        let shifts = n
            .shifts()
            .iter()
            .map(|s| {
                s.iter()
                    .map(|x| {
                        i64::try_from(x)
                            .map_err(|_| Error::Unsupported("degree exceeds 64 bits".into()))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(ModuleDocument {
            schema_version: MODULE_SCHEMA_VERSION,
            shifts,
            generators: n.generators().iter().map(|g| g.to_text()).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples;
    use crate::graded::cox_ring;
    use crate::picard::build_diagram;

    #[test]
    fn module_round_trip() {
        let d = Arc::new(build_diagram(&examples::p2()));
        let b = d.whole_group();
        let r = Arc::new(cox_ring(d, b).unwrap());
        let text = r#"{"schema_version": 1, "shifts": [[0], [1]],
            "generators": ["Z_0^2 - Z_1*Z_2", "Z_0*Z_1[1] + Z_2[0]"]}"#;
        let doc = parse_module_document(text).unwrap();
        let n = doc.to_submodule(&r).unwrap();
        let back = ModuleDocument::from_submodule(&n).unwrap().to_submodule(&r).unwrap();
        assert_eq!(n, back);
        let bad = r#"{"schema_version": 1, "shifts": [[0]], "generators": ["Z_0 + Z_1^2"]}"#;
        assert!(parse_module_document(bad).unwrap().to_submodule(&r).is_err());
    }

    #[test]
    fn degrees() {
        let d = build_diagram(&examples::ex_1_100a());
        let a = d.group();
        assert_eq!(a.ngens(), 1);
        assert_eq!(parse_degree(a, "3").unwrap(), vec![BigInt::from(1)]);
        assert!(parse_degree(a, "1:2").is_err());
        assert_eq!(parse_degree_list(a, "0,1").unwrap().len(), 2);
    }
}
