//! JSON structure files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{builtin_structure, validate_brace, validate_lcs, BinaryTable, Brace, LinearCycleSet, Structure};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Lcs,
    Brace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub kind: StructureKind,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<Vec<Vec<usize>>>,
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure files serialize")
    }

    pub fn from_structure(s: &Structure) -> Self {
        match s {
            Structure::Lcs(l) => StructureFile {
                kind: StructureKind::Lcs,
                order: l.order(),
                add: l.add_table().rows(),
                dot: Some(l.dot_table().rows()),
                circle: None,
            },
            Structure::Brace(b) => StructureFile {
                kind: StructureKind::Brace,
                order: b.order(),
                add: b.add_table().rows(),
                dot: None,
                circle: Some(b.circle_table().rows()),
            },
        }
    }

    fn table(&self, rows: &[Vec<usize>], name: &str) -> Result<BinaryTable> {
        if rows.len() != self.order {
            return Err(Error::MalformedTable(format!(
                "`{name}` has {} rows but order is {}",
                rows.len(),
                self.order
            )));
        }
        BinaryTable::from_rows(rows.to_vec())
            .map_err(|e| Error::MalformedTable(format!("`{name}`: {e}")))
    }

    /// Both tables, checked for shape but not for axioms.
    pub fn tables(&self) -> Result<(BinaryTable, BinaryTable)> {
        let add = self.table(&self.add, "add")?;
        let second = match (self.kind, &self.dot, &self.circle) {
            (StructureKind::Lcs, Some(dot), None) => self.table(dot, "dot")?,
            (StructureKind::Brace, None, Some(circle)) => self.table(circle, "circle")?,
            (StructureKind::Lcs, _, _) => {
                return Err(Error::MalformedTable(
                    "an lcs file needs `dot` and no `circle`".into(),
                ))
            }
            (StructureKind::Brace, _, _) => {
                return Err(Error::MalformedTable(
                    "a brace file needs `circle` and no `dot`".into(),
                ))
            }
        };
        Ok((add, second))
    }

    /// Validate and normalize so that the neutral element has index 0.
    pub fn into_structure(&self) -> Result<Structure> {
        let (add, second) = self.tables()?;
        let structure = match self.kind {
            StructureKind::Lcs => {
                let report = validate_lcs(&add, &second)?;
                if !report.is_valid() {
                    return Err(Error::Invalid(report));
                }
                let l = LinearCycleSet::assume_valid(add, second);
                Structure::Lcs(l.relabel(&l.zero_first_permutation()))
            }
            StructureKind::Brace => {
                let report = validate_brace(&add, &second)?;
                if !report.is_valid() {
                    return Err(Error::Invalid(report));
                }
                let b = Brace::assume_valid(add, second);
                Structure::Brace(b.relabel(&b.zero_first_permutation()))
            }
        };
        Ok(structure)
    }
}

impl StructureFile {
    /// Validate without relabelling elements.
    pub fn into_structure_exact(&self) -> Result<Structure> {
        let (add, second) = self.tables()?;
        match self.kind {
            StructureKind::Lcs => Ok(Structure::Lcs(LinearCycleSet::new(add, second)?)),
            StructureKind::Brace => Ok(Structure::Brace(Brace::new(add, second)?)),
        }
    }
}

/// Load a structure from a JSON file, or from `builtin:NAME`.
pub fn load_structure(source: &str) -> Result<Structure> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin_structure(name);
    }
    let text = std::fs::read_to_string(Path::new(source))?;
    StructureFile::from_json(&text)?.into_structure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::z4_lcs;

    #[test]
    fn round_trip() {
        let s = Structure::Lcs(z4_lcs());
        let json = StructureFile::from_structure(&s).to_json();
        assert_eq!(StructureFile::from_json(&json).unwrap().into_structure().unwrap(), s);
    }

    #[test]
    fn rejects_unknown_keys_and_ragged_tables() {
        let extra = r#"{"kind":"lcs","order":1,"add":[[0]],"dot":[[0]],"extra":1}"#;
        assert!(StructureFile::from_json(extra).is_err());
        let ragged = r#"{"kind":"lcs","order":2,"add":[[0,1],[1]],"dot":[[0,1],[0,1]]}"#;
        let file = StructureFile::from_json(ragged).unwrap();
        assert!(matches!(file.into_structure(), Err(Error::MalformedTable(_))));
        let missing = r#"{"kind":"brace","order":1,"add":[[0]],"dot":[[0]]}"#;
        assert!(StructureFile::from_json(missing).unwrap().into_structure().is_err());
    }

    #[test]
    fn reindexes_neutral_element() {
        // ℤ/2 written with the neutral element at index 1
        let text = r#"{"kind":"lcs","order":2,"add":[[1,0],[0,1]],"dot":[[0,1],[0,1]]}"#;
        let s = StructureFile::from_json(text).unwrap().into_structure().unwrap().to_lcs();
        assert_eq!(s.zero(), 0);
        assert_eq!(s.add(1, 1), 0);
    }
}
