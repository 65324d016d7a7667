//! Knot catalog: built-in fibred knots plus user entries from JSON files of
//! the form `[{"name": "...", "braid": "1 1 1", "notes": "..."}]`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexander::KnotSpec;
use crate::braid::{closure_info, BraidWord};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("catalog line {line}: duplicate knot name `{name}`")]
    DuplicateName { name: String, line: usize },
    #[error(
        "catalog line {line}: braid of `{name}` closes to {components} components, not a knot"
    )]
    NotAKnot {
        name: String,
        line: usize,
        components: usize,
    },
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub braid: BraidWord,
    #[serde(default)]
    pub notes: String,
}

impl CatalogEntry {
    pub fn knot_spec(&self) -> KnotSpec {
        KnotSpec::from_braid(Some(self.name.clone()), self.braid.clone())
            .expect("catalog entries close to knots")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn builtin_entry(name: &str, braid: &str, notes: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        braid: BraidWord::parse(braid).expect("built-in braid"),
        notes: notes.into(),
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog {
            entries: vec![
                builtin_entry("unknot", "strands=1", "trivial knot, genus 0"),
                builtin_entry("trefoil", "1 1 1", "T(2,3), fibred, genus 1"),
                builtin_entry("figure-eight", "1 -2 1 -2", "4_1, fibred, genus 1"),
                builtin_entry("T25", "1 1 1 1 1", "T(2,5), fibred, genus 2"),
                builtin_entry("T27", "1 1 1 1 1 1 1", "T(2,7), fibred, genus 3"),
            ],
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn knot(&self, name: &str) -> Result<KnotSpec, CatalogError> {
        self.get(name)
            .map(CatalogEntry::knot_spec)
            .ok_or_else(|| CatalogError::UnknownKnot(name.to_string()))
    }

    /// Appends the entries of a JSON catalog document.
    pub fn merge_json(&mut self, text: &str) -> Result<(), CatalogError> {
        let entries: Vec<CatalogEntry> =
            serde_json::from_str(text).map_err(|e| CatalogError::Malformed {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        for entry in entries {
            let line = line_of_name(text, &entry.name);
            if self.get(&entry.name).is_some() {
                return Err(CatalogError::DuplicateName {
                    name: entry.name,
                    line,
                });
            }
            let components = closure_info(&entry.braid).component_count();
            if components != 1 {
                return Err(CatalogError::NotAKnot {
                    name: entry.name,
                    line,
                    components,
                });
            }
            self.entries.push(entry);
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.merge_json(&text)
    }
}

// Last line mentioning the quoted name; duplicates are reported at their
// second occurrence.
fn line_of_name(text: &str, name: &str) -> usize {
    let needle = format!("\"{name}\"");
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.contains(&needle))
        .map(|(i, _)| i + 1)
        .last()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let c = Catalog::builtin();
        let names: Vec<_> = c.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["unknot", "trefoil", "figure-eight", "T25", "T27"]);
        for e in c.entries() {
            assert!(closure_info(&e.braid).is_knot(), "{}", e.name);
        }
        assert!(c.knot("T27").is_ok());
        assert!(matches!(c.knot("T29"), Err(CatalogError::UnknownKnot(_))));
    }

    #[test]
    fn merge_user_file() {
        let mut c = Catalog::builtin();
        c.merge_json(r#"[{"name": "T(3,4)", "braid": "1 2 1 2 1 2 1 2", "notes": "torus knot"}]"#)
            .unwrap();
        assert_eq!(c.entries().len(), 6);
        assert_eq!(c.get("T(3,4)").unwrap().braid.strands(), 3);
    }

    #[test]
    fn duplicate_name_is_rejected() {
        let mut c = Catalog::builtin();
        let text = "[\n  {\"name\": \"k\", \"braid\": \"1 1 1\"},\n  {\"name\": \"k\", \"braid\": \"1 -2 1 -2\"}\n]";
        match c.merge_json(text) {
            Err(CatalogError::DuplicateName { name, line }) => {
                assert_eq!((name.as_str(), line), ("k", 3));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Catalog::builtin().merge_json(r#"[{"name": "trefoil", "braid": "1 1 1"}]"#),
            Err(CatalogError::DuplicateName { .. })
        ));
    }

    #[test]
    fn malformed_file_reports_line() {
        let text = "[\n  {\"name\": \"a\", \"braid\": \"1 1 1\"},\n  {\"name\": \"b\", \"braid\": \"1 0\"}\n]";
        match Catalog::builtin().merge_json(text) {
            Err(CatalogError::Malformed { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match Catalog::builtin().merge_json("[\n{\"name\": \"a\",\n") {
            Err(CatalogError::Malformed { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Catalog::builtin().merge_json(r#"[{"name": "hopf", "braid": "1 1"}]"#),
            Err(CatalogError::NotAKnot { components: 2, .. })
        ));
    }
}
