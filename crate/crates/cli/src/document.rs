//! Problem documents: named groups, sets and maps in one JSON file.
//!
//! ```json
//! {
//!   "order": 3,
//!   "groups": { "Z": { "rank": 1, "torsion": [] } },
//!   "sets": { "A": { "group": "Z", "elements": [0, 1, 4] } },
//!   "maps": { "phi": { "source": "A", "target": "B", "pairs": [[0, 0], [1, 1], [4, 3]] } }
//! }
//! ```
//!
//! Loading never stops at the first problem. Everything that resolves is
//! kept and everything that does not becomes a diagnostic.

use std::collections::BTreeMap;
use std::sync::Arc;

use addcat::addset::AdditiveSet;
use addcat::fgab::FgaGroup;
use addcat::freiman::FreimanMap;
use addcat::json::{elements_from_json, field, group_from_json, map_from_pairs_json, usize_from_json, JsonError};
use serde_json::Value;

/// k used when neither the document nor the command line sets one.
pub const DEFAULT_ORDER: usize = 2;

#[derive(Debug, Default)]
pub struct Document {
    pub order: usize,
    pub groups: BTreeMap<String, Arc<FgaGroup>>,
    pub sets: BTreeMap<String, AdditiveSet>,
    pub maps: BTreeMap<String, FreimanMap>,
}

fn entries<'a>(root: &'a Value, key: &str, diagnostics: &mut Vec<String>) -> Vec<(&'a String, &'a Value)> {
    match root.get(key) {
        None => Vec::new(),
        Some(Value::Object(m)) => m.iter().collect(),
        Some(_) => {
            diagnostics.push(format!("{key}: expected an object of named entries"));
            Vec::new()
        }
    }
}

fn name_field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a str, JsonError> {
    field(v, key, path)?.as_str().ok_or_else(|| JsonError::Shape {
        path: format!("{path}.{key}"),
        expected: "a name",
    })
}

/// Error text that always names where in the document it arose.
fn located(path: &str, e: JsonError) -> String {
    match e {
        JsonError::Shape { .. } | JsonError::Invalid { .. } => e.to_string(),
        other => format!("{path}: {other}"),
    }
}

impl Document {
    /// Resolve a parsed document. `order_override` beats every order
    /// written in the document.
    pub fn load(root: &Value, order_override: Option<usize>) -> (Document, Vec<String>) {
        let mut diagnostics = Vec::new();
        let mut doc = Document::default();
        if !root.is_object() {
            diagnostics.push("document: expected a JSON object".to_string());
            return (doc, diagnostics);
        }
        let doc_order = match root.get("order") {
            None => Ok(DEFAULT_ORDER),
            Some(v) => usize_from_json(v, "order"),
        };
        doc.order = match (order_override, doc_order) {
            (Some(k), _) => k,
            (None, Ok(k)) => k,
            (None, Err(e)) => {
                diagnostics.push(e.to_string());
                DEFAULT_ORDER
            }
        };
        if doc.order == 0 {
            diagnostics.push("order: k must be at least 1".to_string());
        }

        for (name, v) in entries(root, "groups", &mut diagnostics) {
            match group_from_json(v, &format!("groups.{name}")) {
                Ok(g) => {
                    doc.groups.insert(name.clone(), g);
                }
                Err(e) => diagnostics.push(located(&format!("groups.{name}"), e)),
            }
        }

        for (name, v) in entries(root, "sets", &mut diagnostics) {
            let path = format!("sets.{name}");
            let parsed = name_field(v, "group", &path).and_then(|g| match doc.groups.get(g) {
                Some(group) => elements_from_json(group, field(v, "elements", &path)?, &format!("{path}.elements")),
                None => Err(JsonError::Invalid {
                    path: format!("{path}.group"),
                    message: format!("unknown group {g:?}"),
                }),
            });
            match parsed {
                Ok(set) => {
                    doc.sets.insert(name.clone(), set);
                }
                Err(e) => diagnostics.push(located(&path, e)),
            }
        }

        for (name, v) in entries(root, "maps", &mut diagnostics) {
            let path = format!("maps.{name}");
            let parsed = (|| {
                let lookup = |key: &str| -> Result<&AdditiveSet, JsonError> {
                    let s = name_field(v, key, &path)?;
                    doc.sets.get(s).ok_or_else(|| JsonError::Invalid {
                        path: format!("{path}.{key}"),
                        message: format!("unknown set {s:?}"),
                    })
                };
                let (source, target) = (lookup("source")?, lookup("target")?);
                let order = match (order_override, v.get("order")) {
                    (Some(k), _) => k,
                    (None, Some(o)) => usize_from_json(o, &format!("{path}.order"))?,
                    (None, None) => doc.order,
                };
                map_from_pairs_json(source, target, field(v, "pairs", &path)?, order, &format!("{path}.pairs"))
            })();
            match parsed {
                Ok(f) => {
                    doc.maps.insert(name.clone(), f);
                }
                Err(e) => diagnostics.push(located(&path, e)),
            }
        }
        (doc, diagnostics)
    }
}
