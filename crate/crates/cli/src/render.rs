//! JSON and flattened text output.
//!
//! Both go through `serde_json::Value`, whose maps are ordered by key, so
//! output is byte-stable. The text form lists every leaf as `path: value`
//! with the value in JSON notation; it carries exactly the JSON's content.

use serde::Serialize;
use serde_json::Value;

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut s = serde_json::to_string_pretty(&value).expect("values print");
    s.push('\n');
    s
}

pub fn to_text<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut out = String::new();
    for (path, leaf) in flatten(&value) {
        out.push_str(&path);
        out.push_str(": ");
        out.push_str(&leaf);
        out.push('\n');
    }
    out
}

/// Leaves of `value` as `(path, JSON text)` pairs in document order. Empty
/// arrays and objects are leaves.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(v, p, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                walk(v, format!("{path}[{i}]"), out);
            }
        }
        leaf => out.push((path, leaf.to_string())),
    }
}

/// Parses `to_text` output back into `(path, JSON text)` pairs.
pub fn parse_text(text: &str) -> Option<Vec<(String, String)>> {
    text.lines()
        .map(|line| {
            let (path, leaf) = line.split_once(": ")?;
            Some((path.to_string(), leaf.to_string()))
        })
        .collect()
}
