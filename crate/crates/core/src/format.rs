//! Text (`.lat`) and JSON lattice formats.
//!
//! ```text
//! # comments run to end of line
//! lattice b4
//! elements 0 a b 1
//! covers 0<a 0<b a<1 b<1
//! ```
//!
//! The JSON form is `{"covers": [[x, y], ...], "elements": [...], "name": ...}`.
//! Emission writes keys in sorted order and covers as Hasse edges in element
//! order, so emitting a parsed emission reproduces it byte for byte.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::lattice::{FiniteLattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFormat {
    Lat,
    Json,
}

impl LatticeFormat {
    /// JSON when the first non-blank character opens an object.
    pub fn detect(source: &str) -> Self {
        if source.trim_start().starts_with('{') {
            LatticeFormat::Json
        } else {
            LatticeFormat::Lat
        }
    }
}

/// Characters allowed in element labels besides alphanumerics. Parentheses,
/// braces, commas and `<` are reserved by the file and query syntaxes.
const LABEL_PUNCT: &[char] = &['_', '.', '+', '-', '\'', '^', '~', '!', '@', '$', '%', '&', '|'];

pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_alphanumeric() || LABEL_PUNCT.contains(&c))
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

pub fn parse_lattice(source: &str, format: LatticeFormat) -> Result<FiniteLattice, LatticeError> {
    match format {
        LatticeFormat::Lat => parse_lat(source),
        LatticeFormat::Json => parse_json(source),
    }
}

pub fn emit_lattice(lattice: &FiniteLattice, format: LatticeFormat) -> String {
    match format {
        LatticeFormat::Lat => emit_lat(lattice),
        LatticeFormat::Json => emit_json(lattice),
    }
}

/// A parsed header/elements/relations document; shared by lattice and poset
/// files, which differ only in keywords.
pub(crate) struct LineDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub pairs: Vec<(usize, usize)>,
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    let rest = rest.strip_prefix(':').unwrap_or(rest);
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

pub(crate) fn parse_line_document(
    source: &str,
    header: &str,
    relation: &str,
) -> Result<LineDocument, LatticeError> {
    let mut name: Option<String> = None;
    let mut elements: Option<Vec<String>> = None;
    let mut pairs = Vec::new();

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = keyword(line, header) {
            if name.is_some() {
                return Err(LatticeError::syntax(line_no, format!("duplicate `{header}` line")));
            }
            if !is_valid_name(rest) {
                return Err(LatticeError::syntax(line_no, "expected a single-token name"));
            }
            name = Some(rest.to_string());
        } else if let Some(rest) = keyword(line, "elements") {
            if name.is_none() {
                return Err(LatticeError::syntax(line_no, format!("expected `{header} <name>` first")));
            }
            if elements.is_some() {
                return Err(LatticeError::syntax(line_no, "duplicate `elements` line"));
            }
            let mut seen = HashSet::new();
            let mut list = Vec::new();
            for tok in rest.split_whitespace() {
                if !is_valid_label(tok) {
                    return Err(LatticeError::syntax(line_no, format!("invalid label `{tok}`")));
                }
                if !seen.insert(tok) {
                    return Err(LatticeError::syntax(line_no, format!("duplicate label `{tok}`")));
                }
                list.push(tok.to_string());
            }
            if list.is_empty() {
                return Err(LatticeError::syntax(line_no, "no elements declared"));
            }
            elements = Some(list);
        } else if let Some(rest) = keyword(line, relation) {
            let Some(list) = elements.as_ref() else {
                return Err(LatticeError::syntax(line_no, format!("`{relation}` before `elements`")));
            };
            for tok in rest.split_whitespace() {
                let (x, y) = tok.split_once('<').ok_or_else(|| {
                    LatticeError::syntax(line_no, format!("expected `x<y`, found `{tok}`"))
                })?;
                let find = |l: &str| {
                    list.iter().position(|e| e == l).ok_or_else(|| {
                        LatticeError::syntax(line_no, format!("unknown element `{l}`"))
                    })
                };
                pairs.push((find(x)?, find(y)?));
            }
        } else {
            let word = line.split_whitespace().next().unwrap_or(line);
            return Err(LatticeError::syntax(line_no, format!("unexpected `{word}`")));
        }
    }

    let name = name.ok_or_else(|| LatticeError::syntax(1, format!("missing `{header}` line")))?;
    let elements = elements.ok_or_else(|| LatticeError::syntax(1, "missing `elements` line"))?;
    Ok(LineDocument {
        name,
        elements,
        pairs,
    })
}

fn parse_lat(source: &str) -> Result<FiniteLattice, LatticeError> {
    let doc = parse_line_document(source, "lattice", "covers")?;
    FiniteLattice::from_relation(doc.name, doc.elements, &doc.pairs)
}

/// Serialized lattice: Hasse edges by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub covers: Vec<[String; 2]>,
    pub elements: Vec<String>,
    pub name: String,
}

impl LatticeJson {
    pub fn from_lattice(lattice: &FiniteLattice) -> Self {
        LatticeJson {
            covers: lattice
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| [lattice.label(x).to_string(), lattice.label(y).to_string()])
                .collect(),
            elements: lattice.labels().to_vec(),
            name: lattice.name().to_string(),
        }
    }
}

fn parse_json(source: &str) -> Result<FiniteLattice, LatticeError> {
    let doc: LatticeJson = serde_json::from_str(source)
        .map_err(|e| LatticeError::syntax(e.line(), e.to_string()))?;
    if !is_valid_name(&doc.name) {
        return Err(LatticeError::syntax(1, "expected a single-token name"));
    }
    let mut seen = HashSet::new();
    for l in &doc.elements {
        if !is_valid_label(l) {
            return Err(LatticeError::syntax(1, format!("invalid label `{l}`")));
        }
        if !seen.insert(l.as_str()) {
            return Err(LatticeError::syntax(1, format!("duplicate label `{l}`")));
        }
    }
    let find = |l: &str| {
        doc.elements
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| LatticeError::syntax(1, format!("unknown element `{l}`")))
    };
    let pairs = doc
        .covers
        .iter()
        .map(|[x, y]| Ok((find(x)?, find(y)?)))
        .collect::<Result<Vec<_>, LatticeError>>()?;
    FiniteLattice::from_relation(doc.name.clone(), doc.elements.clone(), &pairs)
}

fn emit_lat(lattice: &FiniteLattice) -> String {
    let mut out = format!("lattice {}\nelements {}\ncovers", lattice.name(), lattice.labels().join(" "));
    for (x, y) in lattice.cover_pairs() {
        out.push(' ');
        out.push_str(lattice.label(x));
        out.push('<');
        out.push_str(lattice.label(y));
    }
    out.push('\n');
    out
}

fn emit_json(lattice: &FiniteLattice) -> String {
    let doc = LatticeJson::from_lattice(lattice);
    let mut s = serde_json::to_string_pretty(&doc).expect("lattice JSON serializes");
    s.push('\n');
    s
}
