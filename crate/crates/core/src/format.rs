//! Complex file formats.
//!
//! Text: one maximal face per line as space-separated vertex labels; `#`
//! starts a comment. JSON: `{"facets": [[..], ..], "metadata": {..}}` with
//! `metadata` optional. Facets round-trip losslessly through both.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: invalid vertex label {token:?}")]
    BadLabel { line: usize, token: String },
    #[error("invalid JSON complex: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub facets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub metadata: Map<String, Value>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            facets: k.facets().iter().map(|s| s.vertices().to_vec()).collect(),
            metadata: Map::new(),
        }
    }

    pub fn with_metadata(mut self, metadata: Map<String, Value>) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        SimplicialComplex::from_maximal_faces(self.facets.iter().cloned())
    }
}

pub fn parse_text(text: &str) -> Result<ComplexFile, FormatError> {
    let mut facets = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let face = body
            .split_whitespace()
            .map(|t| {
                t.parse::<Vertex>().map_err(|_| FormatError::BadLabel {
                    line: n + 1,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if !face.is_empty() {
            facets.push(face);
        }
    }
    Ok(ComplexFile {
        facets,
        metadata: Map::new(),
    })
}

pub fn parse_json(text: &str) -> Result<ComplexFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_any(text: &str) -> Result<ComplexFile, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn write_text(file: &ComplexFile) -> String {
    let mut out = String::new();
    for f in &file.facets {
        let line: Vec<String> = f.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// One facet per line; each metadata entry on one line.
pub fn write_json(file: &ComplexFile) -> String {
    let mut out = String::from("{\n  \"facets\": [");
    for (i, f) in file.facets.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&compact(f));
    }
    out.push_str("\n  ]");
    if !file.metadata.is_empty() {
        out.push_str(",\n  \"metadata\": {");
        for (i, (k, v)) in file.metadata.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&compact(k.as_str()));
            out.push_str(": ");
            out.push_str(&compact(v));
        }
        out.push_str("\n  }");
    }
    out.push_str("\n}\n");
    out
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}
