//! Gadget complexes and the 3-CNF to 2-complex compiler.
//!
//! A clause gadget is a skeleton of a simplex in which three simplices are
//! subdivided and have a small central simplex removed (the openings). The
//! conflict gadget is a disk glued to two triangular loops joined by an
//! edge. [`reduce`] takes one clause gadget per clause and glues a conflict
//! gadget between the openings of every pair of conflicting literals.

mod assemble;
mod dimacs;
mod gadgets;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, Vertex};

pub use assemble::{conflicts, reduce};
pub use dimacs::{parse_dimacs, write_dimacs, CnfFormula, DimacsError, Literal};
pub use gadgets::{clause_gadget_2_4, clause_gadget_general, conflict_gadget_l1, TG_BOUNDARY_WORD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clause gadget needs 1 <= l < k, got k = {k}, l = {l}")]
    ParameterRange { k: usize, l: usize },
    #[error(transparent)]
    Dimacs(#[from] DimacsError),
}

/// Opening `p` (1, 2 or 3) of clause gadget `clause` (from 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OpeningId {
    pub clause: usize,
    pub position: usize,
}

impl OpeningId {
    /// Position in the global list of literal occurrences, from 1.
    pub fn global(&self) -> usize {
        3 * (self.clause - 1) + self.position
    }
}

impl fmt::Display for OpeningId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "opening:{}:{}", self.clause, self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opening {
    /// The removed central simplex; its boundary stays in the complex.
    pub removed: Simplex,
    /// The original simplex that was subdivided around the hole.
    pub host: Simplex,
    pub complementary_sphere: SimplicialComplex,
}

/// An unordered pair of conflicting openings, smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConflictPair {
    pub first: OpeningId,
    pub second: OpeningId,
}

/// One glued conflict gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictRecord {
    pub tag: String,
    /// `None` for a standalone gadget.
    pub pair: Option<ConflictPair>,
    pub loop_a: [Vertex; 3],
    pub loop_b: [Vertex; 3],
    pub edge_c: [Vertex; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetComplex {
    pub complex: SimplicialComplex,
    pub openings: BTreeMap<OpeningId, Opening>,
    pub conflicts: Vec<ConflictRecord>,
    /// Gadget tag of every simplex.
    pub provenance: BTreeMap<Simplex, String>,
}

fn facet_lists(k: &SimplicialComplex) -> Vec<Vec<Vertex>> {
    k.facets().iter().map(|s| s.vertices().to_vec()).collect()
}

impl GadgetComplex {
    pub fn conflict_tag(pair: Option<&ConflictPair>) -> String {
        match pair {
            Some(p) => format!("conflict:{}:{}", p.first.global(), p.second.global()),
            None => "conflict:0:0".to_string(),
        }
    }

    /// Provenance, opening registry and conflict list as file metadata.
    pub fn metadata(&self) -> Map<String, Value> {
        let openings: Map<String, Value> = self
            .openings
            .iter()
            .map(|(id, o)| {
                (
                    id.to_string(),
                    json!({
                        "boundary": o.removed.vertices(),
                        "host": o.host.vertices(),
                        "complementary_sphere": facet_lists(&o.complementary_sphere),
                    }),
                )
            })
            .collect();
        let conflicts: Vec<Value> = self
            .conflicts
            .iter()
            .map(|c| {
                json!({
                    "tag": c.tag,
                    "openings": c.pair.map(|p| [p.first.to_string(), p.second.to_string()]),
                    "loop_a": c.loop_a,
                    "loop_b": c.loop_b,
                    "edge_c": c.edge_c,
                })
            })
            .collect();
        let mut by_tag: BTreeMap<&str, Vec<&[Vertex]>> = BTreeMap::new();
        for (s, tag) in &self.provenance {
            by_tag.entry(tag).or_default().push(s.vertices());
        }
        let mut m = Map::new();
        m.insert("openings".into(), Value::Object(openings));
        m.insert("conflicts".into(), Value::Array(conflicts));
        m.insert("provenance".into(), json!(by_tag));
        m
    }
}
