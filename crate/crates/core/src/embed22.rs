//! Deciding whether a 2-complex embeds in the plane.
//!
//! Three stages, in order: planarity of the 1-skeleton of the barycentric
//! subdivision, the vertex-link condition, and a scan of the dual graph for
//! a closed homological 2-cycle. A complex passing all three embeds.

use std::collections::{BTreeMap, HashMap};

use petgraph::graph::UnGraph;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, Graph, Simplex, SimplicialComplex, UnionFind, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Embed22Error {
    #[error("complex has dimension {0}, expected at most 2")]
    DimensionTooLarge(usize),
    #[error("edge {edge} lies in {count} triangles")]
    OverloadedEdge { edge: Simplex, count: usize },
}

impl From<ComplexError> for Embed22Error {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::DimensionTooLarge { actual, .. } => Embed22Error::DimensionTooLarge(actual),
            other => unreachable!("unexpected complex error {other}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    PlanarityFailure,
    LinkFailure { vertex: Vertex },
    HomologicalCycle { triangles: Vec<Simplex> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embed22Report {
    pub verdict: Answer,
    pub reason: Reason,
}

pub fn is_planar(g: &Graph) -> bool {
    let index: HashMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(index.len(), g.edge_count());
    for _ in 0..index.len() {
        pg.add_node(());
    }
    for (a, b) in g.edges() {
        pg.add_edge((index[&a] as u32).into(), (index[&b] as u32).into(), ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.component_count() == g.vertex_count()
}

fn is_single_cycle(g: &Graph) -> bool {
    g.vertex_count() >= 3
        && g.edge_count() == g.vertex_count()
        && g.component_count() == 1
        && g.vertices().all(|v| g.degree(v) == 2)
}

/// First vertex whose link is neither a forest nor exactly one cycle.
pub fn link_condition(k: &SimplicialComplex) -> Result<Option<Vertex>, Embed22Error> {
    if k.dim() > 2 {
        return Err(Embed22Error::DimensionTooLarge(k.dim()));
    }
    for v in k.vertices() {
        let link = k.link(v).expect("vertex of k").one_skeleton_graph();
        if !is_forest(&link) && !is_single_cycle(&link) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// A connected set of triangles in which every edge lies in exactly two of
/// them, if one exists.
pub fn homological_cycle_scan(k: &SimplicialComplex) -> Result<Option<Vec<Simplex>>, Embed22Error> {
    if k.dim() > 2 {
        return Err(Embed22Error::DimensionTooLarge(k.dim()));
    }
    let tris = k.simplices(2);
    let incidence = k.edge_triangle_incidence();
    let mut uf = UnionFind::new(tris.len());
    for (edge, inc) in &incidence {
        if inc.len() > 2 {
            return Err(Embed22Error::OverloadedEdge {
                edge: edge.clone(),
                count: inc.len(),
            });
        }
        if let [a, b] = inc[..] {
            uf.union(a, b);
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..tris.len() {
        components.entry(uf.find(i)).or_default().push(i);
    }
    let mut comps: Vec<Vec<usize>> = components.into_values().collect();
    comps.sort();
    for comp in comps {
        let closed = comp
            .iter()
            .all(|&t| tris[t].facets().all(|e| incidence[&e].len() == 2));
        if closed {
            return Ok(Some(comp.into_iter().map(|t| tris[t].clone()).collect()));
        }
    }
    Ok(None)
}

pub fn decide_embed22(k: &SimplicialComplex) -> Result<Embed22Report, Embed22Error> {
    if k.dim() > 2 {
        return Err(Embed22Error::DimensionTooLarge(k.dim()));
    }
    let no = |reason| Embed22Report {
        verdict: Answer::No,
        reason,
    };
    if !is_planar(&k.barycentric_subdivision().one_skeleton_graph()) {
        return Ok(no(Reason::PlanarityFailure));
    }
    if let Some(vertex) = link_condition(k)? {
        return Ok(no(Reason::LinkFailure { vertex }));
    }
    if let Some(triangles) = homological_cycle_scan(k)? {
        return Ok(no(Reason::HomologicalCycle { triangles }));
    }
    Ok(Embed22Report {
        verdict: Answer::Yes,
        reason: Reason::None,
    })
}
