use std::collections::BTreeMap;

use crate::complex::{Simplex, SimplicialComplex, Vertex};

use super::gadgets::{clause_gadget_2_4, conflict_triangles};
use super::{CnfFormula, ConflictPair, ConflictRecord, GadgetComplex, Opening, OpeningId};

const CG_VERTICES: Vertex = 16;
const TG_FRESH: Vertex = 17;

/// Every pair of literal occurrences in different clauses on the same
/// variable with opposite signs, as opening pairs in increasing order.
pub fn conflicts(phi: &CnfFormula) -> Vec<ConflictPair> {
    let occurrences: Vec<(OpeningId, i32)> = phi
        .clauses
        .iter()
        .enumerate()
        .flat_map(|(c, lits)| {
            lits.iter().enumerate().map(move |(p, &l)| {
                (
                    OpeningId {
                        clause: c + 1,
                        position: p + 1,
                    },
                    l,
                )
            })
        })
        .collect();
    let mut out = Vec::new();
    for (i, (a, la)) in occurrences.iter().enumerate() {
        for (b, lb) in &occurrences[i + 1..] {
            if a.clause != b.clause && *la == -*lb {
                out.push(ConflictPair { first: *a, second: *b });
            }
        }
    }
    out
}

fn loop_of(opening: &Opening) -> [Vertex; 3] {
    opening
        .removed
        .vertices()
        .try_into()
        .expect("openings of the 2-dimensional gadget are triangles")
}

/// The 2-complex of a 3-CNF formula.
///
/// Clause `i` (from 1) is a copy of [`clause_gadget_2_4`] on labels
/// `16(i-1)..16i`. Conflict gadgets follow in the order of [`conflicts`],
/// 17 fresh labels each; loop `Σ_a` is glued to the boundary of the smaller
/// opening and `Σ_b` to the other, matching vertices in sorted order.
pub fn reduce(phi: &CnfFormula) -> GadgetComplex {
    let template = clause_gadget_2_4();
    let mut simplices: Vec<Simplex> = Vec::new();
    let mut provenance: BTreeMap<Simplex, String> = BTreeMap::new();
    let mut openings = BTreeMap::new();

    for c in 1..=phi.clauses.len() {
        let offset = CG_VERTICES * (c as Vertex - 1);
        let shift = |s: &Simplex| s.relabel(|v| v + offset).expect("injective");
        let tag = format!("clause:{c}");
        for s in template.complex.all_simplices() {
            let t = shift(s);
            provenance.insert(t.clone(), tag.clone());
            simplices.push(t);
        }
        for (id, o) in &template.openings {
            openings.insert(
                OpeningId {
                    clause: c,
                    position: id.position,
                },
                Opening {
                    removed: shift(&o.removed),
                    host: shift(&o.host),
                    complementary_sphere: o
                        .complementary_sphere
                        .relabel(|v| v + offset)
                        .expect("injective"),
                },
            );
        }
    }

    let mut fresh = CG_VERTICES * phi.clauses.len() as Vertex;
    let mut records = Vec::new();
    for pair in conflicts(phi) {
        let a = loop_of(&openings[&pair.first]);
        let b = loop_of(&openings[&pair.second]);
        let tag = GadgetComplex::conflict_tag(Some(&pair));
        let tg = SimplicialComplex::from_simplices(conflict_triangles(a, b, fresh));
        fresh += TG_FRESH;
        for s in tg.all_simplices() {
            // loop vertices and edges stay with their clause
            provenance.entry(s.clone()).or_insert_with(|| tag.clone());
            simplices.push(s.clone());
        }
        records.push(ConflictRecord {
            tag,
            pair: Some(pair),
            loop_a: a,
            loop_b: b,
            edge_c: [a[0], b[0]],
        });
    }

    GadgetComplex {
        complex: SimplicialComplex::from_simplices(simplices),
        openings,
        conflicts: records,
        provenance,
    }
}
