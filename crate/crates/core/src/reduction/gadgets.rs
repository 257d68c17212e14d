use std::collections::BTreeMap;

use crate::complex::{combinations, Simplex, SimplicialComplex, Vertex};

use super::{ConflictRecord, GadgetComplex, Opening, OpeningId, ReductionError};

/// Attaching word of the conflict gadget's disk, read around its boundary.
pub const TG_BOUNDARY_WORD: &str = "a c b c^-1 a^-1 c b^-1 c^-1";

fn simplex(v: Vec<Vertex>) -> Simplex {
    Simplex::new(v).expect("nonempty")
}

/// Staircase triangulation of `∂host × [0,1]`, with `inner[j]` the copy of
/// `host[j]` at the inner end. For each facet `a_{j0} < … < a_{jl}` of the
/// host it yields the simplices `{a_{j0..jt}, b_{jt..jl}}`.
pub(crate) fn staircase_collar(host: &Simplex, inner: &[Vertex]) -> Vec<Simplex> {
    let a = host.vertices();
    let mut out = Vec::new();
    for omit in 0..a.len() {
        let idx: Vec<usize> = (0..a.len()).filter(|&j| j != omit).collect();
        for t in 0..idx.len() {
            let mut v: Vec<Vertex> = idx[..=t].iter().map(|&j| a[j]).collect();
            v.extend(idx[t..].iter().map(|&j| inner[j]));
            out.push(simplex(v));
        }
    }
    out
}

/// Cuts a hole into each host simplex. Hosts must be maximal in `base`.
/// Fresh vertices are allocated from `first_fresh` upwards, host by host.
fn holed(
    base: &SimplicialComplex,
    sphere_dim: usize,
    hosts: [Simplex; 3],
    first_fresh: Vertex,
) -> GadgetComplex {
    let mut members: Vec<Simplex> = base.facets().into_iter().filter(|f| !hosts.contains(f)).collect();
    let vertices: Vec<Vertex> = base.vertices().collect();
    let mut fresh = first_fresh;
    let mut openings = BTreeMap::new();
    for (i, host) in hosts.into_iter().enumerate() {
        let inner: Vec<Vertex> = (0..host.vertices().len() as Vertex).map(|j| fresh + j).collect();
        fresh += inner.len() as Vertex;
        members.extend(staircase_collar(&host, &inner));
        let rest: Vec<Vertex> = vertices.iter().copied().filter(|v| !host.contains(*v)).collect();
        let sphere = SimplicialComplex::from_maximal_faces(combinations(&rest, sphere_dim + 1))
            .expect("at least one face");
        openings.insert(
            OpeningId {
                clause: 1,
                position: i + 1,
            },
            Opening {
                removed: simplex(inner),
                host,
                complementary_sphere: sphere,
            },
        );
    }
    let complex = SimplicialComplex::from_simplices(members);
    let provenance = complex
        .all_simplices()
        .map(|s| (s.clone(), "clause:1".to_string()))
        .collect();
    GadgetComplex {
        complex,
        openings,
        conflicts: Vec::new(),
        provenance,
    }
}

/// The clause gadget for 2-complexes in R^4.
///
/// 2-skeleton of the simplex on `v0..v6 = 0..6` with holes in `v0v2v3`,
/// `v0v1v3` and `v0v1v2` (openings 1, 2, 3). The inner triangles get labels
/// 7–9, 10–12 and 13–15.
pub fn clause_gadget_2_4() -> GadgetComplex {
    let base = SimplicialComplex::simplex_skeleton(7, 2);
    let hosts = [1, 2, 3].map(|i| simplex((0..4).filter(|&v| v != i).collect()));
    holed(&base, 2, hosts, 7)
}

/// The clause gadget `CG(k, l)` for k-complexes in R^{k+l+1}.
///
/// With `d = k + l + 1`, vertices `v0..v_{d+1}` are `0..=d+1` and `p` is
/// `d+2`. The complex is the k-skeleton of the simplex on the `v`s plus every
/// `(l+1)`-simplex through `p`. Host `i` is `p` together with
/// `{v0..v_{l+1}}` minus `v_i`; for `l = 1` the third host drops `v0`
/// instead, since `v3` is not among `v0..v2`.
pub fn clause_gadget_general(k: usize, l: usize) -> Result<GadgetComplex, ReductionError> {
    if l < 1 || l >= k {
        return Err(ReductionError::ParameterRange { k, l });
    }
    let d = k + l + 1;
    let vs: Vec<Vertex> = (0..=d as Vertex + 1).collect();
    let p = d as Vertex + 2;
    let mut faces: Vec<Simplex> = combinations(&vs, k + 1).into_iter().map(simplex).collect();
    faces.extend(combinations(&vs, l + 1).into_iter().map(|mut f| {
        f.push(p);
        simplex(f)
    }));
    let base = SimplicialComplex::from_simplices(faces);
    let omitted: [Vertex; 3] = if l == 1 { [1, 2, 0] } else { [1, 2, 3] };
    let hosts = omitted.map(|i| {
        let mut v: Vec<Vertex> = (0..=l as Vertex + 1).filter(|&u| u != i).collect();
        v.push(p);
        simplex(v)
    });
    Ok(holed(&base, k, hosts, p + 1))
}

/// Triangles of a conflict gadget glued onto the given loops.
///
/// The 16-gon boundary runs `a0 a1 a2 a0 | b0 b1 b2 b0 | a0 a2 a1 a0 |
/// b0 b2 b1 b0` (edge `c = a0b0` between the blocks), following
/// [`TG_BOUNDARY_WORD`]. Ring vertices `r0..r15` start at `first_fresh` and
/// the cone apex comes last.
pub(crate) fn conflict_triangles(a: [Vertex; 3], b: [Vertex; 3], first_fresh: Vertex) -> Vec<Simplex> {
    let boundary = [
        a[0], a[1], a[2], a[0], b[0], b[1], b[2], b[0], a[0], a[2], a[1], a[0], b[0], b[2], b[1], b[0],
    ];
    let n = boundary.len();
    let ring = |i: usize| first_fresh + (i % n) as Vertex;
    let apex = first_fresh + n as Vertex;
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        let (p, q) = (boundary[i], boundary[(i + 1) % n]);
        out.push(simplex(vec![p, q, ring(i)]));
        out.push(simplex(vec![q, ring(i), ring(i + 1)]));
        out.push(simplex(vec![ring(i), ring(i + 1), apex]));
    }
    out
}

/// The conflict gadget: loops `Σ_a = 0 1 2`, `Σ_b = 3 4 5`, edge `c = 0 3`,
/// ring vertices 6–21 and apex 22.
pub fn conflict_gadget_l1() -> GadgetComplex {
    let (a, b) = ([0, 1, 2], [3, 4, 5]);
    let complex = SimplicialComplex::from_simplices(conflict_triangles(a, b, 6));
    let tag = GadgetComplex::conflict_tag(None);
    let provenance = complex.all_simplices().map(|s| (s.clone(), tag.clone())).collect();
    GadgetComplex {
        complex,
        openings: BTreeMap::new(),
        conflicts: vec![ConflictRecord {
            tag,
            pair: None,
            loop_a: a,
            loop_b: b,
            edge_c: [a[0], b[0]],
        }],
        provenance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_mod2;
    use std::collections::HashMap;

    #[test]
    fn clause_gadget_counts() {
        let g = clause_gadget_2_4();
        assert_eq!(g.complex.f_vector(), vec![16, 48, 50]);
        assert_eq!(g.complex.euler_characteristic(), 18);
        assert_eq!(g.openings.len(), 3);
        let o3 = &g.openings[&OpeningId { clause: 1, position: 3 }];
        assert_eq!(o3.host.vertices(), &[0, 1, 2]);
        assert_eq!(
            o3.complementary_sphere,
            SimplicialComplex::from_maximal_faces([[3, 4, 5], [3, 4, 6], [3, 5, 6], [4, 5, 6]]).unwrap()
        );
        for o in g.openings.values() {
            assert_eq!(betti_mod2(&o.complementary_sphere), vec![1, 0, 1]);
            assert!(!g.complex.contains(&o.removed));
            assert!(!g.complex.contains(&o.host));
            assert!(o.removed.facets().all(|e| g.complex.contains(&e)));
        }
    }

    #[test]
    fn general_gadget_matches_low_case() {
        let g = clause_gadget_general(2, 1).unwrap();
        let h = clause_gadget_2_4();
        assert_eq!(g.complex.f_vector(), h.complex.f_vector());
        assert_eq!(g.openings.len(), 3);
        // all three hosts share p, as all three share v0 in the fixed gadget
        let p = 6;
        assert!(g.openings.values().all(|o| o.host.contains(p)));
        assert!(matches!(clause_gadget_general(2, 2), Err(ReductionError::ParameterRange { .. })));
        assert!(clause_gadget_general(1, 0).is_err());
    }

    #[test]
    fn higher_gadget() {
        let g = clause_gadget_general(3, 1).unwrap();
        // v0..v6 and p, then 9 fresh
        assert_eq!(g.complex.count(0), 8 + 9);
        assert_eq!(g.complex.dim(), 3);
        for o in g.openings.values() {
            assert_eq!(o.removed.dim(), 2);
            assert_eq!(o.complementary_sphere.f_vector(), vec![5, 10, 10, 5]);
            assert_eq!(betti_mod2(&o.complementary_sphere), vec![1, 0, 0, 1]);
            assert!(o.complementary_sphere.vertices().all(|v| !o.host.contains(v)));
        }
        let g = clause_gadget_general(4, 2).unwrap();
        assert!(g.openings.values().all(|o| o.host.dim() == 3 && o.removed.dim() == 3));
    }

    #[test]
    fn collar_is_a_pseudomanifold_with_two_boundary_spheres() {
        for dim in 2..=4usize {
            let host = simplex((0..=dim as Vertex).collect());
            let inner: Vec<Vertex> = (10..=10 + dim as Vertex).collect();
            let collar = staircase_collar(&host, &inner);
            assert_eq!(collar.len(), (dim + 1) * dim);
            let mut count: HashMap<Simplex, usize> = HashMap::new();
            for s in &collar {
                assert_eq!(s.dim(), dim);
                for f in s.facets() {
                    *count.entry(f).or_default() += 1;
                }
            }
            let outer = |f: &Simplex| f.vertices().iter().all(|v| *v < 10);
            let inner_face = |f: &Simplex| f.vertices().iter().all(|v| *v >= 10);
            for (f, c) in count {
                let expected = if outer(&f) || inner_face(&f) { 1 } else { 2 };
                assert_eq!(c, expected, "{f}");
            }
        }
    }

    #[test]
    fn conflict_gadget_topology() {
        let t = conflict_gadget_l1();
        assert_eq!(t.complex.f_vector(), vec![23, 71, 48]);
        assert_eq!(t.complex.euler_characteristic(), 0);
        assert_eq!(betti_mod2(&t.complex), vec![1, 2, 1]);
        let r = &t.conflicts[0];
        assert!(t.complex.contains(&simplex(r.edge_c.to_vec())));
        for lp in [r.loop_a, r.loop_b] {
            assert!(!t.complex.contains(&simplex(lp.to_vec())));
            for e in combinations(&lp, 2) {
                assert!(t.complex.contains(&simplex(e)));
            }
        }
        // the six loop vertices span exactly the 7 edges of E
        let e: Vec<_> = t.complex.simplices(1).iter().filter(|s| s.vertices().iter().all(|v| *v < 6)).collect();
        assert_eq!(e.len(), 7);
    }
}
