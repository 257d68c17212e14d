//! Finite abstract simplicial complexes over nonnegative integer vertex labels.
//!
//! A [`SimplicialComplex`] stores its full face-closed simplex set, grouped by
//! dimension and sorted lexicographically on vertex tuples. Every constructor
//! closes its input under faces, so downstream code never has to.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Vertex label. The total order on vertices is numeric order.
pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("a complex needs at least one face")]
    NoFaces,
    #[error("empty face at position {0}")]
    EmptyFace(usize),
    #[error("vertex {0} is not in the complex")]
    MissingVertex(Vertex),
    #[error("operation requires dimension at most {max}, complex has dimension {actual}")]
    DimensionTooLarge { max: usize, actual: usize },
}

/// A simplex given by its strictly increasing vertex labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from arbitrary-order labels, dropping duplicates.
    ///
    /// Returns `None` for an empty label set.
    pub fn new(mut vertices: Vec<Vertex>) -> Option<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            None
        } else {
            Some(Simplex(vertices))
        }
    }

    /// Builds a simplex from labels already strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if the two simplices share no vertex.
    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// The face obtained by deleting the vertex at position `i`.
    pub fn facet(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// All facets in order of the omitted vertex position.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).filter_map(move |i| self.facet(i))
    }

    /// Position `i` such that `self.facet(i) == face`, if `face` is a facet.
    pub fn omitted_position(&self, face: &Simplex) -> Option<usize> {
        if face.0.len() + 1 != self.0.len() {
            return None;
        }
        let i = self
            .0
            .iter()
            .zip(face.0.iter())
            .position(|(a, b)| a != b)
            .unwrap_or(face.0.len());
        (self.0[..i] == face.0[..i] && self.0[i + 1..] == face.0[i..]).then_some(i)
    }

    /// Every nonempty subset, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| self.0[b])
                        .collect(),
                )
            })
            .collect()
    }

    /// The simplex spanned by the union of both vertex sets.
    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    /// Applies a vertex relabeling. Returns `None` if two vertices collide.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Option<Simplex> {
        let n = self.0.len();
        let s = Simplex::new(self.0.iter().map(|&v| map(v)).collect())?;
        (s.0.len() == n).then_some(s)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Simple undirected graph on vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list; loops are dropped, endpoints added.
    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) {
        if a == b {
            return;
        }
        self.vertices.insert(a);
        self.vertices.insert(b);
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let idx: HashMap<Vertex, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(idx[&a], idx[&b]);
        }
        (0..self.vertices.len()).filter(|&i| uf.find(i) == i).count()
    }

    /// The graph as a 1-dimensional complex (isolated vertices kept).
    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        let faces: Vec<Vec<Vertex>> = self
            .vertices
            .iter()
            .map(|&v| vec![v])
            .chain(self.edges.iter().map(|&(a, b)| vec![a, b]))
            .collect();
        SimplicialComplex::from_maximal_faces(faces)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// An immutable, face-closed finite simplicial complex.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `by_dim[d]` holds the d-simplices in lexicographic order.
    by_dim: Vec<Vec<Simplex>>,
    members: HashSet<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    /// Face closure of the given faces. Duplicate labels inside a face are
    /// merged.
    pub fn from_maximal_faces<I, F>(faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let mut simplices = Vec::new();
        for (i, face) in faces.into_iter().enumerate() {
            let s = Simplex::new(face.into_iter().collect()).ok_or(ComplexError::EmptyFace(i))?;
            simplices.push(s);
        }
        if simplices.is_empty() {
            return Err(ComplexError::NoFaces);
        }
        Ok(Self::from_simplices(simplices))
    }

    /// Face closure of a nonempty set of simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut members: HashSet<Simplex> = HashSet::new();
        for s in simplices {
            if members.contains(&s) {
                continue;
            }
            for face in s.faces() {
                members.insert(face);
            }
        }
        Self::from_closed_set(members)
    }

    fn from_closed_set(members: HashSet<Simplex>) -> Self {
        let top = members.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); if members.is_empty() { 0 } else { top + 1 }];
        for s in &members {
            by_dim[s.dim()].push(s.clone());
        }
        for layer in &mut by_dim {
            layer.sort_unstable();
        }
        SimplicialComplex { by_dim, members }
    }

    /// The full simplex on `n` vertices labeled `0..n`.
    pub fn full_simplex(n: u32) -> Self {
        Self::from_simplices([Simplex::from_sorted((0..n).collect())])
    }

    /// The `j`-skeleton of the simplex on vertices `0..n`.
    pub fn simplex_skeleton(n: u32, j: usize) -> Self {
        let verts: Vec<Vertex> = (0..n).collect();
        let faces = combinations(&verts, (j + 1).min(n as usize));
        Self::from_simplices(faces.into_iter().map(Simplex::from_sorted))
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Maximum simplex dimension.
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// All simplices ordered by dimension, then lexicographically.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    /// Simplex counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.members.contains(s)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).iter().map(|s| s.0[0])
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.members.contains(&Simplex(vec![v]))
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.simplices(0).last().map(|s| s.0[0])
    }

    /// Inclusion-maximal simplices in lexicographic order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&Simplex> = HashSet::new();
        let mut out = Vec::new();
        for d in (0..self.by_dim.len()).rev() {
            for s in &self.by_dim[d] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if d > 0 {
                for s in &self.by_dim[d] {
                    // facets of covered or maximal simplices are covered either way
                    for f in s.facets() {
                        if let Some(m) = self.members.get(&f) {
                            covered.insert(m);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All simplices of dimension at most `j`.
    pub fn skeleton(&self, j: usize) -> SimplicialComplex {
        if j >= self.dim() {
            return self.clone();
        }
        let by_dim: Vec<Vec<Simplex>> = self.by_dim[..=j].to_vec();
        let members = by_dim.iter().flatten().cloned().collect();
        SimplicialComplex { by_dim, members }
    }

    /// `{ σ : σ ∪ {v} ∈ K, v ∉ σ }`. The link of an isolated vertex is empty.
    pub fn link(&self, v: Vertex) -> Result<SimplicialComplex, ComplexError> {
        if !self.has_vertex(v) {
            return Err(ComplexError::MissingVertex(v));
        }
        let members: HashSet<Simplex> = self
            .all_simplices()
            .filter(|s| s.dim() > 0 && s.contains(v))
            .map(|s| Simplex(s.0.iter().copied().filter(|&u| u != v).collect()))
            .collect();
        Ok(Self::from_closed_set(members))
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// First barycentric subdivision.
    ///
    /// Vertices keep their labels; every simplex of dimension ≥ 1 gets a fresh
    /// label, allocated above the current maximum label in lexicographic order
    /// of the vertex tuples of the subdivided simplices.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let label = self.barycenter_labels();
        let mut chains = Vec::new();
        for facet in self.facets() {
            let n = facet.0.len();
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                let mut chain = Vec::with_capacity(n);
                let mut prefix = Vec::with_capacity(n);
                for &p in &perm {
                    prefix.push(facet.0[p]);
                    let mut sorted = prefix.clone();
                    sorted.sort_unstable();
                    chain.push(label[&Simplex(sorted)]);
                }
                chains.push(Simplex::new(chain).expect("nonempty chain"));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        Self::from_simplices(chains)
    }

    /// Labels of barycenters used by [`Self::barycentric_subdivision`].
    pub fn barycenter_labels(&self) -> BTreeMap<Simplex, Vertex> {
        let mut all: Vec<&Simplex> = self.all_simplices().collect();
        all.sort_unstable();
        let mut next = self.max_label().map_or(0, |m| m + 1);
        let mut out = BTreeMap::new();
        for s in all {
            if s.dim() == 0 {
                out.insert(s.clone(), s.0[0]);
            } else {
                out.insert(s.clone(), next);
                next += 1;
            }
        }
        out
    }

    /// Ordered pairs `(σ, τ)` of vertex-disjoint simplices with `dim σ = a`
    /// and `dim τ = b`, in lexicographic order.
    pub fn disjoint_pairs(&self, a: usize, b: usize) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for s in self.simplices(a) {
            for t in self.simplices(b) {
                if s.is_disjoint(t) {
                    out.push((s.clone(), t.clone()));
                }
            }
        }
        out
    }

    /// The 1-skeleton as a graph.
    pub fn one_skeleton_graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(v);
        }
        for e in self.simplices(1) {
            g.add_edge(e.0[0], e.0[1]);
        }
        g
    }

    /// Graph on triangle indices (positions in `simplices(2)`) joining
    /// triangles that share an edge.
    pub fn dual_triangle_graph(&self) -> Result<Graph, ComplexError> {
        if self.dim() > 2 {
            return Err(ComplexError::DimensionTooLarge {
                max: 2,
                actual: self.dim(),
            });
        }
        let mut g = Graph::new();
        let tris = self.simplices(2);
        for i in 0..tris.len() {
            g.add_vertex(i as Vertex);
        }
        for incident in self.edge_triangle_incidence().values() {
            for (x, &a) in incident.iter().enumerate() {
                for &b in &incident[x + 1..] {
                    g.add_edge(a as Vertex, b as Vertex);
                }
            }
        }
        Ok(g)
    }

    /// For each edge, the indices (into `simplices(2)`) of triangles containing it.
    pub fn edge_triangle_incidence(&self) -> BTreeMap<Simplex, Vec<usize>> {
        let mut map: BTreeMap<Simplex, Vec<usize>> = self
            .simplices(1)
            .iter()
            .map(|e| (e.clone(), Vec::new()))
            .collect();
        for (i, t) in self.simplices(2).iter().enumerate() {
            for e in t.facets() {
                map.get_mut(&e).expect("face closure").push(i);
            }
        }
        map
    }

    /// `d`-simplices that contain the `(d-1)`-simplex `face`, in lexicographic order.
    pub fn cofacets(&self, face: &Simplex) -> Vec<Simplex> {
        self.simplices(face.dim() + 1)
            .iter()
            .filter(|s| s.omitted_position(face).is_some())
            .cloned()
            .collect()
    }

    /// Map from each `(d-1)`-simplex to the `d`-simplices containing it.
    pub fn cofacet_map(&self, d: usize) -> HashMap<Simplex, Vec<Simplex>> {
        let mut map: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for s in self.simplices(d) {
            for f in s.facets() {
                map.entry(f).or_default().push(s.clone());
            }
        }
        map
    }

    /// Relabels vertices through an injective map.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Option<SimplicialComplex> {
        let members = self
            .all_simplices()
            .map(|s| s.relabel(&map))
            .collect::<Option<HashSet<_>>>()?;
        (members.len() == self.members.len()).then(|| Self::from_closed_set(members))
    }

    /// Union of two complexes.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let members = self.members.union(&other.members).cloned().collect();
        Self::from_closed_set(members)
    }

    /// Subcomplex of simplices avoiding every vertex in `removed`.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> SimplicialComplex {
        let members = self
            .all_simplices()
            .filter(|s| removed.iter().all(|&v| !s.contains(v)))
            .cloned()
            .collect();
        Self::from_closed_set(members)
    }
}

/// All `r`-element subsets of `items`, in lexicographic order of positions.
pub fn combinations<T: Clone>(items: &[T], r: usize) -> Vec<Vec<T>> {
    fn walk<T: Clone>(items: &[T], r: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            walk(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= items.len() {
        walk(items, r, 0, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
