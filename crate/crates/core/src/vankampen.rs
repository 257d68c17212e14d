//! The integral Van Kampen obstruction for embedding k-complexes in R^{2k}.
//!
//! The obstruction is the coset `o_γ + span_Z(Φ)` inside `Z^P`, where `P` is
//! the set of ordered pairs of disjoint k-simplices, `o_γ` records the
//! alternation pattern of each pair along the vertex order, and `Φ` holds one
//! finger-move vector per ordered pair of disjoint simplices of dimensions
//! `k` and `k-1`. It vanishes iff `Φ·x = o_γ` has an integer solution.
//!
//! Finger-move sign rule, with `σ = [v_0..v_k]`, `τ = [w_0..w_k]` and `i` the
//! position of the omitted vertex:
//!
//! | case                           | entry at `(σ,τ)` |
//! |--------------------------------|------------------|
//! | `ν = τ`, `ω = σ \ v_i`         | `(-1)^i`         |
//! | `ω = σ`, `ν = τ \ w_i`         | `(-1)^(i+k)`     |
//! | `ω = τ`, `ν = σ \ v_i`         | `(-1)^i`         |
//! | `ν = σ`, `ω = τ \ w_i`         | `(-1)^(i+k)`     |
//!
//! With this rule every column satisfies `φ_{τ,σ} = (-1)^k φ_{σ,τ}`, the same
//! symmetry as `o_γ` and as every intersection vector `o_f`. Construction
//! checks that symmetry on every entry.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::linalg::{has_integer_solution_sparse, IntVector, LinalgError, SparseIntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VanKampenError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("complex has dimension {dim}, larger than k = {k}")]
    DimensionTooLarge { dim: usize, k: usize },
    #[error("sign symmetry violated in {vector} at pair ({sigma}, {tau})")]
    SymmetryViolation {
        vector: String,
        sigma: Simplex,
        tau: Simplex,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Ordered pairs of disjoint k-simplices with position lookup.
#[derive(Clone, Debug)]
pub struct PairIndex {
    pairs: Vec<(Simplex, Simplex)>,
    position: HashMap<(Simplex, Simplex), usize>,
}

impl PairIndex {
    pub fn new(k: &SimplicialComplex, dim: usize) -> Self {
        let pairs = k.disjoint_pairs(dim, dim);
        let position = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PairIndex { pairs, position }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn position(&self, sigma: &Simplex, tau: &Simplex) -> Option<usize> {
        self.position.get(&(sigma.clone(), tau.clone())).copied()
    }

    /// Position of `(τ, σ)` given the position of `(σ, τ)`.
    pub fn swapped(&self, i: usize) -> usize {
        let (s, t) = &self.pairs[i];
        self.position(t, s).expect("P is closed under swapping")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Embeddable,
    NotEmbeddable,
    /// k = 2 and the obstruction vanishes: no conclusion either way.
    InconclusiveVanishing,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Embeddable => "Embeddable",
            Verdict::NotEmbeddable => "NotEmbeddable",
            Verdict::InconclusiveVanishing => "InconclusiveVanishing",
        })
    }
}

fn parity_sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(o_γ)_{σ,τ}`: `+1` if the vertices alternate starting with `σ`, `(-1)^k`
/// if they alternate starting with `τ`, `0` otherwise.
pub fn o_gamma_entry(sigma: &Simplex, tau: &Simplex) -> i64 {
    let (v, w) = (sigma.vertices(), tau.vertices());
    if v.len() != w.len() {
        return 0;
    }
    let k = v.len() - 1;
    let alternates = |a: &[Vertex], b: &[Vertex]| {
        (0..=k).all(|i| a[i] < b[i] && (i == k || b[i] < a[i + 1]))
    };
    if alternates(v, w) {
        1
    } else if alternates(w, v) {
        parity_sign(k)
    } else {
        0
    }
}

/// The obstruction system `(P, o_γ, Φ)` of a complex for a given k.
#[derive(Clone, Debug)]
pub struct ObstructionSystem {
    pub k: usize,
    pub index: PairIndex,
    /// Column labels of `phi`, in lexicographic order.
    pub q: Vec<(Simplex, Simplex)>,
    pub o_gamma: IntVector,
    pub phi: SparseIntMatrix,
}

impl ObstructionSystem {
    pub fn build(complex: &SimplicialComplex, k: usize) -> Result<Self, VanKampenError> {
        if k < 1 {
            return Err(VanKampenError::InvalidK(k));
        }
        if complex.dim() > k {
            return Err(VanKampenError::DimensionTooLarge {
                dim: complex.dim(),
                k,
            });
        }
        let index = PairIndex::new(complex, k);
        let o_gamma = IntVector(
            index
                .pairs()
                .iter()
                .map(|(s, t)| BigInt::from(o_gamma_entry(s, t)))
                .collect(),
        );

        let mut q = complex.disjoint_pairs(k, k - 1);
        q.extend(complex.disjoint_pairs(k - 1, k));
        q.sort();

        let cofacets = complex.cofacet_map(k);
        let mut phi = SparseIntMatrix::new(index.len());
        for (omega, nu) in &q {
            phi.push_column(finger_move_column(&index, &cofacets, omega, nu, k));
        }
        let sys = ObstructionSystem {
            k,
            index,
            q,
            o_gamma,
            phi,
        };
        sys.check_symmetry()?;
        Ok(sys)
    }

    /// Checks `v_{τ,σ} = (-1)^k v_{σ,τ}` for `o_γ` and every column of `Φ`.
    pub fn check_symmetry(&self) -> Result<(), VanKampenError> {
        let s = parity_sign(self.k);
        let violation = |name: String, i: usize| {
            let (sigma, tau) = self.index.pairs()[i].clone();
            VanKampenError::SymmetryViolation {
                vector: name,
                sigma,
                tau,
            }
        };
        for i in 0..self.index.len() {
            let j = self.index.swapped(i);
            if self.o_gamma[j] != &self.o_gamma[i] * s {
                return Err(violation("o_gamma".into(), i));
            }
        }
        for c in 0..self.phi.cols() {
            for (i, v) in self.phi.column(c) {
                let j = self.index.swapped(*i);
                if self.phi.get(j, c) != v * s {
                    let (w, n) = &self.q[c];
                    return Err(violation(format!("phi[{w},{n}]"), *i));
                }
            }
        }
        Ok(())
    }

    /// An integer `x` with `Φ·x = o_γ`, if the obstruction vanishes.
    pub fn vanishing_witness(&self) -> Result<Option<IntVector>, VanKampenError> {
        Ok(has_integer_solution_sparse(&self.phi, &self.o_gamma)?)
    }

    pub fn vanishes(&self) -> Result<bool, VanKampenError> {
        Ok(self.vanishing_witness()?.is_some())
    }

    /// GF(2) solvability of `Φ·x = o_γ`. Necessary for integral vanishing;
    /// sufficient for embeddability only when k = 1.
    pub fn vanishes_mod2(&self) -> bool {
        let support: Vec<usize> = self
            .o_gamma
            .iter()
            .enumerate()
            .filter(|(_, x)| x.bit(0))
            .map(|(i, _)| i)
            .collect();
        self.phi.to_gf2().solve(&support).is_some()
    }

    /// Whether `v ∈ s·o_γ + span_Z(Φ)`.
    pub fn in_coset(&self, v: &IntVector, s: i64) -> Result<bool, VanKampenError> {
        let target = v.sub(&self.o_gamma.scaled(s));
        Ok(has_integer_solution_sparse(&self.phi, &target)?.is_some())
    }

    pub fn dump(&self) -> ObstructionDump {
        ObstructionDump {
            k: self.k,
            pairs: self
                .index
                .pairs()
                .iter()
                .map(|(s, t)| [s.vertices().to_vec(), t.vertices().to_vec()])
                .collect(),
            o_gamma: self.o_gamma.iter().map(to_i64).collect(),
            phi: self
                .q
                .iter()
                .enumerate()
                .map(|(c, (w, n))| PhiColumn {
                    omega: w.vertices().to_vec(),
                    nu: n.vertices().to_vec(),
                    entries: self
                        .phi
                        .column(c)
                        .iter()
                        .map(|(i, v)| (*i, to_i64(v)))
                        .collect(),
                })
                .collect(),
        }
    }
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("obstruction entries are in {-1, 0, 1}")
}

fn finger_move_column(
    index: &PairIndex,
    cofacets: &HashMap<Simplex, Vec<Simplex>>,
    omega: &Simplex,
    nu: &Simplex,
    k: usize,
) -> Vec<(usize, BigInt)> {
    let mut entries = Vec::new();
    let mut put = |a: &Simplex, b: &Simplex, v: i64| {
        let row = index.position(a, b).expect("pair of disjoint k-simplices");
        entries.push((row, BigInt::from(v)));
    };
    if omega.dim() == k {
        // ν is a facet of the partner τ
        for tau in cofacets.get(nu).map_or(&[][..], Vec::as_slice) {
            if !tau.is_disjoint(omega) {
                continue;
            }
            let i = tau.omitted_position(nu).expect("cofacet");
            put(omega, tau, parity_sign(i + k));
            put(tau, omega, parity_sign(i));
        }
    } else {
        // ω is a facet of the partner σ
        for sigma in cofacets.get(omega).map_or(&[][..], Vec::as_slice) {
            if !sigma.is_disjoint(nu) {
                continue;
            }
            let i = sigma.omitted_position(omega).expect("cofacet");
            put(sigma, nu, parity_sign(i));
            put(nu, sigma, parity_sign(i + k));
        }
    }
    entries
}

/// Audit dump of an obstruction system.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionDump {
    pub k: usize,
    pub pairs: Vec<[Vec<Vertex>; 2]>,
    pub o_gamma: Vec<i64>,
    pub phi: Vec<PhiColumn>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiColumn {
    pub omega: Vec<Vertex>,
    pub nu: Vec<Vertex>,
    /// `(row, value)` with rows indexing `pairs`.
    pub entries: Vec<(usize, i64)>,
}

pub fn o_gamma(k_complex: &SimplicialComplex, k: usize) -> Result<IntVector, VanKampenError> {
    Ok(ObstructionSystem::build(k_complex, k)?.o_gamma)
}

pub fn finger_move_matrix(
    k_complex: &SimplicialComplex,
    k: usize,
) -> Result<SparseIntMatrix, VanKampenError> {
    Ok(ObstructionSystem::build(k_complex, k)?.phi)
}

pub fn obstruction_vanishes(k_complex: &SimplicialComplex, k: usize) -> Result<bool, VanKampenError> {
    ObstructionSystem::build(k_complex, k)?.vanishes()
}

pub fn obstruction_vanishes_mod2(
    k_complex: &SimplicialComplex,
    k: usize,
) -> Result<bool, VanKampenError> {
    Ok(ObstructionSystem::build(k_complex, k)?.vanishes_mod2())
}

/// Verdict for embeddability of a k-complex in R^{2k}.
///
/// Nonvanishing rules out embeddings for every k. Vanishing implies a PL
/// embedding for k ≠ 2; for k = 2 it is inconclusive. An empty pair set
/// vanishes vacuously.
pub fn verdict_from_vanishing(vanishes: bool, k: usize) -> Verdict {
    match (vanishes, k) {
        (false, _) => Verdict::NotEmbeddable,
        (true, 2) => Verdict::InconclusiveVanishing,
        (true, _) => Verdict::Embeddable,
    }
}

pub fn decide_embed_k_2k(k_complex: &SimplicialComplex, k: usize) -> Result<Verdict, VanKampenError> {
    Ok(verdict_from_vanishing(obstruction_vanishes(k_complex, k)?, k))
}

/// Vanishing never depends on the vertex order; exposed for callers that
/// want a zero column check.
pub fn is_zero_column(phi: &SparseIntMatrix, c: usize) -> bool {
    phi.column(c).iter().all(|(_, v)| v.is_zero())
}
