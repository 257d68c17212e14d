//! Exact linear maps of complexes into R^{2k} and signed intersection
//! numbers of disjoint k-simplex pairs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{combinations, Simplex, SimplicialComplex, Vertex};
use crate::linalg::{
    determinant_rational, rank_rational, solve_rational, IntVector, LinalgError, Rational,
};
use crate::vankampen::{o_gamma_entry, ObstructionSystem, PairIndex, VanKampenError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("vertex {0} has no image")]
    MissingVertex(Vertex),
    #[error("image of vertex {vertex} has {actual} coordinates, expected {expected}")]
    WrongArity {
        vertex: Vertex,
        expected: usize,
        actual: usize,
    },
    #[error("non-generic configuration on vertex set {0:?}")]
    NonGeneric(Vec<Vertex>),
    #[error("simplices {0} and {1} are not disjoint k-simplices")]
    BadPair(Simplex, Simplex),
    #[error("no generic map found after {0} draws; try another seed")]
    Exhausted(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    VanKampen(#[from] VanKampenError),
}

/// A map of vertex labels to points of Q^{2k}, extended linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub k: usize,
    points: BTreeMap<Vertex, Vec<Rational>>,
}

impl LinearMap {
    pub fn new(k: usize, points: BTreeMap<Vertex, Vec<Rational>>) -> Result<Self, GeometryError> {
        if k < 1 {
            return Err(GeometryError::InvalidK(k));
        }
        for (v, p) in &points {
            if p.len() != 2 * k {
                return Err(GeometryError::WrongArity {
                    vertex: *v,
                    expected: 2 * k,
                    actual: p.len(),
                });
            }
        }
        Ok(LinearMap { k, points })
    }

    pub fn from_integer_points(
        k: usize,
        points: impl IntoIterator<Item = (Vertex, Vec<i64>)>,
    ) -> Result<Self, GeometryError> {
        let points = points
            .into_iter()
            .map(|(v, p)| (v, p.into_iter().map(|x| Rational::from_integer(x.into())).collect()))
            .collect();
        Self::new(k, points)
    }

    pub fn image(&self, v: Vertex) -> Result<&[Rational], GeometryError> {
        self.points
            .get(&v)
            .map(Vec::as_slice)
            .ok_or(GeometryError::MissingVertex(v))
    }

    pub fn points(&self) -> &BTreeMap<Vertex, Vec<Rational>> {
        &self.points
    }

    /// Every subset of at most 2k+1 of the given vertices has affinely
    /// independent images.
    pub fn check_generic_on(&self, vertices: &[Vertex]) -> Result<(), GeometryError> {
        let size = vertices.len().min(2 * self.k + 1);
        for subset in combinations(vertices, size) {
            let rows: Vec<Vec<Rational>> = subset
                .iter()
                .map(|v| {
                    let mut r = self.image(*v)?.to_vec();
                    r.push(Rational::one());
                    Ok(r)
                })
                .collect::<Result<_, GeometryError>>()?;
            if rank_rational(&rows) < subset.len() {
                return Err(GeometryError::NonGeneric(subset));
            }
        }
        Ok(())
    }
}

/// `γ(t) = (t, t², …, t^{2k})`.
pub fn moment_point(t: i64, k: usize) -> Vec<Rational> {
    let t = BigInt::from(t);
    let mut x = BigInt::one();
    (0..2 * k)
        .map(|_| {
            x *= &t;
            Rational::from_integer(x.clone())
        })
        .collect()
}

/// The i-th vertex in label order (counting from 1) goes to `γ(i)`.
pub fn moment_map(k_complex: &SimplicialComplex, k: usize) -> Result<LinearMap, GeometryError> {
    let points = k_complex
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, moment_point(i as i64 + 1, k)))
        .collect();
    LinearMap::new(k, points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    pub sigma: Simplex,
    pub tau: Simplex,
    pub value: i8,
    /// Barycentric coordinates of the crossing point, when `value != 0`.
    #[serde(skip)]
    pub witness: Option<(Vec<Rational>, Vec<Rational>)>,
}

/// Signed intersection number `f(σ)·f(τ)` of two disjoint k-simplices.
///
/// The 2k+2 images must be in general position (every 2k+1 of them
/// affinely independent). Solves `Σλ_i f(v_i) = Σμ_j f(w_j)`,
/// `Σλ = Σμ = 1`. A singular system means the affine hulls are parallel and
/// the images miss; so does a negative coordinate. Otherwise the sign is that
/// of `det(v_1−v_0, …, v_k−v_0, w_1−w_0, …, w_k−w_0)`.
pub fn intersection_number(
    f: &LinearMap,
    sigma: &Simplex,
    tau: &Simplex,
) -> Result<IntersectionRecord, GeometryError> {
    let k = f.k;
    if sigma.dim() != k || tau.dim() != k || !sigma.is_disjoint(tau) {
        return Err(GeometryError::BadPair(sigma.clone(), tau.clone()));
    }
    let union = sigma.join(tau);
    f.check_generic_on(union.vertices())?;
    let non_generic = || GeometryError::NonGeneric(union.vertices().to_vec());
    let vs: Vec<&[Rational]> = sigma
        .vertices()
        .iter()
        .map(|v| f.image(*v))
        .collect::<Result<_, _>>()?;
    let ws: Vec<&[Rational]> = tau
        .vertices()
        .iter()
        .map(|v| f.image(*v))
        .collect::<Result<_, _>>()?;

    let n = 2 * k + 2;
    let mut a = vec![vec![Rational::zero(); n]; n];
    for c in 0..2 * k {
        for i in 0..=k {
            a[c][i] = vs[i][c].clone();
            a[c][k + 1 + i] = -ws[i][c].clone();
        }
    }
    for i in 0..=k {
        a[2 * k][i] = Rational::one();
        a[2 * k + 1][k + 1 + i] = Rational::one();
    }
    let mut b = vec![Rational::zero(); n];
    b[2 * k] = Rational::one();
    b[2 * k + 1] = Rational::one();

    let miss = IntersectionRecord {
        sigma: sigma.clone(),
        tau: tau.clone(),
        value: 0,
        witness: None,
    };
    let x = match solve_rational(&a, &b) {
        Ok(x) => x,
        // a crossing would put a (k-1)-face and a k-simplex, 2k+1 points,
        // into a common hyperplane
        Err(LinalgError::Singular) => return Ok(miss),
        Err(e) => return Err(e.into()),
    };
    if x.iter().any(|c| c < &Rational::zero()) {
        return Ok(miss);
    }
    if x.iter().any(Zero::is_zero) {
        return Err(non_generic());
    }

    let diff = |p: &[Rational], o: &[Rational]| -> Vec<Rational> {
        p.iter().zip(o).map(|(a, b)| a - b).collect()
    };
    let basis: Vec<Vec<Rational>> = (1..=k)
        .map(|i| diff(vs[i], vs[0]))
        .chain((1..=k).map(|j| diff(ws[j], ws[0])))
        .collect();
    let det = determinant_rational(&basis)?;
    if det.is_zero() {
        return Err(non_generic());
    }
    let (lambda, mu) = (x[..=k].to_vec(), x[k + 1..].to_vec());
    Ok(IntersectionRecord {
        value: if det > Rational::zero() { 1 } else { -1 },
        witness: Some((lambda, mu)),
        ..miss
    })
}

fn parity_sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(o_f)_{σ,τ} = (−1)^k f(σ)·f(τ)` over the pair index of the complex.
pub fn compute_o_f(
    k_complex: &SimplicialComplex,
    k: usize,
    f: &LinearMap,
) -> Result<IntVector, GeometryError> {
    if k != f.k {
        return Err(GeometryError::WrongArity {
            vertex: 0,
            expected: 2 * k,
            actual: 2 * f.k,
        });
    }
    let index = PairIndex::new(k_complex, k);
    let s = parity_sign(k);
    let entries = index
        .pairs()
        .iter()
        .map(|(sg, t)| Ok(BigInt::from(s * i64::from(intersection_number(f, sg, t)?.value))))
        .collect::<Result<_, GeometryError>>()?;
    Ok(IntVector(entries))
}

/// Whether the vertex labels of two disjoint equal-dimension simplices
/// strictly alternate.
pub fn gale_alternation(sigma: &Simplex, tau: &Simplex) -> bool {
    o_gamma_entry(sigma, tau) != 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of the number of crossing unordered pairs of disjoint k-simplices.
pub fn total_intersection_parity(
    k_complex: &SimplicialComplex,
    k: usize,
    f: &LinearMap,
) -> Result<Parity, GeometryError> {
    let mut crossings = 0usize;
    for (sigma, tau) in k_complex.disjoint_pairs(k, k) {
        if sigma < tau && intersection_number(f, &sigma, &tau)?.value != 0 {
            crossings += 1;
        }
    }
    Ok(if crossings.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    })
}

/// Sign `s` with `o_f = s·o_γ` for the moment map, as observed on skeleta of
/// simplices for k = 1, 2, 3: `(−1)^{k(k+1)/2}`.
pub fn moment_sign(k: usize) -> i64 {
    parity_sign(k * (k + 1) / 2)
}

/// `(−1)^{k(k−1)/2}`, the factor in the commonly quoted form of the
/// moment-curve identity. Agrees with [`moment_sign`] only for even k.
pub fn quoted_moment_sign(k: usize) -> i64 {
    parity_sign(k * (k.saturating_sub(1)) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentCheck {
    pub sign: i64,
    pub holds: bool,
    /// First pair where `o_f != sign·o_γ`.
    pub counterexample: Option<(Simplex, Simplex, i64, i64)>,
    /// `Some(s)` if `o_f = s·o_γ` for a single global `s`.
    pub observed_sign: Option<i64>,
}

/// Compares `o_f` of the moment map with `sign·o_γ` entrywise.
pub fn check_moment_lemma(
    k_complex: &SimplicialComplex,
    k: usize,
    sign: i64,
) -> Result<MomentCheck, GeometryError> {
    let sys = ObstructionSystem::build(k_complex, k)?;
    let f = moment_map(k_complex, k)?;
    let of = compute_o_f(k_complex, k, &f)?;
    let mut counterexample = None;
    for (i, (a, g)) in of.iter().zip(sys.o_gamma.iter()).enumerate() {
        if *a != g * sign {
            let (s, t) = sys.index.pairs()[i].clone();
            counterexample = Some((s, t, to_i64(a), to_i64(g)));
            break;
        }
    }
    let observed_sign = [1i64, -1]
        .into_iter()
        .find(|s| of.iter().zip(sys.o_gamma.iter()).all(|(a, g)| *a == g * *s));
    Ok(MomentCheck {
        sign,
        holds: counterexample.is_none(),
        counterexample,
        observed_sign,
    })
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("entries are in {-1, 0, 1}")
}

/// A map with integer coordinates drawn uniformly from `[-bound, bound]`,
/// redrawn until every pair union is in general position and every pair
/// has a well-defined intersection number.
pub fn random_generic_map(
    k_complex: &SimplicialComplex,
    k: usize,
    rng: &mut ChaCha8Rng,
    bound: i64,
    max_draws: usize,
) -> Result<LinearMap, GeometryError> {
    let pairs = k_complex.disjoint_pairs(k, k);
    for _ in 0..max_draws {
        let points = k_complex
            .vertices()
            .map(|v| (v, (0..2 * k).map(|_| rng.gen_range(-bound..=bound)).collect()))
            .collect::<Vec<_>>();
        let f = LinearMap::from_integer_points(k, points)?;
        let generic = pairs.iter().all(|(s, t)| intersection_number(&f, s, t).is_ok());
        if generic {
            return Ok(f);
        }
    }
    Err(GeometryError::Exhausted(max_draws))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub trials: usize,
    pub seed: u64,
    pub sign: i64,
    pub failures: usize,
    /// Trial index of the first failure.
    pub first_failure: Option<usize>,
}

/// Draws `trials` random generic maps and checks `o_f − s·o_γ ∈ span_Z(Φ)`.
pub fn check_coset_membership(
    k_complex: &SimplicialComplex,
    k: usize,
    trials: usize,
    seed: u64,
    sign: i64,
) -> Result<CosetReport, GeometryError> {
    let sys = ObstructionSystem::build(k_complex, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for t in 0..trials {
        let f = random_generic_map(k_complex, k, &mut rng, 20, 1000)?;
        let of = compute_o_f(k_complex, k, &f)?;
        if !sys.in_coset(&of, sign)? {
            failures += 1;
            first_failure.get_or_insert(t);
        }
    }
    Ok(CosetReport {
        trials,
        seed,
        sign,
        failures,
        first_failure,
    })
}
