//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cxembed::embed22::{decide_embed22, is_planar, Answer, Reason};
use cxembed::geometry::{
    check_coset_membership, check_moment_lemma, moment_map, moment_sign, quoted_moment_sign,
    total_intersection_parity, Parity,
};
use cxembed::linalg::{smith_normal_form, IntMatrix};
use cxembed::reduction::{clause_gadget_2_4, conflict_gadget_l1, parse_dimacs, reduce};
use cxembed::vankampen::{decide_embed_k_2k, obstruction_vanishes, Verdict};
use cxembed::{Graph, Simplex, SimplicialComplex, Vertex};

const FLORES_K3_LIMIT: Duration = Duration::from_secs(60);
const PARITY_LIMIT: Duration = Duration::from_secs(10);
const EMBED22_LIMIT: Duration = Duration::from_secs(1);
const REDUCTION_SOLVE_LIMIT: Duration = Duration::from_secs(300);
const COSET_TRIALS: usize = 20;
const SNF_SAMPLES: usize = 200;
const SNF_MAX_DIM: usize = 8;
const SNF_ENTRY_BOUND: i64 = 9;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cxembed"))
        .args(args)
        .output()
        .expect("run cxembed");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn complex(faces: &[&[Vertex]]) -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(faces.iter().map(|f| f.to_vec())).unwrap()
}

fn skeleton_of_simplex(vertices: u32, k: usize) -> SimplicialComplex {
    SimplicialComplex::simplex_skeleton(vertices, k)
}

// 1
fn van_kampen_flores() -> Outcome {
    let cases = [("k5.txt", "1", 30), ("flores2.txt", "2", 140), ("flores3.txt", "3", 630)];
    let mut notes = Vec::new();
    for (file, k, pairs) in cases {
        let start = Instant::now();
        let path = data(file);
        let (code, out) = cli(&["decide", "--mode", "vankampen", "--k", k, path.to_str().unwrap()]);
        let elapsed = start.elapsed();
        let out = String::from_utf8(out).unwrap();
        ensure(code == 0, format!("{file}: exit {code}"))?;
        ensure(out.contains("verdict NotEmbeddable"), format!("{file}: {out}"))?;
        ensure(out.contains(&format!("pairs {pairs}\n")), format!("{file}: pair count in {out}"))?;
        if k == "3" {
            ensure(elapsed < FLORES_K3_LIMIT, format!("k=3 took {elapsed:?}"))?;
        }
        notes.push(format!("k={k} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

/// Non-planarity on at most 6 vertices: a K5, a K5 with one edge
/// subdivided, or a K3,3 as a subgraph.
fn kuratowski_oracle(n: usize, adj: &[[bool; 6]; 6]) -> bool {
    let all: Vec<usize> = (0..n).collect();
    let subsets = |r: usize| cxembed::complex::combinations(&all, r);
    for five in subsets(5) {
        let missing: Vec<(usize, usize)> = cxembed::complex::combinations(&five, 2)
            .into_iter()
            .map(|p| (p[0], p[1]))
            .filter(|&(a, b)| !adj[a][b])
            .collect();
        if missing.is_empty() {
            return true;
        }
        if let [(a, b)] = missing[..] {
            if let Some(&w) = all.iter().find(|w| !five.contains(w)) {
                if adj[w][a] && adj[w][b] {
                    return true;
                }
            }
        }
    }
    if n == 6 {
        for left in subsets(3) {
            let right: Vec<usize> = all.iter().copied().filter(|v| !left.contains(v)).collect();
            if left.iter().all(|&a| right.iter().all(|&b| adj[a][b])) {
                return true;
            }
        }
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

// 2
fn planarity_agreement() -> Outcome {
    let mut checked = 0;
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            if !seen.insert(canonical(n, &edges)) {
                continue;
            }
            let mut g = Graph::new();
            let mut adj = [[false; 6]; 6];
            for v in 0..n {
                g.add_vertex(v as Vertex);
            }
            for &(a, b) in &edges {
                g.add_edge(a as Vertex, b as Vertex);
                adj[a][b] = true;
                adj[b][a] = true;
            }
            let planar = is_planar(&g);
            ensure(planar != kuratowski_oracle(n, &adj), format!("planarity oracle disagrees on {n} {edges:?}"))?;
            let k = g.to_complex().unwrap();
            let verdict = if k.dim() == 0 {
                Verdict::Embeddable
            } else {
                decide_embed_k_2k(&k, 1).map_err(|e| e.to_string())?
            };
            ensure(
                (verdict == Verdict::Embeddable) == planar,
                format!("n={n} edges={edges:?}: {verdict} vs planar={planar}"),
            )?;
            checked += 1;
        }
    }
    ensure(checked == 1 + 2 + 4 + 11 + 34 + 156, format!("{checked} isomorphism classes"))?;
    Ok(format!("{checked} graphs up to isomorphism"))
}

// 3
fn parity_theorem() -> Outcome {
    let start = Instant::now();
    for k in 1..=2usize {
        let cx = skeleton_of_simplex(2 * k as u32 + 3, k);
        let f = moment_map(&cx, k).map_err(|e| e.to_string())?;
        let p = total_intersection_parity(&cx, k, &f).map_err(|e| e.to_string())?;
        ensure(p == Parity::Odd, format!("k={k}: {p:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PARITY_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("odd for k=1,2 in {:.2}s", elapsed.as_secs_f64()))
}

// 4
fn moment_lemma() -> Outcome {
    let cases = [
        ("K5", skeleton_of_simplex(5, 1), 1usize),
        ("K6", skeleton_of_simplex(6, 1), 1),
        ("Delta6^(2)", skeleton_of_simplex(7, 2), 2),
    ];
    let mut failures = Vec::new();
    let mut observed = Vec::new();
    for (name, cx, k) in cases {
        let c = check_moment_lemma(&cx, k, quoted_moment_sign(k)).map_err(|e| e.to_string())?;
        observed.push(format!("{name}: o_f = {:+}·o_gamma", c.observed_sign.unwrap_or(0)));
        if let Some((s, t, of, og)) = c.counterexample {
            failures.push(format!(
                "{name} k={k} sign {:+}: at ({s},{t}) o_f={of} o_gamma={og}",
                quoted_moment_sign(k)
            ));
        }
        // the sign that does hold, for the record
        let fixed = check_moment_lemma(&cx, k, moment_sign(k)).map_err(|e| e.to_string())?;
        ensure(fixed.holds, format!("{name}: no global sign"))?;
    }
    if failures.is_empty() {
        Ok(observed.join("; "))
    } else {
        Err(format!("{} [observed {}]", failures.join("; "), observed.join("; ")))
    }
}

// 5
fn coset_membership() -> Outcome {
    let cases = [
        ("K4", skeleton_of_simplex(4, 1), 1usize),
        ("two triangles", complex(&[&[0, 1, 2], &[3, 4, 5]]), 2),
    ];
    let mut notes = Vec::new();
    for (name, cx, k) in cases {
        let r = check_coset_membership(&cx, k, COSET_TRIALS, 2024, quoted_moment_sign(k))
            .map_err(|e| e.to_string())?;
        ensure(r.failures == 0, format!("{name}: {} failures", r.failures))?;
        notes.push(format!("{name} {} maps", r.trials));
    }
    Ok(notes.join(", "))
}

// 6
fn embed22_corpus() -> Outcome {
    let disk = complex(&[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 5, 6], &[0, 1, 6]]);
    let k5 = skeleton_of_simplex(5, 1);
    let k33 = Graph::from_edges((0..3).flat_map(|a| (3..6).map(move |b| (a, b))))
        .to_complex()
        .unwrap();
    let no = |r: &Reason| matches!(r, Reason::PlanarityFailure);
    type Check = fn(&Reason) -> bool;
    let cases: Vec<(&str, SimplicialComplex, Answer, Check)> = vec![
        ("boundary of tetrahedron", skeleton_of_simplex(4, 2), Answer::No, |r| {
            matches!(r, Reason::HomologicalCycle { triangles } if triangles.len() == 4)
        }),
        ("3-book", complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]), Answer::No, no),
        ("disk with a stick", disk.union(&complex(&[&[0, 7]])), Answer::No, |r| {
            *r == Reason::LinkFailure { vertex: 0 }
        }),
        ("K5", k5, Answer::No, no),
        ("K3,3", k33, Answer::No, no),
        ("disk", disk, Answer::Yes, |r| *r == Reason::None),
        ("two triangles on an edge", complex(&[&[0, 1, 2], &[1, 2, 3]]), Answer::Yes, |r| *r == Reason::None),
        (
            "tree of triangles",
            complex(&[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[1, 2, 5], &[2, 3, 6]]),
            Answer::Yes,
            |r| *r == Reason::None,
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (name, cx, answer, reason) in cases {
        let start = Instant::now();
        let r = decide_embed22(&cx).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(r.verdict == answer && reason(&r.reason), format!("{name}: {r:?}"))?;
        ensure(elapsed < EMBED22_LIMIT, format!("{name}: {elapsed:?}"))?;
    }
    Ok(format!("8 complexes, slowest {:.3}s", slowest.as_secs_f64()))
}

/// Dense GF(2) rank by row reduction on bitmasks.
fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for bit in 0..words * 64 {
        let (w, m) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & m != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & m != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers mod 2 from boundary ranks computed here, independently of
/// the homology module.
fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let d = k.dim();
    let mut ranks = vec![0usize; d + 2];
    for i in 1..=d {
        let lower = k.simplices(i - 1);
        let words = lower.len().div_ceil(64);
        let rows = k
            .simplices(i)
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for v in s.vertices() {
                    let face: Vec<Vertex> = s.vertices().iter().copied().filter(|u| u != v).collect();
                    let j = lower.binary_search(&Simplex::new(face).unwrap()).unwrap();
                    row[j / 64] |= 1 << (j % 64);
                }
                row
            })
            .collect();
        ranks[i] = rank_gf2(rows);
    }
    (0..=d).map(|i| k.count(i) - ranks[i] - ranks[i + 1]).collect()
}

// 7
fn gadget_topology() -> Outcome {
    let tg = conflict_gadget_l1().complex;
    // 6 loop vertices + 16 ring + apex; 7 + 4·16 edges; 3·16 triangles
    let tg_expected = vec![6 + 16 + 1, 7 + 4 * 16, 3 * 16];
    ensure(tg.f_vector() == tg_expected, format!("TG f-vector {:?}", tg.f_vector()))?;
    ensure(tg.euler_characteristic() == 0, "TG chi")?;
    ensure(betti_oracle(&tg) == vec![1, 2, 1], format!("TG betti {:?}", betti_oracle(&tg)))?;

    let cg = clause_gadget_2_4();
    // 2-skeleton of the 6-simplex: 7, 21, 35; each hole adds 3 vertices,
    // 9 edges and trades one triangle for six
    let cg_expected = vec![7 + 3 * 3, 21 + 3 * 9, 35 + 3 * 5];
    ensure(cg.complex.f_vector() == cg_expected, format!("CG f-vector {:?}", cg.complex.f_vector()))?;
    ensure(cg.complex.euler_characteristic() == 21 - 3, "CG chi")?;
    ensure(cg.openings.len() == 3, "CG openings")?;
    for (id, o) in &cg.openings {
        ensure(o.removed.dim() == 2 && o.removed.facets().all(|e| cg.complex.contains(&e)), format!("{id} not a 3-cycle"))?;
        ensure(betti_oracle(&o.complementary_sphere) == vec![1, 0, 1], format!("{id} sphere"))?;
    }
    Ok("TG (23,71,48) chi 0 betti (1,2,1); CG (16,48,50) chi 18, 3 openings".into())
}

fn face_closed(k: &SimplicialComplex) -> bool {
    k.all_simplices().all(|s| s.dim() == 0 || s.facets().all(|f| k.contains(&f)))
}

// 8
fn reduction_sanity() -> Outcome {
    let one = reduce(&parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap());
    ensure(one.complex == clause_gadget_2_4().complex, "one clause is not one CG")?;
    ensure(obstruction_vanishes(&one.complex, 2).map_err(|e| e.to_string())?, "one-clause obstruction nonzero")?;

    let two = reduce(&parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 2 3 0\n").unwrap());
    let k = &two.complex;
    ensure(k.euler_characteristic() == 36, format!("chi {}", k.euler_characteristic()))?;
    ensure(k.count(2) == 148 && k.dim() == 2, format!("f-vector {:?}", k.f_vector()))?;
    ensure(face_closed(k), "not face-closed")?;
    ensure(
        k.all_simplices().all(|s| two.provenance.contains_key(s)) && two.provenance.len() == k.len(),
        "provenance incomplete",
    )?;
    let start = Instant::now();
    let vanishes = obstruction_vanishes(k, 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < REDUCTION_SOLVE_LIMIT, format!("solve took {elapsed:?}"))?;
    Ok(format!(
        "two-clause K: {:?}, obstruction {} in {:.2}s",
        k.f_vector(),
        if vanishes { "vanishes" } else { "nonzero" },
        elapsed.as_secs_f64()
    ))
}

/// Fraction-free (Bareiss) elimination.
fn det_oracle(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

// 9
fn snf_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut square_nonsingular = 0;
    for sample in 0..SNF_SAMPLES {
        let rows = rng.gen_range(1..=SNF_MAX_DIM);
        let cols = rng.gen_range(1..=SNF_MAX_DIM);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-SNF_ENTRY_BOUND..=SNF_ENTRY_BOUND)).collect())
            .collect();
        let m = IntMatrix::from_rows(&a);
        let d = smith_normal_form(&m).map_err(|e| format!("sample {sample}: {e}"))?;
        ensure(d.u.mul(&m).unwrap().mul(&d.v).unwrap() == d.s, format!("sample {sample}: S != UAV"))?;
        for w in [&d.u, &d.v] {
            let rows: Vec<Vec<BigInt>> = (0..w.rows()).map(|i| w.row(i).to_vec()).collect();
            ensure(det_oracle(&rows).abs() == BigInt::from(1), format!("sample {sample}: not unimodular"))?;
        }
        for i in 0..rows {
            for j in 0..cols {
                ensure(i == j || d.s[(i, j)].is_zero(), format!("sample {sample}: off-diagonal"))?;
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            ensure(ok, format!("sample {sample}: chain {diag:?}"))?;
        }
        let g = a.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
        ensure(diag[0] == BigInt::from(g), format!("sample {sample}: d1 {} vs gcd {g}", diag[0]))?;
        if rows == cols {
            let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let det = det_oracle(&big);
            if !det.is_zero() {
                square_nonsingular += 1;
                let prod: BigInt = diag.iter().product();
                ensure(prod == det.abs(), format!("sample {sample}: product vs det {det}"))?;
                ensure(diag.iter().all(|x| x.is_positive()), "nonpositive factor")?;
            }
        }
    }
    Ok(format!("{SNF_SAMPLES} matrices, {square_nonsingular} square nonsingular"))
}

// 10
fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("cxembed-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = |name: &str| data(name).to_str().unwrap().to_string();
    let o = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let runs: Vec<(Vec<String>, Option<String>)> = vec![
        (vec!["decide".into(), "--mode".into(), "vankampen".into(), "--k".into(), "2".into(), p("flores2.txt"), "--dump-obstruction".into(), o("dump.json")], Some(o("dump.json"))),
        (vec!["--json".into(), "decide".into(), "--mode".into(), "vankampen".into(), p("k5.txt")], None),
        (vec!["decide".into(), "--mode".into(), "plane".into(), p("sphere.txt")], None),
        (vec!["--json".into(), "decide".into(), "--mode".into(), "plane".into(), p("book3.txt")], None),
        (vec!["reduce".into(), p("two_clauses.cnf"), "-o".into(), o("reduced.json")], Some(o("reduced.json"))),
        (vec!["reduce".into(), p("two_clauses.cnf"), "-o".into(), o("reduced.txt"), "--format".into(), "text".into()], Some(o("reduced.txt"))),
        (vec!["gadget".into(), "--clause".into(), "3".into(), "1".into(), "-o".into(), o("cg31.json")], Some(o("cg31.json"))),
        (vec!["gadget".into(), "--conflict".into(), "-o".into(), o("tg.json")], Some(o("tg.json"))),
        (vec!["info".into(), p("flores2.txt")], None),
        (vec!["verify".into(), "--moment-lemma".into(), "--k".into(), "2".into(), p("flores2.txt")], None),
        (vec!["verify".into(), "--coset".into(), "--trials".into(), "5".into(), "--seed".into(), "3".into(), p("k4.txt")], None),
    ];
    for (args, file) in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let (code, stdout) = cli(&args);
            ensure(code == 0, format!("{args:?}: exit {code}"))?;
            let written = file.as_ref().map(|f| std::fs::read(f).unwrap());
            outputs.push((stdout, written));
        }
        ensure(outputs[0] == outputs[1], format!("{args:?}: outputs differ"))?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} invocations, each twice", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("van Kampen-Flores complexes are NotEmbeddable", van_kampen_flores),
        ("k=1 verdict equals planarity on graphs with <= 6 vertices", planarity_agreement),
        ("moment-curve intersection parity is odd", parity_theorem),
        ("o_f(moment) = (-1)^{k(k-1)/2} o_gamma", moment_lemma),
        ("o_f - s o_gamma in span(Phi) for random maps", coset_membership),
        ("plane-embedding corpus", embed22_corpus),
        ("gadget topology", gadget_topology),
        ("reduction sanity", reduction_sanity),
        ("Smith normal form properties", snf_properties),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
