#![allow(dead_code)]

use std::path::PathBuf;

use bmrel::config::DEFAULT_SEED;
use bmrel::{Ambient, BMPresentation, BMRelation, GeometricSquare, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for randomized tests; override with `BMREL_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("BMREL_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn amb(alpha: usize, beta: usize) -> Ambient {
    Ambient::new(alpha, beta).unwrap()
}

pub fn relation_set(text: &str) -> Vec<BMRelation> {
    let mut v: Vec<BMRelation> =
        text.lines().filter(|l| !l.trim().is_empty()).map(|l| BMRelation::parse_line(l, None).unwrap()).collect();
    v.sort();
    v
}

/// Link condition checked directly from the definition: every cross pair
/// `{x, y}` with `x ∈ A^{±1}`, `y ∈ B^{±1}` occurs as a corner of exactly one square.
pub fn naive_link_condition(squares: &[GeometricSquare], ambient: Ambient) -> bool {
    if squares.len() != ambient.alpha * ambient.beta {
        return false;
    }
    for x in ambient.horizontal_letters() {
        for y in ambient.vertical_letters() {
            let mut hits = 0;
            for s in squares {
                let q = s.canonical();
                let corners =
                    [(q.a.inverse(), q.b), (q.a2, q.b.inverse()), (q.a2.inverse(), q.b2), (q.a, q.b2.inverse())];
                hits += corners.iter().filter(|&&c| c == (x, y)).count();
            }
            if hits != 1 {
                return false;
            }
        }
    }
    true
}

/// Every `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, p: &BMPresentation, max_len: usize) -> Word {
    let letters: Vec<Letter> = p.ambient().horizontal_letters().chain(p.ambient().vertical_letters()).collect();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

pub fn is_horizontal_then_vertical(w: &Word) -> bool {
    let l = w.letters();
    let split = l.iter().position(|x| x.is_vertical()).unwrap_or(l.len());
    l[split..].iter().all(|x| x.is_vertical())
}

/// A random cyclic conjugate of a relator or of its inverse.
pub fn random_relator(rng: &mut ChaCha8Rng, p: &BMPresentation) -> Word {
    let rels = p.relators();
    let r = &rels[rng.gen_range(0..rels.len())];
    let r = if rng.gen_bool(0.5) { r.inverse() } else { r.clone() };
    let k = rng.gen_range(0..4);
    let mut l = r.letters().to_vec();
    l.rotate_left(k);
    Word::from(l)
}

/// Checks normal-form laws on `n` random word pairs; returns descriptions of failures.
pub fn group_law_failures(p: &BMPresentation, rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<String> {
    let mut failures = Vec::new();
    for _ in 0..n {
        let u = random_word(rng, p, max_len);
        let v = random_word(rng, p, max_len);
        let nu = p.normal_form(&u).unwrap();
        let nv = p.normal_form(&v).unwrap();
        let checks = [
            ("shape", nu.is_freely_reduced() && is_horizontal_then_vertical(&nu)),
            ("idempotent", p.normal_form(&nu).unwrap() == nu),
            (
                "inverse",
                p.is_trivial(&u.concat(&u.inverse())).unwrap() && p.is_trivial(&u.inverse().concat(&u)).unwrap(),
            ),
            ("product", p.normal_form(&u.concat(&v)).unwrap() == p.normal_form(&nu.concat(&nv)).unwrap()),
            ("free reduction", p.normal_form(&u.free_reduce()).unwrap() == nu),
            ("inverse of nf", p.normal_form(&u.inverse()).unwrap() == p.normal_form(&nu.inverse()).unwrap()),
            ("relator insertion", {
                let r = random_relator(rng, p);
                p.normal_form(&u.concat(&r).concat(&v)).unwrap() == p.normal_form(&u.concat(&v)).unwrap()
            }),
            ("conjugated relator", p.is_trivial(&u.concat(&random_relator(rng, p)).concat(&u.inverse())).unwrap()),
        ];
        for (law, ok) in checks {
            if !ok {
                failures.push(format!("{law} fails for u = {u}, v = {v}"));
            }
        }
    }
    failures
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(n, k, |s| out.push(s.to_vec()));
    out
}

/// Invariant factors as quotients of determinantal divisors.
pub fn oracle_factors(m: &[Vec<i64>]) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in combos(rows, k) {
            for cs in combos(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                d = gcd(d, det(&sub));
            }
        }
        if d == 0 {
            break;
        }
        out.push((d / prev) as u64);
        prev = d;
    }
    out
}
