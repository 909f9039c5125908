//! Shared fixtures and independent oracles for integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use braidcover::algebra::{orbits, IntMatrix, Permutation};
use braidcover::braid::{BraidWord, Stabilization};
use braidcover::cover::{propagate, LabeledBraid};
use braidcover::surgery::SurgeryDiagram;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn perm(s: &str, k: usize) -> Permutation {
    Permutation::parse(s, k).unwrap()
}

pub fn datum(n: usize, word: &[i32], k: usize, labels: &[&str]) -> LabeledBraid {
    LabeledBraid::new(
        BraidWord::new(n, word.to_vec()).unwrap(),
        k,
        labels.iter().map(|s| perm(s, k)).collect(),
    )
    .unwrap()
}

/// Full twist on 2n strands labeled (1 2),(1 2),(2 3),(2 3),…,(n n+1),(n n+1).
pub fn twisted_family(n: usize) -> LabeledBraid {
    let k = n + 1;
    let labels = (1..=n)
        .flat_map(|i| {
            let t = Permutation::transposition(k, i, i + 1);
            [t.clone(), t]
        })
        .collect();
    LabeledBraid::new(BraidWord::full_twist(2 * n), k, labels).unwrap()
}

pub fn l31() -> LabeledBraid {
    twisted_family(2)
}

pub fn two_fold(n: usize, word: &[i32]) -> LabeledBraid {
    LabeledBraid::new(
        BraidWord::new(n, word.to_vec()).unwrap(),
        2,
        vec![perm("(1 2)", 2); n],
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Burau oracle

type QMat = Vec<Vec<BigRational>>;

fn qi(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn q_identity(m: usize) -> QMat {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { qi(1) } else { qi(0) }).collect())
        .collect()
}

fn q_mul(a: &QMat, b: &QMat) -> QMat {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn q_inverse(a: &QMat) -> QMat {
    let m = a.len();
    let mut aug: QMat = a
        .iter()
        .zip(q_identity(m))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&i| !aug[i][c].is_zero()).expect("invertible");
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pr = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[m..].to_vec()).collect()
}

fn q_det(mut a: QMat) -> BigRational {
    let m = a.len();
    let mut det = qi(1);
    for c in 0..m {
        let Some(p) = (c..m).find(|&i| !a[i][c].is_zero()) else {
            return qi(0);
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= a[c][c].clone();
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Reduced Burau matrix of σ_i in B_n at parameter t.
fn reduced_burau(n: usize, i: usize, t: i64) -> QMat {
    let m = n - 1;
    let mut b = q_identity(m);
    let i0 = i - 1;
    if i0 > 0 {
        b[i0][i0 - 1] = qi(t);
    }
    b[i0][i0] = qi(-t);
    if i0 + 1 < m {
        b[i0][i0 + 1] = qi(1);
    }
    b
}

/// Knot determinant `|Δ(-1)|` of a braid closure, computed from
/// `det(I - B̄(β))` at `t = -1` after stabilizing to an odd strand count.
pub fn burau_determinant(braid: &BraidWord) -> BigInt {
    let mut b = braid.clone();
    while b.strands().is_multiple_of(2) {
        b = b.stabilize(Stabilization::Positive);
    }
    let n = b.strands();
    let m = n - 1;
    let mut acc = q_identity(m);
    for &l in b.letters() {
        let g = reduced_burau(n, l.unsigned_abs() as usize, -1);
        let g = if l > 0 { g } else { q_inverse(&g) };
        acc = q_mul(&acc, &g);
    }
    let i_minus: QMat = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| q_identity(m)[i][j].clone() - &acc[i][j])
                .collect()
        })
        .collect();
    let d = q_det(i_minus);
    assert!(d.is_integer());
    d.to_integer().abs()
}

/// Cyclically reduced words in σ_1^{±1}, σ_2^{±1} up to rotation.
pub fn three_braid_knot_words(max_len: usize) -> Vec<Vec<i32>> {
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1, -1, 2, -2] {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            if w.first() == Some(&-*w.last().unwrap()) && w.len() > 1 {
                continue;
            }
            let b = BraidWord::new(3, w.clone()).unwrap();
            if b.component_count() != 1 {
                continue;
            }
            let canon = (0..w.len())
                .map(|r| [&w[r..], &w[..r]].concat())
                .min()
                .unwrap();
            out.insert(canon);
        }
        frontier = next;
    }
    out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Random valid data

fn hurwitz_path(from: &[Permutation], to: &[Permutation]) -> Vec<i32> {
    let n = from.len() as i32;
    let mut prev: HashMap<Vec<Permutation>, (Vec<Permutation>, i32)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    prev.insert(from.to_vec(), (Vec::new(), 0));
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut path = Vec::new();
            let mut node = cur;
            while node != from {
                let (p, l) = prev[&node].clone();
                path.push(l);
                node = p;
            }
            path.reverse();
            return path;
        }
        for i in 1..n {
            for l in [i, -i] {
                let next = propagate(&cur, &[l]);
                if !prev.contains_key(&next) {
                    prev.insert(next.clone(), (cur.clone(), l));
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("the braid group acts by bijections, so the start is reachable")
}

/// Random transitive labels of degree `k` on `n` strands.
pub fn random_labels(rng: &mut impl Rng, k: usize, n: usize, simple: bool) -> Vec<Permutation> {
    let mut pool: Vec<Permutation> = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            pool.push(Permutation::transposition(k, a, b));
        }
    }
    if !simple && k == 3 {
        pool.push(perm("(1 2 3)", 3));
        pool.push(perm("(1 3 2)", 3));
    }
    loop {
        let labels: Vec<_> = (0..n).map(|_| pool.choose(rng).unwrap().clone()).collect();
        if orbits(k, &labels).len() == 1 {
            return labels;
        }
    }
}

/// A random valid, transitive datum with `2 ≤ strands ≤ max_strands`.
pub fn random_valid_datum(
    rng: &mut impl Rng,
    k: usize,
    max_strands: usize,
    max_len: usize,
    simple: bool,
) -> LabeledBraid {
    let lo = 2.max(k - 1);
    let n = rng.gen_range(lo..=max_strands.max(lo));
    let labels = random_labels(rng, k, n, simple);
    let len = rng.gen_range(0..=max_len);
    let w: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    let top = propagate(&labels, &w);
    let u = hurwitz_path(&top, &labels);
    let word = [w, u].concat();
    let lb = LabeledBraid::new(BraidWord::new(n, word).unwrap(), k, labels).unwrap();
    assert!(lb.is_valid());
    lb
}

pub fn random_braid(rng: &mut impl Rng, n: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

// ---------------------------------------------------------------------------
// Surgery oracles

/// Random diagram with `tb + rot` odd.
pub fn random_diagram(rng: &mut impl Rng, max_components: usize) -> SurgeryDiagram {
    let n = rng.gen_range(0..=max_components);
    let tb: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=1)).collect();
    let rot: Vec<i64> = tb
        .iter()
        .map(|&t| {
            let r: i64 = rng.gen_range(-3..=3);
            if (t + r) % 2 == 0 {
                r + 1
            } else {
                r
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j, rng.gen_range(-2..=2)));
        }
    }
    SurgeryDiagram::from_pairs(tb, rot, &pairs).unwrap()
}

/// Characteristic subsets by brute force over all `2^n` subsets.
pub fn characteristic_subsets_exhaustive(q: &IntMatrix) -> Vec<Vec<usize>> {
    let n = q.rows();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = (0..n).all(|i| {
            let lk: BigInt = members.iter().map(|&j| q[(i, j)].clone()).sum();
            (&q[(i, i)] - lk).is_even()
        });
        if ok {
            out.push(members);
        }
    }
    out.sort();
    out
}

/// Signature from the characteristic polynomial (Faddeev–LeVerrier) by
/// Descartes' rule of signs, exact for real-rooted polynomials.
pub fn signature_by_charpoly(q: &IntMatrix) -> i64 {
    let n = q.rows();
    if n == 0 {
        return 0;
    }
    let a: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(q[(i, j)].clone()))
                .collect()
        })
        .collect();
    // coefficients c[0] = 1, p(x) = Σ c_k x^{n-k}
    let mut c = vec![qi(1)];
    let mut m = q_identity(n);
    for k in 1..=n {
        let am = q_mul(&a, &m);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        let ck = -tr / qi(k as i64);
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += ck.clone();
        }
        c.push(ck);
    }
    // strip zero roots
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let changes = |coeffs: &[BigRational]| {
        let signs: Vec<bool> = coeffs
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    let deg = c.len() - 1;
    let positive = changes(&c);
    let flipped: Vec<BigRational> = c
        .iter()
        .enumerate()
        .map(|(k, x)| {
            if (deg - k) % 2 == 1 {
                -x.clone()
            } else {
                x.clone()
            }
        })
        .collect();
    let negative = changes(&flipped);
    positive - negative
}
