//! Exact rational and mod-2 linear algebra for intersection forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::IntMatrix;

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form of `[m | rhs]`; returns the reduced rows and the
/// pivot column of each nonzero row.
fn rref(mut a: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

/// A solution of `m z = b` over ℚ with free variables set to zero, or `None`
/// when `b` is outside the column span.
pub fn solve_rational(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let mut aug = to_rational(m);
    for (row, x) in aug.iter_mut().zip(b) {
        row.push(BigRational::from_integer(x.clone()));
    }
    let (red, pivots) = rref(aug, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut z = vec![BigRational::zero(); n];
    for (row, &c) in red.iter().zip(&pivots) {
        z[c] = row[n].clone();
    }
    Some(z)
}

/// Basis of the rational null space of `m`.
pub fn nullspace(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = m.cols();
    let (red, pivots) = rref(to_rational(m), n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &c) in red.iter().zip(&pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Signature of a symmetric integer matrix, by symmetric congruence
/// diagonalization over ℚ.
pub fn signature(m: &IntMatrix) -> i64 {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let mut a = to_rational(m);
    let n = a.len();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_p, col_k += col_p makes a_kk = 2 a_kp
                let rp = a[p].clone();
                for (x, y) in a[k].iter_mut().zip(&rp) {
                    *x += y;
                }
                for row in a.iter_mut() {
                    let v = row[p].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let piv = a[k][k].clone();
        sig += if piv.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            let rk = a[k].clone();
            for (x, y) in a[i][k..].iter_mut().zip(&rk[k..]) {
                *x -= &f * y;
            }
            for row in a.iter_mut() {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
    }
    sig
}

/// All solutions of `m x ≡ b (mod 2)`, as 0/1 vectors in lexicographic
/// order of the free variables.
pub fn solve_mod2(m: &IntMatrix, b: &[BigInt]) -> Vec<Vec<bool>> {
    let n = m.cols();
    let (a, pivots) = eliminate_mod2(m, Some(b));
    if a[pivots.len()..].iter().any(|row| row[n]) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut x = vec![false; n];
            for (bit, &f) in free.iter().enumerate() {
                x[f] = mask >> (free.len() - 1 - bit) & 1 == 1;
            }
            for (row, &c) in a.iter().zip(&pivots) {
                x[c] = row[n] ^ free.iter().fold(false, |acc, &f| acc ^ (row[f] && x[f]));
            }
            x
        })
        .collect()
}

/// Rank of `m` over GF(2).
pub fn rank_mod2(m: &IntMatrix) -> usize {
    eliminate_mod2(m, None).1.len()
}

fn eliminate_mod2(m: &IntMatrix, b: Option<&[BigInt]>) -> (Vec<Vec<bool>>, Vec<usize>) {
    let n = m.cols();
    let mut a: Vec<Vec<bool>> = (0..m.rows())
        .map(|i| {
            let mut row: Vec<bool> = m.row(i).iter().map(BigInt::is_odd).collect();
            row.push(b.is_some_and(|b| b[i].is_odd()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][c]) else {
            continue;
        };
        a.swap(r, p);
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&IntMatrix::from_rows(1, &[[-2]])), -1);
        assert_eq!(signature(&IntMatrix::from_rows(2, &[[0, 1], [1, 0]])), 0);
        assert_eq!(signature(&IntMatrix::from_rows(2, &[[-2, 1], [1, -2]])), -2);
        assert_eq!(signature(&IntMatrix::from_rows(2, &[[0, 0], [0, 0]])), 0);
        assert_eq!(
            signature(&IntMatrix::from_rows(3, &[[0, 1, 0], [1, 0, 0], [0, 0, 5]])),
            1
        );
        assert_eq!(signature(&IntMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn rational_solve() {
        let m = IntMatrix::from_rows(2, &[[-2, 1], [1, -2]]);
        let z = solve_rational(&m, &[1.into(), 0.into()]).unwrap();
        assert_eq!(
            z,
            vec![BigRational::new((-2).into(), 3.into()), q(-1) / q(3)]
        );
        let sing = IntMatrix::from_rows(2, &[[1, 1], [1, 1]]);
        assert!(solve_rational(&sing, &[1.into(), 0.into()]).is_none());
        assert!(solve_rational(&sing, &[2.into(), 2.into()]).is_some());
        let ns = nullspace(&sing);
        assert_eq!(ns, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn mod2_systems() {
        let m = IntMatrix::from_rows(2, &[[2, 0], [0, 2]]);
        assert_eq!(solve_mod2(&m, &[0.into(), 0.into()]).len(), 4);
        assert_eq!(rank_mod2(&m), 0);
        let m = IntMatrix::from_rows(2, &[[1, 1], [1, 1]]);
        let sols = solve_mod2(&m, &[1.into(), 1.into()]);
        assert_eq!(sols, vec![vec![true, false], vec![false, true]]);
        assert!(solve_mod2(&m, &[1.into(), 0.into()]).is_empty());
    }
}
