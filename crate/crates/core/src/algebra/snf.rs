//! Smith normal form over ℤ and the cokernel groups it computes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d_i ≥ 0`, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.d
            .main_diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    diagonalize(&mut d, Some((&mut u, &mut v)));
    SmithForm { d, u, v }
}

/// Invariant diagonal of the Smith form without tracking the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    diagonalize(&mut d, None);
    d.main_diagonal()
}

fn find_min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn diagonalize(d: &mut IntMatrix, mut track: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let (rows, cols) = (d.rows(), d.cols());
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_min_nonzero(d, t) else {
            break;
        };
        swap_rows(d, &mut track, t, pi);
        swap_cols(d, &mut track, t, pj);
        loop {
            // Euclidean reduction of column t and row t against the pivot;
            // remainders are strictly smaller than the pivot in absolute value.
            let pivot = d[(t, t)].clone();
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&pivot);
                    add_row(d, &mut track, i, t, &-q);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&pivot);
                    add_col(d, &mut track, j, t, &-q);
                }
            }
            let col_rest = (t + 1..rows).find(|&i| !d[(i, t)].is_zero());
            let row_rest = (t + 1..cols).find(|&j| !d[(t, j)].is_zero());
            match (col_rest, row_rest) {
                (None, None) => {
                    let bad = (t + 1..rows).find_map(|i| {
                        (t + 1..cols)
                            .find(|&j| !d[(i, j)].is_multiple_of(&pivot))
                            .map(|_| i)
                    });
                    match bad {
                        Some(i) => add_row(d, &mut track, t, i, &BigInt::one()),
                        None => break,
                    }
                }
                _ => {
                    // move the smallest leftover into the pivot slot
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                            best = (t, j);
                        }
                    }
                    swap_rows(d, &mut track, t, best.0);
                    swap_cols(d, &mut track, t, best.1);
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_col(t);
            if let Some((_, v)) = track.as_mut() {
                v.negate_col(t);
            }
        }
        t += 1;
    }
}

fn swap_rows(
    d: &mut IntMatrix,
    track: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    a: usize,
    b: usize,
) {
    d.swap_rows(a, b);
    if let Some((u, _)) = track.as_mut() {
        u.swap_rows(a, b);
    }
}

fn swap_cols(
    d: &mut IntMatrix,
    track: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    a: usize,
    b: usize,
) {
    d.swap_cols(a, b);
    if let Some((_, v)) = track.as_mut() {
        v.swap_cols(a, b);
    }
}

fn add_row(
    d: &mut IntMatrix,
    track: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    dst: usize,
    src: usize,
    factor: &BigInt,
) {
    d.add_row_multiple(dst, src, factor);
    if let Some((u, _)) = track.as_mut() {
        u.add_row_multiple(dst, src, factor);
    }
}

fn add_col(
    d: &mut IntMatrix,
    track: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    dst: usize,
    src: usize,
    factor: &BigInt,
) {
    d.add_col_multiple(dst, src, factor);
    if let Some((_, v)) = track.as_mut() {
        v.add_col_multiple(dst, src, factor);
    }
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_m`
/// with `2 ≤ d_1 | d_2 | … | d_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `ℤ/n` (trivial for `n = 1`, `ℤ` for `n = 0`).
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => Self {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(n)],
            },
        }
    }

    /// Canonicalizes an arbitrary list of cyclic orders (entries equal to 1
    /// are dropped, zeros count as free summands).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free_rank = free_rank;
        let mut diag = Vec::new();
        for o in orders {
            if o.is_zero() {
                free_rank += 1;
            } else {
                diag.push(o.abs());
            }
        }
        let m = IntMatrix::diagonal(&diag);
        let invariant_factors = smith_diagonal(&m)
            .into_iter()
            .filter(|x| *x > BigInt::one())
            .collect();
        Self {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ℤ^cols` modulo the lattice spanned by the rows of `m`.
pub fn cokernel_group(m: &IntMatrix) -> FinAbGroup {
    let diag = smith_diagonal(m);
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    FinAbGroup {
        free_rank: m.cols() - rank,
        invariant_factors: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
    }
}
