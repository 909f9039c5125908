//! Permutations of `{1..k}`.
//!
//! Products are read left to right: `p.then(&q)` (also `&p * &q`) applies `p`
//! first, so `(p * q)(i) = q(p(i))`. This is the convention used for braid
//! words read bottom to top and for monodromy of concatenated loops.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Error emitted while parsing a permutation from cycle notation.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("symbol {symbol} is outside 1..={degree}")]
    OutOfRange { symbol: usize, degree: usize },
    #[error("symbol {0} appears more than once")]
    Repeated(usize),
    #[error("malformed cycle notation {0:?}")]
    Syntax(String),
    #[error("images do not form a bijection of 1..={0}")]
    NotBijection(usize),
}

/// A permutation of `{1..k}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be positive");
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let k = images.len();
        if k == 0 {
            return Err(PermError::NotBijection(0));
        }
        let mut seen = vec![false; k];
        let mut out = Vec::with_capacity(k);
        for &img in images {
            if img == 0 || img > k {
                return Err(PermError::OutOfRange {
                    symbol: img,
                    degree: k,
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(PermError::NotBijection(k));
            }
            out.push((img - 1) as u32);
        }
        Ok(Self { images: out })
    }

    /// The transposition `(a b)` of degree `k` (1-based symbols).
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a != b && a >= 1 && b >= 1 && a <= degree && b <= degree);
        let mut p = Self::identity(degree);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Builds a permutation from cycles given as 1-based symbols.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &s in cycle {
                if s == 0 || s > degree {
                    return Err(PermError::OutOfRange { symbol: s, degree });
                }
                if std::mem::replace(&mut used[s - 1], true) {
                    return Err(PermError::Repeated(s));
                }
            }
            for (i, &s) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[s - 1] = (next - 1) as u32;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"`; `"e"` is the identity.
    /// Symbols may be separated by spaces or commas.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let text = text.trim();
        if degree == 0 {
            return Err(PermError::Syntax(text.to_string()));
        }
        if text == "e" || text == "()" {
            return Ok(Self::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let body = &body_start[..close];
            if body.contains('(') {
                return Err(PermError::Syntax(text.to_string()));
            }
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| PermError::Syntax(text.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cycle.is_empty() {
                return Err(PermError::Syntax(text.to_string()));
            }
            cycles.push(cycle);
            rest = body_start[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based symbol `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    /// All cycles including fixed points, 1-based, each starting at its
    /// smallest element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_transposition(&self) -> bool {
        let moved = self
            .images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 != j)
            .count();
        moved == 2
    }

    /// Points moved by the permutation (1-based, ascending).
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, s) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "e")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Orbits of the group generated by `gens` acting on `0..degree`
/// (0-based points), each sorted, ordered by smallest element.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.image0(p);
                if comp[q] == usize::MAX {
                    comp[q] = id;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}
