//! Words in a free group on generators `x_1, x_2, ...`.

use std::fmt;
use std::ops::Mul;

/// A word in the free group. Letter `i > 0` is `x_i`, letter `-i` is `x_i⁻¹`.
///
/// Constructors and products always return freely reduced words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The generator `x_i` (1-based).
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1);
        Self {
            letters: vec![i as i32],
        }
    }

    /// Builds a word from signed letters, reducing it.
    ///
    /// # Panics
    /// If a letter is zero.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = Self::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the last one when possible.
    pub fn push(&mut self, letter: i32) {
        assert!(letter != 0, "free word letters are nonzero");
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::empty();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Largest generator index appearing in the word (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Exponent sum of each of the generators `x_1..x_n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Replaces every `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::empty();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &img.letters {
                    out.push(m);
                }
            } else {
                for &m in img.letters.iter().rev() {
                    out.push(-m);
                }
            }
        }
        out
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}
