//! Braid words, their closures as transverse links, and the Artin action.
//!
//! Strands are numbered `1..n` left to right at the bottom and words are read
//! bottom to top. Letter `i` is the Artin generator `σ_i` (a positive
//! crossing between positions `i` and `i+1`), letter `-i` is `σ_i⁻¹`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{FreeWord, Permutation};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid must have at least one strand")]
    NoStrands,
    #[error("letter {letter} is not a generator of B_{strands}")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("closure has {components} components; self-linking needs a knot")]
    MultiComponentClosure { components: usize },
    #[error("generator x_{index} does not exist on {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("strand counts differ ({0} vs {1})")]
    StrandMismatch(usize, usize),
}

/// Kind of Markov stabilization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// Adds `σ_n`; preserves the transverse link.
    Positive,
    /// Adds `σ_n⁻¹`; the transverse stabilization, lowering `sl` by 2.
    Transverse,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::LetterOutOfRange { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1);
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// The full twist `(σ_1 σ_2 ⋯ σ_{n-1})^n`.
    pub fn full_twist(strands: usize) -> Self {
        let letters = (0..strands).flat_map(|_| 1..strands as i32).collect();
        Self { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
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
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `self` followed by `other` (other sits on top).
    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    pub fn pow(&self, n: usize) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.repeat(n),
        }
    }

    /// Inserts `word` before letter index `at` (0 = bottom).
    pub(crate) fn insert(&self, at: usize, word: &[i32]) -> Self {
        let mut letters = self.letters.clone();
        letters.splice(at..at, word.iter().copied());
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Underlying permutation: image of `i` is the top position of the strand
    /// starting at bottom position `i`.
    pub fn permutation(&self) -> Permutation {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        // pos[s] = current position of strand s
        let mut at: Vec<usize> = (0..self.strands).collect();
        // at[p] = strand currently at position p
        for &l in &self.letters {
            let a = l.unsigned_abs() as usize - 1;
            at.swap(a, a + 1);
            pos[at[a]] = a;
            pos[at[a + 1]] = a + 1;
        }
        Permutation::from_images(&pos.iter().map(|p| p + 1).collect::<Vec<_>>())
            .expect("positions form a permutation")
    }

    /// Exponent sum of the word.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Partition of the strand positions `1..n` into closure components,
    /// ordered by smallest position.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        let mut comps = self.permutation().cycles();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// Self-linking number `writhe − n` of the closure, defined for knots.
    pub fn self_linking(&self) -> Result<i64, BraidError> {
        let components = self.component_count();
        if components != 1 {
            return Err(BraidError::MultiComponentClosure { components });
        }
        Ok(self.writhe() - self.strands as i64)
    }

    /// Adds a strand on the right and appends `σ_n^{±1}` (`n` the old count).
    pub fn stabilize(&self, kind: Stabilization) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(match kind {
            Stabilization::Positive => n,
            Stabilization::Transverse => -n,
        });
        Self {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Images of `x_1..x_n` under the Artin automorphism of the word.
    ///
    /// `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`, fixing the
    /// other generators; the automorphism of `σ_{i_1} ⋯ σ_{i_L}` applies the
    /// letters in reading order, so its abelianization permutes generators by
    /// [`BraidWord::permutation`].
    pub fn artin_images(&self) -> Vec<FreeWord> {
        let mut img: Vec<FreeWord> = (1..=self.strands).map(FreeWord::generator).collect();
        // img holds φ_{i_L} ∘ … ∘ φ_{i_j}; prepend letters from the top down
        for &l in self.letters.iter().rev() {
            let a = l.unsigned_abs() as usize - 1;
            let (xa, xb) = (img[a].clone(), img[a + 1].clone());
            if l > 0 {
                img[a] = &(&xa * &xb) * &xa.inverse();
                img[a + 1] = xa;
            } else {
                img[a] = xb.clone();
                img[a + 1] = &(&xb.inverse() * &xa) * &xb;
            }
        }
        img
    }

    /// Image of `w` under the Artin automorphism of the word.
    pub fn artin_action(&self, w: &FreeWord) -> Result<FreeWord, BraidError> {
        let index = w.max_generator();
        if index > self.strands {
            return Err(BraidError::GeneratorOutOfRange {
                index,
                strands: self.strands,
            });
        }
        Ok(w.substitute(&self.artin_images()))
    }
}

impl fmt::Display for BraidWord {
    /// Text form `B3: 1 2 -1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}
