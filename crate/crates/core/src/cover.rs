//! Permutation-labeled braids as branched covers of `S³`.
//!
//! A [`LabeledBraid`] assigns to each bottom arc of a braid the monodromy
//! (an element of `S_k`) of its meridian. Labels are carried up through the
//! crossings by the Wirtinger rule
//!
//! ```text
//! σ_i    : (g, h) ↦ (h, h⁻¹ g h)
//! σ_i⁻¹  : (g, h) ↦ (g h g⁻¹, g)
//! ```
//!
//! at positions `(i, i+1)`. This rule preserves the ordered product
//! `g_1 g_2 ⋯ g_n`, which is the monodromy around the boundary of a page. The
//! closure is a consistent cover exactly when the labels reaching the top
//! agree with the bottom labels.

use thiserror::Error;

use crate::algebra::{orbits, Permutation};
use crate::braid::{BraidError, BraidWord, Stabilization};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("fold must be at least 2, got {0}")]
    BadFold(usize),
    #[error("expected {expected} labels (one per strand), got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("label of strand {strand} has degree {found}, fold is {fold}")]
    DegreeMismatch {
        strand: usize,
        found: usize,
        fold: usize,
    },
    #[error("strand {0} carries the identity label")]
    IdentityLabel(usize),
    #[error("labels are not consistent around the braid closure")]
    InvalidLabeling,
    #[error("cover is not simple (some label is not a transposition)")]
    NotSimple,
    #[error("labels {0} and {1} do not share exactly one symbol")]
    LabelsDontShareSymbol(Permutation, Permutation),
    #[error(
        "site (gap {gap}, height {height}) does not exist on B_{strands} word of length {len}"
    )]
    BadSite {
        gap: usize,
        height: usize,
        strands: usize,
        len: usize,
    },
    #[error("branch locus has {components} components, no component {index}")]
    BadComponentIndex { index: usize, components: usize },
    #[error("monodromy is not transitive: the cover is disconnected")]
    NotTransitive,
    #[error("monodromy does not match the presentation: {0}")]
    MonodromyMismatch(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Outgoing labels at a crossing given incoming `(g, h)` at `(i, i+1)`.
#[inline]
pub fn cross(letter: i32, g: &Permutation, h: &Permutation) -> (Permutation, Permutation) {
    if letter > 0 {
        (h.clone(), g.conjugate_by(h))
    } else {
        (g.then(h).then(&g.inverse()), g.clone())
    }
}

/// Carries labels through a braid word from bottom to top.
pub fn propagate(labels: &[Permutation], word: &[i32]) -> Vec<Permutation> {
    let mut cur = labels.to_vec();
    for &l in word {
        let a = l.unsigned_abs() as usize - 1;
        let (g, h) = cross(l, &cur[a], &cur[a + 1]);
        cur[a] = g;
        cur[a + 1] = h;
    }
    cur
}

/// Ordered product `g_1 g_2 ⋯ g_n` of a label tuple.
pub fn boundary_monodromy(labels: &[Permutation]) -> Permutation {
    let mut it = labels.iter();
    let first = it.next().expect("at least one label").clone();
    it.fold(first, |acc, g| acc.then(g))
}

/// Result of [`LabeledBraid::propagate_and_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagation {
    pub top_labels: Vec<Permutation>,
    pub valid: bool,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledBraid {
    braid: BraidWord,
    fold: usize,
    labels: Vec<Permutation>,
}

/// Where a connect move is applied: between strand positions `gap` and
/// `gap + 1`, just above the first `height` letters of the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    pub gap: usize,
    pub height: usize,
}

impl Site {
    pub fn bottom(gap: usize) -> Self {
        Self { gap, height: 0 }
    }
}

/// Ramification data of one branch-locus component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRamification {
    /// Bottom strand positions belonging to the component (1-based).
    pub strands: Vec<usize>,
    /// Label of the component's lowest strand; other arcs carry conjugates.
    pub label: Permutation,
    /// Cycle lengths of the label, fixed points included, descending.
    pub cycle_type: Vec<usize>,
    /// More than one nontrivial cycle: several ramified curves upstairs.
    pub multiply_ramified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub fold: usize,
    pub transitive: bool,
    pub simple: bool,
    pub cyclic: bool,
    pub components_of_branch_locus: usize,
    pub ramification: Vec<ComponentRamification>,
}

/// The page of the lifted open book: a branched cover of the disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverSurface {
    pub sheets: usize,
    pub euler_char: i64,
    pub boundary_count: usize,
    /// Total genus (sum over connected components).
    pub genus: usize,
    pub connected: bool,
}

impl LabeledBraid {
    /// Checks the shape of the datum: fold, one label per strand, label
    /// degrees, and that no label is the identity. Consistency around the
    /// closure is checked separately by [`LabeledBraid::propagate_and_validate`].
    pub fn new(
        braid: BraidWord,
        fold: usize,
        labels: Vec<Permutation>,
    ) -> Result<Self, CoverError> {
        if fold < 2 {
            return Err(CoverError::BadFold(fold));
        }
        if labels.len() != braid.strands() {
            return Err(CoverError::LabelCount {
                expected: braid.strands(),
                found: labels.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.degree() != fold {
                return Err(CoverError::DegreeMismatch {
                    strand: i + 1,
                    found: l.degree(),
                    fold,
                });
            }
            if l.is_identity() {
                return Err(CoverError::IdentityLabel(i + 1));
            }
        }
        Ok(Self {
            braid,
            fold,
            labels,
        })
    }

    /// Like [`LabeledBraid::new`] but also requires a consistent labeling.
    pub fn new_valid(
        braid: BraidWord,
        fold: usize,
        labels: Vec<Permutation>,
    ) -> Result<Self, CoverError> {
        let lb = Self::new(braid, fold, labels)?;
        lb.ensure_valid()?;
        Ok(lb)
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    pub fn propagate_and_validate(&self) -> Propagation {
        let top_labels = propagate(&self.labels, self.braid.letters());
        let valid = top_labels == self.labels;
        Propagation { top_labels, valid }
    }

    pub fn is_valid(&self) -> bool {
        self.propagate_and_validate().valid
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), CoverError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(CoverError::InvalidLabeling)
        }
    }

    /// Labels just above the first `height` letters.
    pub fn labels_at_height(&self, height: usize) -> Vec<Permutation> {
        propagate(&self.labels, &self.braid.letters()[..height])
    }

    /// Whether the labels generate a transitive subgroup of `S_k`.
    pub fn is_transitive(&self) -> bool {
        orbits(self.fold, &self.labels).len() == 1
    }

    pub fn classify_cover(&self) -> Result<CoverReport, CoverError> {
        self.ensure_valid()?;
        let simple = self.labels.iter().all(Permutation::is_transposition);
        let cyclic = {
            let first = &self.labels[0];
            first.cycle_type() == [self.fold] && self.labels.iter().all(|l| l == first)
        };
        let ramification: Vec<_> = self
            .braid
            .closure_components()
            .into_iter()
            .map(|strands| {
                let label = self.labels[strands[0] - 1].clone();
                let cycle_type = label.cycle_type();
                let nontrivial = cycle_type.iter().filter(|&&c| c > 1).count();
                ComponentRamification {
                    strands,
                    label,
                    cycle_type,
                    multiply_ramified: nontrivial > 1,
                }
            })
            .collect();
        Ok(CoverReport {
            fold: self.fold,
            transitive: self.is_transitive(),
            simple,
            cyclic,
            components_of_branch_locus: ramification.len(),
            ramification,
        })
    }

    /// Riemann–Hurwitz data of the page surface, computed orbit by orbit.
    pub fn page_surface(&self) -> Result<CoverSurface, CoverError> {
        self.ensure_valid()?;
        let orbits = orbits(self.fold, &self.labels);
        let boundary = boundary_monodromy(&self.labels);
        let mut euler_char = 0i64;
        let mut boundary_count = 0usize;
        let mut genus = 0usize;
        for orbit in &orbits {
            let size = orbit.len() as i64;
            let chi = size
                - self
                    .labels
                    .iter()
                    .map(|g| size - cycles_within(g, orbit) as i64)
                    .sum::<i64>();
            let b = cycles_within(&boundary, orbit);
            let twice_genus = 2 - chi - b as i64;
            debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
            euler_char += chi;
            boundary_count += b;
            genus += (twice_genus / 2) as usize;
        }
        Ok(CoverSurface {
            sheets: self.fold,
            euler_char,
            boundary_count,
            genus,
            connected: orbits.len() == 1,
        })
    }

    /// Re-encodes the datum on the conjugate braid `g⁻¹ β g`, transporting
    /// the labels through `g`. The closure and the cover are unchanged.
    pub fn conjugate(&self, g: &BraidWord) -> Result<Self, CoverError> {
        let braid = g.inverse().concat(&self.braid)?.concat(g)?;
        let labels = propagate(&self.labels, g.letters());
        Ok(Self {
            braid,
            fold: self.fold,
            labels,
        })
    }

    /// Markov stabilization on the rightmost strand. The new strand is
    /// forced to carry the label of bottom position `n`.
    pub fn markov_stabilize(&self, kind: Stabilization) -> Self {
        let mut labels = self.labels.clone();
        labels.push(self.labels[self.strands() - 1].clone());
        Self {
            braid: self.braid.stabilize(kind),
            fold: self.fold,
            labels,
        }
    }

    /// Connect move for simple covers.
    ///
    /// At the site the two arcs carry transpositions `(i j)` and `(j k)`. The
    /// move inserts the local tangle `σ_gap³`, whose twist region shows the
    /// third transposition `(i k)` and which returns the labels to `(i j)`,
    /// `(j k)`. Its lift to the page is supported on a disk and is isotopic
    /// to the identity, so the covering manifold and its contact structure
    /// do not change. Strands at the site from different components merge
    /// into one.
    pub fn connect_move(&self, site: Site) -> Result<Self, CoverError> {
        self.ensure_valid()?;
        if !self.labels.iter().all(Permutation::is_transposition) {
            return Err(CoverError::NotSimple);
        }
        let n = self.strands();
        if site.gap == 0 || site.gap >= n || site.height > self.braid.len() {
            return Err(CoverError::BadSite {
                gap: site.gap,
                height: site.height,
                strands: n,
                len: self.braid.len(),
            });
        }
        let here = self.labels_at_height(site.height);
        let (a, b) = (&here[site.gap - 1], &here[site.gap]);
        let shared = a
            .support()
            .iter()
            .filter(|s| b.support().contains(s))
            .count();
        if shared != 1 {
            return Err(CoverError::LabelsDontShareSymbol(a.clone(), b.clone()));
        }
        let g = site.gap as i32;
        Ok(Self {
            braid: self.braid.insert(site.height, &[g, g, g]),
            fold: self.fold,
            labels: self.labels.clone(),
        })
    }

    /// Sites at which [`LabeledBraid::connect_move`] would merge two
    /// different branch components, scanning heights bottom-up.
    pub fn merging_sites(&self) -> Vec<Site> {
        let n = self.strands();
        let letters = self.braid.letters();
        let comps = self.braid.closure_components();
        let mut comp_of_strand = vec![0; n];
        for (c, strands) in comps.iter().enumerate() {
            for &s in strands {
                comp_of_strand[s - 1] = c;
            }
        }
        // track which strand (by bottom position) occupies each position
        let mut at: Vec<usize> = (0..n).collect();
        let mut labels = self.labels.clone();
        let mut out = Vec::new();
        for height in 0..=letters.len() {
            for gap in 1..n {
                let (a, b) = (&labels[gap - 1], &labels[gap]);
                let shared = a
                    .support()
                    .iter()
                    .filter(|s| b.support().contains(s))
                    .count();
                if shared == 1 && comp_of_strand[at[gap - 1]] != comp_of_strand[at[gap]] {
                    out.push(Site { gap, height });
                }
            }
            if let Some(&l) = letters.get(height) {
                let p = l.unsigned_abs() as usize - 1;
                let (g, h) = cross(l, &labels[p], &labels[p + 1]);
                labels[p] = g;
                labels[p + 1] = h;
                at.swap(p, p + 1);
            }
        }
        out
    }

    /// Applies connect moves at the first merging site until the branch locus
    /// is connected or no merging site remains. Returns the datum and the
    /// sites used.
    pub fn connect_all(&self) -> Result<(Self, Vec<Site>), CoverError> {
        let mut cur = self.clone();
        let mut used = Vec::new();
        while cur.braid.component_count() > 1 {
            let Some(&site) = cur.merging_sites().first() else {
                break;
            };
            cur = cur.connect_move(site)?;
            used.push(site);
        }
        Ok((cur, used))
    }

    /// Transverse stabilization of branch component `component` (0-based,
    /// in the order of [`BraidWord::closure_components`]).
    ///
    /// The braid is first conjugated so that a strand of the component sits
    /// in the rightmost position, then `σ_n⁻¹` is appended on a new strand,
    /// which is forced to carry that strand's label. The covering manifold is
    /// unchanged and the induced contact structure gains `d₃ + 1`.
    pub fn stabilize_branch_locus(&self, component: usize) -> Result<Self, CoverError> {
        self.ensure_valid()?;
        let comps = self.braid.closure_components();
        let strands = comps.get(component).ok_or(CoverError::BadComponentIndex {
            index: component,
            components: comps.len(),
        })?;
        let n = self.strands();
        let p = *strands.last().expect("components are nonempty");
        let shifted = if p == n {
            self.clone()
        } else {
            let gamma = BraidWord::new(n, (p as i32..n as i32).collect())?;
            self.conjugate(&gamma)?
        };
        Ok(shifted.markov_stabilize(Stabilization::Transverse))
    }
}

fn cycles_within(g: &Permutation, orbit: &[usize]) -> usize {
    g.cycles()
        .iter()
        .filter(|c| orbit.binary_search(&(c[0] - 1)).is_ok())
        .count()
}
