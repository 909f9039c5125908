//! Contact invariants of Legendrian surgery diagrams.
//!
//! A diagram is a Legendrian link in `(S³, ξ_std)` given by its
//! Thurston–Bennequin numbers, rotation numbers and pairwise linking numbers.
//! Legendrian surgery attaches 2-handles with framing `tb - 1`, producing a
//! Stein filling `X`; the invariants below are read off `X`.

mod contfrac;
pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{cokernel_group, smith_normal_form, FinAbGroup, IntMatrix};

pub use contfrac::{continued_fraction, rolled_up_framings, ContFrac};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("linking numbers are not symmetric at ({0}, {1})")]
    AsymmetricInput(usize, usize),
    #[error("component {component}: tb + rot = {tb} + {rot} must be odd")]
    ParityViolation { component: usize, tb: i64, rot: i64 },
    #[error("{what} has {found} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("contact surgery coefficient must be -1 or +1, got {0}")]
    BadContactCoefficient(i64),
    #[error("c1 is not torsion; d3 is undefined")]
    ChernClassNotTorsion,
    #[error("sublink {0} is not characteristic")]
    NotCharacteristic(CharacteristicSublink),
    #[error("component {0} has index out of range")]
    ComponentOutOfRange(usize),
    #[error("diagram has a +1 contact surgery; only Legendrian (-1) surgery is supported here")]
    NotLegendrianSurgery,
    #[error("need coprime p > q >= 1, got p = {p}, q = {q}")]
    BadPQ { p: i64, q: i64 },
    #[error("continued fraction entries must all be <= -2, got {0:?}")]
    BadContFrac(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDiagram {
    tb: Vec<i64>,
    rot: Vec<i64>,
    // off-diagonal linking numbers; the diagonal is kept at zero
    linking: IntMatrix,
    // contact surgery coefficient per component, -1 or +1
    contact: Vec<i64>,
}

/// A subset of components, 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CharacteristicSublink {
    pub members: Vec<usize>,
}

impl CharacteristicSublink {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

impl fmt::Display for CharacteristicSublink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "K{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

impl SurgeryDiagram {
    /// `linking` must be symmetric off the diagonal; its diagonal is ignored.
    pub fn new(tb: Vec<i64>, rot: Vec<i64>, linking: IntMatrix) -> Result<Self, SurgeryError> {
        let n = tb.len();
        if rot.len() != n {
            return Err(SurgeryError::LengthMismatch {
                what: "rot",
                expected: n,
                found: rot.len(),
            });
        }
        if linking.rows() != n || linking.cols() != n {
            return Err(SurgeryError::LengthMismatch {
                what: "linking matrix",
                expected: n,
                found: linking.rows().max(linking.cols()),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if linking[(i, j)] != linking[(j, i)] {
                    return Err(SurgeryError::AsymmetricInput(j + 1, i + 1));
                }
            }
            if (tb[i] + rot[i]).is_even() {
                return Err(SurgeryError::ParityViolation {
                    component: i + 1,
                    tb: tb[i],
                    rot: rot[i],
                });
            }
        }
        let mut linking = linking;
        for i in 0..n {
            linking[(i, i)] = BigInt::zero();
        }
        Ok(Self {
            tb,
            rot,
            linking,
            contact: vec![-1; n],
        })
    }

    /// Diagram from a list of `(i, j, lk)` entries, 0-based, unlisted pairs 0.
    pub fn from_pairs(
        tb: Vec<i64>,
        rot: Vec<i64>,
        pairs: &[(usize, usize, i64)],
    ) -> Result<Self, SurgeryError> {
        let n = tb.len();
        let mut m = IntMatrix::zeros(n, n);
        for &(i, j, lk) in pairs {
            if i >= n {
                return Err(SurgeryError::ComponentOutOfRange(i + 1));
            }
            if j >= n {
                return Err(SurgeryError::ComponentOutOfRange(j + 1));
            }
            m[(i, j)] = lk.into();
            m[(j, i)] = lk.into();
        }
        Self::new(tb, rot, m)
    }

    pub fn empty() -> Self {
        Self {
            tb: vec![],
            rot: vec![],
            linking: IntMatrix::zeros(0, 0),
            contact: vec![],
        }
    }

    /// Linear chain with `lk(K_i, K_{i+1}) = 1`.
    pub fn chain(tb: Vec<i64>, rot: Vec<i64>) -> Result<Self, SurgeryError> {
        let pairs: Vec<_> = (1..tb.len()).map(|i| (i - 1, i, 1)).collect();
        Self::from_pairs(tb, rot, &pairs)
    }

    /// Sets per-component contact surgery coefficients (`-1` or `+1`).
    pub fn with_contact_coefficients(
        mut self,
        coefficients: Vec<i64>,
    ) -> Result<Self, SurgeryError> {
        if coefficients.len() != self.len() {
            return Err(SurgeryError::LengthMismatch {
                what: "contact coefficients",
                expected: self.len(),
                found: coefficients.len(),
            });
        }
        if let Some(&c) = coefficients.iter().find(|&&c| c != 1 && c != -1) {
            return Err(SurgeryError::BadContactCoefficient(c));
        }
        self.contact = coefficients;
        Ok(self)
    }

    /// Block-diagonal union: the boundary is the connected sum.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        Self {
            tb: [self.tb.clone(), other.tb.clone()].concat(),
            rot: [self.rot.clone(), other.rot.clone()].concat(),
            linking: self.linking.direct_sum(&other.linking),
            contact: [self.contact.clone(), other.contact.clone()].concat(),
        }
    }

    pub fn len(&self) -> usize {
        self.tb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tb.is_empty()
    }

    pub fn tb(&self) -> &[i64] {
        &self.tb
    }

    pub fn rot(&self) -> &[i64] {
        &self.rot
    }

    pub fn contact_coefficients(&self) -> &[i64] {
        &self.contact
    }

    pub fn linking(&self, i: usize, j: usize) -> &BigInt {
        &self.linking[(i, j)]
    }

    pub fn is_legendrian_surgery(&self) -> bool {
        self.contact.iter().all(|&c| c == -1)
    }

    /// Smooth framings `tb + c` where `c` is the contact coefficient.
    pub fn framings(&self) -> Vec<i64> {
        self.tb
            .iter()
            .zip(&self.contact)
            .map(|(t, c)| t + c)
            .collect()
    }

    /// Intersection form of the trace of the surgery.
    pub fn linking_matrix(&self) -> IntMatrix {
        let mut q = self.linking.clone();
        for (i, a) in self.framings().into_iter().enumerate() {
            q[(i, i)] = a.into();
        }
        q
    }

    fn rot_vector(&self) -> Vec<BigInt> {
        self.rot.iter().map(|&r| r.into()).collect()
    }

    fn require_legendrian(&self) -> Result<(), SurgeryError> {
        if self.is_legendrian_surgery() {
            Ok(())
        } else {
            Err(SurgeryError::NotLegendrianSurgery)
        }
    }

    pub fn signature(&self) -> i64 {
        linalg::signature(&self.linking_matrix())
    }

    /// `c₁²` of the Stein filling, when `c₁` restricts to a torsion class.
    pub fn c1_squared(&self) -> Result<BigRational, SurgeryError> {
        self.require_legendrian()?;
        let r = self.rot_vector();
        let z = linalg::solve_rational(&self.linking_matrix(), &r)
            .ok_or(SurgeryError::ChernClassNotTorsion)?;
        Ok(r.iter()
            .zip(&z)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum())
    }

    /// The three-dimensional invariant `d₃`.
    pub fn d3_invariant(&self) -> Result<BigRational, SurgeryError> {
        let c1sq = self.c1_squared()?;
        let rest = BigInt::from(3 * self.signature() + 2 * self.len() as i64);
        Ok((c1sq - BigRational::from_integer(rest)) / BigRational::from_integer(4.into()))
    }

    /// `c₁(ξ)` as a class in `H_1` of the surgered manifold.
    pub fn c1_class(&self) -> Result<H1Class, SurgeryError> {
        self.require_legendrian()?;
        Ok(H1Class::new(self.rot_vector(), self.linking_matrix()))
    }

    /// Whether `a_i ≡ lk(K_i, L')` (mod 2) for every component, where the
    /// framing counts as self-linking.
    pub fn is_characteristic(&self, sub: &CharacteristicSublink) -> bool {
        let q = self.linking_matrix();
        sub.members.iter().all(|&m| m < self.len())
            && (0..self.len()).all(|i| {
                let lk: BigInt = sub.members.iter().map(|&j| &q[(i, j)]).sum();
                (&q[(i, i)] - lk).is_even()
            })
    }

    /// All characteristic sublinks, one per spin structure.
    pub fn characteristic_sublinks(&self) -> Vec<CharacteristicSublink> {
        let q = self.linking_matrix();
        let mut out: Vec<_> = linalg::solve_mod2(&q, &q.main_diagonal())
            .into_iter()
            .map(|x| CharacteristicSublink::new((0..x.len()).filter(|&i| x[i]).collect()))
            .collect();
        out.sort();
        out
    }

    /// `Γ` of the spin structure given by a characteristic sublink.
    pub fn gamma_invariant(&self, sub: &CharacteristicSublink) -> Result<H1Class, SurgeryError> {
        self.require_legendrian()?;
        if !self.is_characteristic(sub) {
            return Err(SurgeryError::NotCharacteristic(sub.clone()));
        }
        let q = self.linking_matrix();
        let coefficients = (0..self.len())
            .map(|i| {
                let lk: BigInt = sub.members.iter().map(|&j| &q[(i, j)]).sum();
                let twice = BigInt::from(self.rot[i]) + lk;
                debug_assert!(twice.is_even());
                twice / 2
            })
            .collect();
        Ok(H1Class::new(coefficients, q))
    }
}

/// A class in `H_1(M) = ℤ^n / Q ℤ^n`, written over the meridians `μ_i`.
#[derive(Clone, Debug)]
pub struct H1Class {
    coefficients: Vec<BigInt>,
    modulus: IntMatrix,
}

impl H1Class {
    pub fn new(coefficients: Vec<BigInt>, modulus: IntMatrix) -> Self {
        assert!(modulus.is_square() && modulus.rows() == coefficients.len());
        Self {
            coefficients,
            modulus,
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn modulus(&self) -> &IntMatrix {
        &self.modulus
    }

    /// The ambient group `coker Q`.
    pub fn group(&self) -> FinAbGroup {
        cokernel_group(&self.modulus.transpose())
    }

    /// Coordinates matching [`H1Class::group`]: free coordinates first, then
    /// one residue per nontrivial invariant factor.
    pub fn canonical(&self) -> Vec<BigInt> {
        let s = smith_normal_form(&self.modulus);
        let y = s.u.mul_vec(&self.coefficients);
        let d = s.d.main_diagonal();
        let rank = s.rank();
        let mut free: Vec<BigInt> = y[rank..].to_vec();
        let torsion = (0..rank)
            .filter(|&i| d[i] > BigInt::from(1))
            .map(|i| y[i].mod_floor(&d[i]));
        free.extend(torsion);
        free
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    /// Whether two classes over the same modulus are equal.
    pub fn same_class(&self, other: &H1Class) -> bool {
        assert_eq!(
            self.modulus, other.modulus,
            "classes live in different groups"
        );
        let diff = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a - b)
            .collect();
        H1Class::new(diff, self.modulus.clone()).is_zero()
    }

    /// Whether `n` times the class is zero.
    pub fn is_torsion_of(&self, n: i64) -> bool {
        let scaled = self.coefficients.iter().map(|c| c * n).collect();
        H1Class::new(scaled, self.modulus.clone()).is_zero()
    }
}

impl PartialEq for H1Class {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.same_class(other)
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        write!(f, "(")?;
        for (i, c) in canon.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ") in {}", self.group())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unknot(tb: i64, rot: i64) -> SurgeryDiagram {
        SurgeryDiagram::new(vec![tb], vec![rot], IntMatrix::zeros(1, 1)).unwrap()
    }

    #[test]
    fn linking_matrices() {
        assert_eq!(
            unknot(-1, 0).linking_matrix(),
            IntMatrix::from_rows(1, &[[-2]])
        );
        assert_eq!(
            unknot(-2, 1).linking_matrix(),
            IntMatrix::from_rows(1, &[[-3]])
        );
        let chain = SurgeryDiagram::chain(vec![-1, -1], vec![0, 0]).unwrap();
        assert_eq!(
            chain.linking_matrix(),
            IntMatrix::from_rows(2, &[[-2, 1], [1, -2]])
        );
    }

    #[test]
    fn input_validation() {
        let m = IntMatrix::from_rows(2, &[[7, 1], [2, 7]]);
        assert_eq!(
            SurgeryDiagram::new(vec![-1, -1], vec![0, 0], m),
            Err(SurgeryError::AsymmetricInput(1, 2))
        );
        assert!(matches!(
            SurgeryDiagram::new(vec![-1], vec![1], IntMatrix::zeros(1, 1)),
            Err(SurgeryError::ParityViolation { component: 1, .. })
        ));
        assert!(matches!(
            SurgeryDiagram::new(vec![-1], vec![], IntMatrix::zeros(1, 1)),
            Err(SurgeryError::LengthMismatch { .. })
        ));
        let d = unknot(-1, 0);
        assert_eq!(
            d.clone().with_contact_coefficients(vec![2]),
            Err(SurgeryError::BadContactCoefficient(2))
        );
    }

    #[test]
    fn d3_values() {
        assert_eq!(SurgeryDiagram::empty().d3_invariant(), Ok(q(0, 1)));
        assert_eq!(unknot(-1, 0).d3_invariant(), Ok(q(1, 4)));
        // c1² = -1/3, σ = -1: (-1/3 + 3 - 2)/4 = 1/6
        assert_eq!(unknot(-2, 1).d3_invariant(), Ok(q(1, 6)));
        assert_eq!(unknot(-2, -1).d3_invariant(), Ok(q(1, 6)));
        let d = SurgeryDiagram::chain(vec![-1, -2], vec![0, 1]).unwrap();
        let two = d.disjoint_union(&d);
        assert_eq!(
            two.d3_invariant().unwrap(),
            d.d3_invariant().unwrap() * q(2, 1)
        );
    }

    #[test]
    fn non_torsion_c1() {
        // tb = 1 gives framing 0: S¹×S², c1 = rot ≠ 0 is not torsion
        let d = unknot(1, 2);
        assert_eq!(d.d3_invariant(), Err(SurgeryError::ChernClassNotTorsion));
        assert!(unknot(1, 0).d3_invariant().is_ok());
    }

    #[test]
    fn plus_one_surgery_is_refused() {
        let d = unknot(-1, 0).with_contact_coefficients(vec![1]).unwrap();
        assert_eq!(d.linking_matrix(), IntMatrix::from_rows(1, &[[0]]));
        assert_eq!(d.d3_invariant(), Err(SurgeryError::NotLegendrianSurgery));
        assert_eq!(
            d.c1_class().unwrap_err(),
            SurgeryError::NotLegendrianSurgery
        );
        assert!(!d.characteristic_sublinks().is_empty());
    }

    #[test]
    fn c1_classes() {
        let l31 = unknot(-2, 1).c1_class().unwrap();
        assert_eq!(l31.group(), FinAbGroup::cyclic(3));
        assert!(!l31.is_zero());
        assert!(l31.is_torsion_of(3));
        assert_eq!(l31.to_string(), "(1) in Z/3");
        let minus = unknot(-2, -1).c1_class().unwrap();
        assert_eq!(minus.canonical(), vec![BigInt::from(2)]);
        assert!(unknot(-1, 0).c1_class().unwrap().is_zero());
        let chain = SurgeryDiagram::chain(vec![-1, -1, -3], vec![0, 0, 0]).unwrap();
        assert!(chain.c1_class().unwrap().is_zero());
    }

    #[test]
    fn characteristic_sublink_examples() {
        assert_eq!(
            unknot(-1, 0).characteristic_sublinks(),
            vec![
                CharacteristicSublink::new(vec![]),
                CharacteristicSublink::new(vec![0])
            ]
        );
        assert_eq!(
            unknot(-2, 1).characteristic_sublinks(),
            vec![CharacteristicSublink::new(vec![0])]
        );
        assert_eq!(
            SurgeryDiagram::empty().characteristic_sublinks(),
            vec![CharacteristicSublink::default()]
        );
    }

    #[test]
    fn gamma_examples() {
        let d = unknot(-2, 1);
        let g = d
            .gamma_invariant(&CharacteristicSublink::new(vec![0]))
            .unwrap();
        assert_eq!(g.coefficients(), [BigInt::from(-1)]);
        assert_eq!(g.canonical(), [BigInt::from(2)]);
        assert_eq!(
            d.gamma_invariant(&CharacteristicSublink::default()),
            Err(SurgeryError::NotCharacteristic(
                CharacteristicSublink::default()
            ))
        );
        for p in [2i64, 4, 6] {
            let lens = unknot(1 - p, 0);
            let g = lens
                .gamma_invariant(&CharacteristicSublink::default())
                .unwrap();
            assert!(g.is_zero());
            assert_eq!(g.group(), FinAbGroup::cyclic(p as u64));
        }
    }

    #[test]
    fn parallel_unknots() {
        for p in [2usize, 4, 6] {
            let m = p - 1;
            let pairs: Vec<_> = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j, -1)))
                .collect();
            let d = SurgeryDiagram::from_pairs(vec![-1; m], vec![0; m], &pairs).unwrap();
            assert_eq!(d.linking_matrix().det().abs(), BigInt::from(p));
            let empty = CharacteristicSublink::default();
            assert!(d.is_characteristic(&empty));
            assert!(d.gamma_invariant(&empty).unwrap().is_zero());
        }
    }

    #[test]
    fn class_display_orders_free_first() {
        let m = IntMatrix::from_rows(2, &[[0, 0], [0, 3]]);
        let c = H1Class::new(vec![5.into(), 4.into()], m);
        assert_eq!(c.group().to_string(), "Z + Z/3");
        assert_eq!(c.canonical().len(), 2);
        assert!(!c.is_zero());
    }
}
