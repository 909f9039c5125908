//! Three-valued verdicts on contact embeddability and braidability.
//!
//! A vanishing first Chern class is necessary for a codimension-two contact
//! embedding into `(S⁵, ξ_std)`, but not known to be sufficient, so no
//! verdict derived from `c₁` alone is ever [`Status::Guaranteed`].

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cover::{CoverError, LabeledBraid, Site};
use crate::surgery::H1Class;

/// Citation tags carried by verdicts.
pub mod tag {
    pub const THM_OBSTRUCT: &str = "thm:obstruct";
    pub const CYCLIC_BRAID: &str = "cyclicbraid";
    pub const NO_BRAID: &str = "nobraid";
    pub const HLM: &str = "HLM";
    pub const INVERTIBLE_ATTESTED: &str = "invertible-locus:attested";
    pub const ORIENTATIONS_EXHAUSTIVE: &str = "orientations:exhaustive";
    pub const TRIVIAL_NB: &str = "trivialnb";
    pub const IMMERSE: &str = "immerse";
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("n must be at least 1, got {0}")]
    BadN(i64),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Obstructed,
    NecessaryConditionsPass,
    Guaranteed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Obstructed => "Obstructed",
            Status::NecessaryConditionsPass => "NecessaryConditionsPass",
            Status::Guaranteed => "Guaranteed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Machine-readable citation tags, see [`tag`].
    pub reasons: Vec<String>,
    /// Free-form remarks for human output.
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(status: Status, reasons: &[&str]) -> Self {
        Self {
            status,
            reasons: reasons.iter().map(|s| s.to_string()).collect(),
            notes: Vec::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn cites(&self, tag: &str) -> bool {
        self.reasons.iter().any(|r| r == tag)
    }
}

/// Whether a contact 3-manifold with this `c₁` could embed in `(S⁵, ξ_std)`.
pub fn embeddability_verdict(c1: &H1Class) -> Verdict {
    if c1.is_zero() {
        Verdict::new(Status::NecessaryConditionsPass, &[tag::THM_OBSTRUCT])
            .note("c1 = 0; sufficiency is open")
    } else {
        Verdict::new(Status::Obstructed, &[tag::THM_OBSTRUCT]).note(format!("c1 = {c1} is nonzero"))
    }
}

/// Whether the branched cover described by `lb` can be realized as a braid
/// about `S³`.
///
/// `c1_for_orientations` holds the first Chern class of the induced contact
/// structure for each transverse orientation of the branch locus the caller
/// has checked. The list counts as exhaustive when it has at least
/// `2^components` entries, or with one entry per orientation class when the
/// caller attests the locus is invertible.
pub fn braidability_verdict(
    lb: &LabeledBraid,
    c1_for_orientations: Option<&[H1Class]>,
    invertible_locus: bool,
) -> Result<Verdict, CoverError> {
    let report = lb.classify_cover()?;
    if report.cyclic {
        return Ok(Verdict::new(Status::Guaranteed, &[tag::CYCLIC_BRAID]));
    }
    if let Some(c1s) = c1_for_orientations {
        let exhaustive = u32::try_from(report.components_of_branch_locus)
            .ok()
            .and_then(|c| 1usize.checked_shl(c))
            .is_some_and(|need| c1s.len() >= need);
        if !c1s.is_empty() && c1s.iter().all(|c| !c.is_zero()) && (invertible_locus || exhaustive) {
            let mut v = Verdict::new(Status::Obstructed, &[tag::THM_OBSTRUCT, tag::NO_BRAID]);
            if invertible_locus {
                v.reasons.push(tag::INVERTIBLE_ATTESTED.into());
            }
            if exhaustive {
                v.reasons.push(tag::ORIENTATIONS_EXHAUSTIVE.into());
            }
            return Ok(v.note("braided implies contact-embeddable implies c1 = 0"));
        }
    }
    Ok(Verdict::new(Status::NecessaryConditionsPass, &[tag::HLM])
        .note("the manifold is braided by some simple 3-fold cover, possibly not this one"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Transverse stabilization of the given branch component (0-based).
    Stabilize {
        component: usize,
    },
    Connect(Site),
}

impl Move {
    pub fn d3_change(self) -> i64 {
        match self {
            Move::Stabilize { .. } => 1,
            Move::Connect(_) => 0,
        }
    }

    pub fn apply(self, lb: &LabeledBraid) -> Result<LabeledBraid, CoverError> {
        match self {
            Move::Stabilize { component } => lb.stabilize_branch_locus(component),
            Move::Connect(site) => lb.connect_move(site),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves }
    }

    pub fn then(&self, other: &MoveTrace) -> MoveTrace {
        MoveTrace::new([self.moves.clone(), other.moves.clone()].concat())
    }

    /// Applies the moves in order and returns every intermediate datum,
    /// starting with `lb` itself.
    pub fn apply(&self, lb: &LabeledBraid) -> Result<Vec<LabeledBraid>, CoverError> {
        let mut out = vec![lb.clone()];
        for m in &self.moves {
            let next = m.apply(out.last().expect("nonempty"))?;
            debug_assert!(next.is_valid());
            out.push(next);
        }
        Ok(out)
    }
}

/// Change in `d₃` of the induced contact structure along a trace.
pub fn d3_delta(trace: &MoveTrace) -> i64 {
    trace.moves.iter().map(|m| m.d3_change()).sum()
}

/// Coefficients of `(1 + a²)^{n+1}` in `ℤ[a]/(a^{n+1})`, indexed by the
/// power of `a²`.
pub fn cpn_pontryagin_class(n: i64) -> Result<Vec<BigInt>, ObstructionError> {
    if n < 1 {
        return Err(ObstructionError::BadN(n));
    }
    let n = n as usize;
    let mut binom = BigInt::from(1);
    let mut out = Vec::new();
    for j in 0..=n / 2 {
        out.push(binom.clone());
        binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
    }
    Ok(out)
}

/// Whether `ℂPⁿ` immerses in codimension two, read off the first
/// Pontryagin class.
pub fn cpn_immersion_obstruction(n: i64) -> Result<Verdict, ObstructionError> {
    let p = cpn_pontryagin_class(n)?;
    Ok(match p.get(1) {
        Some(c) => Verdict::new(Status::Obstructed, &[tag::TRIVIAL_NB, tag::IMMERSE])
            .note(format!("coefficient of a^2 is {c}")),
        None => Verdict::new(Status::NecessaryConditionsPass, &[tag::TRIVIAL_NB])
            .note("a^2 = 0 in this degree range"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{IntMatrix, Permutation};
    use crate::braid::BraidWord;

    fn class(c: i64, p: i64) -> H1Class {
        H1Class::new(vec![c.into()], IntMatrix::from_rows(1, &[[p]]))
    }

    #[test]
    fn embeddability() {
        let v = embeddability_verdict(&class(0, 3));
        assert_eq!(v.status, Status::NecessaryConditionsPass);
        assert!(v.cites(tag::THM_OBSTRUCT));
        assert_eq!(
            embeddability_verdict(&class(1, 3)).status,
            Status::Obstructed
        );
        // (n-1) g in Z/(n+1), n = 3
        assert_eq!(
            embeddability_verdict(&class(2, 4)).status,
            Status::Obstructed
        );
        assert_eq!(
            embeddability_verdict(&class(4, 4)).status,
            Status::NecessaryConditionsPass
        );
    }

    #[test]
    fn braidability() {
        let k2 = |word: Vec<i32>| {
            LabeledBraid::new(
                BraidWord::new(2, word).unwrap(),
                2,
                vec![Permutation::parse("(1 2)", 2).unwrap(); 2],
            )
            .unwrap()
        };
        let v = braidability_verdict(&k2(vec![1, 1, 1]), None, false).unwrap();
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.cites(tag::CYCLIC_BRAID));

        let l31 = crate::cover::tests::l31();
        let v = braidability_verdict(&l31, None, false).unwrap();
        assert_eq!(v.status, Status::NecessaryConditionsPass);
        assert!(v.cites(tag::HLM));

        let (knot, _) = l31.connect_all().unwrap();
        let c1s = [class(1, -3), class(-1, -3)];
        let v = braidability_verdict(&knot, Some(&c1s), true).unwrap();
        assert_eq!(v.status, Status::Obstructed);
        assert!(v.cites(tag::THM_OBSTRUCT) && v.cites(tag::INVERTIBLE_ATTESTED));
        // two orientations of a knot are exhaustive without the flag
        let v = braidability_verdict(&knot, Some(&c1s), false).unwrap();
        assert!(v.cites(tag::ORIENTATIONS_EXHAUSTIVE));
        // a single orientation needs the flag
        let v = braidability_verdict(&knot, Some(&c1s[..1]), false).unwrap();
        assert_eq!(v.status, Status::NecessaryConditionsPass);
        // a vanishing class defeats the argument
        let mixed = [class(1, -3), class(0, -3)];
        let v = braidability_verdict(&knot, Some(&mixed), true).unwrap();
        assert_eq!(v.status, Status::NecessaryConditionsPass);

        let bad = LabeledBraid::new(
            BraidWord::new(2, vec![1]).unwrap(),
            3,
            vec![
                Permutation::parse("(1 2)", 3).unwrap(),
                Permutation::parse("(1 3)", 3).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            braidability_verdict(&bad, None, false),
            Err(CoverError::InvalidLabeling)
        );
    }

    #[test]
    fn d3_bookkeeping() {
        let stab = Move::Stabilize { component: 0 };
        let conn = Move::Connect(Site::bottom(2));
        assert_eq!(d3_delta(&MoveTrace::new(vec![stab, stab])), 2);
        assert_eq!(d3_delta(&MoveTrace::new(vec![conn; 3])), 0);
        assert_eq!(d3_delta(&MoveTrace::default()), 0);
        let a = MoveTrace::new(vec![stab, conn]);
        let b = MoveTrace::new(vec![stab]);
        assert_eq!(d3_delta(&a.then(&b)), d3_delta(&a) + d3_delta(&b));
    }

    #[test]
    fn trace_application() {
        let lb = crate::cover::tests::l31();
        let trace = MoveTrace::new(vec![
            Move::Connect(Site::bottom(2)),
            Move::Stabilize { component: 0 },
        ]);
        let steps = trace.apply(&lb).unwrap();
        assert_eq!(steps.len(), 3);
        assert!(steps.iter().all(LabeledBraid::is_valid));
        let bad = MoveTrace::new(vec![Move::Connect(Site::bottom(1))]);
        assert!(bad.apply(&lb).is_err());
    }

    #[test]
    fn cpn() {
        assert_eq!(cpn_immersion_obstruction(0), Err(ObstructionError::BadN(0)));
        let v = cpn_immersion_obstruction(1).unwrap();
        assert_eq!(v.status, Status::NecessaryConditionsPass);
        for (n, c) in [(2, 3), (4, 5), (7, 8)] {
            let v = cpn_immersion_obstruction(n).unwrap();
            assert_eq!(v.status, Status::Obstructed);
            assert_eq!(cpn_pontryagin_class(n).unwrap()[1], BigInt::from(c));
        }
        assert_eq!(
            cpn_pontryagin_class(4).unwrap(),
            vec![BigInt::from(1), BigInt::from(5), BigInt::from(10)]
        );
    }
}
