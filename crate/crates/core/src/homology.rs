//! First homology of branched covers.
//!
//! The complement of the closed braid has the presentation
//! `⟨x_1, …, x_n | x_j⁻¹ β_*(x_j)⟩`. The monodromy picks out the index-`k`
//! subgroup stabilizing sheet 1, whose presentation comes from
//! Reidemeister–Schreier rewriting. Filling the branch locus kills the lifts
//! of the appropriate powers of meridians, and the abelianization of what is
//! left is `H_1` of the branched cover.

use std::collections::{HashMap, VecDeque};

use crate::algebra::{cokernel_group, orbits, FinAbGroup, FreeWord, IntMatrix, Permutation};
use crate::cover::{CoverError, LabeledBraid};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_count: usize,
    relators: Vec<FreeWord>,
}

impl GroupPresentation {
    /// # Panics
    /// If a relator uses a generator beyond `generator_count`.
    pub fn new(generator_count: usize, relators: Vec<FreeWord>) -> Self {
        for r in &relators {
            assert!(
                r.max_generator() <= generator_count,
                "relator {r} uses a generator beyond {generator_count}"
            );
        }
        Self {
            generator_count,
            relators,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.generator_count))
            .collect();
        IntMatrix::from_rows(self.generator_count, &rows)
    }

    pub fn abelianization(&self) -> FinAbGroup {
        cokernel_group(&self.relation_matrix())
    }
}

/// Action of the free group on sheets with a Schreier transversal and the
/// numbering of Schreier generators.
///
/// Sheets are 0-based here; sheet 0 is the base sheet.
#[derive(Clone, Debug)]
pub struct CosetTable {
    fold: usize,
    action: Vec<Permutation>,
    inverse_action: Vec<Permutation>,
    transversal: Vec<FreeWord>,
    // Schreier generator index (1-based) of the edge (sheet, generator); 0 for tree edges
    edge_index: Vec<Vec<u32>>,
    schreier_count: usize,
}

impl CosetTable {
    pub fn new(fold: usize, action: Vec<Permutation>) -> Result<Self, CoverError> {
        for (g, p) in action.iter().enumerate() {
            if p.degree() != fold {
                return Err(CoverError::DegreeMismatch {
                    strand: g + 1,
                    found: p.degree(),
                    fold,
                });
            }
        }
        let n = action.len();
        if orbits(fold, &action).len() != 1 {
            return Err(CoverError::NotTransitive);
        }
        let inverse_action: Vec<_> = action.iter().map(Permutation::inverse).collect();
        let mut transversal: Vec<Option<FreeWord>> = vec![None; fold];
        let mut tree = vec![vec![false; n]; fold];
        transversal[0] = Some(FreeWord::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let ts = transversal[s].clone().expect("queued sheets are reached");
            for g in 0..n {
                let t = action[g].image0(s);
                if transversal[t].is_none() {
                    let mut w = ts.clone();
                    w.push(g as i32 + 1);
                    transversal[t] = Some(w);
                    tree[s][g] = true;
                    queue.push_back(t);
                }
            }
            for g in 0..n {
                let t = inverse_action[g].image0(s);
                if transversal[t].is_none() {
                    let mut w = ts.clone();
                    w.push(-(g as i32 + 1));
                    transversal[t] = Some(w);
                    tree[t][g] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut edge_index = vec![vec![0u32; n]; fold];
        let mut next = 0u32;
        for s in 0..fold {
            for g in 0..n {
                if !tree[s][g] {
                    next += 1;
                    edge_index[s][g] = next;
                }
            }
        }
        Ok(Self {
            fold,
            action,
            inverse_action,
            transversal: transversal.into_iter().map(Option::unwrap).collect(),
            edge_index,
            schreier_count: next as usize,
        })
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn action(&self) -> &[Permutation] {
        &self.action
    }

    /// Schreier representative of each sheet.
    pub fn transversal(&self) -> &[FreeWord] {
        &self.transversal
    }

    pub fn schreier_generator_count(&self) -> usize {
        self.schreier_count
    }

    /// Sheet reached from `sheet` by reading `w`.
    pub fn act(&self, sheet: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(sheet, |s, &l| {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                self.action[g].image0(s)
            } else {
                self.inverse_action[g].image0(s)
            }
        })
    }

    /// Rewrites `t_sheet · w · t_end⁻¹` in the Schreier generators, where
    /// `end` is the sheet reached by `w`.
    pub fn rewrite(&self, sheet: usize, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::empty();
        let mut cur = sheet;
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                let e = self.edge_index[cur][g];
                if e != 0 {
                    out.push(e as i32);
                }
                cur = self.action[g].image0(cur);
            } else {
                cur = self.inverse_action[g].image0(cur);
                let e = self.edge_index[cur][g];
                if e != 0 {
                    out.push(-(e as i32));
                }
            }
        }
        out
    }
}

/// Presentation of the complement of the closed braid, with the monodromy of
/// each meridian generator.
pub fn complement_presentation(
    lb: &LabeledBraid,
) -> Result<(GroupPresentation, Vec<Permutation>), CoverError> {
    if !lb.is_valid() {
        return Err(CoverError::InvalidLabeling);
    }
    let n = lb.strands();
    let relators = lb
        .braid()
        .artin_images()
        .into_iter()
        .enumerate()
        .map(|(j, img)| &FreeWord::generator(j + 1).inverse() * &img)
        .collect();
    Ok((GroupPresentation::new(n, relators), lb.labels().to_vec()))
}

/// Reidemeister–Schreier presentation of the subgroup stabilizing the base
/// sheet under `monodromy`.
pub fn cover_presentation(
    pres: &GroupPresentation,
    monodromy: &[Permutation],
) -> Result<GroupPresentation, CoverError> {
    let table = table_for(pres, monodromy)?;
    Ok(lifted_relators(pres, &table))
}

fn table_for(
    pres: &GroupPresentation,
    monodromy: &[Permutation],
) -> Result<CosetTable, CoverError> {
    if monodromy.len() != pres.generator_count() {
        return Err(CoverError::MonodromyMismatch(format!(
            "{} generators but {} monodromy images",
            pres.generator_count(),
            monodromy.len()
        )));
    }
    let fold = monodromy.first().map_or(1, Permutation::degree);
    let table = CosetTable::new(fold, monodromy.to_vec())?;
    for r in pres.relators() {
        if (0..fold).any(|s| table.act(s, r) != s) {
            return Err(CoverError::MonodromyMismatch(format!(
                "relator {r} acts nontrivially"
            )));
        }
    }
    Ok(table)
}

fn lifted_relators(pres: &GroupPresentation, table: &CosetTable) -> GroupPresentation {
    let jobs: Vec<(usize, &FreeWord)> = pres
        .relators()
        .iter()
        .flat_map(|r| (0..table.fold()).map(move |s| (s, r)))
        .collect();
    let relators = par::map(&jobs, |&(s, r)| table.rewrite(s, r));
    GroupPresentation::new(table.schreier_generator_count(), relators)
}

/// Which sheet of a ramification cycle the filling relator is based at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FillingBase {
    #[default]
    SmallestSheet,
    LargestSheet,
}

/// Which strand of a branch component supplies its meridian.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MeridianChoice {
    #[default]
    LowestStrand,
    HighestStrand,
}

/// Alternative but equivalent choices in the homology computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct H1Options {
    /// Omit the last complement relator, which follows from the others.
    pub drop_redundant_relator: bool,
    pub filling_base: FillingBase,
    pub meridian: MeridianChoice,
}

/// `H_1` of the branched cover described by a valid, transitive datum.
pub fn branched_h1(lb: &LabeledBraid) -> Result<FinAbGroup, CoverError> {
    branched_h1_with(lb, H1Options::default())
}

pub fn branched_h1_with(lb: &LabeledBraid, opts: H1Options) -> Result<FinAbGroup, CoverError> {
    let (mut pres, monodromy) = complement_presentation(lb)?;
    if opts.drop_redundant_relator {
        pres.relators.pop();
    }
    let table = table_for(&pres, &monodromy)?;
    let mut lifted = lifted_relators(&pres, &table);
    for strands in lb.braid().closure_components() {
        let j = match opts.meridian {
            MeridianChoice::LowestStrand => strands[0],
            MeridianChoice::HighestStrand => *strands.last().expect("nonempty component"),
        };
        for cycle in monodromy[j - 1].cycles() {
            let s = match opts.filling_base {
                FillingBase::SmallestSheet => cycle[0],
                FillingBase::LargestSheet => *cycle.iter().max().expect("nonempty cycle"),
            } - 1;
            let power = FreeWord::generator(j).pow(cycle.len());
            lifted.relators.push(table.rewrite(s, &power));
        }
    }
    Ok(lifted.abelianization())
}

/// [`branched_h1`] over many data, in parallel under the `parallel` feature.
/// Output order matches input order.
pub fn branched_h1_batch(data: &[LabeledBraid]) -> Vec<Result<FinAbGroup, CoverError>> {
    par::map(data, branched_h1)
}

/// Memoizing wrapper for repeated queries on the same datum.
#[derive(Default)]
pub struct H1Cache {
    seen: HashMap<LabeledBraid, FinAbGroup>,
}

impl H1Cache {
    pub fn get(&mut self, lb: &LabeledBraid) -> Result<FinAbGroup, CoverError> {
        if let Some(g) = self.seen.get(lb) {
            return Ok(g.clone());
        }
        let g = branched_h1(lb)?;
        self.seen.insert(lb.clone(), g.clone());
        Ok(g)
    }
}
