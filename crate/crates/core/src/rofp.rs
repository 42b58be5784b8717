//! Rank-ordered families: covers by sets `A_i` carrying rank-`i` bundle
//! classes, their suprema, the eigenvalue construction and the shrinking
//! of open covers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bundles::{embeds_in, restrict_bundle, Answer, BundleClass};
use crate::cohomology::cohomology_of;
use crate::complex::{CellSet, FacePoset};
use crate::cuntz::{CuntzClass, Dim, DimensionFunction};
use crate::error::{Error, Result};
use crate::scalar::OrderedScalar;

/// One pair `(A_i, p_i)`. A missing class stands for the trivial bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEntry {
    pub rank: usize,
    pub cells: CellSet,
    pub class: Option<BundleClass>,
}

#[derive(Clone, Debug)]
pub struct RankOrderedFamily {
    pub complex: Arc<FacePoset>,
    pub entries: Vec<FamilyEntry>,
    /// Cells where the rank is meant to be infinite.
    pub infinite_tail: CellSet,
}

/// A failed condition, numbered as in the definition of a rank-ordered
/// family: 1 covering, 2 interiors, 3 countable generation, 4 constant
/// rank, 5 compatibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub condition: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}", self.condition)?;
        if let Some(i) = self.rank {
            write!(f, " at i={i}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub violations: Vec<Violation>,
    /// Conditions that hold automatically on a finite complex.
    pub vacuous: Vec<u8>,
}

impl FamilyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            f.write_str("valid")?;
        } else {
            let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join("; "))?;
        }
        for c in &self.vacuous {
            write!(f, " (condition {c} vacuous)")?;
        }
        Ok(())
    }
}

impl RankOrderedFamily {
    pub fn new(x: &Arc<FacePoset>, entries: Vec<FamilyEntry>, infinite_tail: CellSet) -> Self {
        let mut entries = entries;
        entries.sort_by_key(|e| e.rank);
        RankOrderedFamily { complex: Arc::clone(x), entries, infinite_tail }
    }

    /// Family with trivial classes on the given sets.
    pub fn trivial(x: &Arc<FacePoset>, sets: Vec<(usize, CellSet)>) -> Self {
        let entries = sets.into_iter().map(|(rank, cells)| FamilyEntry { rank, cells, class: None }).collect();
        RankOrderedFamily::new(x, entries, CellSet::new())
    }

    /// `⋃_{j >= i} A_j`.
    pub fn union_from(&self, i: usize) -> CellSet {
        self.entries.iter().filter(|e| e.rank >= i).fold(CellSet::new(), |acc, e| acc.union(&e.cells))
    }

    /// `⋃_{j >= i} int A_j`.
    pub fn interior_union_from(&self, i: usize) -> CellSet {
        self.entries
            .iter()
            .filter(|e| e.rank >= i)
            .fold(CellSet::new(), |acc, e| acc.union(&self.complex.interior(&e.cells)))
    }

    pub fn validate(&self) -> FamilyReport {
        let x = &self.complex;
        let mut violations = Vec::new();
        let mut push = |condition, rank, detail: String| violations.push(Violation { condition, rank, detail });

        for e in &self.entries {
            if e.cells.iter().any(|c| c >= x.num_cells()) {
                push(1, Some(e.rank), "set names cells outside the complex".into());
                return FamilyReport { violations, vacuous: vec![3] };
            }
        }
        let missing = x.all_cells().difference(&self.union_from(0));
        if !missing.is_empty() {
            push(1, None, format!("cells {:?} are not covered", x.cell_lists(&missing)));
        }
        for e in &self.entries {
            let (all, inner) = (self.union_from(e.rank), self.interior_union_from(e.rank));
            if all != inner {
                push(2, Some(e.rank), format!("cells {:?} are not interior", x.cell_lists(&all.difference(&inner))));
            }
        }
        if !x.is_open(&self.infinite_tail) {
            push(2, None, "infinite tail is not open".into());
        }
        for w in self.entries.windows(2) {
            if w[0].rank == w[1].rank {
                push(5, Some(w[0].rank), "rank appears twice".into());
            }
        }
        let mut misplaced = false;
        for e in &self.entries {
            if let Some(p) = &e.class {
                if p.rank != e.rank {
                    push(4, Some(e.rank), format!("class has rank {}", p.rank));
                    misplaced = true;
                } else if **p.complex() != **x || *p.base() != e.cells {
                    push(4, Some(e.rank), "class does not live on A_i".into());
                    misplaced = true;
                }
            }
        }
        if !misplaced {
            for (k, lo) in self.entries.iter().enumerate() {
                for hi in &self.entries[k + 1..] {
                    if let Some(detail) = self.incompatibility(lo, hi) {
                        push(5, Some(lo.rank), format!("against j={}: {detail}", hi.rank));
                    }
                }
            }
        }
        FamilyReport { violations, vacuous: vec![3] }
    }

    fn incompatibility(&self, lo: &FamilyEntry, hi: &FamilyEntry) -> Option<String> {
        let (Some(p), Some(q)) = (&lo.class, &hi.class) else { return None };
        let overlap = lo.cells.intersection(&hi.cells);
        if overlap.is_empty() || lo.rank == hi.rank {
            return None;
        }
        let check = || -> Result<Answer> { embeds_in(&restrict_bundle(p, &overlap)?, &restrict_bundle(q, &overlap)?) };
        match check() {
            Ok(Answer::Yes) => None,
            Ok(a) => Some(format!("lower class embeds: {a}")),
            Err(e) => Some(e.to_string()),
        }
    }

    /// The class of the supremum of the family: `r(σ) = max{i : σ ∈ A_i}`
    /// and the class of `p_i` on each level set.
    pub fn sup(&self) -> Result<CuntzClass> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidFamily(report.to_string()));
        }
        let x = &self.complex;
        let r = DimensionFunction::from_fn(&x.all_cells(), |c| {
            if self.infinite_tail.contains(c) {
                return Dim::Inf;
            }
            let top = self.entries.iter().filter(|e| e.cells.contains(c)).map(|e| e.rank).max();
            Dim::Finite(top.unwrap_or(0))
        });
        let mut strata = BTreeMap::new();
        for i in r.finite_values() {
            let level = r.level(Dim::Finite(i));
            let entry = self
                .entries
                .iter()
                .find(|e| e.rank == i)
                .ok_or_else(|| Error::Internal(format!("no entry at rank {i}")))?;
            let class = match &entry.class {
                Some(p) => restrict_bundle(p, &level)?,
                None => BundleClass::trivial(Arc::new(cohomology_of(x, &level, 2)?), i)?,
            };
            strata.insert(i, class);
        }
        CuntzClass::new(x, r, strata)
    }
}

pub fn validate(f: &RankOrderedFamily) -> FamilyReport {
    f.validate()
}

pub fn sup_family(f: &RankOrderedFamily) -> Result<CuntzClass> {
    f.sup()
}

/// Per-cell eigenvalue lists `σ_1 >= σ_2 >= ... >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueProfile<T: OrderedScalar> {
    pub values: BTreeMap<usize, Vec<T>>,
}

impl<T: OrderedScalar> EigenvalueProfile<T> {
    pub fn new(values: BTreeMap<usize, Vec<T>>) -> Result<Self> {
        for (&c, list) in &values {
            if list.iter().any(|s| *s < T::zero()) || list.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::OutOfRange(format!(
                    "eigenvalues at cell {c} are not nonincreasing and nonnegative"
                )));
            }
        }
        Ok(EigenvalueProfile { values })
    }

    /// `σ_i` at `cell`, counting from 1; zero past the end of the list.
    pub fn sigma(&self, cell: usize, i: usize) -> T {
        self.values.get(&cell).and_then(|l| l.get(i.wrapping_sub(1))).cloned().unwrap_or_else(T::zero)
    }

    pub fn rank(&self, cell: usize) -> usize {
        self.values.get(&cell).map_or(0, |l| l.iter().filter(|s| **s > T::zero()).count())
    }

    fn length(&self) -> usize {
        self.values.values().map(Vec::len).max().unwrap_or(0)
    }
}

/// Sets `A_i` and rank function produced from an eigenvalue profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueFamily {
    pub sets: Vec<(usize, CellSet)>,
    pub rank: DimensionFunction,
}

impl EigenvalueFamily {
    pub fn into_family(self, x: &Arc<FacePoset>) -> RankOrderedFamily {
        RankOrderedFamily::trivial(x, self.sets)
    }
}

/// `A_0 = X`, `A_i = {σ_i > σ_{i+1}}`; empty sets are dropped.
pub fn rof_from_eigenvalues<T: OrderedScalar>(
    x: &FacePoset,
    profile: &EigenvalueProfile<T>,
) -> Result<EigenvalueFamily> {
    let all = x.all_cells();
    if let Some(&c) = profile.values.keys().find(|&&c| c >= x.num_cells()) {
        return Err(Error::OutOfRange(format!("profile names cell {c} outside the complex")));
    }
    let mut sets = vec![(0, all.clone())];
    for i in 1..=profile.length() {
        let a: CellSet = all.iter().filter(|&c| profile.sigma(c, i) > profile.sigma(c, i + 1)).collect();
        if !a.is_empty() {
            sets.push((i, a));
        }
    }
    let rank = DimensionFunction::from_fn(&all, |c| Dim::Finite(profile.rank(c)));
    for &(i, _) in &sets {
        let union = sets.iter().filter(|(j, _)| *j >= i).fold(CellSet::new(), |acc, (_, a)| acc.union(a));
        if union != rank.at_least(Dim::Finite(i)) {
            return Err(Error::Internal(format!("sets from rank {i} up do not match the rank function")));
        }
        let inner = sets.iter().filter(|(j, _)| *j >= i).fold(CellSet::new(), |acc, (_, a)| acc.union(&x.interior(a)));
        if inner != union {
            return Err(Error::ProfileNotRealizable(format!(
                "cells {:?} of rank >= {i} are not interior",
                x.cell_lists(&union.difference(&inner))
            )));
        }
    }
    Ok(EigenvalueFamily { sets, rank })
}

/// The failures of `a` as a shrinking of the open cover `u`, as messages.
pub fn shrink_violations(x: &FacePoset, u: &[CellSet], a: &[CellSet]) -> Vec<String> {
    let mut out = Vec::new();
    if u.len() != a.len() {
        out.push(format!("{} sets for {} opens", a.len(), u.len()));
        return out;
    }
    let n = u.len();
    for i in 0..n {
        let r = union_from(u, i);
        if !a[i].is_subset(&u[i]) {
            out.push(format!("A_{i} is not inside U_{i}"));
        }
        if !relatively_closed(x, &a[i], &r) {
            out.push(format!("A_{i} is not closed in R_{i}"));
        }
        if union_from(a, i) != r {
            out.push(format!("sets from {i} up do not cover R_{i}"));
        }
        let inner = a[i..].iter().fold(CellSet::new(), |acc, s| acc.union(&x.interior(s)));
        if inner != r {
            out.push(format!("interiors from {i} up do not cover R_{i}"));
        }
    }
    out
}

fn union_from(sets: &[CellSet], i: usize) -> CellSet {
    sets[i..].iter().fold(CellSet::new(), |acc, s| acc.union(s))
}

/// Every face of a member that lies in `within` is a member.
pub fn relatively_closed(x: &FacePoset, a: &CellSet, within: &CellSet) -> bool {
    a.iter().all(|c| x.faces(c).iter().all(|&f| !within.contains(f) || a.contains(f)))
}

/// Shrinks open sets `U_0, U_1, ...` to sets `A_i ⊆ U_i` that are closed in
/// `R_i = ⋃_{j >= i} U_j` and whose unions and interior unions from `i` up
/// both equal `R_i`.
///
/// Starts from the largest closed candidates and removes cells greedily,
/// later sets first, higher-dimensional cells first and otherwise in
/// reverse lexicographic order, while the conditions hold. The result is
/// minimal: no set can lose a cell.
pub fn shrink_cover(x: &FacePoset, u: &[CellSet]) -> Result<Vec<CellSet>> {
    for (i, s) in u.iter().enumerate() {
        if let Some(c) = s.iter().find(|&c| c >= x.num_cells()) {
            return Err(Error::OutOfRange(format!("U_{i} names cell {c} outside the complex")));
        }
        if !x.is_open(s) {
            return Err(Error::CoverNotOpen(format!("U_{i} is not up-closed")));
        }
    }
    let mut a: Vec<CellSet> = (0..u.len())
        .map(|i| {
            let r = union_from(u, i);
            r.difference(&x.up_closure(&r.difference(&u[i])))
        })
        .collect();
    if !shrink_violations(x, u, &a).is_empty() {
        return Err(Error::NoShrinking("the largest closed candidates already fail to cover by interiors".into()));
    }
    for i in (0..a.len()).rev() {
        let r = union_from(u, i);
        let mut members: Vec<usize> = a[i].iter().rev().collect();
        members.sort_by_key(|&c| std::cmp::Reverse(x.cell_dim(c)));
        for c in members {
            if x.cofaces(c).iter().any(|&n| a[i].contains(n)) {
                continue;
            }
            a[i].remove(c);
            if !relatively_closed(x, &a[i], &r) || !shrink_violations(x, u, &a).is_empty() {
                a[i].insert(c);
            }
        }
    }
    Ok(a)
}
