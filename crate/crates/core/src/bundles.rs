//! Constant-rank vector bundles up to isomorphism, as `(rank, c1)`.
//!
//! Over a base of dimension at most three every bundle of rank `n` splits
//! as a trivial bundle plus a line bundle, and line bundles are classified
//! by their first Chern class, so the pair is a complete invariant there.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology_of, restriction_matrix, CohomologyGroup};
use crate::complex::{CellSet, FacePoset};
use crate::error::{Error, Result};
use crate::Int;

/// Dimension up to which `(rank, c1)` classifies bundles.
pub const CLASSIFIED_DIM: usize = 3;

/// Three-valued answer of the deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Answer {
    Yes,
    No,
    Insufficient,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Insufficient => "insufficient",
        })
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

/// Isomorphism class of a rank-`rank` bundle over `h2.base`, with first Chern
/// class `c1` in the coordinates of `h2`.
#[derive(Clone)]
pub struct BundleClass {
    pub rank: usize,
    pub c1: Vec<Int>,
    h2: Arc<CohomologyGroup>,
}

impl BundleClass {
    pub fn new(h2: Arc<CohomologyGroup>, rank: usize, c1: Vec<Int>) -> Result<Self> {
        if h2.degree != 2 {
            return Err(Error::InvalidClass(format!("Chern classes live in degree 2, not {}", h2.degree)));
        }
        if c1.len() != h2.group.len() {
            return Err(Error::InvalidClass(format!(
                "c1 has {} coordinates, H^2 = {} needs {}",
                c1.len(),
                h2.group,
                h2.group.len()
            )));
        }
        let c1 = h2.group.reduced(c1);
        if rank == 0 && c1.iter().any(|&c| c != 0) {
            return Err(Error::InvalidClass("the zero bundle has c1 = 0".into()));
        }
        Ok(BundleClass { rank, c1, h2 })
    }

    pub fn trivial(h2: Arc<CohomologyGroup>, rank: usize) -> Result<Self> {
        let c1 = h2.group.zero_element();
        BundleClass::new(h2, rank, c1)
    }

    /// Computes `H^2(base)` and builds the class.
    pub fn on(x: &Arc<FacePoset>, base: &CellSet, rank: usize, c1: Vec<Int>) -> Result<Self> {
        BundleClass::new(Arc::new(cohomology_of(x, base, 2)?), rank, c1)
    }

    pub fn base(&self) -> &CellSet {
        &self.h2.base
    }

    pub fn complex(&self) -> &Arc<FacePoset> {
        self.h2.complex()
    }

    pub fn h2(&self) -> &Arc<CohomologyGroup> {
        &self.h2
    }

    /// Covering dimension of the base.
    pub fn dim(&self) -> usize {
        self.complex().dim_of(self.base())
    }
}

impl PartialEq for BundleClass {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.c1 == other.c1 && *self.h2 == *other.h2
    }
}

impl Eq for BundleClass {}

impl fmt::Debug for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BundleClass(rank {}, c1 {:?} in {}, {} cells)", self.rank, self.c1, self.h2.group, self.base().len())
    }
}

fn same_base(a: &BundleClass, b: &BundleClass) -> Result<()> {
    if a.base() != b.base() || a.complex() != b.complex() {
        return Err(Error::BaseMismatch("bundle classes live on different bases".into()));
    }
    Ok(())
}

fn require_classified(a: &BundleClass) -> Result<()> {
    let d = a.dim();
    if d > CLASSIFIED_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    Ok(())
}

pub fn iso_eq(a: &BundleClass, b: &BundleClass) -> Result<bool> {
    same_base(a, b)?;
    require_classified(a)?;
    Ok(a.rank == b.rank && a.c1 == b.c1)
}

/// Whitney sum.
pub fn dsum(a: &BundleClass, b: &BundleClass) -> Result<BundleClass> {
    same_base(a, b)?;
    let c1 = a.h2.group.add(&a.c1, &b.c1);
    BundleClass::new(Arc::clone(&a.h2), a.rank + b.rank, c1)
}

/// Whether `a` is isomorphic to a subbundle of `b`.
///
/// A rank increase always admits an embedding in dimension at most three;
/// equal ranks need isomorphic bundles.
pub fn embeds_in(a: &BundleClass, b: &BundleClass) -> Result<Answer> {
    same_base(a, b)?;
    require_classified(a)?;
    Ok(match a.rank.cmp(&b.rank) {
        std::cmp::Ordering::Less => Answer::Yes,
        std::cmp::Ordering::Greater => Answer::No,
        std::cmp::Ordering::Equal => (a.c1 == b.c1).into(),
    })
}

/// Smallest rank increase that forces an embedding over a base of
/// dimension `d`: `⌈(d - 1) / 2⌉`.
pub fn embedding_threshold(d: usize) -> usize {
    d / 2
}

/// Embedding decision valid in any dimension: complete up to dimension
/// three, and above it limited to what the rank gap or `c1` settles.
pub fn stratum_embeds(a: &BundleClass, b: &BundleClass) -> Result<Answer> {
    same_base(a, b)?;
    let d = a.dim();
    if d <= CLASSIFIED_DIM {
        return embeds_in(a, b);
    }
    match a.rank.cmp(&b.rank) {
        std::cmp::Ordering::Greater => Ok(Answer::No),
        std::cmp::Ordering::Less if b.rank - a.rank >= embedding_threshold(d) => Ok(Answer::Yes),
        std::cmp::Ordering::Equal => stratum_iso(a, b).map(Answer::from),
        std::cmp::Ordering::Less => Err(Error::HypothesisUnmet(format!(
            "rank gap {} is below {} on a stratum of dimension {d}",
            b.rank - a.rank,
            embedding_threshold(d)
        ))),
    }
}

/// Isomorphism decision valid in any dimension: line bundles are always
/// classified by `c1`; higher ranks only up to dimension three.
pub fn stratum_iso(a: &BundleClass, b: &BundleClass) -> Result<bool> {
    same_base(a, b)?;
    if a.rank != b.rank || a.c1 != b.c1 {
        return Ok(false);
    }
    let d = a.dim();
    if d <= CLASSIFIED_DIM || a.rank <= 1 {
        Ok(true)
    } else {
        Err(Error::HypothesisUnmet(format!(
            "rank {} bundles on a stratum of dimension {d} are not classified by c1",
            a.rank
        )))
    }
}

/// Restriction to `target.base`, which must lie inside the base of `a`.
pub fn restrict_to(a: &BundleClass, target: Arc<CohomologyGroup>) -> Result<BundleClass> {
    if Arc::ptr_eq(&a.h2, &target) || *a.h2 == *target {
        return Ok(a.clone());
    }
    let m = restriction_matrix(&a.h2, &target)?;
    let c1 = m.mul_vec(&a.c1)?;
    BundleClass::new(target, a.rank, c1)
}

pub fn restrict_bundle(a: &BundleClass, sub: &CellSet) -> Result<BundleClass> {
    if sub == a.base() {
        return Ok(a.clone());
    }
    if !sub.is_subset(a.base()) {
        return Err(Error::NotNested("restriction set is not inside the base".into()));
    }
    restrict_to(a, Arc::new(cohomology_of(a.complex(), sub, 2)?))
}

/// Outcome of checking classes on a tower of nested bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChernThread {
    pub compatible: bool,
    /// The `c1` values stage by stage.
    pub thread: Vec<Vec<Int>>,
    /// First stage `i` whose class differs from the restriction of stage `i + 1`.
    pub first_incompatible: Option<usize>,
}

/// Checks that `stages[i + 1]` restricts to `stages[i]` for all `i`; the
/// bases must increase.
pub fn chern_sequence(stages: &[BundleClass]) -> Result<ChernThread> {
    let mut first_incompatible = None;
    for (i, w) in stages.windows(2).enumerate() {
        if w[0].rank != w[1].rank {
            return Err(Error::InvalidClass(format!(
                "rank {} at stage {i} but {} at stage {}",
                w[0].rank,
                w[1].rank,
                i + 1
            )));
        }
        if !w[0].base().is_subset(w[1].base()) {
            return Err(Error::NotNested(format!("stage {i} is not inside stage {}", i + 1)));
        }
        let down = restrict_to(&w[1], Arc::clone(&w[0].h2))?;
        if down.c1 != w[0].c1 && first_incompatible.is_none() {
            first_incompatible = Some(i);
        }
    }
    Ok(ChernThread {
        compatible: first_incompatible.is_none(),
        thread: stages.iter().map(|s| s.c1.clone()).collect(),
        first_incompatible,
    })
}
