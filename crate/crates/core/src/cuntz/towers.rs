use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bundles::Answer;
use crate::cohomology::{cohomology_of, lim_and_lim1, restriction_matrix, Continuation, Tower, TowerAnalysis};
use crate::complex::telescope;
use crate::error::{Error, Result};
use crate::linalg::AbelianGroup;
use crate::Int;

use super::{cuntz_leq, decide_iso, CuntzClass, DimensionFunction};

/// What stagewise data says about isomorphism over the infinite union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "verdict")]
pub enum IsoVerdict {
    /// Some finite stage already tells the classes apart.
    NotIsomorphic { stage: usize },
    /// Stages agree; `lim1_obstruction` records a nonzero `lim^1` of the
    /// `H^1` tower, which hides classes that no stage can see.
    Undecided { lim1_obstruction: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TowerComparison {
    pub cuntz_equivalent: bool,
    pub isomorphism: IsoVerdict,
}

/// Compares two classes given by their restrictions to the stages of an
/// exhaustion. Cuntz comparison is stagewise; isomorphism is never
/// asserted, only refuted at a stage or reported as undecided.
pub fn compare_on_tower(a: &[CuntzClass], b: &[CuntzClass], h1: &TowerAnalysis) -> Result<TowerComparison> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::BaseMismatch(format!("{} stages against {}", a.len(), b.len())));
    }
    let mut cuntz_equivalent = true;
    let mut distinct = None;
    for (k, (p, q)) in a.iter().zip(b).enumerate() {
        let both = cuntz_leq(p, q)?.answer == Answer::Yes && cuntz_leq(q, p)?.answer == Answer::Yes;
        cuntz_equivalent &= both;
        if distinct.is_none() && decide_iso(p, q)?.answer == Answer::No {
            distinct = Some(k);
        }
    }
    let isomorphism = match distinct {
        Some(stage) => IsoVerdict::NotIsomorphic { stage },
        None => IsoVerdict::Undecided { lim1_obstruction: h1.lim1_vanishes == Some(false) },
    };
    Ok(TowerComparison { cuntz_equivalent, isomorphism })
}

/// Cohomology of the truncations of the degree-two telescope and what it
/// implies for line bundles over the infinite telescope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TelescopeReport {
    pub stages: usize,
    pub h1: Vec<AbelianGroup>,
    pub h2: Vec<AbelianGroup>,
    /// Matrices of `H^1(K_{j+1}) -> H^1(K_j)`, row-major.
    pub h1_maps: Vec<Vec<Vec<Int>>>,
    pub h1_tower: TowerAnalysis,
    /// Number of Cuntz classes of rank-one bundles when every stage has
    /// `H^2 = 0`.
    pub line_bundle_cuntz_classes: Option<usize>,
    /// Comparison of two rank-one classes that agree on every stage.
    pub line_bundles: TowerComparison,
}

pub fn telescope_report(n: usize) -> Result<TelescopeReport> {
    let t = telescope(n)?;
    let x = Arc::new(t.complex.clone());
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for s in &t.stages {
        h1.push(cohomology_of(&x, s, 1)?);
        h2.push(cohomology_of(&x, s, 2)?.group);
    }
    let mut maps = Vec::new();
    for j in 0..n {
        maps.push(restriction_matrix(&h1[j + 1], &h1[j])?);
    }
    let groups: Vec<AbelianGroup> = h1.iter().map(|h| h.group.clone()).collect();
    let tower = Tower::new(groups.clone(), maps.clone(), Continuation::RepeatLast)?;
    let h1_tower = lim_and_lim1(&tower)?;

    let lines: Vec<CuntzClass> = t
        .stages
        .iter()
        .map(|s| CuntzClass::with_trivial_strata(&x, DimensionFunction::constant(s, 1.into())))
        .collect::<Result<_>>()?;
    let line_bundles = compare_on_tower(&lines, &lines, &h1_tower)?;
    Ok(TelescopeReport {
        stages: n,
        h1: groups,
        line_bundle_cuntz_classes: h2.iter().all(|g| g.is_zero()).then_some(1),
        h2,
        h1_maps: maps.iter().map(|m| m.to_rows()).collect(),
        h1_tower,
        line_bundles,
    })
}
