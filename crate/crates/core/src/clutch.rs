//! Two-stratum modules on a suspension `SX`: rank `n` on the closed lower
//! cone, rank `m` on the open upper cone, glued by a clutching map on `X`.
//!
//! Over a homology 3-sphere with `(n, m) = (1, 2)` the clutching classes
//! are labelled by an integer, the degree of the induced self-map of
//! `S^3`. Other cases are carried along but not classified.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{check_homology_sphere, degree};
use crate::complex::{circle, FacePoset, SimplicialMap};
use crate::cuntz::{CuntzClass, Dim, DimensionFunction};
use crate::error::{Error, Result};
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClutchLabel {
    Integer(Int),
    Unclassified,
}

impl fmt::Display for ClutchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClutchLabel::Integer(d) => write!(f, "{d}"),
            ClutchLabel::Unclassified => f.write_str("unclassified"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ClutchAnswer {
    Yes,
    No,
    Unclassified,
}

impl fmt::Display for ClutchAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClutchAnswer::Yes => "yes",
            ClutchAnswer::No => "no",
            ClutchAnswer::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClutchClass {
    base: Arc<FacePoset>,
    n_low: usize,
    m_high: usize,
    label: ClutchLabel,
}

/// Whether `(base, n, m)` is the case with integer labels.
pub fn is_labelled_case(base: &FacePoset, n_low: usize, m_high: usize) -> bool {
    (n_low, m_high) == (1, 2) && check_homology_sphere(base).ok() == Some(3)
}

impl ClutchClass {
    pub fn new(base: &Arc<FacePoset>, n_low: usize, m_high: usize, label: ClutchLabel) -> Result<Self> {
        if m_high < n_low {
            return Err(Error::InvalidClass(format!("upper rank {m_high} is below lower rank {n_low}")));
        }
        if matches!(label, ClutchLabel::Integer(_)) && !is_labelled_case(base, n_low, m_high) {
            return Err(Error::InvalidClass("integer labels need a homology 3-sphere base with ranks (1, 2)".into()));
        }
        Ok(ClutchClass { base: Arc::clone(base), n_low, m_high, label })
    }

    /// Labels the class by the degree of a self-map of a 3-sphere.
    pub fn from_map(base: &Arc<FacePoset>, n_low: usize, m_high: usize, f: &SimplicialMap) -> Result<Self> {
        ClutchClass::new(base, n_low, m_high, ClutchLabel::Integer(label_from_map(f)?))
    }

    pub fn base(&self) -> &Arc<FacePoset> {
        &self.base
    }

    pub fn n_low(&self) -> usize {
        self.n_low
    }

    pub fn m_high(&self) -> usize {
        self.m_high
    }

    pub fn label(&self) -> ClutchLabel {
        self.label
    }
}

fn comparable(a: &ClutchClass, b: &ClutchClass) -> Result<()> {
    if a.base != b.base {
        return Err(Error::BaseMismatch("clutching classes over different bases".into()));
    }
    if (a.n_low, a.m_high) != (b.n_low, b.m_high) {
        return Err(Error::BaseMismatch(format!(
            "ranks ({}, {}) against ({}, {})",
            a.n_low, a.m_high, b.n_low, b.m_high
        )));
    }
    Ok(())
}

pub fn clutch_iso(a: &ClutchClass, b: &ClutchClass) -> Result<ClutchAnswer> {
    comparable(a, b)?;
    Ok(match (a.label, b.label) {
        (ClutchLabel::Integer(p), ClutchLabel::Integer(q)) => {
            if p == q {
                ClutchAnswer::Yes
            } else {
                ClutchAnswer::No
            }
        }
        _ => ClutchAnswer::Unclassified,
    })
}

/// The classes on the closed lower and open upper halves of `SX`. Both
/// halves are cones, so the bundles there are trivial and the pair does
/// not depend on the label.
pub fn hemisphere_restrictions(a: &ClutchClass) -> Result<(CuntzClass, CuntzClass)> {
    let s = a.base.suspend();
    let (lower, upper) = (s.lower_closed(), s.upper_open());
    let x = Arc::new(s.complex);
    let low = CuntzClass::with_trivial_strata(&x, DimensionFunction::constant(&lower, Dim::Finite(a.n_low)))?;
    let high = CuntzClass::with_trivial_strata(&x, DimensionFunction::constant(&upper, Dim::Finite(a.m_high)))?;
    Ok((low, high))
}

/// Degree of a simplicial map between homology 3-spheres.
pub fn label_from_map(f: &SimplicialMap) -> Result<Int> {
    for (side, x) in [("source", &f.source), ("target", &f.target)] {
        let n = check_homology_sphere(x)?;
        if n != 3 {
            return Err(Error::NotASphere(format!("{side} is a homology {n}-sphere, not a 3-sphere")));
        }
    }
    degree(f)
}

/// Cuntz equality of labelled classes, which coincides with equality of
/// labels.
pub fn cuntz_equal_clutch(a: &ClutchClass, b: &ClutchClass) -> Result<bool> {
    comparable(a, b)?;
    match (a.label, b.label) {
        (ClutchLabel::Integer(p), ClutchLabel::Integer(q)) => Ok(p == q),
        _ => Err(Error::HypothesisUnmet("Cuntz equality of clutching classes needs integer labels".into())),
    }
}

/// A simplicial map of circles of degree `d`, for `|d| <= 2`: onto the
/// 3-cycle from itself, or from the 6-cycle when `|d| = 2`.
pub fn circle_map(d: Int) -> Result<SimplicialMap> {
    let c3 = circle(3)?;
    let (source, table): (FacePoset, Vec<usize>) = match d {
        0 => (c3.clone(), vec![0, 0, 0]),
        1 => (c3.clone(), vec![0, 1, 2]),
        -1 => (c3.clone(), vec![0, 2, 1]),
        2 => (circle(6)?, (0..6).map(|a| a % 3).collect()),
        -2 => (circle(6)?, (0..6).map(|a| (6 - a) % 3).collect()),
        _ => return Err(Error::OutOfRange(format!("circle maps are built for degrees -2..2, not {d}"))),
    };
    let vertex_map: BTreeMap<usize, usize> = table.into_iter().enumerate().collect();
    SimplicialMap::new(source, c3, vertex_map)
}

/// Double suspension of [`circle_map`]: a map of 3-spheres of degree `d`.
pub fn sphere3_map(d: Int) -> Result<SimplicialMap> {
    Ok(circle_map(d)?.suspend().suspend())
}
