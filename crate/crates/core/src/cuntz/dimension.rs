use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{CellSet, FacePoset};

/// A value in `N ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Finite(usize),
    Inf,
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(n) => Some(n),
            Dim::Inf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dim::Finite(_))
    }
}

impl From<usize> for Dim {
    fn from(n: usize) -> Self {
        Dim::Finite(n)
    }
}

impl Add for Dim {
    type Output = Dim;
    fn add(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::Inf,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n as u64),
            Dim::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct DimVisitor;
        impl Visitor<'_> for DimVisitor {
            type Value = Dim;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Dim, E> {
                Ok(Dim::Finite(v as usize))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Dim, E> {
                usize::try_from(v).map(Dim::Finite).map_err(|_| E::custom("negative dimension"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Dim, E> {
                match v {
                    "inf" | "∞" => Ok(Dim::Inf),
                    _ => Err(E::custom(format!("unknown dimension {v:?}"))),
                }
            }
        }
        d.deserialize_any(DimVisitor)
    }
}

/// A rank function on the cells of a domain.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DimensionFunction(BTreeMap<usize, Dim>);

impl DimensionFunction {
    pub fn new(values: BTreeMap<usize, Dim>) -> Self {
        DimensionFunction(values)
    }

    pub fn constant(domain: &CellSet, value: Dim) -> Self {
        DimensionFunction(domain.iter().map(|c| (c, value)).collect())
    }

    /// `value` on `set`, `base` elsewhere in `domain`.
    pub fn step(domain: &CellSet, set: &CellSet, value: Dim, base: Dim) -> Self {
        DimensionFunction(domain.iter().map(|c| (c, if set.contains(c) { value } else { base })).collect())
    }

    pub fn from_fn(domain: &CellSet, f: impl Fn(usize) -> Dim) -> Self {
        DimensionFunction(domain.iter().map(|c| (c, f(c))).collect())
    }

    pub fn get(&self, cell: usize) -> Option<Dim> {
        self.0.get(&cell).copied()
    }

    pub fn values(&self) -> &BTreeMap<usize, Dim> {
        &self.0
    }

    pub fn domain(&self) -> CellSet {
        self.0.keys().copied().collect()
    }

    /// `r^{-1}{v}`.
    pub fn level(&self, v: Dim) -> CellSet {
        self.0.iter().filter(|(_, &d)| d == v).map(|(&c, _)| c).collect()
    }

    /// `R_{>=v}`.
    pub fn at_least(&self, v: Dim) -> CellSet {
        self.0.iter().filter(|(_, &d)| d >= v).map(|(&c, _)| c).collect()
    }

    /// Distinct finite values, ascending.
    pub fn finite_values(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.values().filter_map(|d| d.finite()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_bounded(&self) -> bool {
        self.0.values().all(|d| d.is_finite())
    }

    pub fn restrict(&self, set: &CellSet) -> Self {
        DimensionFunction(self.0.iter().filter(|(c, _)| set.contains(**c)).map(|(&c, &d)| (c, d)).collect())
    }

    /// Pointwise `self <= other`; the first violating cell otherwise.
    pub fn first_exceeding(&self, other: &DimensionFunction) -> Option<usize> {
        self.0.iter().find(|(c, &d)| other.get(**c).is_none_or(|e| d > e)).map(|(&c, _)| c)
    }

    pub fn pointwise_sum(&self, other: &DimensionFunction) -> Self {
        DimensionFunction(self.0.iter().map(|(&c, &d)| (c, d + other.get(c).unwrap_or(Dim::Finite(0)))).collect())
    }
}

/// Lower semicontinuity: `r` does not decrease from a face to a coface.
pub fn lsc_check(x: &FacePoset, r: &DimensionFunction) -> bool {
    first_lsc_violation(x, r).is_none()
}

/// A face/coface pair `(σ, τ)` in the domain with `r(σ) > r(τ)`.
pub fn first_lsc_violation(x: &FacePoset, r: &DimensionFunction) -> Option<(usize, usize)> {
    for (&c, &d) in r.values() {
        for &up in x.cofaces(c) {
            if let Some(e) = r.get(up) {
                if d > e {
                    return Some((c, up));
                }
            }
        }
    }
    None
}

/// Largest `c` such that distinct finite values differ by at least `c`;
/// `Inf` when there are fewer than two finite values.
pub fn gaps(r: &DimensionFunction) -> Dim {
    let v = r.finite_values();
    v.windows(2).map(|w| w[1] - w[0]).min().map(Dim::Finite).unwrap_or(Dim::Inf)
}

/// `2 * gap >= bound`, with an infinite gap meeting every bound.
pub(crate) fn gap_meets(gap: Dim, twice_bound: usize) -> bool {
    match gap {
        Dim::Inf => true,
        Dim::Finite(g) => 2 * g >= twice_bound,
    }
}
