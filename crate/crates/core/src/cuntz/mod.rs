//! The ordered semigroup of pairs `(r, (ρ_i))`: a lower semicontinuous
//! rank function together with a bundle class on each finite level set.
//!
//! For bases of dimension at most three this is a complete invariant of
//! countably generated Hilbert modules, with order and addition computed
//! stratum by stratum.

mod decide;
mod dimension;
mod towers;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use decide::{
    attain_data, cuntz_leq, decide_embedding, decide_iso, embeds_by_gap, stabilized_iso_check, Decision, Rule, Witness,
};
pub use dimension::{first_lsc_violation, gaps, lsc_check, Dim, DimensionFunction};
pub use towers::{compare_on_tower, telescope_report, IsoVerdict, TelescopeReport, TowerComparison};

use crate::bundles::{dsum, iso_eq, restrict_bundle, restrict_to, BundleClass};
use crate::cohomology::{cohomology_of, glue};
use crate::complex::{CellSet, FacePoset};
use crate::error::{Error, Result};

/// An element `(r, (ρ_i))` over an order-convex domain of a complex.
#[derive(Clone, PartialEq, Eq)]
pub struct CuntzClass {
    complex: Arc<FacePoset>,
    domain: CellSet,
    r: DimensionFunction,
    strata: BTreeMap<usize, BundleClass>,
}

impl std::fmt::Debug for CuntzClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CuntzClass").field("r", &self.r).field("strata", &self.strata).finish()
    }
}

impl CuntzClass {
    /// Validates and packages the data. The domain is the set on which `r`
    /// is defined.
    pub fn new(x: &Arc<FacePoset>, r: DimensionFunction, strata: BTreeMap<usize, BundleClass>) -> Result<Self> {
        let domain = r.domain();
        if domain.iter().any(|c| c >= x.num_cells()) {
            return Err(Error::InvalidClass("rank function names cells outside the complex".into()));
        }
        x.require_locally_closed(&domain)?;
        if let Some((a, b)) = first_lsc_violation(x, &r) {
            return Err(Error::InvalidClass(format!(
                "rank function is not lower semicontinuous: {:?} -> {:?}",
                x.cell(a),
                x.cell(b)
            )));
        }
        let values = r.finite_values();
        if strata.keys().copied().collect::<Vec<_>>() != values {
            return Err(Error::InvalidClass(format!(
                "strata at {:?} but finite ranks {:?}",
                strata.keys().collect::<Vec<_>>(),
                values
            )));
        }
        for (&i, class) in &strata {
            if class.rank != i {
                return Err(Error::InvalidClass(format!("stratum {i} carries a rank {} class", class.rank)));
            }
            if **class.complex() != **x || *class.base() != r.level(Dim::Finite(i)) {
                return Err(Error::InvalidClass(format!("stratum {i} class does not live on r^-1({i})")));
            }
        }
        Ok(CuntzClass { complex: Arc::clone(x), domain, r, strata })
    }

    /// `r` with the trivial bundle on every finite stratum.
    pub fn with_trivial_strata(x: &Arc<FacePoset>, r: DimensionFunction) -> Result<Self> {
        let mut strata = BTreeMap::new();
        for i in r.finite_values() {
            let level = r.level(Dim::Finite(i));
            x.require_locally_closed(&level)?;
            strata.insert(i, BundleClass::trivial(Arc::new(cohomology_of(x, &level, 2)?), i)?);
        }
        CuntzClass::new(x, r, strata)
    }

    pub fn zero(x: &Arc<FacePoset>, domain: &CellSet) -> Result<Self> {
        CuntzClass::with_trivial_strata(x, DimensionFunction::constant(domain, Dim::Finite(0)))
    }

    /// A single bundle class viewed as a constant-rank element.
    pub fn from_bundle(class: &BundleClass) -> Result<Self> {
        let r = DimensionFunction::constant(class.base(), Dim::Finite(class.rank));
        CuntzClass::new(class.complex(), r, [(class.rank, class.clone())].into_iter().collect())
    }

    /// The class of `ℓ₂(U)` for an up-set `U` of the domain: `∞` on `U`,
    /// zero elsewhere.
    pub fn l2(x: &Arc<FacePoset>, domain: &CellSet, u: &CellSet) -> Result<Self> {
        CuntzClass::with_trivial_strata(x, DimensionFunction::step(domain, u, Dim::Inf, Dim::Finite(0)))
    }

    pub fn complex(&self) -> &Arc<FacePoset> {
        &self.complex
    }

    pub fn domain(&self) -> &CellSet {
        &self.domain
    }

    pub fn r(&self) -> &DimensionFunction {
        &self.r
    }

    pub fn strata(&self) -> &BTreeMap<usize, BundleClass> {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> Option<&BundleClass> {
        self.strata.get(&i)
    }

    /// Covering dimension of the domain.
    pub fn dim(&self) -> usize {
        self.complex.dim_of(&self.domain)
    }
}

pub(crate) fn same_domain(a: &CuntzClass, b: &CuntzClass) -> Result<()> {
    if a.domain != b.domain || a.complex != b.complex {
        return Err(Error::BaseMismatch("classes live on different domains".into()));
    }
    Ok(())
}

/// The order: `r <= r'` pointwise, and equal ranks carry isomorphic classes
/// where they meet.
pub fn leq(a: &CuntzClass, b: &CuntzClass) -> Result<bool> {
    same_domain(a, b)?;
    let d = a.dim();
    if d > crate::bundles::CLASSIFIED_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    if a.r.first_exceeding(&b.r).is_some() {
        return Ok(false);
    }
    for (&i, rho) in &a.strata {
        let Some(sigma) = b.strata.get(&i) else { continue };
        let overlap = rho.base().intersection(sigma.base());
        if overlap.is_empty() {
            continue;
        }
        if !iso_eq(&restrict_bundle(rho, &overlap)?, &restrict_bundle(sigma, &overlap)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sum: `r + r'`, with the class on each new stratum assembled from the
/// Whitney sums on the pieces `r^-1{j} ∩ r'^-1{i-j}`.
pub fn add(a: &CuntzClass, b: &CuntzClass) -> Result<CuntzClass> {
    same_domain(a, b)?;
    let x = &a.complex;
    let r = a.r.pointwise_sum(&b.r);
    let mut strata = BTreeMap::new();
    for i in r.finite_values() {
        let level = r.level(Dim::Finite(i));
        let h2 = Arc::new(cohomology_of(x, &level, 2)?);
        let mut pieces = Vec::new();
        for (&j, rho) in a.strata.range(..=i) {
            let Some(sigma) = b.strata.get(&(i - j)) else { continue };
            let piece = rho.base().intersection(sigma.base());
            if piece.is_empty() {
                continue;
            }
            pieces.push(dsum(&restrict_bundle(rho, &piece)?, &restrict_bundle(sigma, &piece)?)?);
        }
        let class = if let [only] = pieces.as_slice() {
            restrict_to(only, Arc::clone(&h2))?
        } else {
            let parts: Vec<_> = pieces.iter().map(|p| (p.h2().as_ref(), p.c1.clone())).collect();
            let c1 = glue(&h2, &parts)?;
            BundleClass::new(h2, i, c1)?
        };
        strata.insert(i, class);
    }
    CuntzClass::new(x, r, strata)
}

/// `k`-fold sum of `a` with itself (`k >= 1`).
pub fn multiple(a: &CuntzClass, k: usize) -> Result<CuntzClass> {
    let mut acc = a.clone();
    for _ in 1..k.max(1) {
        acc = add(&acc, a)?;
    }
    Ok(acc)
}

pub fn restrict_class(a: &CuntzClass, s: &CellSet) -> Result<CuntzClass> {
    if !s.is_subset(&a.domain) {
        return Err(Error::NotNested("restriction set is not inside the domain".into()));
    }
    a.complex.require_locally_closed(s)?;
    let r = a.r.restrict(s);
    let mut strata = BTreeMap::new();
    for (&i, rho) in &a.strata {
        let part = rho.base().intersection(s);
        if !part.is_empty() {
            strata.insert(i, restrict_bundle(rho, &part)?);
        }
    }
    CuntzClass::new(&a.complex, r, strata)
}

/// Supremum of an increasing sequence whose rank functions are constant in
/// the tail except on `unbounded`, where the supremum is `∞`.
pub fn sup_sequence(chain: &[CuntzClass], unbounded: &CellSet) -> Result<CuntzClass> {
    let Some(last) = chain.last() else {
        return Err(Error::NotAChain("empty sequence".into()));
    };
    for (k, w) in chain.windows(2).enumerate() {
        if !leq(&w[0], &w[1])? {
            return Err(Error::NotAChain(format!("element {k} is not below element {}", k + 1)));
        }
    }
    let prev = chain.len().checked_sub(2).map(|k| &chain[k]);
    let x = &last.complex;
    let mut values = BTreeMap::new();
    for (&c, &d) in last.r.values() {
        if unbounded.contains(c) {
            values.insert(c, Dim::Inf);
            continue;
        }
        if let Some(p) = prev {
            if p.r.get(c) != Some(d) {
                return Err(Error::NoFiniteHorizon(format!("rank at {:?} still changes in the last step", x.cell(c))));
            }
        }
        values.insert(c, d);
    }
    let r = DimensionFunction::new(values);
    let mut strata = BTreeMap::new();
    for i in r.finite_values() {
        let level = r.level(Dim::Finite(i));
        let class = restrict_bundle(&last.strata[&i], &level)?;
        if let Some(p) = prev {
            let before = restrict_bundle(&p.strata[&i], &level)?;
            if before != class {
                return Err(Error::NoFiniteHorizon(format!("stratum {i} class still changes in the last step")));
            }
        }
        strata.insert(i, class);
    }
    CuntzClass::new(x, r, strata)
}
