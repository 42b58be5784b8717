//! Bounded integer functions on cells: the group generated by rank
//! functions, which receives the Cuntz semigroup after forgetting strata,
//! together with the decomposition of a rank function into nested up-sets.
//!
//! Rank functions and their negatives have order-convex level sets, but
//! sums of such elements need not: on a triangle `abc`, the indicator of
//! `{ab, abc}` minus the indicator of `{abc}` vanishes at `a` and `abc`
//! and not at `ab`. [`K0StarElement::first_bad_level`] reports this.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{CellSet, FacePoset};
use crate::cuntz::{first_lsc_violation, CuntzClass, Dim, DimensionFunction};
use crate::error::{Error, Result};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0StarElement {
    complex: Arc<FacePoset>,
    values: BTreeMap<usize, Int>,
}

impl K0StarElement {
    /// The keys of `values` form the domain.
    pub fn new(x: &Arc<FacePoset>, values: BTreeMap<usize, Int>) -> Result<Self> {
        if let Some(&c) = values.keys().find(|&&c| c >= x.num_cells()) {
            return Err(Error::OutOfRange(format!("cell {c} is outside the complex")));
        }
        Ok(K0StarElement { complex: Arc::clone(x), values })
    }

    /// Like [`K0StarElement::new`], additionally requiring order-convex
    /// level sets.
    pub fn convex(x: &Arc<FacePoset>, values: BTreeMap<usize, Int>) -> Result<Self> {
        let e = K0StarElement::new(x, values)?;
        if let Some(v) = e.first_bad_level() {
            return Err(Error::NotLocallyClosed(format!("level set f = {v} is not order-convex")));
        }
        Ok(e)
    }

    pub fn zero(x: &Arc<FacePoset>, domain: &CellSet) -> Self {
        K0StarElement { complex: Arc::clone(x), values: domain.iter().map(|c| (c, 0)).collect() }
    }

    /// Indicator function of `u` on `domain`.
    pub fn indicator(x: &Arc<FacePoset>, domain: &CellSet, u: &CellSet) -> Result<Self> {
        let values = domain.iter().map(|c| (c, Int::from(u.contains(c)))).collect();
        K0StarElement::new(x, values)
    }

    pub fn complex(&self) -> &Arc<FacePoset> {
        &self.complex
    }

    pub fn values(&self) -> &BTreeMap<usize, Int> {
        &self.values
    }

    pub fn get(&self, cell: usize) -> Option<Int> {
        self.values.get(&cell).copied()
    }

    pub fn domain(&self) -> CellSet {
        self.values.keys().copied().collect()
    }

    pub fn level(&self, v: Int) -> CellSet {
        self.values.iter().filter(|(_, &f)| f == v).map(|(&c, _)| c).collect()
    }

    pub fn has_convex_levels(&self) -> bool {
        self.first_bad_level().is_none()
    }

    /// Smallest value whose level set fails order-convexity.
    pub fn first_bad_level(&self) -> Option<Int> {
        let mut levels: Vec<Int> = self.values.values().copied().collect();
        levels.sort_unstable();
        levels.dedup();
        levels.into_iter().find(|&v| !self.complex.is_order_convex(&self.level(v)))
    }
}

fn same_domain(f: &K0StarElement, g: &K0StarElement) -> Result<()> {
    if f.complex != g.complex || f.values.keys().ne(g.values.keys()) {
        return Err(Error::BaseMismatch("elements live on different domains".into()));
    }
    Ok(())
}

pub fn k0_add(f: &K0StarElement, g: &K0StarElement) -> Result<K0StarElement> {
    same_domain(f, g)?;
    let values = f.values.iter().map(|(&c, &a)| (c, a + g.values[&c])).collect();
    Ok(K0StarElement { complex: Arc::clone(&f.complex), values })
}

pub fn k0_neg(f: &K0StarElement) -> K0StarElement {
    K0StarElement { complex: Arc::clone(&f.complex), values: f.values.iter().map(|(&c, &a)| (c, -a)).collect() }
}

/// The rank function of a class with finite ranks; strata are forgotten.
pub fn from_cuntz(a: &CuntzClass) -> Result<K0StarElement> {
    let mut values = BTreeMap::new();
    for (&c, &d) in a.r().values() {
        match d {
            Dim::Finite(n) => {
                values.insert(c, Int::try_from(n).map_err(|_| Error::OutOfRange(format!("rank {n}")))?);
            }
            Dim::Inf => {
                return Err(Error::NotFinitelyGenerated(format!("rank is infinite at {:?}", a.complex().cell(c))));
            }
        }
    }
    K0StarElement::convex(a.complex(), values)
        .map_err(|e| Error::Internal(format!("rank function has a bad level: {e}")))
}

/// `R_{>=1} ⊇ R_{>=2} ⊇ ...` for a bounded lower semicontinuous `r`.
pub fn elementary_normal_form(x: &FacePoset, r: &DimensionFunction) -> Result<Vec<CellSet>> {
    if let Some((a, b)) = first_lsc_violation(x, r) {
        return Err(Error::InvalidClass(format!("rank drops from {:?} to {:?}", x.cell(a), x.cell(b))));
    }
    if !r.is_bounded() {
        return Err(Error::NotFinitelyGenerated("rank function takes the value inf".into()));
    }
    let top = r.finite_values().last().copied().unwrap_or(0);
    let chain: Vec<CellSet> = (1..=top).map(|i| r.at_least(Dim::Finite(i))).collect();
    if reconstruct(&r.domain(), &chain) != *r {
        return Err(Error::Internal("normal form does not sum back to the rank function".into()));
    }
    Ok(chain)
}

/// `Σ χ_{U_k}` on `domain`.
pub fn reconstruct(domain: &CellSet, sets: &[CellSet]) -> DimensionFunction {
    DimensionFunction::from_fn(domain, |c| Dim::Finite(sets.iter().filter(|s| s.contains(c)).count()))
}
