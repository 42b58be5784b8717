use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bundles::{
    embedding_threshold, restrict_bundle, stratum_embeds, stratum_iso, Answer, BundleClass, CLASSIFIED_DIM,
};
use crate::complex::FacePoset;
use crate::error::{Error, Result};

use super::dimension::gap_meets;
use super::{first_lsc_violation, gaps, multiple, same_domain, CuntzClass, Dim, DimensionFunction};

/// The criterion a decision rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Rule {
    /// Pointwise rank gap of at least `⌈(dim - 1)/2⌉`; sufficient only.
    GapEmbedding,
    /// Rank functions ordered and stratum overlaps embed.
    StratumEmbedding,
    /// Equal rank functions and isomorphic strata.
    StratumIsomorphism,
    /// Cuntz comparison, which on a finite complex agrees with embedding.
    CuntzComparison,
    /// Isomorphism after adding `⌈dim/2⌉` copies.
    StabilizedIsomorphism,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::GapEmbedding => "gap embedding criterion",
            Rule::StratumEmbedding => "stratum embedding criterion",
            Rule::StratumIsomorphism => "stratum isomorphism criterion",
            Rule::CuntzComparison => "Cuntz comparison via strata",
            Rule::StabilizedIsomorphism => "stabilized isomorphism",
        })
    }
}

/// Where a negative answer was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Witness {
    /// A cell where the rank functions are out of order.
    Cell { cell: Vec<usize>, left: Dim, right: Dim },
    /// Overlap of the `i`-stratum of the left class with the `j`-stratum of
    /// the right class.
    Stratum { i: usize, j: usize, reason: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Cell { cell, left, right } => write!(f, "cell {cell:?}: rank {left} vs {right}"),
            Witness::Stratum { i, j, reason } if i == j => write!(f, "stratum i={i} {reason}"),
            Witness::Stratum { i, j, reason } => write!(f, "strata i={i}, j={j} {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Decision {
    pub answer: Answer,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Decision {
    fn yes(rule: Rule) -> Self {
        Decision { answer: Answer::Yes, rule, witness: None }
    }

    fn negative(answer: Answer, rule: Rule, witness: Witness) -> Self {
        Decision { answer, rule, witness: Some(witness) }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.answer, self.rule)?;
        if let Some(w) = &self.witness {
            write!(f, ", {w}")?;
        }
        Ok(())
    }
}

fn cell_witness(a: &CuntzClass, b: &CuntzClass, c: usize) -> Witness {
    Witness::Cell {
        cell: a.complex.cell(c).to_vec(),
        left: a.r.get(c).unwrap(),
        right: b.r.get(c).unwrap_or(Dim::Finite(0)),
    }
}

/// Sufficient criterion: `r_b >= r_a + ⌈(dim - 1)/2⌉` everywhere, with
/// `∞ >= ∞` allowed.
pub fn embeds_by_gap(a: &CuntzClass, b: &CuntzClass) -> Result<Decision> {
    same_domain(a, b)?;
    let shift = Dim::Finite(embedding_threshold(a.dim()));
    for (&c, &ra) in a.r.values() {
        let rb = b.r.get(c).expect("same domain");
        if rb < ra + shift {
            return Ok(Decision::negative(Answer::Insufficient, Rule::GapEmbedding, cell_witness(a, b, c)));
        }
    }
    Ok(Decision::yes(Rule::GapEmbedding))
}

/// `dim <= 3`, or both rank functions have gaps of at least `dim / 2`.
fn require_decidable(a: &CuntzClass, b: &CuntzClass) -> Result<()> {
    same_domain(a, b)?;
    let d = a.dim();
    if d <= CLASSIFIED_DIM {
        return Ok(());
    }
    let (ga, gb) = (gaps(&a.r), gaps(&b.r));
    if gap_meets(ga, d) && gap_meets(gb, d) {
        Ok(())
    } else {
        Err(Error::HypothesisUnmet(format!(
            "dim X <= 3 or both rank functions with gaps of at least dim X / 2 (dim X = {d}, gaps {ga} and {gb})"
        )))
    }
}

fn overlaps(a: &CuntzClass, b: &CuntzClass) -> Vec<(usize, usize, BundleClass, BundleClass)> {
    let mut out = Vec::new();
    for (&i, rho) in &a.strata {
        for (&j, sigma) in &b.strata {
            let o = rho.base().intersection(sigma.base());
            if !o.is_empty() {
                out.push((i, j, rho.clone(), sigma.clone()));
            }
        }
    }
    out
}

fn embedding_with(a: &CuntzClass, b: &CuntzClass, rule: Rule) -> Result<Decision> {
    require_decidable(a, b)?;
    if let Some(c) = a.r.first_exceeding(&b.r) {
        return Ok(Decision::negative(Answer::No, rule, cell_witness(a, b, c)));
    }
    for (i, j, rho, sigma) in overlaps(a, b) {
        let o = rho.base().intersection(sigma.base());
        let (p, q) = (restrict_bundle(&rho, &o)?, restrict_bundle(&sigma, &o)?);
        if stratum_embeds(&p, &q)? != Answer::Yes {
            let reason = if i == j { "Chern mismatch".to_string() } else { "no embedding".to_string() };
            return Ok(Decision::negative(Answer::No, rule, Witness::Stratum { i, j, reason }));
        }
    }
    Ok(Decision::yes(rule))
}

/// Complete embedding decision under the dimension or gap hypothesis.
pub fn decide_embedding(a: &CuntzClass, b: &CuntzClass) -> Result<Decision> {
    embedding_with(a, b, Rule::StratumEmbedding)
}

/// Cuntz comparison. On a finite complex every set is compact, so this
/// coincides with [`decide_embedding`].
pub fn cuntz_leq(a: &CuntzClass, b: &CuntzClass) -> Result<Decision> {
    embedding_with(a, b, Rule::CuntzComparison)
}

/// Complete isomorphism decision under the dimension or gap hypothesis.
pub fn decide_iso(a: &CuntzClass, b: &CuntzClass) -> Result<Decision> {
    require_decidable(a, b)?;
    iso_strata(a, b, Rule::StratumIsomorphism)
}

fn iso_strata(a: &CuntzClass, b: &CuntzClass, rule: Rule) -> Result<Decision> {
    if let Some(c) = a.r.first_exceeding(&b.r).or_else(|| b.r.first_exceeding(&a.r)) {
        return Ok(Decision::negative(Answer::No, rule, cell_witness(a, b, c)));
    }
    for (&i, rho) in &a.strata {
        if !stratum_iso(rho, &b.strata[&i])? {
            return Ok(Decision::negative(
                Answer::No,
                rule,
                Witness::Stratum { i, j: i, reason: "Chern mismatch".into() },
            ));
        }
    }
    Ok(Decision::yes(rule))
}

/// Packages `(r, strata)` after checking lower semicontinuity and the gap
/// hypothesis `dim <= 3` or gaps of at least `(dim - 1)/2`.
pub fn attain_data(
    x: &Arc<FacePoset>,
    r: DimensionFunction,
    strata: BTreeMap<usize, BundleClass>,
) -> Result<CuntzClass> {
    if let Some((a, b)) = first_lsc_violation(x, &r) {
        return Err(Error::InvalidClass(format!(
            "rank function is not lower semicontinuous: {:?} -> {:?}",
            x.cell(a),
            x.cell(b)
        )));
    }
    let d = x.dim_of(&r.domain());
    let g = gaps(&r);
    if d > CLASSIFIED_DIM && !gap_meets(g, d - 1) {
        return Err(Error::HypothesisUnmet(format!("gaps of at least (dim X - 1)/2 (dim X = {d}, gaps {g})")));
    }
    CuntzClass::new(x, r, strata)
}

/// Adds `⌈dim/2⌉` copies of each class and decides isomorphism. Requires
/// equal rank functions and isomorphic strata, under which the answer is
/// always yes.
pub fn stabilized_iso_check(a: &CuntzClass, b: &CuntzClass) -> Result<Decision> {
    same_domain(a, b)?;
    let pre = iso_strata(a, b, Rule::StabilizedIsomorphism)
        .map_err(|e| Error::HypothesisUnmet(format!("strata must be comparable: {e}")))?;
    if pre.answer != Answer::Yes {
        return Err(Error::HypothesisUnmet(format!(
            "equal rank functions and isomorphic strata ({})",
            pre.witness.unwrap()
        )));
    }
    let k = a.dim().div_ceil(2).max(1);
    let (ka, kb) = (multiple(a, k)?, multiple(b, k)?);
    let mut d = decide_iso(&ka, &kb)?;
    d.rule = Rule::StabilizedIsomorphism;
    Ok(d)
}
