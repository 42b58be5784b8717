use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, smith, solve, AbelianGroup, Track};
use crate::{Int, IntMatrix};

/// How a finite tower continues past its last stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Continuation {
    /// Nothing is known beyond the horizon.
    Unknown,
    /// The last group and the last connecting map repeat forever.
    RepeatLast,
}

/// Finite inverse system `G_0 <- G_1 <- ... <- G_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tower {
    pub groups: Vec<AbelianGroup>,
    /// `maps[i] : G_{i+1} -> G_i`, shaped `len(G_i) x len(G_{i+1})`.
    pub maps: Vec<IntMatrix>,
    pub continuation: Continuation,
}

impl Tower {
    pub fn new(groups: Vec<AbelianGroup>, maps: Vec<IntMatrix>, continuation: Continuation) -> Result<Self> {
        if groups.is_empty() || maps.len() + 1 != groups.len() {
            return Err(Error::Shape(format!(
                "{} groups need {} maps, got {}",
                groups.len(),
                groups.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let (src, dst) = (&groups[i + 1], &groups[i]);
            if m.shape() != (dst.len(), src.len()) {
                return Err(Error::Shape(format!("map {i} is {:?}, expected {:?}", m.shape(), (dst.len(), src.len()))));
            }
            // torsion relations of the source must map to zero
            for j in src.rank..src.len() {
                let image: Vec<Int> = m.column(j).iter().map(|v| v * src.modulus(j)).collect();
                if !dst.is_zero_element(&image) {
                    return Err(Error::Shape(format!("map {i} is not well defined on torsion coordinate {j}")));
                }
            }
        }
        if continuation == Continuation::RepeatLast
            && groups.len() >= 2
            && groups[groups.len() - 1] != groups[groups.len() - 2]
        {
            return Err(Error::Shape("a repeating tower needs equal last two groups".into()));
        }
        Ok(Tower { groups, maps, continuation })
    }

    /// `depth + 1` copies of `group` joined by `map`, declared to repeat.
    pub fn constant(group: AbelianGroup, map: IntMatrix, depth: usize) -> Result<Self> {
        Tower::new(vec![group; depth + 1], vec![map; depth], Continuation::RepeatLast)
    }

    pub fn depth(&self) -> usize {
        self.groups.len() - 1
    }

    /// Matrix of the composite `G_j -> G_i`, `i <= j`.
    pub fn composite(&self, i: usize, j: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.groups[j].len());
        for step in (i..j).rev() {
            m = self.maps[step].mul(&m).expect("tower shapes checked");
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum MittagLeffler {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TowerAnalysis {
    /// The inverse limit, when it can be determined.
    pub lim: Option<AbelianGroup>,
    pub mittag_leffler: MittagLeffler,
    /// `Some(true)` iff Mittag-Leffler holds, `Some(false)` iff it is
    /// certified to fail, `None` when inconclusive.
    pub lim1_vanishes: Option<bool>,
    /// Levels `i` whose image chain `im(G_j -> G_i)` was still shrinking at
    /// the horizon.
    pub shrinking_levels: Vec<usize>,
}

/// `span(a) ⊆ span(b) + relations` inside `g`.
fn contained(g: &AbelianGroup, a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    let mut span = b.clone();
    for j in g.rank..g.len() {
        let mut rel = IntMatrix::zeros(g.len(), 1);
        rel.set(j, 0, g.modulus(j));
        span = span.hconcat(&rel)?;
    }
    for c in 0..a.cols() {
        if solve(&span, &a.column(c))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The subgroup of `g` generated by the columns of `gens`, as an abstract group.
pub(crate) fn span_group(g: &AbelianGroup, gens: &IntMatrix) -> Result<AbelianGroup> {
    let n = gens.cols();
    let mut a = gens.clone();
    for j in g.rank..g.len() {
        let mut rel = IntMatrix::zeros(g.len(), 1);
        rel.set(j, 0, g.modulus(j));
        a = a.hconcat(&rel)?;
    }
    let relations: Vec<Vec<Int>> = kernel_basis(&a).into_iter().map(|v| v[..n].to_vec()).collect();
    let k = IntMatrix::from_columns(&relations, n)?;
    let s = smith(&k, Track::None);
    Ok(AbelianGroup::from_factors(n - s.rank(), s.diagonal.iter().copied()))
}

/// Whether `f` is injective on the subgroup of `src` spanned by `gens`.
fn injective_on(src: &AbelianGroup, gens: &IntMatrix, dst: &AbelianGroup, f: &IntMatrix) -> Result<bool> {
    let n = gens.cols();
    let mut a = f.mul(gens)?;
    for j in dst.rank..dst.len() {
        let mut rel = IntMatrix::zeros(dst.len(), 1);
        rel.set(j, 0, dst.modulus(j));
        a = a.hconcat(&rel)?;
    }
    for v in kernel_basis(&a) {
        if !src.is_zero_element(&gens.mul_vec(&v[..n])?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_span(g: &AbelianGroup, a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(contained(g, a, b)? && contained(g, b, a)?)
}

/// Inverse limit and the Mittag-Leffler test for `lim^1`.
///
/// With [`Continuation::Unknown`] the tower is taken as given: its limit is
/// the last group, and Mittag-Leffler is reported as holding only when every
/// image chain was already stationary at the horizon.
///
/// With [`Continuation::RepeatLast`] the analysis is about the infinite
/// tower. Its image chains stabilize iff the images of the powers `F^k` of
/// the repeated map do, which is decided exactly: a finite group stabilizes
/// within `log2 |torsion|` steps, and on a free group the rank stops dropping
/// after `rank` steps, after which `F` is injective on the image and every
/// further step has the same index.
pub fn lim_and_lim1(t: &Tower) -> Result<TowerAnalysis> {
    let n = t.depth();
    let mut shrinking = Vec::new();
    for i in 0..n {
        let deep = t.composite(i, n);
        let shallow = t.composite(i, n - 1);
        if !same_span(&t.groups[i], &deep, &shallow)? {
            shrinking.push(i);
        }
    }
    if t.continuation == Continuation::Unknown || n == 0 {
        let holds = shrinking.is_empty();
        return Ok(TowerAnalysis {
            lim: Some(t.groups[n].clone()),
            mittag_leffler: if holds { MittagLeffler::Holds } else { MittagLeffler::Inconclusive },
            lim1_vanishes: holds.then_some(true),
            shrinking_levels: shrinking,
        });
    }

    let g = &t.groups[n];
    let f = &t.maps[n - 1];
    let torsion_bits: usize = g.torsion.iter().map(|d| (64 - d.leading_zeros()) as usize).sum();
    let bound = g.len() + torsion_bits + 1;
    let mut power = IntMatrix::identity(g.len());
    let mut stable = None;
    for _ in 0..=bound {
        let next = f.mul(&power)?;
        if same_span(g, &power, &next)? {
            stable = Some(power);
            break;
        }
        power = next;
    }
    match stable {
        Some(image) => {
            let lim = if injective_on(g, &image, g, f)? { Some(span_group(g, &image)?) } else { None };
            Ok(TowerAnalysis {
                lim,
                mittag_leffler: MittagLeffler::Holds,
                lim1_vanishes: Some(true),
                shrinking_levels: shrinking,
            })
        }
        None if g.is_free() => {
            // rank one: the limit is the intersection of the strictly
            // decreasing ideals d^k Z, which is zero
            let lim = if g.rank == 1 { Some(AbelianGroup::zero()) } else { None };
            Ok(TowerAnalysis {
                lim,
                mittag_leffler: MittagLeffler::Fails,
                lim1_vanishes: Some(false),
                shrinking_levels: shrinking,
            })
        }
        None => Ok(TowerAnalysis {
            lim: None,
            mittag_leffler: MittagLeffler::Inconclusive,
            lim1_vanishes: None,
            shrinking_levels: shrinking,
        }),
    }
}
