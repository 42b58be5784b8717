//! Integer cohomology of locally closed cell sets.
//!
//! A cell set `S` is replaced by a finite complex with the homotopy type of
//! `|S|`: a subcomplex stands for itself, any other order-convex set by its
//! order complex. Cochain groups are then reduced with Smith normal form,
//! keeping enough of the transformation data to express any cocycle in
//! the chosen generators.

mod degree;
mod surrogate;
mod tower;

use std::sync::Arc;

pub use degree::{check_homology_sphere, degree, fundamental_cycle};
pub use surrogate::{Surrogate, SurrogateKind};
pub use tower::{lim_and_lim1, Continuation, MittagLeffler, Tower, TowerAnalysis};

use crate::complex::{CellSet, FacePoset};
use crate::error::{Error, Result};
use crate::linalg::{smith, solve, AbelianGroup, Track};
use crate::{Int, IntMatrix};

use surrogate::{last_vertex_image, subdivision_chain};

/// `H^k(|S|; Z)` with chosen cocycle generators.
#[derive(Clone)]
pub struct CohomologyGroup {
    pub group: AbelianGroup,
    pub degree: usize,
    pub base: CellSet,
    pub surrogate: SurrogateKind,
    /// Cocycle representatives of the generators (free ones first), as
    /// cochains on `simplices`.
    pub representatives: Vec<Vec<Int>>,
    complex: Arc<FacePoset>,
    simplices: Vec<Vec<usize>>,
    coords: Coordinates,
}

#[derive(Clone)]
struct Coordinates {
    /// Left transform `U` of the Smith form of `δ_{k-1}`.
    left: IntMatrix,
    /// Invariant factors of `δ_{k-1}`.
    divisors: Vec<Int>,
    /// `V2^{-1}` for the Smith form of `δ_k` restricted to the tail basis.
    tail_inv: IntMatrix,
    tail_rank: usize,
    next: IntMatrix,
}

impl std::fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CohomologyGroup")
            .field("group", &self.group)
            .field("degree", &self.degree)
            .field("base", &self.base)
            .field("surrogate", &self.surrogate)
            .finish()
    }
}

impl PartialEq for CohomologyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.base == other.base && self.complex == other.complex
    }
}

impl CohomologyGroup {
    pub fn complex(&self) -> &Arc<FacePoset> {
        &self.complex
    }

    /// The `k`-simplices of the surrogate, indexing cochain coordinates.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Coordinates of the class of the cocycle `z`.
    pub fn class_of(&self, z: &[Int]) -> Result<Vec<Int>> {
        if z.len() != self.simplices.len() {
            return Err(Error::Shape(format!("cochain has {} entries, expected {}", z.len(), self.simplices.len())));
        }
        if !self.coords.next.mul_vec(z)?.iter().all(|&v| v == 0) {
            return Err(Error::NotACocycle);
        }
        let y = self.coords.left.mul_vec(z)?;
        let r = self.coords.divisors.len();
        let w = self.coords.tail_inv.mul_vec(&y[r..])?;
        if w[..self.coords.tail_rank].iter().any(|&v| v != 0) {
            return Err(Error::Internal("cocycle has a component outside the kernel".into()));
        }
        let mut out: Vec<Int> = w[self.coords.tail_rank..].to_vec();
        for (i, &d) in self.coords.divisors.iter().enumerate() {
            if d > 1 {
                out.push(y[i]);
            }
        }
        Ok(self.group.reduced(out))
    }

    /// Cochain representing the class with coordinates `c`.
    pub fn cocycle_of(&self, c: &[Int]) -> Result<Vec<Int>> {
        if c.len() != self.group.len() {
            return Err(Error::Shape(format!("class has {} coordinates, group needs {}", c.len(), self.group.len())));
        }
        let mut z = vec![0; self.simplices.len()];
        for (coef, rep) in c.iter().zip(&self.representatives) {
            for (zi, ri) in z.iter_mut().zip(rep) {
                *zi += coef * ri;
            }
        }
        Ok(z)
    }
}

/// `H^k(|S|; Z)` for an order-convex `S`.
pub fn cohomology_of(x: &Arc<FacePoset>, s: &CellSet, k: usize) -> Result<CohomologyGroup> {
    x.require_locally_closed(s)?;
    let sur = Surrogate::new(x, s, k + 1);
    Ok(from_surrogate(x, s, &sur, k))
}

pub(crate) fn from_surrogate(x: &Arc<FacePoset>, s: &CellSet, sur: &Surrogate, k: usize) -> CohomologyGroup {
    let n = sur.count(k);
    let prev = if k == 0 { IntMatrix::zeros(n, 0) } else { sur.coboundary(k - 1) };
    let next = sur.coboundary(k);

    let snf = smith(&prev, Track::Left);
    let left = snf.left.expect("left tracked");
    let left_inv = snf.left_inv.expect("left tracked");
    let divisors = snf.diagonal;
    let r = divisors.len();

    let tail_cols: Vec<usize> = (r..n).collect();
    let b_tail = left_inv.select_columns(&tail_cols);
    let m = next.mul(&b_tail).expect("shapes agree");
    let snf2 = smith(&m, Track::Right);
    let tail_rank = snf2.rank();
    let v2 = snf2.right.expect("right tracked");
    let tail_inv = snf2.right_inv.expect("right tracked");

    let mut representatives = Vec::new();
    for j in tail_rank..(n - r) {
        representatives.push(b_tail.mul_vec(&v2.column(j)).expect("shapes agree"));
    }
    let free = representatives.len();
    let mut torsion = Vec::new();
    for (i, &d) in divisors.iter().enumerate() {
        if d > 1 {
            representatives.push(left_inv.column(i));
            torsion.push(d);
        }
    }
    CohomologyGroup {
        group: AbelianGroup { rank: free, torsion },
        degree: k,
        base: s.clone(),
        surrogate: sur.kind,
        representatives,
        complex: Arc::clone(x),
        simplices: sur.simplices(k).to_vec(),
        coords: Coordinates { left, divisors, tail_inv, tail_rank, next },
    }
}

/// Sparse cochain map `C^k(from) -> C^k(to)`: for each simplex of `to`, the
/// signed simplices of `from` whose values it sums.
fn pullback(from: &CohomologyGroup, to: &CohomologyGroup) -> Result<Vec<Vec<(usize, Int)>>> {
    let x = &from.complex;
    let index: std::collections::HashMap<&[usize], usize> =
        from.simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let missing = || Error::Internal("surrogate simplex missing from the larger set".into());
    let mut rows = Vec::with_capacity(to.simplices.len());
    for simplex in &to.simplices {
        let row = match (from.surrogate, to.surrogate) {
            (SurrogateKind::Direct, SurrogateKind::Direct)
            | (SurrogateKind::OrderComplex, SurrogateKind::OrderComplex) => {
                vec![(*index.get(simplex.as_slice()).ok_or_else(missing)?, 1)]
            }
            (SurrogateKind::Direct, SurrogateKind::OrderComplex) => match last_vertex_image(x, simplex) {
                Some(image) => vec![(*index.get(image.as_slice()).ok_or_else(missing)?, 1)],
                None => Vec::new(),
            },
            (SurrogateKind::OrderComplex, SurrogateKind::Direct) => {
                let mut row = Vec::new();
                for (chain, s) in subdivision_chain(x, simplex) {
                    row.push((*index.get(chain.as_slice()).ok_or_else(missing)?, s));
                }
                row
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Matrix of the restriction `from -> to`, in the two generator bases.
pub fn restriction_matrix(from: &CohomologyGroup, to: &CohomologyGroup) -> Result<IntMatrix> {
    if from.complex != to.complex || from.degree != to.degree {
        return Err(Error::BaseMismatch("cohomology groups of different complexes or degrees".into()));
    }
    if !to.base.is_subset(&from.base) {
        return Err(Error::NotNested("restriction target is not contained in the source".into()));
    }
    let rows = pullback(from, to)?;
    let mut columns = Vec::with_capacity(from.representatives.len());
    for rep in &from.representatives {
        let z: Vec<Int> = rows.iter().map(|row| row.iter().map(|&(i, s)| s * rep[i]).sum()).collect();
        columns.push(to.class_of(&z)?);
    }
    IntMatrix::from_columns(&columns, to.group.len())
}

/// Restriction of the class `c` of `from` to `to`.
pub fn restrict_element(from: &CohomologyGroup, to: &CohomologyGroup, c: &[Int]) -> Result<Vec<Int>> {
    let m = restriction_matrix(from, to)?;
    Ok(to.group.reduced(m.mul_vec(c)?))
}

/// Matrix of `H^k(|S|) -> H^k(|S'|)` for order-convex `S' ⊆ S`.
pub fn induced_map(x: &Arc<FacePoset>, sub: &CellSet, sup: &CellSet, k: usize) -> Result<IntMatrix> {
    if !sub.is_subset(sup) {
        return Err(Error::NotNested("S' is not contained in S".into()));
    }
    let from = cohomology_of(x, sup, k)?;
    let to = cohomology_of(x, sub, k)?;
    restriction_matrix(&from, &to)
}

/// The unique class of `whole` whose restriction to each piece is the given
/// class, when `whole` is the disjoint union of pieces with no face relations
/// between them.
pub fn glue(whole: &CohomologyGroup, pieces: &[(&CohomologyGroup, Vec<Int>)]) -> Result<Vec<Int>> {
    let n = whole.group.len();
    let mut blocks: Vec<(IntMatrix, &CohomologyGroup, &Vec<Int>)> = Vec::new();
    let mut total_rows = 0;
    for (g, c) in pieces {
        let m = restriction_matrix(whole, g)?;
        total_rows += g.group.len();
        blocks.push((m, g, c));
    }
    // Unknowns: the class x, then one multiplier per torsion relation.
    let relations: usize = blocks.iter().map(|(_, g, _)| g.group.torsion.len()).sum();
    let mut a = IntMatrix::zeros(total_rows, n + relations);
    let mut b = Vec::with_capacity(total_rows);
    let (mut row, mut rel) = (0, n);
    for (m, g, c) in &blocks {
        for i in 0..g.group.len() {
            for j in 0..n {
                a.set(row + i, j, *m.get(i, j));
            }
            let d = g.group.modulus(i);
            if d != 0 {
                a.set(row + i, rel, d);
                rel += 1;
            }
            b.push(c[i]);
        }
        row += g.group.len();
    }
    match solve(&a, &b)? {
        Some(sol) => Ok(whole.group.reduced(sol[..n].to_vec())),
        None => Err(Error::Internal("piecewise classes do not glue".into())),
    }
}
