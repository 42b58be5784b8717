//! Smith normal form over a Euclidean integer ring, with optional
//! transformation tracking.
//!
//! For an `m x n` matrix `A` the reduction produces unimodular `U`
//! (`m x m`) and `V` (`n x n`) with `U * A * V = D`, where `D` is
//! diagonal with positive entries `d_1 | d_2 | ... | d_r` followed by
//! zeros. Inverses of `U` and `V` are maintained alongside so that
//! coordinate changes in both directions stay exact.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::IntegerRing;

/// Which transformation matrices to maintain during the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    None,
    Left,
    Right,
    Both,
}

impl Track {
    fn left(self) -> bool {
        matches!(self, Track::Left | Track::Both)
    }
    fn right(self) -> bool {
        matches!(self, Track::Right | Track::Both)
    }
}

#[derive(Clone, Debug)]
pub struct Smith<T: IntegerRing> {
    /// Nonzero invariant factors, positive and forming a divisibility chain.
    pub diagonal: Vec<T>,
    pub rows: usize,
    pub cols: usize,
    pub left: Option<Matrix<T>>,
    pub left_inv: Option<Matrix<T>>,
    pub right: Option<Matrix<T>>,
    pub right_inv: Option<Matrix<T>>,
}

impl<T: IntegerRing> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix `D` of the decomposition.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

struct Reducer<T> {
    m: Matrix<T>,
    left: Option<Matrix<T>>,
    left_inv: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
    right_inv: Option<Matrix<T>>,
}

impl<T: IntegerRing> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap_rows(a, b);
        if let Some(u) = self.left.as_mut() {
            u.swap_rows(a, b);
        }
        if let Some(ui) = self.left_inv.as_mut() {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap_cols(a, b);
        if let Some(v) = self.right.as_mut() {
            v.swap_cols(a, b);
        }
        if let Some(vi) = self.right_inv.as_mut() {
            vi.swap_rows(a, b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &T) {
        self.m.add_row_multiple(target, source, factor);
        if let Some(u) = self.left.as_mut() {
            u.add_row_multiple(target, source, factor);
        }
        if let Some(ui) = self.left_inv.as_mut() {
            ui.add_col_multiple(source, target, &-factor.clone());
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &T) {
        self.m.add_col_multiple(target, source, factor);
        if let Some(v) = self.right.as_mut() {
            v.add_col_multiple(target, source, factor);
        }
        if let Some(vi) = self.right_inv.as_mut() {
            vi.add_row_multiple(source, target, &-factor.clone());
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(u) = self.left.as_mut() {
            u.negate_row(i);
        }
        if let Some(ui) = self.left_inv.as_mut() {
            ui.negate_col(i);
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.m.shape();
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = self.m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if a.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` and enforces divisibility of the
    /// remaining block by the pivot.
    fn settle_pivot(&mut self, t: usize) {
        let (rows, cols) = self.m.shape();
        loop {
            let pivot = self.m.get(t, t).clone();
            let mut smallest: Option<(bool, usize, T)> = None;
            for i in t + 1..rows {
                let v = self.m.get(i, t).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                self.add_row(i, t, &-q);
                let r = self.m.get(i, t).abs();
                if !r.is_zero() && smallest.as_ref().is_none_or(|(_, _, s)| r < *s) {
                    smallest = Some((true, i, r));
                }
            }
            for j in t + 1..cols {
                let v = self.m.get(t, j).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                self.add_col(j, t, &-q);
                let r = self.m.get(t, j).abs();
                if !r.is_zero() && smallest.as_ref().is_none_or(|(_, _, s)| r < *s) {
                    smallest = Some((false, j, r));
                }
            }
            match smallest {
                Some((true, i, _)) => {
                    self.swap_rows(t, i);
                    continue;
                }
                Some((false, j, _)) => {
                    self.swap_cols(t, j);
                    continue;
                }
                None => {}
            }
            // Row and column are clear; check divisibility of the block.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let v = self.m.get(i, j);
                    if !v.is_zero() && !v.is_multiple_of(&pivot) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => self.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if self.m.get(t, t).is_negative() {
            self.negate_row(t);
        }
    }
}

/// Smith normal form of `a`, keeping the requested transformations.
pub fn smith<T: IntegerRing>(a: &Matrix<T>, track: Track) -> Smith<T> {
    let (rows, cols) = a.shape();
    let mut r = Reducer {
        m: a.clone(),
        left: track.left().then(|| Matrix::identity(rows)),
        left_inv: track.left().then(|| Matrix::identity(rows)),
        right: track.right().then(|| Matrix::identity(cols)),
        right_inv: track.right().then(|| Matrix::identity(cols)),
    };
    let mut diagonal = Vec::new();
    let limit = rows.min(cols);
    for t in 0..limit {
        let Some((pi, pj)) = r.min_nonzero(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        r.settle_pivot(t);
        diagonal.push(r.m.get(t, t).clone());
    }
    Smith { diagonal, rows, cols, left: r.left, left_inv: r.left_inv, right: r.right, right_inv: r.right_inv }
}

/// Basis of the integer kernel `{x : A x = 0}`; the basis spans a
/// saturated sublattice.
pub fn kernel_basis<T: IntegerRing>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let s = smith(a, Track::Right);
    let rank = s.rank();
    let v = s.right.expect("right transform tracked");
    (rank..a.cols()).map(|j| v.column(j)).collect()
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve<T: IntegerRing>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!("right-hand side has {} entries, matrix has {} rows", b.len(), a.rows())));
    }
    let s = smith(a, Track::Both);
    let u = s.left.as_ref().expect("left tracked");
    let v = s.right.as_ref().expect("right tracked");
    let y = u.mul_vec(b)?;
    let mut z = vec![T::zero(); a.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank() {
            let d = &s.diagonal[i];
            if !yi.is_multiple_of(d) {
                return Ok(None);
            }
            z[i] = yi.clone() / d.clone();
        } else if !yi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(v.mul_vec(&z)?))
}
