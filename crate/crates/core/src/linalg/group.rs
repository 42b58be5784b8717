use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Int;

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `d_1 | d_2 | ... | d_k`, each `d_i >= 2`.
///
/// Elements are coordinate vectors: the free coordinates first, then one
/// coordinate per torsion summand kept in `0..d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Builds the canonical form from arbitrary invariant factors,
    /// dropping units.
    pub fn from_factors(rank: usize, factors: impl IntoIterator<Item = Int>) -> Self {
        let mut torsion: Vec<Int> = factors.into_iter().map(|d| d.abs()).filter(|&d| d > 1).collect();
        torsion.sort_unstable();
        AbelianGroup { rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of coordinates of an element.
    pub fn len(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The relation modulus of coordinate `i`: zero for free coordinates.
    pub fn modulus(&self, i: usize) -> Int {
        if i < self.rank {
            0
        } else {
            self.torsion[i - self.rank]
        }
    }

    pub fn reduce(&self, v: &mut [Int]) {
        for (k, d) in self.torsion.iter().enumerate() {
            v[self.rank + k] = v[self.rank + k].rem_euclid(*d);
        }
    }

    pub fn reduced(&self, mut v: Vec<Int>) -> Vec<Int> {
        self.reduce(&mut v);
        v
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduced(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        self.reduced(a.iter().map(|x| -x).collect())
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![0; self.len()]
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        self.reduced(v.to_vec()).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.len() && self.reduced(v.to_vec()) == v
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let g = AbelianGroup::from_factors(1, [1, 6, 2, -1]);
        assert_eq!(g.torsion, vec![2, 6]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/6");
        assert_eq!(AbelianGroup::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_reduces_torsion() {
        let g = AbelianGroup::from_factors(1, [3]);
        assert_eq!(g.add(&[1, 2], &[4, 2]), vec![5, 1]);
        assert_eq!(g.neg(&[1, 1]), vec![-1, 2]);
        assert!(g.is_zero_element(&[0, 3]));
        assert!(!g.contains(&[0, 3]));
    }
}
