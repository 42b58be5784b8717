use crate::complex::{FacePoset, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, AbelianGroup};
use crate::Int;

use super::surrogate::{sort_with_sign, Surrogate};

/// Errors unless `x` has the integral homology of `S^n`, `n = dim x`.
pub fn check_homology_sphere(x: &FacePoset) -> Result<usize> {
    let n = x.dim();
    let sur = Surrogate::new(x, &x.all_cells(), n + 1);
    let arc = std::sync::Arc::new(x.clone());
    for k in 0..=n {
        let h = super::from_surrogate(&arc, &x.all_cells(), &sur, k);
        let expected = match (n, k) {
            (0, 0) => AbelianGroup::free(2),
            (_, 0) => AbelianGroup::free(1),
            (n, k) if k == n => AbelianGroup::free(1),
            _ => AbelianGroup::zero(),
        };
        if h.group != expected {
            return Err(Error::NotASphere(format!("H^{k} = {} in dimension {n}", h.group)));
        }
    }
    Ok(n)
}

/// Generator of `H_n`, as coefficients on the top cells in lexicographic
/// order, with its first nonzero coefficient positive.
pub fn fundamental_cycle(x: &FacePoset) -> Result<Vec<Int>> {
    let n = check_homology_sphere(x)?;
    let sur = Surrogate::new(x, &x.all_cells(), n);
    let mut basis = kernel_basis(&sur.boundary(n));
    if n == 0 {
        // Reduced H_0: the difference of the two points.
        return Ok(vec![1, -1]);
    }
    if basis.len() != 1 {
        return Err(Error::Internal(format!("top cycle space has rank {}", basis.len())));
    }
    let mut z = basis.pop().unwrap();
    if z.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        z.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(z)
}

/// Degree of a simplicial map between homology `n`-spheres: the multiplier
/// of `f_*` on `H_n`, with both spheres oriented by [`fundamental_cycle`].
pub fn degree(f: &SimplicialMap) -> Result<Int> {
    let n = f.source.dim();
    if f.target.dim() != n {
        return Err(Error::NotASphere(format!("source has dimension {n}, target {}", f.target.dim())));
    }
    let zs = fundamental_cycle(&f.source)?;
    let zt = fundamental_cycle(&f.target)?;
    let src = Surrogate::new(&f.source, &f.source.all_cells(), n);
    let tgt = Surrogate::new(&f.target, &f.target.all_cells(), n);
    let mut pushed = vec![0; zt.len()];
    for (cell, &c) in src.simplices(n).iter().zip(&zs) {
        if c == 0 {
            continue;
        }
        let mut image: Vec<usize> = cell.iter().map(|v| f.vertex_map[v]).collect();
        if let Some(s) = sort_with_sign(&mut image) {
            let j = tgt.position(n, &image).ok_or_else(|| Error::NotSimplicial(format!("{cell:?} -> {image:?}")))?;
            pushed[j] += s * c;
        }
    }
    let j = zt.iter().position(|&c| c != 0).expect("nonzero fundamental cycle");
    let d = pushed[j] / zt[j];
    if pushed.iter().zip(&zt).any(|(&p, &z)| p != d * z) {
        return Err(Error::Internal("pushed-forward cycle is not a multiple of the fundamental cycle".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complex::{circle, sphere};

    #[test]
    fn identity_has_degree_one() {
        let s3 = sphere(3).unwrap();
        assert_eq!(degree(&SimplicialMap::identity(&s3)).unwrap(), 1);
    }

    #[test]
    fn double_cover_of_the_circle() {
        let map: BTreeMap<usize, usize> = (0..6).map(|v| (v, v % 3)).collect();
        let f = SimplicialMap::new(circle(6).unwrap(), circle(3).unwrap(), map).unwrap();
        assert_eq!(degree(&f).unwrap().abs(), 2);
    }

    #[test]
    fn reflection_reverses_orientation() {
        let map: BTreeMap<usize, usize> = [(0, 0), (1, 2), (2, 1)].into_iter().collect();
        let c = circle(3).unwrap();
        let f = SimplicialMap::new(c.clone(), c, map).unwrap();
        assert_eq!(degree(&f).unwrap(), -1);
        assert_eq!(degree(&f.suspend().suspend()).unwrap(), -1);
    }

    #[test]
    fn rejects_non_spheres() {
        let disc = FacePoset::build(&[vec![0, 1, 2]]).unwrap();
        assert!(matches!(fundamental_cycle(&disc), Err(Error::NotASphere(_))));
        let s0 = sphere(0).unwrap();
        assert_eq!(fundamental_cycle(&s0).unwrap(), vec![1, -1]);
    }
}
