#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;
use std::sync::Arc;

use cuntzkit::bundles::BundleClass;
use cuntzkit::cohomology::cohomology_of;
use cuntzkit::complex::{circle, sphere, CellSet, FacePoset};
use cuntzkit::cuntz::{CuntzClass, Dim, DimensionFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random complex of dimension at most `max_dim` with at most `max_cells`
/// cells.
pub fn random_complex(rng: &mut TestRng, max_dim: usize, max_cells: usize) -> FacePoset {
    loop {
        let n = rng.gen_range(2..=7);
        let verts: Vec<usize> = (0..n).collect();
        let k = rng.gen_range(1..=4);
        let mut cells = Vec::new();
        for _ in 0..k {
            let size = rng.gen_range(1..=(max_dim + 1).min(n));
            let mut c: Vec<usize> = verts.choose_multiple(rng, size).copied().collect();
            c.sort_unstable();
            cells.push(c);
        }
        let x = FacePoset::build(&cells).unwrap();
        if x.num_cells() <= max_cells && x.dim() <= max_dim {
            return x;
        }
    }
}

/// Named small complexes plus random ones, all with at most `max_cells`
/// cells.
pub fn complex_suite(seed: u64, random: usize, max_cells: usize) -> Vec<FacePoset> {
    let mut out: Vec<FacePoset> = vec![
        FacePoset::build(&[vec![0]]).unwrap(),
        FacePoset::build(&[vec![0, 1]]).unwrap(),
        FacePoset::build(&[vec![0, 1], vec![1, 2]]).unwrap(),
        FacePoset::build(&[vec![0, 1, 2]]).unwrap(),
        FacePoset::build(&[vec![0, 1, 2], vec![2, 3]]).unwrap(),
        circle(3).unwrap(),
        circle(4).unwrap(),
        sphere(1).unwrap(),
    ];
    out.retain(|x| x.num_cells() <= max_cells);
    let mut r = rng(seed);
    for _ in 0..random {
        out.push(random_complex(&mut r, 3, max_cells));
    }
    out
}

pub fn random_subset(rng: &mut TestRng, s: &CellSet, p: f64) -> CellSet {
    s.iter().filter(|_| rng.gen_bool(p)).collect()
}

pub fn random_up_set(rng: &mut TestRng, x: &FacePoset, p: f64) -> CellSet {
    x.up_closure(&random_subset(rng, &x.all_cells(), p))
}

/// Nonempty `U \ V` for random up-sets `V ⊆ U`.
pub fn random_locally_closed(rng: &mut TestRng, x: &FacePoset) -> CellSet {
    loop {
        let u = if rng.gen_bool(0.4) { x.all_cells() } else { random_up_set(rng, x, 0.3) };
        let v = if rng.gen_bool(0.4) { CellSet::new() } else { x.up_closure(&random_subset(rng, &u, 0.15)) };
        let d = u.difference(&v);
        if !d.is_empty() {
            return d;
        }
    }
}

/// Random lower semicontinuous rank function on `domain`: a base value plus
/// indicators of random up-sets, with an optional infinite up-set.
pub fn random_rank(rng: &mut TestRng, x: &FacePoset, domain: &CellSet, allow_inf: bool) -> DimensionFunction {
    let base = rng.gen_range(0..=2usize);
    let ups: Vec<CellSet> = (0..rng.gen_range(0..=2)).map(|_| random_up_set(rng, x, 0.25)).collect();
    let inf = if allow_inf && rng.gen_bool(0.15) { random_up_set(rng, x, 0.1) } else { CellSet::new() };
    DimensionFunction::from_fn(domain, |c| {
        if inf.contains(c) {
            Dim::Inf
        } else {
            Dim::Finite(base + ups.iter().filter(|u| u.contains(c)).count())
        }
    })
}

/// Random strata classes for `r`, with small random Chern classes.
pub fn random_strata(rng: &mut TestRng, x: &Arc<FacePoset>, r: &DimensionFunction) -> BTreeMap<usize, BundleClass> {
    let mut strata = BTreeMap::new();
    for i in r.finite_values() {
        let level = r.level(Dim::Finite(i));
        let h2 = Arc::new(cohomology_of(x, &level, 2).unwrap());
        let c1: Vec<i64> = (0..h2.group.len()).map(|_| if i == 0 { 0 } else { rng.gen_range(-2..=2) }).collect();
        strata.insert(i, BundleClass::new(h2, i, c1).unwrap());
    }
    strata
}

pub fn random_class(rng: &mut TestRng, x: &Arc<FacePoset>, domain: &CellSet, allow_inf: bool) -> CuntzClass {
    let r = random_rank(rng, x, domain, allow_inf);
    let strata = random_strata(rng, x, &r);
    CuntzClass::new(x, r, strata).unwrap()
}

/// Same rank function with strata redrawn.
pub fn restrata(rng: &mut TestRng, a: &CuntzClass) -> CuntzClass {
    let strata = random_strata(rng, a.complex(), a.r());
    CuntzClass::new(a.complex(), a.r().clone(), strata).unwrap()
}

/// All up-sets of a small poset, as bitmasks over cell indices.
pub fn up_set_masks(x: &FacePoset) -> Vec<u64> {
    let n = x.num_cells();
    assert!(n <= 20);
    (0u64..(1 << n))
        .filter(|&m| (0..n).all(|c| m & (1 << c) == 0 || x.cofaces(c).iter().all(|&d| m & (1 << d) != 0)))
        .collect()
}

pub fn mask_of(s: &CellSet) -> u64 {
    s.iter().fold(0, |m, c| m | (1 << c))
}

pub fn set_of(mask: u64, n: usize) -> CellSet {
    (0..n).filter(|c| mask & (1 << c) != 0).collect()
}
