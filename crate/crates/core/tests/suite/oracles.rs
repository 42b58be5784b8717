use std::sync::Arc;

use cuntzkit::clutch::circle_map;
use cuntzkit::cohomology::{cohomology_of, degree};
use cuntzkit::complex::{circle, sphere, FacePoset, SimplicialMap};

use crate::common::oracle::{betti_q, local_degree, rank_q, shrinkings};
use crate::common::*;

#[test]
fn rational_rank() {
    assert_eq!(rank_q(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(rank_q(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    assert_eq!(rank_q(&[]), 0);
}

#[test]
fn betti_numbers_of_known_spaces() {
    let s2 = sphere(2).unwrap();
    assert_eq!(betti_q(&s2, &s2.all_cells()), vec![1, 0, 1]);
    let c = circle(4).unwrap();
    assert_eq!(betti_q(&c, &c.all_cells()), vec![1, 1]);
    // open star of a vertex is contractible
    let star = s2.open_star(0).unwrap();
    assert_eq!(betti_q(&s2, &star)[0], 1);
    assert!(betti_q(&s2, &star)[1..].iter().all(|&b| b == 0));
}

#[test]
fn local_degree_agrees_on_suspensions_and_composites() {
    for d in -2..=2 {
        let f = circle_map(d).unwrap();
        assert_eq!(local_degree(&f), Some(d));
        assert_eq!(local_degree(&f.suspend()), Some(d));
        assert_eq!(degree(&f.suspend()).unwrap(), d);
    }
    let two = circle_map(2).unwrap();
    let c3 = circle(3).unwrap();
    let id = SimplicialMap::identity(&c3);
    assert_eq!(local_degree(&id.compose(&two).unwrap()), Some(2));
}

#[test]
fn cohomology_ranks_match_order_complex_on_locally_closed_sets() {
    let mut r = rng(71);
    for x in complex_suite(72, 40, 30) {
        let x = Arc::new(x);
        for _ in 0..6 {
            let s = random_locally_closed(&mut r, &x);
            let betti = betti_q(&x, &s);
            for k in 0..=x.dim() + 1 {
                let h = cohomology_of(&x, &s, k).unwrap();
                assert_eq!(h.group.rank, betti.get(k).copied().unwrap_or(0), "H^{k} of {:?}", x.cell_lists(&s));
            }
        }
    }
}

#[test]
fn exhaustive_shrink_search_finds_known_answers() {
    let edge = FacePoset::build(&[vec![0, 1]]).unwrap();
    let all = mask_of(&edge.all_cells());
    assert_eq!(shrinkings(&edge, &[all], &[all], 10).len(), 1);
    let u0 = mask_of(&edge.open_star(0).unwrap());
    let u1 = mask_of(&edge.open_star(1).unwrap());
    assert!(shrinkings(&edge, &[u0, u1], &[u0, u1], 1).is_empty());
    let mut r = rng(73);
    let x = random_complex(&mut r, 2, 12);
    let u = mask_of(&random_up_set(&mut r, &x, 0.4));
    let found = shrinkings(&x, &[u, u], &[u, u], 1000);
    // the last set must be all of U for its interior to cover
    assert!(!found.is_empty() && found.iter().all(|a| a[1] == u));
}
