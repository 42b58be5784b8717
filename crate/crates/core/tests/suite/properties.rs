use std::sync::Arc;

use cuntzkit::complex::{CellSet, FacePoset, SetKind};
use cuntzkit::cuntz::{add, leq, restrict_class, CuntzClass, Dim};
use cuntzkit::k0star::{elementary_normal_form, from_cuntz, k0_add, k0_neg, reconstruct, K0StarElement};
use cuntzkit::rofp::{shrink_cover, shrink_violations};
use proptest::prelude::*;

use crate::common::*;

fn setup(seed: u64, cells: usize) -> (TestRng, Arc<FacePoset>) {
    let mut r = rng(seed);
    let x = Arc::new(random_complex(&mut r, 3, cells));
    (r, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn restriction_is_functorial(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 25);
        let all = x.all_cells();
        let a = random_class(&mut r, &x, &all, true);
        prop_assert!(restrict_class(&a, &all).unwrap() == a);
        let s = random_locally_closed(&mut r, &x);
        let t = s.intersection(&random_up_set(&mut r, &x, 0.4));
        prop_assume!(!t.is_empty());
        let once = restrict_class(&a, &t).unwrap();
        let twice = restrict_class(&restrict_class(&a, &s).unwrap(), &t).unwrap();
        prop_assert!(once == twice);
    }

    #[test]
    fn restriction_respects_sums(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 20);
        let all = x.all_cells();
        let (a, b) = (random_class(&mut r, &x, &all, true), random_class(&mut r, &x, &all, true));
        let s = random_locally_closed(&mut r, &x);
        let left = restrict_class(&add(&a, &b).unwrap(), &s).unwrap();
        let right = add(&restrict_class(&a, &s).unwrap(), &restrict_class(&b, &s).unwrap()).unwrap();
        prop_assert!(left == right);
    }

    #[test]
    fn infinite_classes_absorb(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 25);
        let all = x.all_cells();
        let u = random_up_set(&mut r, &x, 0.3);
        let inf = CuntzClass::l2(&x, &all, &u).unwrap();
        prop_assert!(add(&inf, &inf).unwrap() == inf);
        let a = random_class(&mut r, &x, &all, true);
        let sum = add(&a, &inf).unwrap();
        prop_assert!(u.iter().all(|c| sum.r().get(c) == Some(Dim::Inf)));
        prop_assert!(leq(&a, &sum).unwrap());
    }

    #[test]
    fn k0_is_an_abelian_group(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 25);
        let all = x.all_cells();
        let draw = |r: &mut TestRng| {
            let f = from_cuntz(&random_class(r, &x, &all, false)).unwrap();
            let g = from_cuntz(&random_class(r, &x, &all, false)).unwrap();
            k0_add(&f, &k0_neg(&g)).unwrap()
        };
        let (f, g, h) = (draw(&mut r), draw(&mut r), draw(&mut r));
        let zero = K0StarElement::zero(&x, &all);
        prop_assert_eq!(k0_add(&k0_add(&f, &g).unwrap(), &h).unwrap(), k0_add(&f, &k0_add(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(k0_add(&f, &g).unwrap(), k0_add(&g, &f).unwrap());
        prop_assert_eq!(k0_add(&f, &zero).unwrap(), f.clone());
        prop_assert_eq!(k0_add(&f, &k0_neg(&f)).unwrap(), zero);
    }

    #[test]
    fn normal_form_sums_back(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 25);
        let all = x.all_cells();
        let a = random_class(&mut r, &x, &all, false);
        let chain = elementary_normal_form(&x, a.r()).unwrap();
        prop_assert!(chain.windows(2).all(|w| w[1].is_subset(&w[0])));
        prop_assert!(chain.iter().all(|s| x.is_open(s)));
        prop_assert_eq!(&reconstruct(&all, &chain), a.r());
    }

    #[test]
    fn classification_matches_predicates(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 30);
        let s: CellSet = random_subset(&mut r, &x.all_cells(), 0.4);
        let kind = x.classify(&s).unwrap();
        prop_assert_eq!(kind == SetKind::Open, x.is_open(&s));
        prop_assert_eq!(kind == SetKind::Closed, x.is_closed(&s) && !x.is_open(&s));
        prop_assert_eq!(kind != SetKind::Other, x.is_order_convex(&s));
        prop_assert!(x.interior(&s).is_subset(&s));
        prop_assert!(s.is_subset(&x.closure(&s)));
    }

    #[test]
    fn shrink_output_is_stable(seed in any::<u64>()) {
        let (mut r, x) = setup(seed, 40);
        let u: Vec<CellSet> = (0..3).map(|_| random_up_set(&mut r, &x, 0.35)).collect();
        if let Ok(a) = shrink_cover(&x, &u) {
            prop_assert!(shrink_violations(&x, &u, &a).is_empty());
            prop_assert_eq!(shrink_cover(&x, &u).unwrap(), a.clone());
            // dropping any single cell breaks some condition
            for (i, s) in a.iter().enumerate() {
                for c in s.iter() {
                    let mut b = a.clone();
                    b[i].remove(c);
                    prop_assert!(!shrink_violations(&x, &u, &b).is_empty());
                }
            }
        }
    }
}
