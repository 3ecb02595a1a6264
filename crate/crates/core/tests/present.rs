mod common;

use std::collections::BTreeSet;

use common::{grd_points_brute, masks, models_brute, names, random_grd, subsets};
use locus::geolog::grd::grd_predicate_points;
use locus::order::lattice::downsets;
use locus::order::poset::FinPoset;
use locus::points::{enumerate_points, enumerate_points_bounded, prime_filters};
use locus::present::{
    formal_topology_to_theory, frame_to_theory, grd_to_theory, lindenbaum, FormalTopology, PropSequent, PropTheory,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..n.max(1), 0..=n.min(3))
        .prop_map(move |s| s.into_iter().filter(|&x| x < n).collect())
}

fn sequent(n: usize) -> impl Strategy<Value = PropSequent> {
    (subset(n), proptest::collection::vec(subset(n), 0..=3)).prop_map(|(a, c)| PropSequent::new(a, c))
}

fn theory(max: usize) -> impl Strategy<Value = PropTheory> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(sequent(n), 0..=6)
            .prop_map(move |axioms| PropTheory::new(names("s", n), axioms).unwrap())
    })
}

proptest! {
    #[test]
    fn points_are_the_models(t in theory(8)) {
        prop_assert_eq!(masks(&enumerate_points(&t).unwrap()), models_brute(&t));
    }

    #[test]
    fn an_extra_axiom_never_adds_points(t in theory(6), extra in sequent(6)) {
        let n = t.symbols().len();
        let extra = PropSequent::new(
            extra.antecedent.into_iter().filter(|&s| s < n).collect(),
            extra.consequent.into_iter().map(|d| d.into_iter().filter(|&s| s < n).collect()).collect(),
        );
        let before = masks(&enumerate_points(&t).unwrap());
        let after = masks(&enumerate_points(&t.with_axiom(extra).unwrap()).unwrap());
        prop_assert!(after.is_subset(&before));
    }

    #[test]
    fn lindenbaum_points_recover_the_models(t in theory(4)) {
        let lb = lindenbaum(&t).unwrap();
        prop_assert_eq!(prime_filters(&lb.lattice).len(), lb.model_count);
        prop_assert_eq!(lb.model_count, models_brute(&t).len());
        let l = &lb.lattice;
        for a in l.elements() {
            for b in l.elements() {
                for c in l.elements() {
                    prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                }
            }
        }
    }

    #[test]
    fn grd_forms_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_grd(&mut rng, 6);
        let brute = grd_points_brute(&s);
        prop_assert_eq!(&masks(&enumerate_points(&grd_to_theory(&s)).unwrap()), &brute);
        prop_assert_eq!(&masks(&grd_predicate_points(&s).unwrap()), &brute);
    }

    #[test]
    fn formal_points_are_splitting_filters(p in poset(5), raw in proptest::collection::vec((0..5usize, subset(5)), 0..=3)) {
        let n = p.len();
        let covers: Vec<(usize, Vec<usize>)> = raw
            .into_iter()
            .filter(|(a, _)| *a < n)
            .map(|(a, u)| (a, u.into_iter().filter(|&x| x < n).collect()))
            .collect();
        let f = FormalTopology::new(p.clone(), covers.clone()).unwrap();
        let has = |s: u64, x: usize| s >> x & 1 == 1;
        let oracle: BTreeSet<u64> = subsets(n)
            .filter(|&s| {
                s != 0
                    && (0..n).all(|a| (0..n).all(|b| !(has(s, a) && p.leq(a, b)) || has(s, b)))
                    && (0..n).all(|a| (0..n).all(|b| !(has(s, a) && has(s, b)) || (0..n).any(|c| has(s, c) && p.leq(c, a) && p.leq(c, b))))
                    && covers.iter().all(|(a, u)| !has(s, *a) || u.iter().any(|&x| has(s, x)))
            })
            .collect();
        prop_assert_eq!(masks(&enumerate_points(&formal_topology_to_theory(&f)).unwrap()), oracle);
    }
}

fn poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (1..=max).prop_flat_map(|n| {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), edges.len()).prop_map(move |keep| {
            let pairs: Vec<(usize, usize)> = edges.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            FinPoset::from_relation(&names("b", n), &pairs).unwrap()
        })
    })
}

#[test]
fn excluded_middle_has_two_points() {
    let t =
        PropTheory::from_named(&["p", "q"], &[(vec![], vec![vec!["p"], vec!["q"]]), (vec!["p", "q"], vec![])]).unwrap();
    let pts = enumerate_points(&t).unwrap();
    let named: Vec<Vec<&str>> = pts.iter_named().collect();
    assert_eq!(named, vec![vec!["p"], vec!["q"]]);
    assert_eq!(lindenbaum(&t).unwrap().lattice.len(), 4);
}

#[test]
fn frame_points_of_a_chain() {
    for n in 1..=6 {
        let l = downsets(&FinPoset::chain(n));
        assert_eq!(enumerate_points(&frame_to_theory(&l)).unwrap().len(), n);
    }
}

#[test]
fn the_signature_bound_is_enforced() {
    let t = PropTheory::new(names("s", 5), vec![]).unwrap();
    assert!(enumerate_points_bounded(&t, 4).is_err());
    assert_eq!(enumerate_points_bounded(&t, 5).unwrap().len(), 32);
}

#[test]
fn unknown_symbols_are_rejected() {
    assert!(PropTheory::from_named(&["p"], &[(vec!["q"], vec![])]).is_err());
}
