mod common;

use std::collections::BTreeSet;

use common::{downsets_brute, join_irreducibles_brute, names, subsets};
use locus::order::boolalg::{fin_powerset, free_boolean_algebra};
use locus::order::catalogue::distributive_lattices;
use locus::order::lattice::{downsets, join_irreducibles, DistLattice};
use locus::order::nucleus::{closed_nucleus, nuclei, open_nucleus, sublocale_join, Nucleus};
use locus::order::poset::FinPoset;
use proptest::prelude::*;

/// Random posets from random forward edges, so the relation is acyclic.
fn poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (0..=max).prop_flat_map(|n| {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), edges.len()).prop_map(move |keep| {
            let pairs: Vec<(usize, usize)> = edges.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            FinPoset::from_relation(&names("p", n), &pairs).unwrap()
        })
    })
}

fn lattice(max: usize) -> impl Strategy<Value = DistLattice> {
    poset(max).prop_map(|p| downsets(&p))
}

proptest! {
    #[test]
    fn downsets_match_the_oracle(p in poset(7)) {
        let l = downsets(&p);
        prop_assert_eq!(l.len(), downsets_brute(&p).len());
    }

    #[test]
    fn birkhoff_round_trip(p in poset(6)) {
        let l = downsets(&p);
        prop_assert!(l.irreducible_poset().isomorphism(&p).is_some());
        let brute: BTreeSet<usize> = join_irreducibles_brute(&l).into_iter().collect();
        let fast: BTreeSet<usize> = join_irreducibles(&l).ones().collect();
        prop_assert_eq!(brute, fast);
        prop_assert!(downsets(&l.irreducible_poset()).is_isomorphic(&l));
    }

    #[test]
    fn meet_and_join_are_bounds(l in lattice(5)) {
        for a in l.elements() {
            for b in l.elements() {
                let m = l.meet(a, b);
                let j = l.join(a, b);
                prop_assert!(l.leq(m, a) && l.leq(m, b) && l.leq(a, j) && l.leq(b, j));
                for c in l.elements() {
                    if l.leq(c, a) && l.leq(c, b) {
                        prop_assert!(l.leq(c, m));
                    }
                    if l.leq(a, c) && l.leq(b, c) {
                        prop_assert!(l.leq(j, c));
                    }
                }
            }
        }
    }

    #[test]
    fn distributive_and_heyting(l in lattice(5)) {
        for a in l.elements() {
            for b in l.elements() {
                let imp = l.heyting_implies(a, b);
                for c in l.elements() {
                    prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                    prop_assert_eq!(l.leq(c, imp), l.leq(l.meet(c, a), b));
                }
            }
        }
    }

    #[test]
    fn renaming_preserves_the_isomorphism_type(l in lattice(5)) {
        let renamed = l.renamed(names("e", l.len())).unwrap();
        prop_assert!(renamed.is_isomorphic(&l));
    }
}

/// Sublocales as subsets: containing top, closed under meets and under `a -> s`.
fn sublocales_brute(l: &DistLattice) -> BTreeSet<u64> {
    let n = l.len();
    let has = |s: u64, x: usize| s >> x & 1 == 1;
    subsets(n)
        .filter(|&s| {
            has(s, l.top())
                && (0..n).all(|x| {
                    !has(s, x)
                        || (0..n).all(|y| (!has(s, y) || has(s, l.meet(x, y))) && has(s, l.heyting_implies(y, x)))
                })
        })
        .collect()
}

#[test]
fn nuclei_correspond_to_sublocales() {
    for l in distributive_lattices(8) {
        let ns = nuclei(&l).unwrap();
        let fixed: BTreeSet<u64> = ns.iter().map(|j| j.fixed_points().iter().fold(0, |acc, &x| acc | 1 << x)).collect();
        assert_eq!(fixed.len(), ns.len());
        assert_eq!(fixed, sublocales_brute(&l));
    }
}

#[test]
fn nuclei_are_closed_under_meet() {
    for l in distributive_lattices(7) {
        let ns = nuclei(&l).unwrap();
        let tables: BTreeSet<Vec<usize>> = ns.iter().map(|j| j.map().to_vec()).collect();
        for a in &ns {
            for b in &ns {
                let joined = sublocale_join(a, b).unwrap();
                assert!(tables.contains(joined.map()));
                assert!(Nucleus::new(&l, joined.map().to_vec()).is_ok());
            }
        }
    }
}

#[test]
fn open_and_closed_are_complementary() {
    for l in distributive_lattices(8) {
        for a in l.elements() {
            let o = open_nucleus(&l, a);
            let c = closed_nucleus(&l, a);
            assert!(sublocale_join(&o, &c).unwrap().is_identity());
            let common: Vec<usize> = o.fixed_points().into_iter().filter(|x| c.fixed_points().contains(x)).collect();
            assert_eq!(common, vec![l.top()]);
        }
    }
}

#[test]
fn free_algebra_sizes() {
    for n in 0..=4usize {
        let g = free_boolean_algebra(&names("x", n)).unwrap();
        assert_eq!(g.algebra.len(), 1 << (1 << n));
        assert_eq!(g.algebra.atoms().len(), 1 << n);
        assert!(g.is_generating());
    }
}

#[test]
fn powerset_algebras() {
    for n in 0..=5 {
        let b = fin_powerset(&names("a", n)).unwrap();
        assert_eq!(b.len(), 1 << n);
        assert_eq!(b.atoms().len(), n);
        for x in b.elements() {
            assert_eq!(b.meet(x, b.not(x)), b.bottom());
            assert_eq!(b.join(x, b.not(x)), b.top());
        }
    }
}

#[test]
fn quotient_by_an_atom() {
    let b = fin_powerset(&names("a", 3)).unwrap();
    let atom = b.atoms()[0];
    assert!(b.quotient(&[(atom, b.bottom())]).is_err());
    // x ~ y iff they agree away from the atom.
    let away = b.not(atom);
    let relation: Vec<(usize, usize)> = b
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| b.meet(x, away) == b.meet(y, away))
        .collect();
    let (q, map) = b.quotient(&relation).unwrap();
    assert_eq!(q.len(), 4);
    assert!(b.is_homomorphism(&q, &map));
    assert_eq!(map[atom], map[b.bottom()]);
}

#[test]
fn cycles_and_non_distributive_orders_are_rejected() {
    assert!(FinPoset::from_relation(&names("p", 2), &[(0, 1), (1, 0)]).is_err());
    let m3 = FinPoset::from_named(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .unwrap();
    assert!(DistLattice::from_poset(&m3).is_err());
    assert!(DistLattice::from_poset(&FinPoset::chain(4)).is_ok());
}
