use locus::sierpinski::{
    closed_complement_report, discrete_coreflection, fibrewise_spec, heyting_neg, internal_zero_exp, open_closed_join,
    opens, opfibration_check, ArrowObject, Subterminal,
};
use proptest::prelude::*;

fn sub(bot: bool, top: bool) -> Subterminal {
    Subterminal::new(bot, top).unwrap()
}

#[test]
fn subterminals_are_upward_closed() {
    assert!(Subterminal::new(true, false).is_err());
    assert_eq!(Subterminal::all().len(), 3);
    for u in Subterminal::all() {
        assert_eq!(Subterminal::from_rank(u.rank()).unwrap(), u);
    }
}

#[test]
fn double_negation_fails_only_at_the_generic_point() {
    for u in Subterminal::all() {
        let back = heyting_neg(heyting_neg(u));
        assert_eq!(back == u, u != sub(false, true), "{}", u.label());
        assert!(u.leq(back));
    }
    assert_eq!(heyting_neg(sub(false, true)), sub(false, false));
}

#[test]
fn open_and_closed_cover_the_space() {
    assert_eq!(opens().len(), 3);
    for u in Subterminal::all() {
        let (_, _, join) = open_closed_join(u).unwrap();
        assert!(join.is_identity());
    }
}

#[test]
fn zero_exponential_stalks() {
    // Stalk sizes of 0^u and the point counts of its fibrewise spectrum.
    let expected = [((2, 2), (1, 1)), ((2, 1), (1, 0)), ((1, 1), (0, 0))];
    for (u, (sizes, points)) in Subterminal::all().into_iter().zip(expected) {
        let b = internal_zero_exp(u);
        assert_eq!((b.alg_bot.len(), b.alg_top.len()), sizes, "{}", u.label());
        let s = fibrewise_spec(&b);
        assert_eq!(s.counts(), points, "{}", u.label());
        let (nb, nt) = s.counts();
        assert_eq!(opfibration_check(nb, nt), nb == 0 || nt > 0);
        let core = discrete_coreflection(&s);
        assert!(core.counts().0 <= nb && core.counts().1 == nt);
    }
}

#[test]
fn closed_complement_of_the_generic_point() {
    let r = closed_complement_report();
    assert_eq!((r.fibre_points.bot, r.fibre_points.top), (1, 0));
    assert!(!r.opfibration);
    assert!(r.coreflection_empty);
    assert_eq!((r.zero_exp_algebra_sizes.bot, r.zero_exp_algebra_sizes.top), (2, 1));
}

fn arrow() -> impl Strategy<Value = ArrowObject> {
    (0..=4usize, 1..=4usize).prop_flat_map(|(nb, nt)| {
        proptest::collection::vec(0..nt, nb).prop_map(move |transition| {
            let names = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect();
            ArrowObject::new(names("b", nb), names("t", nt), transition).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn arrow_objects_have_a_transition(x in arrow()) {
        let (nb, nt) = x.counts();
        prop_assert!(opfibration_check(nb, nt));
    }
}

#[test]
fn arrow_objects_need_a_total_transition() {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert!(ArrowObject::new(s(&["a"]), s(&[]), vec![0]).is_err());
    assert!(ArrowObject::new(s(&["a", "b"]), s(&["t"]), vec![0]).is_err());
    assert!(ArrowObject::empty().is_empty());
}
