use proptest::prelude::*;
use ternop::algebra::format::{parse_structure, serialize};
use ternop::classify::has_property;
use ternop::construct::{dual_table, natural_ternary, pi_ternary, Permutation3};
use ternop::iso::{automorphism_tables, canonical_form, is_isomorphism, iso_tables};
use ternop::{check_clause, parse_clause, Binding, OpTable, PropertyName, Structure};

fn binary_table(max_n: usize) -> impl Strategy<Value = OpTable> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n)
            .prop_map(move |e| OpTable::new(2, n, e).expect("table"))
    })
}

fn table_and_perm(max_n: usize) -> impl Strategy<Value = (OpTable, Vec<usize>)> {
    binary_table(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn relabelled_tables_are_found_isomorphic((t, p) in table_and_perm(6)) {
        let u = t.permuted(&p);
        let f = iso_tables(std::slice::from_ref(&t), std::slice::from_ref(&u)).expect("isomorphism exists");
        prop_assert!(is_isomorphism(&[t], &[u], &f));
    }

    #[test]
    fn canonical_form_is_a_class_invariant((t, p) in table_and_perm(5)) {
        let (c1, f) = canonical_form(std::slice::from_ref(&t));
        let (c2, _) = canonical_form(&[t.permuted(&p)]);
        prop_assert_eq!(&c1, &c2);
        prop_assert_eq!(&t.permuted(&f.forward), &c1[0]);
    }

    #[test]
    fn automorphisms_form_a_group(t in binary_table(5)) {
        let auts = automorphism_tables(std::slice::from_ref(&t));
        prop_assert!(auts.first().is_some_and(|f| f.is_identity()));
        for f in &auts {
            prop_assert!(auts.contains(&f.inverse()));
            prop_assert_eq!(&t.permuted(&f.forward), &t);
        }
    }

    #[test]
    fn text_format_round_trips(t in binary_table(6)) {
        let s = Structure::from_binary("s", t);
        let back = parse_structure(&serialize(&s)).expect("parses");
        prop_assert_eq!(back, s);
    }

    #[test]
    fn dual_is_an_involution(t in binary_table(6)) {
        prop_assert_eq!(dual_table(&dual_table(&t)), t);
    }

    #[test]
    fn permuted_ternaries_compose_back(t in binary_table(4), i in 0usize..6) {
        let nat = natural_ternary(&t);
        let p = Permutation3::all()[i];
        let inverse = Permutation3::all().into_iter().find(|q| pi_ternary(&pi_ternary(&nat, p), *q) == nat);
        prop_assert!(inverse.is_some());
    }

    #[test]
    fn associative_tables_give_semiheaps(t in binary_table(4)) {
        let s = Structure::from_binary("s", t.clone());
        let b = Binding::default();
        if has_property(&s, PropertyName::Associative, &b).unwrap() {
            let ts = s.with_op("t", natural_ternary(&t)).unwrap();
            prop_assert!(has_property(&ts, PropertyName::Semiheap, &b).unwrap());
        }
    }

    #[test]
    fn clause_verdict_matches_direct_evaluation(t in binary_table(4)) {
        let s = Structure::from_binary("s", t.clone());
        let c = parse_clause("(x*y)*z = (z*y)*x").unwrap();
        let r = check_clause(&s, &c, &Binding::default()).unwrap();
        let n = t.order();
        let direct = (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| t.get2(t.get2(x, y), z) != t.get2(t.get2(z, y), x));
        prop_assert_eq!(r.holds(), direct.is_none());
        if let Some(a) = r.counterexample {
            let (x, y, z) = (a.get('x').unwrap(), a.get('y').unwrap(), a.get('z').unwrap());
            prop_assert_ne!(t.get2(t.get2(x, y), z), t.get2(t.get2(z, y), x));
        }
    }
}
