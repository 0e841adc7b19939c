use ordmon::chain_maps::{adjoin_bottom, brute_force_enumerate, in_family};
use ordmon::normal_forms::{check_derivation, normalize_with, recognize};
use ordmon::presentations::build_presentation;
use ordmon::words::{alphabet, evaluate};
use ordmon::{ChainSize, Family, PartialMap, Word};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn element(fam: Family, k: usize) -> impl Strategy<Value = PartialMap> {
    let all = brute_force_enumerate(fam, ChainSize::new(k).unwrap()).unwrap();
    prop::sample::select(all)
}

fn triple() -> impl Strategy<Value = (Family, PartialMap, PartialMap, PartialMap)> {
    (family(), 1usize..=5)
        .prop_flat_map(|(fam, k)| (Just(fam), element(fam, k), element(fam, k), element(fam, k)))
}

fn word(fam: Family, k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let n = ChainSize::new(k).unwrap();
    let letters = alphabet(fam, n);
    prop::collection::vec(prop::sample::select(letters), 0..=max_len)
        .prop_map(move |l| Word::new(fam, n, l).unwrap())
}

fn presented_word(max_len: usize) -> impl Strategy<Value = Word> {
    (prop::sample::select(Family::PRESENTED.to_vec()), 2usize..=6)
        .prop_flat_map(move |(fam, k)| word(fam, k, max_len))
}

fn normalizable_word(max_len: usize) -> impl Strategy<Value = Word> {
    (
        prop::sample::select(vec![Family::D, Family::ID, Family::IC]),
        2usize..=7,
    )
        .prop_flat_map(move |(fam, k)| word(fam, k, max_len))
}

proptest! {
    #[test]
    fn composition_is_associative_and_closed((fam, x, y, z) in triple()) {
        let xy = x.compose(&y).unwrap();
        prop_assert!(in_family(&xy, fam));
        prop_assert_eq!(xy.compose(&z).unwrap(), x.compose(&y.compose(&z).unwrap()).unwrap());
    }

    #[test]
    fn adjoin_bottom_is_a_homomorphism((x, y) in (1usize..=5).prop_flat_map(|k| (element(Family::PD, k), element(Family::PD, k)))) {
        let lhs = adjoin_bottom(&x.compose(&y).unwrap()).unwrap();
        let rhs = adjoin_bottom(&x).unwrap().compose(&adjoin_bottom(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism((u, v) in presented_word(8).prop_flat_map(|u| {
        let v = word(u.family(), u.n().get(), 8);
        (Just(u), v)
    })) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(evaluate(&uv), evaluate(&u).compose(&evaluate(&v)).unwrap());
        prop_assert!(in_family(&evaluate(&uv), u.family()));
    }

    #[test]
    fn normalizers_preserve_value(w in normalizable_word(16)) {
        let p = build_presentation(w.family(), w.n()).unwrap();
        let (nf, d) = normalize_with(&p, &w).unwrap();
        prop_assert_eq!(evaluate(&nf), evaluate(&w));
        prop_assert!(recognize(&nf).unwrap().is_some());
        prop_assert!(check_derivation(&d, &p));
        let (again, d2) = normalize_with(&p, &nf).unwrap();
        prop_assert_eq!(again, nf);
        prop_assert!(d2.steps.is_empty());
    }
}
