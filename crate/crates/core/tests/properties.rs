use std::sync::Arc;

use nsrig_core::graded::{self, ideal_tensor_torsion};
use nsrig_core::linkage::link;
use nsrig_core::{NumericalSemigroup, RelativeIdeal};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn semigroup() -> impl Strategy<Value = Arc<NumericalSemigroup>> {
    prop::collection::vec(2i64..13, 2..5)
        .prop_filter("gcd 1", |g| g.iter().copied().fold(0, gcd) == 1)
        .prop_map(|g| Arc::new(NumericalSemigroup::new(&g).unwrap()))
}

fn symmetric_semigroup() -> impl Strategy<Value = Arc<NumericalSemigroup>> {
    semigroup().prop_filter("symmetric", |s| s.is_symmetric())
}

fn with_ideal(
    s: impl Strategy<Value = Arc<NumericalSemigroup>>,
    lo: i64,
) -> impl Strategy<Value = (Arc<NumericalSemigroup>, RelativeIdeal)> {
    s.prop_flat_map(move |s| {
        let top = s.conductor() + 4;
        (Just(s), prop::collection::vec(lo..top, 1..4))
    })
    .prop_map(|(s, g)| {
        let i = RelativeIdeal::new(&s, &g).unwrap();
        (s, i)
    })
}

/// An ideal of the ring: each generator is moved up to the next element of `S`.
fn with_integral_ideal(
    s: impl Strategy<Value = Arc<NumericalSemigroup>>,
) -> impl Strategy<Value = (Arc<NumericalSemigroup>, RelativeIdeal)> {
    with_ideal(s, 1).prop_map(|(s, i)| {
        let gens: Vec<i64> = i
            .generators()
            .iter()
            .map(|&g| (g..).find(|&z| s.contains(z)).unwrap())
            .collect();
        let i = RelativeIdeal::new(&s, &gens).unwrap();
        (s, i)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn semigroup_basics(s in semigroup()) {
        let f = s.frobenius();
        prop_assert!(!s.contains(f));
        prop_assert!((f + 1..f + 40).all(|n| s.contains(n)));
        prop_assert_eq!(s.gaps().len(), s.genus());
        for &a in s.generators() {
            for &b in s.generators() {
                prop_assert!(s.contains(a + b));
            }
        }
        let by_pairs = (0..=f).all(|x| s.contains(x) != s.contains(f - x));
        prop_assert_eq!(s.is_symmetric(), by_pairs);
        prop_assert_eq!(s.is_symmetric(), 2 * s.genus() as i64 == f + 1);
        if s.is_complete_intersection() {
            prop_assert!(s.is_symmetric());
        }
        let apery = s.apery(s.multiplicity()).unwrap();
        prop_assert_eq!(apery.len() as i64, s.multiplicity());
    }

    #[test]
    fn ideal_arithmetic((s, e) in with_ideal(semigroup(), -6)) {
        let dual = e.dual();
        prop_assert_eq!(dual.dual().dual(), dual.clone());
        prop_assert!(e.is_subset_of(&dual.dual()));
        let tr = e.trace();
        prop_assert!(tr.is_integral());
        prop_assert_eq!(tr.clone(), e.product(&dual).unwrap());
        let end = e.end_ring();
        prop_assert!(s.elements_upto(s.conductor()).iter().all(|&x| end.contains(x)));
        prop_assert!(e.nu() as i64 <= s.multiplicity());
        prop_assert_eq!(e.nu(), e.nu_nakayama());
        prop_assert_eq!(e.shift_iso(&e.shift(7)), Some(7));
        prop_assert_eq!(e.is_principal(), tr == s.unit_ideal());
    }

    #[test]
    fn products_and_colons(
        (s, e) in with_ideal(semigroup(), -3),
        extra in prop::collection::vec(0i64..20, 1..3),
    ) {
        let f = RelativeIdeal::new(&s, &extra).unwrap();
        let ef = e.product(&f).unwrap();
        prop_assert_eq!(ef.clone(), f.product(&e).unwrap());
        prop_assert!(e.is_subset_of(&ef.colon(&f).unwrap()));
        prop_assert_eq!(e.sum(&f).unwrap().min(), e.min().min(f.min()));
        let meet = e.intersect(&f).unwrap();
        prop_assert!(meet.is_subset_of(&e) && meet.is_subset_of(&f));
        let t1 = ideal_tensor_torsion(&e, &f).unwrap().torsion_length;
        let t2 = ideal_tensor_torsion(&f, &e).unwrap().torsion_length;
        prop_assert_eq!(t1, t2);
        let p = RelativeIdeal::new(&s, &[extra[0]]).unwrap();
        prop_assert_eq!(ideal_tensor_torsion(&e, &p).unwrap().torsion_length, 0);
    }

    #[test]
    fn matlis_and_lengths((s, i) in with_integral_ideal(symmetric_semigroup())) {
        let ring = s.unit_ideal();
        let residue = graded::residue_ring(&i).unwrap();
        let omega = graded::canonical_module(&i).unwrap();
        let conormal = graded::conormal_module(&i).unwrap();
        prop_assert_eq!(residue.length(), ring.quotient_length(&i).unwrap());
        prop_assert_eq!(omega.length(), residue.length());
        prop_assert_eq!(
            graded::hom_length(&conormal, &residue).unwrap(),
            graded::tensor_length(&conormal, &omega).unwrap()
        );
    }

    #[test]
    fn linkage_is_an_involution((s, i) in with_integral_ideal(symmetric_semigroup()), pick in 0usize..4) {
        let gens = i.generators();
        let a = gens[pick % gens.len()] + if pick >= gens.len() { s.multiplicity() } else { 0 };
        let l = link(&i, a).unwrap();
        prop_assert!(l.involution);
        prop_assert!(l.length_additive);
        prop_assert!(l.end_equal);
    }
}
