//! Residuation identities for relative ideals of numerical semigroups,
//! checked both on frozen classics and on proptest-generated inputs
//! against naive wide-window oracles.

use proptest::prelude::*;
use std::sync::Arc;
use videal::backend::Backend;
use videal::classify::{is_v_invertible, v_invertible_direct};
use videal::numsg::{enumerate_offset0_ideals, NumSemigroup, SgIdeal};
use videal::oracle;

fn sg(gens: &[u64]) -> Arc<NumSemigroup> {
    NumSemigroup::new(gens).expect("valid semigroup")
}

#[test]
fn two_three_has_exactly_two_normalized_ideals() {
    let s = sg(&[2, 3]);
    let ideals = enumerate_offset0_ideals(&s).unwrap();
    assert_eq!(ideals.len(), 2);
    assert!(ideals.contains(&SgIdeal::unit(&s)));
    assert!(ideals.contains(&SgIdeal::from_offset_holes(&s, 0, &[]).unwrap()));
}

#[test]
fn three_four_five_has_exactly_four_normalized_ideals() {
    let s = sg(&[3, 4, 5]);
    let ideals = enumerate_offset0_ideals(&s).unwrap();
    assert_eq!(ideals.len(), 4);
    for holes in [&[1i64, 2][..], &[1], &[2], &[]] {
        assert!(ideals.contains(&SgIdeal::from_offset_holes(&s, 0, holes).unwrap()));
    }
}

#[test]
fn maximal_ideal_of_two_three_is_divisorial_but_not_v_invertible() {
    let s = sg(&[2, 3]);
    let m = SgIdeal::from_generators(&s, &[2, 3]).unwrap();
    let naturals = SgIdeal::from_offset_holes(&s, 0, &[]).unwrap();
    assert_eq!(m.inverse(), naturals);
    assert_eq!(m.v_closure(), m);
    assert!(!is_v_invertible(&s, &m));
    assert!(!v_invertible_direct(&s, &m));
}

#[test]
fn a_non_divisorial_ideal_in_three_four_five() {
    let s = sg(&[3, 4, 5]);
    let i = SgIdeal::from_generators(&s, &[3, 4]).unwrap();
    assert!(!i.has(5));
    let closure = SgIdeal::from_offset_holes(&s, 3, &[]).unwrap();
    assert_eq!(i.v_closure(), closure);
    assert_ne!(i.v_closure(), i);
}

#[test]
fn nonnegative_integers_are_never_v_invertible_in_a_nontrivial_semigroup() {
    for gens in [&[2u64, 3][..], &[3, 4, 5], &[3, 5], &[4, 6, 7]] {
        let s = sg(gens);
        let n = SgIdeal::from_offset_holes(&s, 0, &[]).unwrap();
        assert!(!is_v_invertible(&s, &n), "failed for {}", s.describe());
    }
}

fn arb_semigroup() -> impl Strategy<Value = Arc<NumSemigroup>> {
    proptest::collection::btree_set(2u64..=9, 1..4).prop_filter_map(
        "generators must be coprime",
        |set| {
            let gens: Vec<u64> = set.into_iter().collect();
            NumSemigroup::new(&gens).ok()
        },
    )
}

fn arb_ideal(s: Arc<NumSemigroup>) -> impl Strategy<Value = SgIdeal> {
    proptest::collection::vec(-9i64..=9, 1..4)
        .prop_map(move |gens| SgIdeal::from_generators(&s, &gens).expect("nonempty generators"))
}

fn arb_system() -> impl Strategy<Value = (Arc<NumSemigroup>, SgIdeal, SgIdeal, SgIdeal)> {
    arb_semigroup().prop_flat_map(|s| {
        (
            Just(s.clone()),
            arb_ideal(s.clone()),
            arb_ideal(s.clone()),
            arb_ideal(s),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn residuation_identities((s, i, j, k) in arb_system()) {
        let unit = SgIdeal::unit(&s);

        // adjunction: the residual is the largest shift-set multiplying back in
        let r = i.colon(&j);
        prop_assert!(i.contains(&r.sum(&j).unwrap()));
        prop_assert!(r.has(r.offset()));

        // currying
        prop_assert_eq!(i.colon(&j).colon(&k), i.colon(&j.sum(&k).unwrap()));

        // residual turns unions (module sums) into intersections
        prop_assert_eq!(
            unit.colon(&i.union(&j)),
            unit.colon(&i).intersect(&unit.colon(&j))
        );

        // v-closure basics
        let v = i.v_closure();
        prop_assert!(v.contains(&i));
        prop_assert_eq!(v.v_closure(), i.v_closure());
        prop_assert_eq!(v.inverse(), i.inverse());

        // shift equivariance
        prop_assert_eq!(i.shift(3).colon(&j.shift(1)), i.colon(&j).shift(2));
        prop_assert_eq!(i.shift(-2).v_closure(), i.v_closure().shift(-2));

        // inversion is antitone and always lands on a divisorial ideal
        prop_assert!(i.inverse().contains(&i.union(&j).inverse()));
        prop_assert_eq!(i.inverse().v_closure(), i.inverse());

        // self-colon rings grow under inversion and stabilize at the
        // closure: (I − I) ⊆ (I⁻¹ − I⁻¹) = (Iᵛ − Iᵛ)
        let ring_inv = i.inverse().colon(&i.inverse());
        prop_assert!(ring_inv.contains(&i.colon(&i)));
        prop_assert_eq!(v.colon(&v), ring_inv);

        // two-generated inverse identity, shifted form:
        // ((a+S) ∪ (b+S))⁻¹ = −a−b + ((a+S) ∩ (b+S))
        let (a, b) = (i.offset(), j.offset());
        let two_gen = unit.shift(a).union(&unit.shift(b));
        prop_assert_eq!(
            two_gen.inverse(),
            unit.shift(a).intersect(&unit.shift(b)).shift(-a - b)
        );
    }

    #[test]
    fn windowed_arithmetic_agrees_with_wide_oracles((s, i, j, _k) in arb_system()) {
        let c = s.conductor() as i64;
        prop_assert_eq!(i.colon(&j), oracle::sg_colon_wide(&i, &j, 2 * c + 5));
        prop_assert_eq!(i.sum(&j).unwrap(), oracle::sg_sum_naive(&i, &j));
    }

    #[test]
    fn colon_criterion_matches_direct_v_invertibility((s, i, _j, _k) in arb_system()) {
        prop_assert_eq!(is_v_invertible(&s, &i), v_invertible_direct(&s, &i));
    }

    #[test]
    fn exhaustive_ideals_all_satisfy_the_identities(gens in proptest::collection::btree_set(2u64..=7, 1..3)) {
        let gens: Vec<u64> = gens.into_iter().collect();
        let Ok(s) = NumSemigroup::new(&gens) else { return Ok(()) };
        let ideals = enumerate_offset0_ideals(&s).unwrap();
        for i in &ideals {
            prop_assert!(i.v_closure().contains(i));
            prop_assert_eq!(i.v_closure().v_closure(), i.v_closure());
            prop_assert_eq!(is_v_invertible(&s, i), v_invertible_direct(&s, i));
            for j in &ideals {
                prop_assert_eq!(
                    Backend::colon(&s, i, j),
                    oracle::sg_colon_wide(i, j, 2 * (s.conductor() as i64) + 5)
                );
            }
        }
    }
}
