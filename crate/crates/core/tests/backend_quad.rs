//! Fractional-ideal identities in quadratic orders, checked on frozen
//! classics and on proptest-generated inputs against the grid and
//! covolume oracles.

use proptest::prelude::*;
use videal::classify::{is_v_invertible, v_invertible_direct};
use videal::lattice::Rat;
use videal::oracle;
use videal::quad::{FracIdealQ, QElem, QuadOrder};
use videal::{Backend, Int};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[test]
fn conductor_square_in_the_index_two_order() {
    // P = (2, 1+√−3) in Z[√−3] satisfies P² = 2P, the hallmark of the
    // conductor prime of a non-maximal order
    let order = QuadOrder::new(-3, 2).unwrap();
    let p = order
        .pair_ideal(&QElem::from_ints(2, 0), &order.conductor_omega())
        .unwrap();
    let p2 = p.mul(&p).unwrap();
    assert_eq!(p2, p.scaled_by(&QElem::from_ints(2, 0)).unwrap());
    assert!(!is_v_invertible(&order, &p));
}

#[test]
fn the_same_pair_is_invertible_in_the_maximal_order() {
    let order = QuadOrder::new(-3, 1).unwrap();
    // 1+√−3 = 2ω − 1 + ... in ω-coordinates: ω = (1+√−3)/2, so 1+√−3 = 2ω
    let p = order
        .pair_ideal(&QElem::from_ints(2, 0), &QElem::from_ints(0, 2))
        .unwrap();
    assert!(is_v_invertible(&order, &p));
    assert!(v_invertible_direct(&order, &p));
}

fn arb_order() -> impl Strategy<Value = QuadOrder> {
    (
        prop_oneof![Just(-1i64), Just(-2), Just(-3), Just(-5), Just(2), Just(5)],
        1i64..=3,
    )
        .prop_map(|(d, f)| QuadOrder::new(d, f).expect("valid order"))
}

fn arb_elem() -> impl Strategy<Value = QElem> {
    ((-6i64..=6), (-6i64..=6), (1i64..=3))
        .prop_filter("nonzero", |(p, q, _)| *p != 0 || *q != 0)
        .prop_map(|(p, q, den)| QElem::new(rat(p, den), rat(q, den)))
}

fn arb_ideal(order: QuadOrder) -> impl Strategy<Value = FracIdealQ> {
    (arb_elem(), arb_elem()).prop_map(move |(x, y)| order.pair_ideal(&x, &y).unwrap())
}

fn arb_system() -> impl Strategy<Value = (QuadOrder, FracIdealQ, FracIdealQ, FracIdealQ)> {
    arb_order().prop_flat_map(|o| (Just(o), arb_ideal(o), arb_ideal(o), arb_ideal(o)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn module_identities((order, a, b, c) in arb_system()) {
        let unit = order.unit_ideal();

        // product laws
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&unit).unwrap(), a.clone());

        // sum and intersection are join and meet
        prop_assert!(a.add(&b).unwrap().contains(&a));
        prop_assert!(a.contains(&a.intersect(&b).unwrap()));
        prop_assert!(a
            .intersect(&b.add(&c).unwrap())
            .unwrap()
            .contains(&a.intersect(&b).unwrap().add(&a.intersect(&c).unwrap()).unwrap()));

        // colon adjunction and the inverse-of-sum identity
        let q = a.colon(&b).unwrap();
        prop_assert!(a.contains(&q.mul(&b).unwrap()));
        prop_assert_eq!(
            a.add(&b).unwrap().inverse(),
            a.inverse().intersect(&b.inverse()).unwrap()
        );

        // v-closure calculus
        let av = a.v_closure();
        prop_assert!(av.contains(&a));
        prop_assert_eq!(av.v_closure(), a.v_closure());
        prop_assert_eq!(av.inverse(), a.inverse());
        prop_assert!(unit.contains(&a.mul(&a.inverse()).unwrap()));

        // inversion is antitone and always lands on a divisorial ideal
        let sum = a.add(&b).unwrap();
        prop_assert!(a.inverse().contains(&sum.inverse()));
        prop_assert_eq!(a.inverse().v_closure(), a.inverse());

        // self-colon rings grow under inversion and stabilize at the
        // closure: (A:A) ⊆ (A⁻¹:A⁻¹) = (Aᵛ:Aᵛ)
        let ring_inv = a.inverse().colon(&a.inverse()).unwrap();
        prop_assert!(ring_inv.contains(&a.colon(&a).unwrap()));
        prop_assert_eq!(av.colon(&av).unwrap(), ring_inv);

        // two-generated inverse identity, scaled form:
        // (x, y)⁻¹ = x⁻¹y⁻¹ ((x) ∩ (y))
        let [g1, g2] = a.generators();
        let meet = order
            .principal(&g1)
            .unwrap()
            .intersect(&order.principal(&g2).unwrap())
            .unwrap();
        let scale = Backend::k_mul(
            &order,
            &Backend::k_inv(&order, &g1),
            &Backend::k_inv(&order, &g2),
        );
        prop_assert_eq!(a.inverse(), meet.scaled_by(&scale).unwrap());
    }

    #[test]
    fn scaling_commutes_with_everything((order, a, b, _c) in arb_system()) {
        let x = QElem::from_ints(3, 1);
        let xa = a.scaled_by(&x).unwrap();
        prop_assert_eq!(xa.colon(&b).unwrap(), a.colon(&b).unwrap().scaled_by(&x).unwrap());
        prop_assert_eq!(xa.v_closure(), a.v_closure().scaled_by(&x).unwrap());
        prop_assert_eq!(xa.mul(&b).unwrap(), a.mul(&b).unwrap().scaled_by(&x).unwrap());
        let _ = order;
    }

    #[test]
    fn colon_criterion_matches_direct_v_invertibility((order, a, _b, _c) in arb_system()) {
        prop_assert_eq!(is_v_invertible(&order, &a), v_invertible_direct(&order, &a));
    }
}

proptest! {
    // the grid oracles re-derive each operation pointwise, so fewer cases
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grid_oracles_confirm_colon_and_product((order, a, b, _c) in arb_system()) {
        let q = a.colon(&b).unwrap();
        prop_assert!(oracle::colon_agrees_on_grid(&a, &b, &q, 2));
        let p = a.mul(&b).unwrap();
        prop_assert!(oracle::product_span_saturates(&a, &b, &p, 2));
        let _ = order;
    }

    #[test]
    fn covolume_oracles_confirm_meet_and_join((_order, a, b, _c) in arb_system()) {
        let meet = a.intersect(&b).unwrap();
        prop_assert!(oracle::intersection_matches(
            a.lattice(),
            b.lattice(),
            meet.lattice()
        ));
        let join = a.add(&b).unwrap();
        prop_assert!(oracle::join_matches(a.lattice(), b.lattice(), join.lattice()));
    }
}
