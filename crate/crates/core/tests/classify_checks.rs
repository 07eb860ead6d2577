//! Classifier behavior on domains whose answers are known exactly:
//! maximal orders and the trivial semigroup satisfy everything, the
//! index-2 order in Q(sqrt(-3)) and <2,3> fail everything that implies
//! v-invertibility of the conductor/maximal ideal.

use videal::classify::{
    classify, is_t_invertible, is_v_invertible, krull_check, mori_witness, pvmd_check,
    v_finite_type_witness, v_invertible_direct, vdomain_pair_check, vdomain_search, Evidence,
    SearchBounds, Status,
};
use videal::{Backend, NumSemigroup, QElem, QuadOrder};

fn small_bounds() -> SearchBounds {
    SearchBounds {
        pair_height: 3,
        ideal_bound: 4,
        samples: 40,
        recheck_height: 8,
        seed: 42,
    }
}

fn assert_all_hold<B: Backend>(c: &videal::Classification<B>) {
    for (name, v) in [
        ("v-domain", &c.v_domain),
        ("v-finite-conductor", &c.v_finite_conductor),
        ("pvmd", &c.pvmd),
        ("cic", &c.completely_integrally_closed),
        ("integrally-closed", &c.integrally_closed),
        ("mori", &c.mori),
        ("krull", &c.krull),
        ("t-invertible", &c.t_invertible),
    ] {
        assert_eq!(v.status, Status::Holds, "{} should hold", name);
        assert!(
            !matches!(v.evidence, Evidence::BoundedSweep),
            "{} must not be certified by a bounded sweep alone",
            name
        );
    }
}

#[test]
fn gaussian_integers_satisfy_everything() {
    let d = QuadOrder::new(-1, 1).unwrap();
    let c = classify(&d, &small_bounds()).unwrap();
    assert_all_hold(&c);
    assert_eq!(c.oracle, Some(true));
}

#[test]
fn eisenstein_like_maximal_order_satisfies_everything() {
    let d = QuadOrder::new(-3, 1).unwrap();
    let c = classify(&d, &small_bounds()).unwrap();
    assert_all_hold(&c);
}

#[test]
fn index_two_order_fails_the_v_properties() {
    let d = QuadOrder::new(-3, 2).unwrap();
    let c = classify(&d, &small_bounds()).unwrap();
    assert_eq!(c.oracle, Some(false));

    for (name, v) in [
        ("v-domain", &c.v_domain),
        ("pvmd", &c.pvmd),
        ("cic", &c.completely_integrally_closed),
        ("integrally-closed", &c.integrally_closed),
        ("krull", &c.krull),
        ("t-invertible", &c.t_invertible),
    ] {
        assert_eq!(v.status, Status::Refuted, "{} should be refuted", name);
        let r = v.refutation.as_ref().expect("refutation must be attached");
        assert!(r.recheck(&d), "{} witness must recheck from scratch", name);
        // the only proper overring of this order inside its field is the
        // maximal order, so every failing colon ring must be exactly it
        assert_eq!(
            r.lhs,
            d.maximal_order_ideal(),
            "{} witness colon ring must be the maximal order",
            name
        );
    }
    assert_eq!(c.v_finite_conductor.status, Status::Holds);
    assert_eq!(c.mori.status, Status::Holds);
}

#[test]
fn classic_conductor_pair_fails_all_four_conditions() {
    let d = QuadOrder::new(-3, 2).unwrap();
    let two = QElem::from_ints(2, 0);
    let fw = d.conductor_omega(); // 1 + sqrt(-3)
    let pc = vdomain_pair_check(&d, &two, &fw).unwrap();
    assert_eq!(pc.conditions, [false; 4]);
    assert_eq!(pc.intersection_ring, d.maximal_order_ideal());

    // the same pair in the maximal order is perfectly v-invertible
    let ok = QuadOrder::new(-3, 1).unwrap();
    let pc = vdomain_pair_check(&ok, &two, &QElem::from_ints(0, 2)).unwrap();
    assert_eq!(pc.conditions, [true; 4]);
}

#[test]
fn vdomain_refutation_is_probe_free_within_default_bounds() {
    let d = QuadOrder::new(-3, 2).unwrap();
    let v = vdomain_search(&d, &small_bounds()).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let r = v.refutation.unwrap();
    assert!(!r.from_probe, "a height-3 sweep already contains a witness");
    assert!(r.pair.is_some());
    assert!(r.recheck(&d));
}

#[test]
fn trivial_semigroup_satisfies_everything() {
    let n = NumSemigroup::new(&[1]).unwrap();
    let c = classify(&n, &small_bounds()).unwrap();
    assert_all_hold(&c);
    // with genus 0 the exhaustive sweep sees exactly one ideal class
    assert_eq!(c.oracle, Some(true));
}

#[test]
fn two_three_semigroup_fails_exactly_like_a_non_maximal_order() {
    let s = NumSemigroup::new(&[2, 3]).unwrap();
    let c = classify(&s, &small_bounds()).unwrap();
    assert_eq!(c.oracle, Some(false));

    for (name, v) in [
        ("v-domain", &c.v_domain),
        ("pvmd", &c.pvmd),
        ("cic", &c.completely_integrally_closed),
        ("integrally-closed", &c.integrally_closed),
        ("krull", &c.krull),
        ("t-invertible", &c.t_invertible),
    ] {
        assert_eq!(v.status, Status::Refuted, "{} should be refuted", name);
        assert!(
            v.refutation.as_ref().unwrap().recheck(&s),
            "{} witness must recheck",
            name
        );
    }
    assert_eq!(c.v_finite_conductor.status, Status::Holds);
    assert_eq!(c.mori.status, Status::Holds);

    // the maximal-ideal pair (2, 3) is the classic witness
    let pc = vdomain_pair_check(&s, &2, &3).unwrap();
    assert_eq!(pc.conditions, [false; 4]);
}

#[test]
fn finite_type_witnesses_verify_on_both_backends() {
    let d = QuadOrder::new(-3, 2).unwrap();
    let two = QElem::from_ints(2, 0);
    let fw = d.conductor_omega();
    let w = v_finite_type_witness(&d, &two, &fw).unwrap();
    assert!(!w.cogenerators.is_empty());
    assert_eq!(w.cogenerators.len(), w.cogenerators_in_ideal.len());

    let s = NumSemigroup::new(&[3, 5]).unwrap();
    let w = v_finite_type_witness(&s, &3, &5).unwrap();
    assert!(!w.inverse_cogenerators.is_empty());
}

#[test]
fn colon_criterion_matches_the_definition_on_probes() {
    let d = QuadOrder::new(-3, 2).unwrap();
    let (x, y) = d.defect_probe().unwrap();
    let probe = Backend::pair_ideal(&d, &x, &y);
    assert!(!is_v_invertible(&d, &probe));
    assert!(!v_invertible_direct(&d, &probe));
    assert!(!is_t_invertible(&d, &probe).t_invertible);

    let unit = Backend::unit_ideal(&d);
    assert!(is_v_invertible(&d, &unit));
    assert!(v_invertible_direct(&d, &unit));
    assert!(is_t_invertible(&d, &unit).t_invertible);
}

#[test]
fn mori_witnesses_use_the_basis_pair_at_worst() {
    let d = QuadOrder::new(-5, 1).unwrap();
    let a = Backend::pair_ideal(&d, &QElem::from_ints(2, 0), &QElem::from_ints(1, 1));
    let w = mori_witness(&d, &a).unwrap();
    assert!(w.witnesses.len() <= 2);
    assert!(w.witnesses_in_ideal.iter().all(|&b| b));

    let s = NumSemigroup::new(&[5, 11, 12]).unwrap();
    let m = videal::SgIdeal::from_generators(&s, &[5, 11]).unwrap();
    let w = mori_witness(&s, &m).unwrap();
    assert!(w.witnesses_in_ideal.iter().all(|&b| b));
}

#[test]
fn standalone_checks_agree_with_the_full_classification() {
    let d = QuadOrder::new(-5, 2).unwrap();
    let b = small_bounds();
    let c = classify(&d, &b).unwrap();
    assert_eq!(pvmd_check(&d, &b).unwrap().status, c.pvmd.status);
    assert_eq!(krull_check(&d, &b).unwrap().status, c.krull.status);
    assert_eq!(vdomain_search(&d, &b).unwrap().status, c.v_domain.status);
}

#[test]
fn real_quadratic_orders_classify_cleanly() {
    // d = 5 is 1 mod 4: the maximal order is Z[(1+sqrt 5)/2]
    let ok = QuadOrder::new(5, 1).unwrap();
    let c = classify(&ok, &small_bounds()).unwrap();
    assert_all_hold(&c);

    let bad = QuadOrder::new(5, 2).unwrap();
    let c = classify(&bad, &small_bounds()).unwrap();
    assert_eq!(c.v_domain.status, Status::Refuted);
    assert_eq!(c.krull.status, Status::Refuted);
}
