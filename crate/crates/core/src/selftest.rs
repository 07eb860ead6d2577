//! Executable self-checks: every load-bearing arithmetic path is played
//! against an independent reference (brute-force oracles, definitional
//! routes, structure-theory oracles) on seeded random inputs, and the
//! cross-checks themselves are proven able to fail by injecting faults
//! into a wrapped backend.

use crate::backend::Backend;
use crate::classify::{
    classify, is_v_invertible, v_invertible_direct, vdomain_pair_check, vdomain_search,
    ClassifyError, SearchBounds, Status,
};
use crate::lattice::{rat_int, Int, Lattice2, Rat};
use crate::numsg::NumSemigroup;
use crate::oracle;
use crate::quad::{QElem, QuadOrder};
use crate::report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct SelfTestReport {
    pub results: Vec<SuiteResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "{:<32} {}  ({})\n",
                r.name,
                if r.passed { "ok" } else { "FAILED" },
                r.detail
            ));
        }
        out.push_str(&format!(
            "\nself-test: {} of {} suites passed\n",
            self.results.iter().filter(|r| r.passed).count(),
            self.results.len()
        ));
        out
    }
}

fn suite<F: FnOnce() -> Result<String, String>>(name: &'static str, f: F) -> SuiteResult {
    match f() {
        Ok(detail) => SuiteResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => SuiteResult {
            name,
            passed: false,
            detail,
        },
    }
}

/// Run every suite with the given seed; `samples` scales the random
/// input counts. Output is deterministic for fixed inputs.
pub fn run(seed: u64, samples: u32) -> SelfTestReport {
    let n = samples.max(10);
    SelfTestReport {
        results: vec![
            suite("lattice-canonical-form", || lattice_canonical_form(seed, n)),
            suite("lattice-membership-oracle", || {
                lattice_membership_oracle(seed, n)
            }),
            suite("lattice-meet-join-oracle", || {
                lattice_meet_join_oracle(seed, n / 2)
            }),
            suite("quad-colon-product-oracle", || {
                quad_colon_product_oracle(seed, (n / 10).max(5))
            }),
            suite("quad-identity-suite", || quad_identity_suite(seed, n / 2)),
            suite("semigroup-window-oracle", || {
                semigroup_window_oracle(seed, n)
            }),
            suite("v-invertibility-differential", || {
                v_invertibility_differential(seed, n)
            }),
            suite("pair-equivalence-sweep", || pair_equivalence_sweep(seed, n)),
            suite("classification-grid", classification_grid),
            suite("report-determinism", report_determinism),
            suite("fault-injection", fault_injection),
        ],
    }
}

fn orders() -> Vec<QuadOrder> {
    [
        (-1, 1),
        (-3, 1),
        (-3, 2),
        (-5, 1),
        (-5, 2),
        (2, 1),
        (5, 1),
        (5, 3),
    ]
    .into_iter()
    .map(|(d, f)| QuadOrder::new(d, f).expect("valid test order"))
    .collect()
}

fn semigroups() -> Vec<Arc<NumSemigroup>> {
    [&[1u64][..], &[2, 3], &[3, 4, 5], &[3, 5], &[5, 11, 12]]
        .into_iter()
        .map(|g| NumSemigroup::new(g).expect("valid test semigroup"))
        .collect()
}

fn random_lattice(rng: &mut ChaCha8Rng) -> Lattice2 {
    loop {
        let rows: Vec<(Int, Int)> = (0..3)
            .map(|_| {
                (
                    Int::from(rng.gen_range(-9i64..=9)),
                    Int::from(rng.gen_range(-9i64..=9)),
                )
            })
            .collect();
        if let Ok(lat) = Lattice2::hnf(&rows) {
            return lat;
        }
    }
}

fn lattice_canonical_form(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c61_7431);
    for i in 0..n {
        let lat = random_lattice(&mut rng);
        // unimodular row mixes and row swaps must not change the form
        let [r1, r2] = lat.basis();
        let k = Int::from(rng.gen_range(-3i64..=3));
        let mixed = [
            (r2.0.clone(), r2.1.clone()),
            (&r1.0 + &k * &r2.0, &r1.1 + &k * &r2.1),
        ];
        let remade = Lattice2::hnf(&mixed).map_err(|e| format!("case {}: {}", i, e))?;
        let rescaled = remade.basis();
        if rescaled != lat.basis() {
            return Err(format!("case {}: unimodular mix changed the basis", i));
        }
        // scaling both rows by an integer moves content into the scale
        let m = Int::from(rng.gen_range(2i64..=5));
        let scaled_rows = [(&m * &r1.0, &m * &r1.1), (&m * &r2.0, &m * &r2.1)];
        let scaled = Lattice2::hnf(&scaled_rows).map_err(|e| format!("case {}: {}", i, e))?;
        if scaled.basis() != lat.basis() {
            return Err(format!(
                "case {}: content was not extracted to the scale",
                i
            ));
        }
    }
    Ok(format!("{} random lattices", n))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        Int::from(rng.gen_range(-12i64..=12)),
        Int::from([1i64, 2, 3, 4][rng.gen_range(0..4)]),
    )
}

fn lattice_membership_oracle(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d65_6d62);
    for i in 0..n {
        let lat = random_lattice(&mut rng);
        // random rational points and guaranteed members both agree
        for _ in 0..8 {
            let p = (random_rat(&mut rng), random_rat(&mut rng));
            if lat.member(&p) != oracle::member_cramer(&lat, &p) {
                return Err(format!("case {}: membership disagreement at {:?}", i, p));
            }
        }
        let [r1, r2] = lat.rows();
        let m = rat_int(rng.gen_range(-4i64..=4));
        let k = rat_int(rng.gen_range(-4i64..=4));
        let inside = (&r1.0 * &m + &r2.0 * &k, &r1.1 * &m + &r2.1 * &k);
        if !lat.member(&inside) || !oracle::member_cramer(&lat, &inside) {
            return Err(format!("case {}: a lattice combination was rejected", i));
        }
    }
    Ok(format!("{} lattices, 9 points each", n))
}

fn lattice_meet_join_oracle(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d65_6574);
    for i in 0..n {
        let l1 = random_lattice(&mut rng);
        let l2 = random_lattice(&mut rng);
        let meet = l1.intersect(&l2);
        if !oracle::intersection_matches(&l1, &l2, &meet) {
            return Err(format!(
                "case {}: intersection fails the covolume oracle",
                i
            ));
        }
        let join = l1.join(&l2);
        if !oracle::join_matches(&l1, &l2, &join) {
            return Err(format!("case {}: join fails the covolume oracle", i));
        }
        if !oracle::dual_matches(&l1, &l1.dual()) {
            return Err(format!("case {}: dual fails the pairing oracle", i));
        }
        if l1.dual().dual().basis() != l1.basis() {
            return Err(format!("case {}: dual is not an involution", i));
        }
    }
    Ok(format!("{} lattice pairs", n))
}

fn random_ideal(rng: &mut ChaCha8Rng, order: &QuadOrder) -> crate::quad::FracIdealQ {
    QuadOrder::sample_ideal(order, rng, 4)
}

fn quad_colon_product_oracle(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f_6c6f);
    let mut cases = 0u32;
    for order in orders() {
        for _ in 0..n {
            let a = random_ideal(&mut rng, &order);
            let b = random_ideal(&mut rng, &order);
            let c = a.colon(&b).map_err(|e| e.to_string())?;
            if !oracle::colon_agrees_on_grid(&a, &b, &c, 2) {
                return Err(format!(
                    "colon disagreement in {} for A = {}, B = {}",
                    order.describe(),
                    a.render(),
                    b.render()
                ));
            }
            let p = a.mul(&b).map_err(|e| e.to_string())?;
            if !oracle::product_span_saturates(&a, &b, &p, 2) {
                return Err(format!(
                    "product span not saturated in {} for A = {}, B = {}",
                    order.describe(),
                    a.render(),
                    b.render()
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{} colon/product cases", cases))
}

fn quad_identity_suite(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6964_656e);
    let mut cases = 0u32;
    for order in orders() {
        let unit = Backend::unit_ideal(&order);
        for _ in 0..n {
            let a = random_ideal(&mut rng, &order);
            let b = random_ideal(&mut rng, &order);
            let err = |what: &str| {
                Err(format!(
                    "{} failed in {} for A = {}, B = {}",
                    what,
                    order.describe(),
                    a.render(),
                    b.render()
                ))
            };
            // residuation galois connection and v-operation basics
            if !a.contains(&a.mul(&a.inverse()).unwrap().mul(&a).unwrap()) {
                // A·A⁻¹·A ⊆ A
                return err("A(D:A)A ⊆ A");
            }
            if !a.v_closure().contains(&a) {
                return err("A ⊆ Av");
            }
            let av = a.v_closure();
            if av.v_closure() != av {
                return err("idempotence of the v-closure");
            }
            if !unit.contains(&a.mul(&a.inverse()).unwrap()) {
                return err("A·A⁻¹ ⊆ D");
            }
            // colon turns sums into intersections
            let s = a.add(&b).unwrap();
            let lhs = unit.colon(&s).unwrap();
            let rhs = a.inverse().intersect(&b.inverse()).unwrap();
            if lhs != rhs {
                return err("(D : A+B) = A⁻¹ ∩ B⁻¹");
            }
            // scale equivariance of the v-closure
            let x = order.sample_element(&mut rng, 4);
            let xa = a.scaled_by(&x).unwrap();
            if xa.v_closure() != av.scaled_by(&x).unwrap() {
                return err("(xA)v = x(Av)");
            }
            // t-closure guard: monotone over two-generated subideals,
            // and the basis pair already attains it
            let [g1, g2] = a.generators();
            let basis_pair = order.pair_ideal(&g1, &g2).unwrap();
            if basis_pair.v_closure() != a.t_closure() {
                return err("t-closure attained by the basis subideal");
            }
            let e1 = Backend::ideal_elements(&order, &a, 2);
            if e1.len() >= 2 {
                let h = order.pair_ideal(&e1[0], &e1[1]).unwrap();
                if !av.contains(&h.v_closure()) {
                    return err("Hv ⊆ Av for finitely generated H ⊆ A");
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{} identity cases", cases))
}

fn semigroup_window_oracle(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7367_7367);
    let mut cases = 0u32;
    for sg in semigroups() {
        let c = sg.conductor() as i64;
        for _ in 0..n {
            let i = Backend::sample_ideal(&sg, &mut rng, 9);
            let j = Backend::sample_ideal(&sg, &mut rng, 9);
            if i.colon(&j) != oracle::sg_colon_wide(&i, &j, 3 * c + 2) {
                return Err(format!(
                    "windowed colon deviates from the wide residual in {} for I = {}, J = {}",
                    sg.describe(),
                    i.render(),
                    j.render()
                ));
            }
            if i.sum(&j).unwrap() != oracle::sg_sum_naive(&i, &j) {
                return Err(format!(
                    "windowed sum deviates from the naive sum in {} for I = {}, J = {}",
                    sg.describe(),
                    i.render(),
                    j.render()
                ));
            }
            // translation invariance
            let k = rng.gen_range(-6i64..=6);
            if i.shift(k).colon(&j.shift(k)) != i.colon(&j) {
                return Err(format!(
                    "residual is not shift invariant in {}",
                    sg.describe()
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{} window cases", cases))
}

fn v_invertibility_differential(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7669_6e76);
    let mut cases = 0u32;
    for order in orders() {
        for _ in 0..n {
            let a = Backend::sample_ideal(&order, &mut rng, 5);
            if is_v_invertible(&order, &a) != v_invertible_direct(&order, &a) {
                return Err(format!(
                    "colon criterion and definition disagree in {} for A = {}",
                    order.describe(),
                    a.render()
                ));
            }
            cases += 1;
        }
    }
    for sg in semigroups() {
        for _ in 0..n {
            let a = Backend::sample_ideal(&sg, &mut rng, 9);
            if is_v_invertible(&sg, &a) != v_invertible_direct(&sg, &a) {
                return Err(format!(
                    "colon criterion and definition disagree in {} for I = {}",
                    sg.describe(),
                    a.render()
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{} ideals checked along both routes", cases))
}

fn pair_equivalence_sweep(seed: u64, n: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7061_6972);
    let mut cases = 0u32;
    for order in orders() {
        for _ in 0..n {
            let x = order.sample_element(&mut rng, 6);
            let y = order.sample_element(&mut rng, 6);
            vdomain_pair_check(&order, &x, &y).map_err(|e| e.to_string())?;
            cases += 1;
        }
    }
    for sg in semigroups() {
        let elems = Backend::domain_elements(&sg, 12);
        for _ in 0..n {
            let x = elems[rng.gen_range(0..elems.len())];
            let y = elems[rng.gen_range(0..elems.len())];
            vdomain_pair_check(&sg, &x, &y).map_err(|e| e.to_string())?;
            cases += 1;
        }
    }
    Ok(format!("{} pairs, four routes each", cases))
}

fn classification_grid() -> Result<String, String> {
    let bounds = SearchBounds {
        pair_height: 3,
        ideal_bound: 4,
        samples: 25,
        recheck_height: 6,
        seed: 42,
    };
    let mut cases = 0u32;
    for order in orders() {
        let c = classify(&order, &bounds).map_err(|e| e.to_string())?;
        let expect = order.is_maximal_order();
        let krull_holds = c.krull.status == Status::Holds;
        if krull_holds != expect {
            return Err(format!(
                "{}: krull verdict disagrees with maximality",
                order.describe()
            ));
        }
        for v in [&c.v_domain, &c.krull, &c.t_invertible, &c.pvmd] {
            if let Some(r) = &v.refutation {
                if !r.recheck(&order) {
                    return Err(format!(
                        "{}: a witness failed its recheck",
                        order.describe()
                    ));
                }
            }
        }
        cases += 1;
    }
    for sg in semigroups() {
        let c = classify(&sg, &bounds).map_err(|e| e.to_string())?;
        if (c.krull.status == Status::Holds) != sg.is_trivial() {
            return Err(format!(
                "{}: krull verdict disagrees with triviality",
                sg.describe()
            ));
        }
        if let Some(r) = &c.v_domain.refutation {
            if !r.recheck(&sg) {
                return Err(format!("{}: a witness failed its recheck", sg.describe()));
            }
        }
        cases += 1;
    }
    Ok(format!("{} systems classified and cross-checked", cases))
}

fn report_determinism() -> Result<String, String> {
    let bounds = SearchBounds {
        pair_height: 3,
        ideal_bound: 3,
        samples: 20,
        recheck_height: 6,
        seed: 7,
    };
    let order = QuadOrder::new(-3, 2).expect("valid order");
    let a = report::quadratic_report(&order, &bounds, &[2, 3, 5]).map_err(|e| e.to_string())?;
    let b = report::quadratic_report(&order, &bounds, &[2, 3, 5]).map_err(|e| e.to_string())?;
    if report::to_json(&a) != report::to_json(&b) {
        return Err("two identical runs produced different documents".into());
    }
    let sg = NumSemigroup::new(&[2, 3]).expect("valid semigroup");
    let a = report::semigroup_report(&sg, &bounds).map_err(|e| e.to_string())?;
    let b = report::semigroup_report(&sg, &bounds).map_err(|e| e.to_string())?;
    if report::to_json(&a) != report::to_json(&b) {
        return Err("two identical semigroup runs produced different documents".into());
    }
    Ok("byte-identical reruns on both backends".into())
}

// ---- fault injection -------------------------------------------------------

/// Deliberate arithmetic corruption, used to prove the consistency
/// checks can actually fire.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fault {
    /// v-closure returns its argument unchanged.
    VClosureIdentity,
    /// Intersection returns its first argument.
    IntersectFirst,
    /// The structure-theory oracle reports the opposite verdict.
    OracleInverted,
}

impl Fault {
    pub fn parse(s: &str) -> Option<Fault> {
        match s {
            "v-closure-identity" => Some(Fault::VClosureIdentity),
            "intersect-first" => Some(Fault::IntersectFirst),
            "oracle-inverted" => Some(Fault::OracleInverted),
            _ => None,
        }
    }

    pub fn names() -> [&'static str; 3] {
        ["v-closure-identity", "intersect-first", "oracle-inverted"]
    }
}

/// A backend with one deliberately wrong operation.
pub struct FaultyBackend<B: Backend> {
    pub inner: B,
    pub fault: Fault,
}

impl<B: Backend> Backend for FaultyBackend<B> {
    type K = B::K;
    type Ideal = B::Ideal;

    fn describe(&self) -> String {
        format!("{} [faulty: {:?}]", self.inner.describe(), self.fault)
    }

    fn unit_ideal(&self) -> Self::Ideal {
        self.inner.unit_ideal()
    }

    fn principal(&self, x: &Self::K) -> Self::Ideal {
        self.inner.principal(x)
    }

    fn pair_ideal(&self, x: &Self::K, y: &Self::K) -> Self::Ideal {
        self.inner.pair_ideal(x, y)
    }

    fn add(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        self.inner.add(a, b)
    }

    fn mul(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        self.inner.mul(a, b)
    }

    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        if self.fault == Fault::IntersectFirst {
            return a.clone();
        }
        self.inner.intersect(a, b)
    }

    fn colon(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        self.inner.colon(a, b)
    }

    fn v_closure(&self, a: &Self::Ideal) -> Self::Ideal {
        if self.fault == Fault::VClosureIdentity {
            return a.clone();
        }
        self.inner.v_closure(a)
    }

    fn contains(&self, outer: &Self::Ideal, inner: &Self::Ideal) -> bool {
        self.inner.contains(outer, inner)
    }

    fn ideal_contains_k(&self, a: &Self::Ideal, x: &Self::K) -> bool {
        self.inner.ideal_contains_k(a, x)
    }

    fn k_mul(&self, x: &Self::K, y: &Self::K) -> Self::K {
        self.inner.k_mul(x, y)
    }

    fn k_inv(&self, x: &Self::K) -> Self::K {
        self.inner.k_inv(x)
    }

    fn render_k(&self, x: &Self::K) -> String {
        self.inner.render_k(x)
    }

    fn render_ideal(&self, a: &Self::Ideal) -> String {
        self.inner.render_ideal(a)
    }

    fn domain_elements(&self, height: u32) -> Vec<Self::K> {
        self.inner.domain_elements(height)
    }

    fn ideal_generators(&self, a: &Self::Ideal) -> Vec<Self::K> {
        self.inner.ideal_generators(a)
    }

    fn ideal_elements(&self, a: &Self::Ideal, height: u32) -> Vec<Self::K> {
        self.inner.ideal_elements(a, height)
    }

    fn enumerate_ideals(&self, bound: u32) -> Vec<Self::Ideal> {
        self.inner.enumerate_ideals(bound)
    }

    fn ideals_exhaustive(&self) -> bool {
        self.inner.ideals_exhaustive()
    }

    fn sample_ideal(&self, rng: &mut ChaCha8Rng, height: u32) -> Self::Ideal {
        self.inner.sample_ideal(rng, height)
    }

    fn oracle_all_properties_hold(&self) -> Option<bool> {
        let v = self.inner.oracle_all_properties_hold();
        if self.fault == Fault::OracleInverted {
            return v.map(|b| !b);
        }
        v
    }

    fn oracle_name(&self) -> &'static str {
        self.inner.oracle_name()
    }

    fn defect_probe(&self) -> Option<(Self::K, Self::K)> {
        self.inner.defect_probe()
    }
}

/// Run one classifier against a deliberately broken backend and return
/// the error it raised; `None` means the corruption went unnoticed.
pub fn run_with_fault(fault: Fault) -> Option<ClassifyError> {
    let bounds = SearchBounds {
        pair_height: 3,
        ideal_bound: 3,
        samples: 10,
        recheck_height: 6,
        seed: 42,
    };
    match fault {
        Fault::VClosureIdentity => {
            // (3, 4) in <3,4,5> is not divisorial, so an identity
            // v-closure diverges from the closure recomputed through
            // the intersection route
            let sg = NumSemigroup::new(&[3, 4, 5]).expect("valid semigroup");
            let b = FaultyBackend { inner: sg, fault };
            vdomain_pair_check(&b, &3, &4).err()
        }
        Fault::IntersectFirst => {
            let order = QuadOrder::new(-1, 1).expect("valid order");
            let b = FaultyBackend {
                inner: order,
                fault,
            };
            vdomain_pair_check(&b, &QElem::from_ints(2, 0), &QElem::from_ints(1, 1)).err()
        }
        Fault::OracleInverted => {
            let order = QuadOrder::new(-3, 2).expect("valid order");
            let b = FaultyBackend {
                inner: order,
                fault,
            };
            vdomain_search(&b, &bounds).err()
        }
    }
}

fn fault_injection() -> Result<String, String> {
    for fault in [
        Fault::VClosureIdentity,
        Fault::IntersectFirst,
        Fault::OracleInverted,
    ] {
        match run_with_fault(fault) {
            Some(ClassifyError::InternalInconsistency(_))
            | Some(ClassifyError::OracleMismatch(_)) => {}
            Some(e) => {
                return Err(format!(
                    "fault {:?} raised the wrong error class: {}",
                    fault, e
                ))
            }
            None => {
                return Err(format!(
                    "fault {:?} went unnoticed by the consistency checks",
                    fault
                ))
            }
        }
    }
    Ok("3 injected faults caught".into())
}
