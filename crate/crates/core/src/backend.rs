//! Common surface the classifiers need from an ideal system.
//!
//! Both testbeds (quadratic orders, numerical semigroups) expose the
//! same residuated-monoid vocabulary: a unit ideal, principal ideals of
//! group elements, sum/product/intersection/colon, and deterministic
//! enumeration hooks for sweeps. The classify module is written once
//! against this trait; nothing in it knows which backend it is judging.

use rand_chacha::ChaCha8Rng;

pub trait Backend {
    /// Nonzero element of the ambient group (field K, or Z additively).
    type K: Clone + Eq + Ord + std::fmt::Debug;
    /// Canonical fractional ideal; equality is representation equality.
    type Ideal: Clone + Eq + std::fmt::Debug;

    fn describe(&self) -> String;
    fn unit_ideal(&self) -> Self::Ideal;
    fn principal(&self, x: &Self::K) -> Self::Ideal;
    /// Two-generated ideal xD + yD.
    fn pair_ideal(&self, x: &Self::K, y: &Self::K) -> Self::Ideal;
    fn add(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal;
    fn mul(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal;
    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal;
    fn colon(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal;
    fn inverse(&self, a: &Self::Ideal) -> Self::Ideal {
        self.colon(&self.unit_ideal(), a)
    }
    fn v_closure(&self, a: &Self::Ideal) -> Self::Ideal {
        self.inverse(&self.inverse(a))
    }
    fn t_closure(&self, a: &Self::Ideal) -> Self::Ideal {
        self.v_closure(a)
    }
    fn contains(&self, outer: &Self::Ideal, inner: &Self::Ideal) -> bool;
    /// x ∈ A, decided exactly.
    fn ideal_contains_k(&self, a: &Self::Ideal, x: &Self::K) -> bool;
    /// Whether x lies in the base domain (reported with finite-type
    /// witnesses to distinguish strict from general finite type).
    fn k_in_domain(&self, x: &Self::K) -> bool {
        self.ideal_contains_k(&self.unit_ideal(), x)
    }

    fn k_mul(&self, x: &Self::K, y: &Self::K) -> Self::K;
    fn k_inv(&self, x: &Self::K) -> Self::K;
    fn render_k(&self, x: &Self::K) -> String;
    fn render_ideal(&self, a: &Self::Ideal) -> String;

    /// Nonzero domain elements up to a height bound, deterministic
    /// order, one representative per associate class where cheap.
    fn domain_elements(&self, height: u32) -> Vec<Self::K>;
    /// Module generators of an ideal (finite, exact).
    fn ideal_generators(&self, a: &Self::Ideal) -> Vec<Self::K>;
    /// Elements of the ideal by coefficient height over its generators,
    /// deterministic order, used by representation searches.
    fn ideal_elements(&self, a: &Self::Ideal, height: u32) -> Vec<Self::K>;
    /// Canonical ideal sweep for quantified properties. If
    /// `ideals_exhaustive()` is true this is every ideal up to the
    /// system's natural normalization, not just a bounded slice.
    fn enumerate_ideals(&self, bound: u32) -> Vec<Self::Ideal>;
    fn ideals_exhaustive(&self) -> bool;
    fn sample_ideal(&self, rng: &mut ChaCha8Rng, height: u32) -> Self::Ideal;

    /// Ground truth from structure theory, where the backend has one:
    /// quadratic orders are Krull iff maximal; the trivial semigroup is
    /// the only one with every ideal principal. None means "no oracle".
    fn oracle_all_properties_hold(&self) -> Option<bool>;
    fn oracle_name(&self) -> &'static str;
    /// A probe ideal pair that must refute v-invertibility whenever the
    /// oracle says the domain is defective (quadratic: the conductor
    /// pair (f, fω)); lets bounded sweeps stay exactly concordant with
    /// the oracle.
    fn defect_probe(&self) -> Option<(Self::K, Self::K)>;
}

// ---- quadratic orders ------------------------------------------------------

use crate::quad::{FracIdealQ, QElem, QuadOrder};

impl Backend for QuadOrder {
    type K = QElem;
    type Ideal = FracIdealQ;

    fn describe(&self) -> String {
        QuadOrder::describe(self)
    }

    fn unit_ideal(&self) -> FracIdealQ {
        QuadOrder::unit_ideal(self)
    }

    fn principal(&self, x: &QElem) -> FracIdealQ {
        QuadOrder::principal(self, x).expect("nonzero element")
    }

    fn pair_ideal(&self, x: &QElem, y: &QElem) -> FracIdealQ {
        QuadOrder::pair_ideal(self, x, y).expect("nonzero pair")
    }

    fn add(&self, a: &FracIdealQ, b: &FracIdealQ) -> FracIdealQ {
        a.add(b).expect("same order")
    }

    fn mul(&self, a: &FracIdealQ, b: &FracIdealQ) -> FracIdealQ {
        a.mul(b).expect("same order")
    }

    fn intersect(&self, a: &FracIdealQ, b: &FracIdealQ) -> FracIdealQ {
        a.intersect(b).expect("same order")
    }

    fn colon(&self, a: &FracIdealQ, b: &FracIdealQ) -> FracIdealQ {
        a.colon(b).expect("same order, nonzero ideal")
    }

    fn inverse(&self, a: &FracIdealQ) -> FracIdealQ {
        a.inverse()
    }

    fn v_closure(&self, a: &FracIdealQ) -> FracIdealQ {
        a.v_closure()
    }

    fn t_closure(&self, a: &FracIdealQ) -> FracIdealQ {
        a.t_closure()
    }

    fn contains(&self, outer: &FracIdealQ, inner: &FracIdealQ) -> bool {
        outer.contains(inner)
    }

    fn ideal_contains_k(&self, a: &FracIdealQ, x: &QElem) -> bool {
        a.contains_elem(x)
    }

    fn k_mul(&self, x: &QElem, y: &QElem) -> QElem {
        self.mul_elem(x, y)
    }

    fn k_inv(&self, x: &QElem) -> QElem {
        self.inv_elem(x).expect("nonzero element")
    }

    fn render_k(&self, x: &QElem) -> String {
        self.render_elem(x)
    }

    fn render_ideal(&self, a: &FracIdealQ) -> String {
        a.render()
    }

    fn domain_elements(&self, height: u32) -> Vec<QElem> {
        self.elements_up_to(height)
    }

    fn ideal_generators(&self, a: &FracIdealQ) -> Vec<QElem> {
        a.generators().to_vec()
    }

    fn ideal_elements(&self, a: &FracIdealQ, height: u32) -> Vec<QElem> {
        let [g1, g2] = a.generators();
        let h = height as i64;
        let mut out = Vec::new();
        for s in 1..=h {
            for m in -s..=s {
                for n in -s..=s {
                    if m.abs().max(n.abs()) != s {
                        continue;
                    }
                    if !(m > 0 || (m == 0 && n > 0)) {
                        continue; // sign class
                    }
                    let e = QElem::new(
                        &g1.u * crate::lattice::rat_int(m) + &g2.u * crate::lattice::rat_int(n),
                        &g1.v * crate::lattice::rat_int(m) + &g2.v * crate::lattice::rat_int(n),
                    );
                    if !e.is_zero() {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    /// Integral ideals with primitive canonical basis [[a, b], [0, c]],
    /// a, c ≤ bound. Every fractional ideal is a rational multiple of
    /// exactly one of these, and all classified properties are
    /// scale-invariant, so the slice is canonical.
    fn enumerate_ideals(&self, bound: u32) -> Vec<FracIdealQ> {
        use crate::lattice::{Int, Lattice2};
        let bound = bound.max(1) as i64;
        let mut out = Vec::new();
        for a in 1..=bound {
            for c in 1..=bound {
                for b in 0..c {
                    if num_integer::gcd(a, num_integer::gcd(b, c)) != 1 {
                        continue;
                    }
                    let rows = [(Int::from(a), Int::from(b)), (Int::from(0), Int::from(c))];
                    let lat = Lattice2::hnf(&rows).expect("full rank");
                    if let Ok(ideal) = self.ideal_from_lattice(lat) {
                        out.push(ideal);
                    }
                }
            }
        }
        out
    }

    fn ideals_exhaustive(&self) -> bool {
        false
    }

    fn sample_ideal(&self, rng: &mut ChaCha8Rng, height: u32) -> FracIdealQ {
        QuadOrder::sample_ideal(self, rng, height)
    }

    fn oracle_all_properties_hold(&self) -> Option<bool> {
        Some(self.is_maximal_order())
    }

    fn oracle_name(&self) -> &'static str {
        "maximal-order criterion"
    }

    fn defect_probe(&self) -> Option<(QElem, QElem)> {
        if self.is_maximal_order() {
            None
        } else {
            // (f, fω) generates the conductor fO_K, never v-invertible
            // over a proper order: its colon ring is the maximal order.
            Some((
                QElem::from_ints(self.conductor(), 0),
                self.conductor_omega(),
            ))
        }
    }
}

// ---- numerical semigroups --------------------------------------------------

use crate::numsg::{enumerate_offset0_ideals, NumSemigroup, SgIdeal};
use std::sync::Arc;

impl Backend for Arc<NumSemigroup> {
    type K = i64;
    type Ideal = SgIdeal;

    fn describe(&self) -> String {
        NumSemigroup::describe(self)
    }

    fn unit_ideal(&self) -> SgIdeal {
        SgIdeal::unit(self)
    }

    fn principal(&self, x: &i64) -> SgIdeal {
        SgIdeal::principal(self, *x)
    }

    fn pair_ideal(&self, x: &i64, y: &i64) -> SgIdeal {
        SgIdeal::from_generators(self, &[*x, *y]).expect("nonempty generators")
    }

    fn add(&self, a: &SgIdeal, b: &SgIdeal) -> SgIdeal {
        a.union(b)
    }

    fn mul(&self, a: &SgIdeal, b: &SgIdeal) -> SgIdeal {
        a.sum(b).expect("same semigroup")
    }

    fn intersect(&self, a: &SgIdeal, b: &SgIdeal) -> SgIdeal {
        a.intersect(b)
    }

    fn colon(&self, a: &SgIdeal, b: &SgIdeal) -> SgIdeal {
        a.colon(b)
    }

    fn contains(&self, outer: &SgIdeal, inner: &SgIdeal) -> bool {
        outer.contains(inner)
    }

    fn ideal_contains_k(&self, a: &SgIdeal, x: &i64) -> bool {
        a.has(*x)
    }

    fn k_mul(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }

    fn k_inv(&self, x: &i64) -> i64 {
        -x
    }

    fn render_k(&self, x: &i64) -> String {
        x.to_string()
    }

    fn render_ideal(&self, a: &SgIdeal) -> String {
        a.render()
    }

    fn domain_elements(&self, height: u32) -> Vec<i64> {
        (0..=height as i64)
            .filter(|&z| NumSemigroup::contains(self, z))
            .collect()
    }

    fn ideal_generators(&self, a: &SgIdeal) -> Vec<i64> {
        a.min_generators()
    }

    fn ideal_elements(&self, a: &SgIdeal, height: u32) -> Vec<i64> {
        (a.offset()..=a.offset() + height as i64)
            .filter(|&z| a.has(z))
            .collect()
    }

    /// All offset-0 ideals; complete up to translation, and every
    /// classified property is translation-invariant.
    fn enumerate_ideals(&self, _bound: u32) -> Vec<SgIdeal> {
        enumerate_offset0_ideals(self).expect("genus within enumeration cap")
    }

    fn ideals_exhaustive(&self) -> bool {
        true
    }

    fn sample_ideal(&self, rng: &mut ChaCha8Rng, height: u32) -> SgIdeal {
        use rand::Rng;
        let h = height.max(1) as i64;
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<i64> = (0..k).map(|_| rng.gen_range(-h..=h)).collect();
        SgIdeal::from_generators(self, &gens).expect("nonempty generators")
    }

    fn oracle_all_properties_hold(&self) -> Option<bool> {
        Some(self.is_trivial())
    }

    fn oracle_name(&self) -> &'static str {
        "trivial-semigroup criterion"
    }

    fn defect_probe(&self) -> Option<(i64, i64)> {
        // exhaustive enumeration already reconciles sweeps with the
        // oracle; no pair probe is needed (or guaranteed to exist)
        None
    }
}
