//! Brute-force reference checks, kept independent of the production
//! arithmetic. The lattice paths go through Hermite reduction and dual
//! bases; everything here instead solves 2x2 systems directly or
//! enumerates small element grids, so the two can disagree only if one
//! of them is wrong. Tests and the self-check suite run these oracles
//! against random inputs.

use crate::lattice::{rat_int, Int, Lattice2, Rat};
use crate::numsg::SgIdeal;
use crate::quad::{FracIdealQ, QElem};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Membership by Cramer solve: v = α·r₁ + β·r₂ with α, β ∈ Z.
pub fn member_cramer(lat: &Lattice2, v: &(Rat, Rat)) -> bool {
    let [r1, r2] = lat.rows();
    let det = &r1.0 * &r2.1 - &r1.1 * &r2.0;
    assert!(!det.is_zero(), "lattice rows are a basis");
    let alpha = (&v.0 * &r2.1 - &v.1 * &r2.0) / &det;
    let beta = (&r1.0 * &v.1 - &r1.1 * &v.0) / &det;
    alpha.is_integer() && beta.is_integer()
}

/// Integer combinations m·r₁ + k·r₂ of each lattice's rows with
/// |m|, |k| ≤ n, deduplicated and sorted.
pub fn grid_points(lats: &[&Lattice2], n: i64) -> Vec<(Rat, Rat)> {
    let mut pts = BTreeSet::new();
    for lat in lats {
        let [r1, r2] = lat.rows();
        for m in -n..=n {
            for k in -n..=n {
                let x = &r1.0 * rat_int(m) + &r2.0 * rat_int(k);
                let y = &r1.1 * rat_int(m) + &r2.1 * rat_int(k);
                pts.insert((x, y));
            }
        }
    }
    pts.into_iter().collect()
}

/// Unsigned covolume of a lattice from its row determinant.
pub fn covolume(lat: &Lattice2) -> Rat {
    let [r1, r2] = lat.rows();
    (&r1.0 * &r2.1 - &r1.1 * &r2.0).abs()
}

/// Covolume of the module generated by an arbitrary list of rational
/// rows: clear denominators, then take the gcd of all 2x2 minors of
/// the integer generator matrix (the second determinantal divisor).
pub fn covolume_of_span(rows: &[(Rat, Rat)]) -> Rat {
    let mut m = Int::one();
    for r in rows {
        m = m.lcm(r.0.denom()).lcm(r.1.denom());
    }
    let ints: Vec<(Int, Int)> = rows
        .iter()
        .map(|r| {
            let x = &r.0 * Rat::from_integer(m.clone());
            let y = &r.1 * Rat::from_integer(m.clone());
            (x.to_integer(), y.to_integer())
        })
        .collect();
    let mut g = Int::zero();
    for i in 0..ints.len() {
        for j in (i + 1)..ints.len() {
            let minor = &ints[i].0 * &ints[j].1 - &ints[i].1 * &ints[j].0;
            g = g.gcd(&minor);
        }
    }
    assert!(!g.is_zero(), "generators span rank 2");
    Rat::new(g, &m * &m)
}

fn stacked_rows(l1: &Lattice2, l2: &Lattice2) -> Vec<(Rat, Rat)> {
    let [a1, a2] = l1.rows();
    let [b1, b2] = l2.rows();
    vec![a1, a2, b1, b2]
}

/// Exact intersection check: the claimed lattice sits inside both
/// operands (Cramer on its basis), and its covolume equals
/// covol(L1)·covol(L2) / covol(L1 + L2), which pins the intersection
/// among all common sublattices.
pub fn intersection_matches(l1: &Lattice2, l2: &Lattice2, claimed: &Lattice2) -> bool {
    let inside = claimed
        .rows()
        .iter()
        .all(|r| member_cramer(l1, r) && member_cramer(l2, r));
    inside
        && covolume(claimed) * covolume_of_span(&stacked_rows(l1, l2))
            == covolume(l1) * covolume(l2)
}

/// Exact join check: the claimed lattice contains both operands'
/// bases, and its covolume equals the second determinantal divisor of
/// the stacked generators, which pins the join among all common
/// overlattices.
pub fn join_matches(l1: &Lattice2, l2: &Lattice2, claimed: &Lattice2) -> bool {
    let covers = stacked_rows(l1, l2)
        .iter()
        .all(|r| member_cramer(claimed, r));
    covers && covolume(claimed) == covolume_of_span(&stacked_rows(l1, l2))
}

/// Exact dual check: every claimed row pairs integrally with every row
/// of the original (so claimed sits inside the dual), and the
/// covolumes are reciprocal.
pub fn dual_matches(lat: &Lattice2, claimed: &Lattice2) -> bool {
    let pairs_integrally = claimed.rows().iter().all(|p| {
        lat.rows()
            .iter()
            .all(|r| (&p.0 * &r.0 + &p.1 * &r.1).is_integer())
    });
    pairs_integrally && covolume(claimed) * covolume(lat) == Rat::one()
}

/// x ∈ (A : B) iff x·g ∈ A for every element of B; the grid contains
/// B's module basis, so checking grid multiples decides membership
/// exactly. Verified as a predicate equality over the grid of the
/// claimed colon and of A.
pub fn colon_agrees_on_grid(a: &FracIdealQ, b: &FracIdealQ, claimed: &FracIdealQ, n: i64) -> bool {
    let order = *a.order();
    let gs: Vec<QElem> = grid_points(&[b.lattice()], n)
        .into_iter()
        .map(|(u, v)| QElem::new(u, v))
        .filter(|e| !e.is_zero())
        .collect();
    grid_points(&[claimed.lattice(), a.lattice()], n)
        .iter()
        .all(|p| {
            let x = QElem::new(p.0.clone(), p.1.clone());
            let in_colon = gs.iter().all(|g| a.contains_elem(&order.mul_elem(&x, g)));
            in_colon == claimed.contains_elem(&x)
        })
}

/// Every pairwise product of grid elements must land in the claimed
/// product module. (The converse inclusion holds by construction: the
/// product is spanned by four basis products.)
pub fn product_span_saturates(
    a: &FracIdealQ,
    b: &FracIdealQ,
    claimed: &FracIdealQ,
    n: i64,
) -> bool {
    let order = *a.order();
    let xs = grid_points(&[a.lattice()], n);
    let ys = grid_points(&[b.lattice()], n);
    xs.iter().all(|p| {
        let x = QElem::new(p.0.clone(), p.1.clone());
        ys.iter().all(|q| {
            let y = QElem::new(q.0.clone(), q.1.clone());
            claimed.contains_elem(&order.mul_elem(&x, &y))
        })
    })
}

/// Residual (I − J) recomputed against a widened window of J. The
/// production colon quantifies only over J's canonical window; this
/// oracle quantifies over `extra` additional positions and must agree.
pub fn sg_colon_wide(i: &SgIdeal, j: &SgIdeal, extra: i64) -> SgIdeal {
    let sg = i.semigroup().clone();
    let c = sg.conductor() as i64;
    let span = c.max(1) + extra.max(0);
    let p = |z: i64| (0..span).all(|b| !j.has(j.offset() + b) || i.has(z + j.offset() + b));

    let lo = i.offset() - j.offset();
    let mut offset = lo;
    while !p(offset) {
        offset += 1;
        assert!(
            offset <= lo + c + 1,
            "a residual of ideals is nonempty within one conductor of its lower bound"
        );
    }
    let holes: Vec<i64> = ((offset + 1)..(offset + c)).filter(|&z| !p(z)).collect();
    SgIdeal::from_offset_holes(&sg, offset, &holes).expect("wide residual is an ideal")
}

/// Minkowski sum recomputed from explicit member sets over a wide
/// range; wide enough because members below offset + conductor always
/// decompose with both parts within one conductor of the offsets.
pub fn sg_sum_naive(i: &SgIdeal, j: &SgIdeal) -> SgIdeal {
    let sg = i.semigroup().clone();
    let c = sg.conductor() as i64;
    let span = 3 * c.max(1);
    let a: Vec<i64> = (i.offset()..=i.offset() + span)
        .filter(|&z| i.has(z))
        .collect();
    let b: Vec<i64> = (j.offset()..=j.offset() + span)
        .filter(|&z| j.has(z))
        .collect();
    let sums: BTreeSet<i64> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| x + y))
        .collect();
    let offset = i.offset() + j.offset();
    assert!(sums.contains(&offset), "offsets add");
    let holes: Vec<i64> = ((offset + 1)..(offset + c))
        .filter(|z| !sums.contains(z))
        .collect();
    SgIdeal::from_offset_holes(&sg, offset, &holes).expect("naive sum is an ideal")
}
