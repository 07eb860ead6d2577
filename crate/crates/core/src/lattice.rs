//! Canonical rank-2 lattices in Q^2.
//!
//! A full-rank Z-submodule L of Q^2 is stored as `scale * H` where
//! `scale` is a positive rational and `H` is an integer row basis in
//! Hermite normal form with the gcd of its entries equal to 1:
//!
//! ```text
//!     H = [ a  b ]      a > 0, c > 0, 0 <= b < c, gcd(a, b, c) = 1
//!         [ 0  c ]
//! ```
//!
//! This pair is the unique representative of L (if s1*H1 = s2*H2 with
//! both H primitive, comparing entry gcds of q*H1 = p*H2 forces
//! s1 = s2), so module equality is representation equality and every
//! higher-level ideal computation can compare results structurally.
//!
//! Intersections go through the dual lattice: for full-rank L1, L2,
//! (L1 ∩ L2)* = L1* + L2*, and the dual of a row basis B is the row
//! span of (B^-1)^T = adj(B)^T / det(B). Everything is exact integer
//! and rational arithmetic; nothing here is approximate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Exact rational; `BigRational::new` keeps it reduced with a positive
/// denominator, which tests assert rather than re-implement.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The given rows span a module of rank < 2.
    #[error("rows span a lattice of rank < 2")]
    RankDeficient,
}

/// Canonical representative of a full-rank lattice in Q^2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice2 {
    a: Int,
    b: Int,
    c: Int,
    scale: Rat,
}

fn rat(n: Int) -> Rat {
    Rat::from_integer(n)
}

impl Lattice2 {
    /// Canonicalize the row span of integer vectors.
    ///
    /// Stage 1 folds all rows into a single row (g, h) with
    /// g = gcd of first coordinates (Bezout combination, so the row lies
    /// in the span). Stage 2 reduces every input row by a multiple of
    /// (g, h) to kill its first coordinate and gcds the leftovers into
    /// (0, c). The content of the resulting triangular basis moves into
    /// `scale`.
    pub fn hnf(rows: &[(Int, Int)]) -> Result<Lattice2, LatticeError> {
        let mut g = Int::zero();
        let mut h = Int::zero();
        for (x, y) in rows {
            if x.is_zero() {
                continue;
            }
            if g.is_zero() {
                g = x.clone();
                h = y.clone();
            } else {
                let e = g.extended_gcd(x);
                h = &e.x * &h + &e.y * y;
                g = e.gcd;
            }
        }
        if g.is_zero() {
            return Err(LatticeError::RankDeficient);
        }
        if g.is_negative() {
            g = -g;
            h = -h;
        }
        let mut c = Int::zero();
        for (x, y) in rows {
            let k = x / &g; // exact: g | x by construction
            let resid = y - &k * &h;
            c = c.gcd(&resid);
        }
        if c.is_zero() {
            return Err(LatticeError::RankDeficient);
        }
        let b = h.mod_floor(&c);
        let content = g.gcd(&b).gcd(&c);
        Ok(Lattice2 {
            a: &g / &content,
            b: &b / &content,
            c: &c / &content,
            scale: rat(content),
        })
    }

    /// Canonicalize the row span of rational vectors, with an extra
    /// overall scale factor applied to every row.
    pub fn from_rat_rows(rows: &[(Rat, Rat)], scale: &Rat) -> Result<Lattice2, LatticeError> {
        assert!(scale.is_positive(), "lattice scale must be positive");
        let mut lcm = Int::one();
        for (x, y) in rows {
            lcm = lcm.lcm(x.denom()).lcm(y.denom());
        }
        let int_rows: Vec<(Int, Int)> = rows
            .iter()
            .map(|(x, y)| {
                (
                    (x * rat(lcm.clone())).to_integer(),
                    (y * rat(lcm.clone())).to_integer(),
                )
            })
            .collect();
        let mut lat = Lattice2::hnf(&int_rows)?;
        lat.scale = lat.scale * scale / rat(lcm);
        Ok(lat)
    }

    /// Integer HNF basis (content removed). Rows are (a, b) and (0, c).
    pub fn basis(&self) -> [(Int, Int); 2] {
        [
            (self.a.clone(), self.b.clone()),
            (Int::zero(), self.c.clone()),
        ]
    }

    /// Positive rational scale multiplying the integer basis.
    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Basis rows with the scale folded in: a generating set of L over Z.
    pub fn rows(&self) -> [(Rat, Rat); 2] {
        [
            (
                rat(self.a.clone()) * &self.scale,
                rat(self.b.clone()) * &self.scale,
            ),
            (Rat::zero(), rat(self.c.clone()) * &self.scale),
        ]
    }

    /// Exact membership test by triangular back-substitution.
    pub fn member(&self, v: &(Rat, Rat)) -> bool {
        let w1 = &v.0 / &self.scale;
        let w2 = &v.1 / &self.scale;
        let m = w1 / rat(self.a.clone());
        if !m.is_integer() {
            return false;
        }
        let n = (w2 - m * rat(self.b.clone())) / rat(self.c.clone());
        n.is_integer()
    }

    /// Dual lattice {y : <x, y> in Z for all x in L}.
    ///
    /// For a triangular row basis the inverse-transpose rows are
    /// (c, 0) and (-b, a) over det = a*c.
    pub fn dual(&self) -> Lattice2 {
        let det = &self.a * &self.c;
        let scale = (rat(Int::one()) / &self.scale) / rat(det);
        let rows = [
            (rat(self.c.clone()), rat(Int::zero())),
            (rat(-self.b.clone()), rat(self.a.clone())),
        ];
        Lattice2::from_rat_rows(&rows, &scale).expect("dual of a full-rank lattice is full-rank")
    }

    /// Smallest lattice containing both operands (concatenated bases).
    pub fn join(&self, other: &Lattice2) -> Lattice2 {
        let mut rows = self.rows().to_vec();
        rows.extend(other.rows());
        Lattice2::from_rat_rows(&rows, &Rat::one()).expect("join of full-rank lattices")
    }

    /// L1 ∩ L2 via dual(dual(L1) + dual(L2)).
    pub fn intersect(&self, other: &Lattice2) -> Lattice2 {
        self.dual().join(&other.dual()).dual()
    }

    /// Image of L under the integer row-action v -> v * m, scaled by
    /// `extra_scale`. `m` must be invertible over Q.
    pub fn transform(&self, m: &[[Int; 2]; 2], extra_scale: &Rat) -> Lattice2 {
        let rows: Vec<(Rat, Rat)> = self
            .rows()
            .iter()
            .map(|(x, y)| {
                (
                    x * rat(m[0][0].clone()) + y * rat(m[1][0].clone()),
                    x * rat(m[0][1].clone()) + y * rat(m[1][1].clone()),
                )
            })
            .collect();
        Lattice2::from_rat_rows(&rows, extra_scale).expect("invertible transform keeps rank 2")
    }

    /// other ⊆ self, decided on the two basis rows of `other`.
    pub fn contains(&self, other: &Lattice2) -> bool {
        other.rows().iter().all(|v| self.member(v))
    }
}

impl std::fmt::Debug for Lattice2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*[[{},{}],[0,{}]]", self.scale, self.a, self.b, self.c)
    }
}
