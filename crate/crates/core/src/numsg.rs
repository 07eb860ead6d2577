//! Numerical semigroups as an additive residuation testbed.
//!
//! A numerical semigroup S ⊆ N (0 ∈ S, closed under +, finite
//! complement) plays the role of the domain; a relative ideal is a
//! nonempty I ⊆ Z, bounded below, with I + S ⊆ I. Ideal product
//! translates to Minkowski sum, the colon (A : B) to the residual
//! A − B = {z : z + B ⊆ A}, principal ideals to shifts x + S, and the
//! v-operation to I ↦ S − (S − I). Every identity checked over the
//! quadratic backend has a verbatim additive translation here, which
//! makes the pair a cheap cross-implementation differential: the two
//! backends share no arithmetic code.
//!
//! Verdicts computed over this backend are statements about the monoid
//! residuation system itself, not about any ring.
//!
//! Finiteness: if c is the conductor of S (least c with c + N ⊆ S),
//! every ideal with minimum m contains all integers ≥ m + c, so an
//! ideal is exactly (offset, membership window of length c). All
//! operations below are exact finite computations on such windows.

use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SgError {
    #[error("a numerical semigroup needs at least one generator")]
    EmptyGenerators,
    #[error("generators must be positive integers")]
    InvalidGenerator,
    #[error("generators must have gcd 1 (got gcd {0})")]
    GcdNotOne(u64),
    #[error("operands belong to different semigroups")]
    MixedSemigroups,
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("gap set too large to enumerate ideals (genus {0} > 24)")]
    GenusTooLarge(usize),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Numerical semigroup, canonicalized by its gap set.
#[derive(Debug)]
pub struct NumSemigroup {
    min_gens: Vec<u64>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl PartialEq for NumSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps
    }
}
impl Eq for NumSemigroup {}

impl NumSemigroup {
    pub fn new(generators: &[u64]) -> Result<Arc<NumSemigroup>, SgError> {
        if generators.is_empty() {
            return Err(SgError::EmptyGenerators);
        }
        if generators.contains(&0) {
            return Err(SgError::InvalidGenerator);
        }
        let g = generators.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(SgError::GcdNotOne(g));
        }
        let m = *generators.iter().min().unwrap() as usize;
        let top = *generators.iter().max().unwrap() as usize;
        // Past any run of m consecutive members everything is a member;
        // min·max comfortably covers the largest gap for gcd-1 sets.
        let bound = m * top + top + 2;
        let mut sieve = vec![false; bound];
        sieve[0] = true;
        for i in 0..bound {
            if !sieve[i] {
                continue;
            }
            for &g in generators {
                let j = i + g as usize;
                if j < bound {
                    sieve[j] = true;
                }
            }
        }
        let conductor = (0..bound)
            .rev()
            .find(|&i| !sieve[i])
            .map(|i| i as u64 + 1)
            .unwrap_or(0);
        let gaps: Vec<u64> = (0..conductor as usize)
            .filter(|&i| !sieve[i])
            .map(|i| i as u64)
            .collect();
        let mut sg = NumSemigroup {
            min_gens: Vec::new(),
            gaps,
            conductor,
        };
        sg.min_gens = sg.compute_min_gens();
        Ok(Arc::new(sg))
    }

    /// Irredundant generating set (elements not a sum of two nonzero
    /// members). Candidates stop below conductor + multiplicity.
    fn compute_min_gens(&self) -> Vec<u64> {
        let mult = (1..).find(|&x| self.contains(x)).unwrap_or(1);
        let mut gens = Vec::new();
        for g in 1..=(self.conductor as i64 + mult) {
            if !self.contains(g) {
                continue;
            }
            let decomposable = (mult..=g - mult).any(|h| self.contains(h) && self.contains(g - h));
            if !decomposable {
                gens.push(g as u64);
            }
        }
        gens
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n as u64 >= self.conductor {
            return true;
        }
        self.gaps.binary_search(&(n as u64)).is_err()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn min_generators(&self) -> &[u64] {
        &self.min_gens
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 0
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.min_gens.iter().map(|g| g.to_string()).collect();
        format!("<{}>", gens.join(", "))
    }
}

/// Relative ideal of a numerical semigroup.
///
/// `window[i]` decides membership of `offset + i` for i below the
/// conductor; `offset` is a member and everything past the window is.
#[derive(Clone, Debug)]
pub struct SgIdeal {
    sg: Arc<NumSemigroup>,
    offset: i64,
    window: Vec<bool>,
}

impl PartialEq for SgIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.sg == other.sg && self.offset == other.offset && self.window == other.window
    }
}
impl Eq for SgIdeal {}

impl SgIdeal {
    fn from_raw(sg: Arc<NumSemigroup>, offset: i64, window: Vec<bool>) -> SgIdeal {
        debug_assert_eq!(window.len(), sg.conductor() as usize);
        debug_assert!(window.first().copied().unwrap_or(true));
        SgIdeal { sg, offset, window }
    }

    /// Build from an arbitrary membership predicate with a known lower
    /// bound on the minimum; normalizes the offset.
    fn from_predicate<F: Fn(i64) -> bool>(sg: &Arc<NumSemigroup>, lo: i64, f: F) -> SgIdeal {
        let c = sg.conductor() as i64;
        let offset = (lo..=lo + c)
            .find(|&z| f(z))
            .expect("an ideal contains every integer past its lower bound plus the conductor");
        let window = (0..c).map(|i| f(offset + i)).collect();
        SgIdeal::from_raw(sg.clone(), offset, window)
    }

    pub fn semigroup(&self) -> &Arc<NumSemigroup> {
        &self.sg
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Missing integers strictly inside the window.
    pub fn holes(&self) -> Vec<i64> {
        (0..self.window.len())
            .filter(|&i| !self.window[i])
            .map(|i| self.offset + i as i64)
            .collect()
    }

    pub fn has(&self, n: i64) -> bool {
        if n < self.offset {
            return false;
        }
        let rel = (n - self.offset) as usize;
        if rel >= self.window.len() {
            return true;
        }
        self.window[rel]
    }

    /// x + S.
    pub fn principal(sg: &Arc<NumSemigroup>, x: i64) -> SgIdeal {
        SgIdeal::from_predicate(sg, x, |z| sg.contains(z - x))
    }

    /// S itself, the unit for the Minkowski sum.
    pub fn unit(sg: &Arc<NumSemigroup>) -> SgIdeal {
        SgIdeal::principal(sg, 0)
    }

    /// ∪ (g + S) over a nonempty generator list.
    pub fn from_generators(sg: &Arc<NumSemigroup>, gens: &[i64]) -> Result<SgIdeal, SgError> {
        if gens.is_empty() {
            return Err(SgError::NotAnIdeal("no generators".into()));
        }
        let lo = *gens.iter().min().unwrap();
        Ok(SgIdeal::from_predicate(sg, lo, |z| {
            gens.iter().any(|&g| sg.contains(z - g))
        }))
    }

    /// Validated construction from an offset and a set of holes; any
    /// hole at or past offset + conductor, or a hole pattern that is
    /// not closed under adding semigroup generators, is rejected.
    pub fn from_offset_holes(
        sg: &Arc<NumSemigroup>,
        offset: i64,
        holes: &[i64],
    ) -> Result<SgIdeal, SgError> {
        let c = sg.conductor() as i64;
        let mut window = vec![true; c as usize];
        for &h in holes {
            if h <= offset || h >= offset + c {
                return Err(SgError::NotAnIdeal(format!(
                    "hole {} outside the open window ({}, {})",
                    h,
                    offset,
                    offset + c
                )));
            }
            window[(h - offset) as usize] = false;
        }
        let cand = SgIdeal::from_raw(sg.clone(), offset, window);
        for i in 0..c {
            if !cand.has(offset + i) {
                continue;
            }
            for &g in sg.min_generators() {
                if !cand.has(offset + i + g as i64) {
                    return Err(SgError::NotAnIdeal(format!(
                        "{} is a member but {} + {} is a hole",
                        offset + i,
                        offset + i,
                        g
                    )));
                }
            }
        }
        Ok(cand)
    }

    pub fn shift(&self, k: i64) -> SgIdeal {
        SgIdeal::from_raw(self.sg.clone(), self.offset + k, self.window.clone())
    }

    fn same_sg(&self, other: &SgIdeal) -> Result<(), SgError> {
        if self.sg != other.sg {
            return Err(SgError::MixedSemigroups);
        }
        Ok(())
    }

    /// Minkowski sum I + J, the ideal product.
    pub fn sum(&self, other: &SgIdeal) -> Result<SgIdeal, SgError> {
        self.same_sg(other)?;
        let lo = self.offset + other.offset;
        Ok(SgIdeal::from_predicate(&self.sg, lo, |z| {
            (0..=z - self.offset - other.offset)
                .any(|a| self.has(self.offset + a) && other.has(z - self.offset - a))
        }))
    }

    /// Residual (I − J) = {z : z + J ⊆ I}, the colon. Only the window
    /// of J matters: for z ≥ min(I) − min(J) and j ≥ min(J) + c the
    /// sum z + j already lands past min(I) + c.
    pub fn colon(&self, other: &SgIdeal) -> SgIdeal {
        self.same_sg(other).expect("colon of mixed semigroups");
        let c = self.sg.conductor() as i64;
        let lo = self.offset - other.offset;
        SgIdeal::from_predicate(&self.sg, lo, |z| {
            (0..c.max(1)).all(|b| !other.has(other.offset + b) || self.has(z + other.offset + b))
        })
    }

    pub fn intersect(&self, other: &SgIdeal) -> SgIdeal {
        self.same_sg(other)
            .expect("intersection of mixed semigroups");
        let lo = self.offset.max(other.offset);
        SgIdeal::from_predicate(&self.sg, lo, |z| self.has(z) && other.has(z))
    }

    /// I ∪ J, the module sum in the additive translation (a union of
    /// ideals is the smallest ideal containing both).
    pub fn union(&self, other: &SgIdeal) -> SgIdeal {
        self.same_sg(other).expect("union of mixed semigroups");
        let lo = self.offset.min(other.offset);
        SgIdeal::from_predicate(&self.sg, lo, |z| self.has(z) || other.has(z))
    }

    /// I⁻¹ = S − I.
    pub fn inverse(&self) -> SgIdeal {
        SgIdeal::unit(&self.sg).colon(self)
    }

    /// Iᵛ = S − (S − I).
    pub fn v_closure(&self) -> SgIdeal {
        self.inverse().inverse()
    }

    /// Iᵗ; ideals here are finitely generated, so t = v (guarded by
    /// sampled finite-subideal checks in the test suite).
    pub fn t_closure(&self) -> SgIdeal {
        self.v_closure()
    }

    pub fn is_unit(&self) -> bool {
        *self == SgIdeal::unit(&self.sg)
    }

    pub fn contains(&self, other: &SgIdeal) -> bool {
        if self.sg != other.sg || other.offset < self.offset {
            return false;
        }
        let c = self.sg.conductor() as i64;
        (0..c.max(1)).all(|i| !other.has(other.offset + i) || self.has(other.offset + i))
    }

    /// Irredundant generators: members of the window not reachable from
    /// a smaller member (members past the window decompose through the
    /// offset).
    pub fn min_generators(&self) -> Vec<i64> {
        let c = self.sg.conductor() as i64;
        if c == 0 {
            return vec![self.offset];
        }
        let mut gens = Vec::new();
        for i in 0..c {
            let g = self.offset + i;
            if !self.has(g) {
                continue;
            }
            let reachable = (0..i).any(|j| {
                let h = self.offset + j;
                self.has(h) && g - h > 0 && self.sg.contains(g - h)
            });
            if !reachable {
                gens.push(g);
            }
        }
        gens
    }

    /// Canonical rendering as a generator list, e.g. "(2, 3)"; feeding
    /// it back through `from_generators` reconstructs the ideal.
    pub fn render(&self) -> String {
        let gens: Vec<String> = self
            .min_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        format!("({})", gens.join(", "))
    }
}

/// Every ideal with offset 0, exactly: subsets of the gap set closed
/// under adding generators. Complete because an offset-0 ideal contains
/// S and has no holes past the conductor.
/// Exhaustive enumeration masks over gap subsets; 2^24 candidate masks
/// is the practical ceiling.
pub const MAX_ENUM_GENUS: usize = 24;

pub fn enumerate_offset0_ideals(sg: &Arc<NumSemigroup>) -> Result<Vec<SgIdeal>, SgError> {
    let gaps = sg.gaps();
    let genus = gaps.len();
    if genus > MAX_ENUM_GENUS {
        return Err(SgError::GenusTooLarge(genus));
    }
    let c = sg.conductor() as i64;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << genus) {
        let extra: Vec<i64> = (0..genus)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| gaps[i] as i64)
            .collect();
        let has = |z: i64| sg.contains(z) || extra.binary_search(&z).is_ok();
        let closed = extra.iter().all(|&g| {
            sg.min_generators()
                .iter()
                .all(|&m| g + m as i64 >= c || has(g + m as i64))
        });
        if !closed {
            continue;
        }
        let window = (0..c).map(has).collect();
        out.push(SgIdeal::from_raw(sg.clone(), 0, window));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s23() -> Arc<NumSemigroup> {
        NumSemigroup::new(&[2, 3]).unwrap()
    }

    #[test]
    fn construction_and_invariants() {
        let s = s23();
        assert_eq!(s.conductor(), 2);
        assert_eq!(s.gaps(), &[1]);
        assert_eq!(s.min_generators(), &[2, 3]);
        assert!(s.contains(0) && !s.contains(1) && s.contains(2));

        let n = NumSemigroup::new(&[1]).unwrap();
        assert_eq!(n.conductor(), 0);
        assert!(n.gaps().is_empty());
        assert!(n.is_trivial());

        assert_eq!(NumSemigroup::new(&[]), Err(SgError::EmptyGenerators));
        assert_eq!(NumSemigroup::new(&[0, 2]), Err(SgError::InvalidGenerator));
        assert_eq!(NumSemigroup::new(&[4, 6]), Err(SgError::GcdNotOne(2)));

        // generator sets normalize: <2,3,4> = <2,3>
        assert_eq!(*NumSemigroup::new(&[2, 3, 4]).unwrap(), *s);
    }

    #[test]
    fn deduped_semigroup_facts() {
        let s = NumSemigroup::new(&[5, 11, 12]).unwrap();
        assert_eq!(s.conductor(), 20);
        assert_eq!(s.gaps(), &[1, 2, 3, 4, 6, 7, 8, 9, 13, 14, 18, 19]);
    }

    #[test]
    fn maximal_ideal_is_not_v_invertible() {
        // S = <2,3>, M = S \ {0} = (2 + S) ∪ (3 + S):
        //   S − M = N, M + (S − M) = M ≠ S, and Mᵛ = M.
        let s = s23();
        let m = SgIdeal::from_generators(&s, &[2, 3]).unwrap();
        let unit = SgIdeal::unit(&s);
        let n_ideal = SgIdeal::from_offset_holes(&s, 0, &[]).unwrap(); // all of N

        assert_eq!(m.inverse(), n_ideal);
        assert_eq!(m.sum(&m.inverse()).unwrap(), m);
        assert_ne!(m.sum(&m.inverse()).unwrap(), unit);
        assert_eq!(m.v_closure(), m);
        // (M⁻¹ − M⁻¹) = N ≠ S: the colon-ring criterion agrees.
        assert_eq!(m.inverse().colon(&m.inverse()), n_ideal);
    }

    #[test]
    fn principal_ideals_are_invertible() {
        let s = s23();
        let p = SgIdeal::principal(&s, 7);
        assert_eq!(p.sum(&p.inverse()).unwrap(), SgIdeal::unit(&s));
        assert_eq!(p.v_closure(), p);
        assert_eq!(p.min_generators(), vec![7]);
    }

    #[test]
    fn ideal_validation() {
        let s = NumSemigroup::new(&[3, 5]).unwrap(); // gaps 1,2,4,7; conductor 8
                                                     // S ∪ {4}: 4+3=7 is a gap not included -> not closed.
        assert!(SgIdeal::from_offset_holes(&s, 0, &[1, 2, 7]).is_err());
        // S ∪ {4, 7}: closed.
        assert!(SgIdeal::from_offset_holes(&s, 0, &[1, 2]).is_ok());
        // hole outside the window is impossible for a genuine ideal
        assert!(SgIdeal::from_offset_holes(&s, 0, &[9]).is_err());
        assert!(SgIdeal::from_offset_holes(&s, 0, &[0]).is_err());
    }

    #[test]
    fn offset0_enumeration_is_exhaustive() {
        let s = s23();
        let all = enumerate_offset0_ideals(&s).unwrap();
        // T ⊆ {1}: both subsets give ideals (S and N).
        assert_eq!(all.len(), 2);
        assert_eq!(all[0], SgIdeal::unit(&s));
        assert_eq!(all[1], SgIdeal::from_offset_holes(&s, 0, &[]).unwrap());

        let s35 = NumSemigroup::new(&[3, 5]).unwrap();
        let all35 = enumerate_offset0_ideals(&s35).unwrap();
        // validity is genuinely restrictive: strictly fewer than 2^genus
        assert!(all35.len() > 2 && all35.len() < 16);
        for i in &all35 {
            assert!(i.sum(&SgIdeal::unit(&s35)).unwrap() == *i);
        }
    }

    #[test]
    fn mixed_semigroups_are_rejected() {
        let a = SgIdeal::unit(&s23());
        let b = SgIdeal::unit(&NumSemigroup::new(&[3, 5]).unwrap());
        assert_eq!(a.sum(&b), Err(SgError::MixedSemigroups));
    }

    #[test]
    fn shift_invariance() {
        let s = s23();
        let m = SgIdeal::from_generators(&s, &[2, 3]).unwrap();
        let shifted = m.shift(5);
        assert_eq!(shifted.inverse(), m.inverse().shift(-5));
        assert_eq!(shifted.v_closure(), m.v_closure().shift(5));
    }

    #[test]
    fn rendering_round_trips() {
        let s = NumSemigroup::new(&[3, 5]).unwrap();
        let i = SgIdeal::from_generators(&s, &[3, 5]).unwrap();
        assert_eq!(i.render(), "(3, 5)");
        let back = SgIdeal::from_generators(&s, &i.min_generators()).unwrap();
        assert_eq!(back, i);
    }
}
