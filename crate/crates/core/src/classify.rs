//! Search-based classification of an ideal system.
//!
//! Every positive verdict is tied to evidence that actually decides it:
//! either an exhaustive enumeration of the system's ideals or a
//! theory-backed oracle (maximality for quadratic orders, triviality
//! for numerical semigroups). A bounded sweep alone never certifies a
//! universal property; it can only refute one, and refutations carry a
//! concrete witness that `Refutation::recheck` re-derives from scratch.
//!
//! The central predicate throughout is the colon-ring criterion: an
//! ideal A is v-invertible iff (A⁻¹ : A⁻¹) equals the whole domain.
//! For a pair of elements this is evaluated along four arithmetically
//! distinct routes (through the pair ideal, its v-closure, its inverse
//! as an intersection of principal ideals, and the self-colon of
//! (a) ∩ (b)), which are provably equal; a disagreement is reported as
//! an internal inconsistency rather than papered over.

use crate::backend::Backend;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Generator-set fallback limit for divisorial-intersection witnesses.
pub const MORI_MAX_GENERATORS: usize = 8;
/// Coefficient height for the single/pair witness search inside ideals.
pub const MORI_SEARCH_HEIGHT: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// Two provably equivalent computations disagreed: an arithmetic bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// A sweep contradicted the structure-theory oracle: an arithmetic bug.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    /// A witness search ran out of candidates within its caps.
    #[error("witness search exhausted: {0}")]
    WitnessSearchExhausted(String),
    /// The backend cannot support the requested report.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Refuted,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Finite sweep; can refute but never certify.
    BoundedSweep,
    /// Ground truth from structure theory (named criterion).
    TheoryOracle(&'static str),
    /// Every ideal of the system was enumerated (up to normalization).
    ExhaustiveEnumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCheck {
    /// ((a) ∩ (b) : (a) ∩ (b)) ≠ D, so the pair ideal (a, b) is not
    /// v-invertible.
    PairNotVInvertible,
    /// (A⁻¹ : A⁻¹) ≠ D for a specific ideal A.
    IdealNotVInvertible,
    /// (F : F) ≠ D: F certifies a proper integral extension inside K.
    ColonRingExceedsDomain,
}

/// A concrete counterexample. `lhs` is the computed side that fails to
/// equal `rhs` (always the unit ideal), kept so reports can show the
/// offending colon ring verbatim.
#[derive(Debug)]
pub struct Refutation<B: Backend> {
    pub check: FailedCheck,
    pub pair: Option<(B::K, B::K)>,
    pub ideal: B::Ideal,
    pub lhs: B::Ideal,
    pub rhs: B::Ideal,
    /// True when the witness came from the backend's defect probe
    /// rather than the sweep itself.
    pub from_probe: bool,
}

// manual impl: the derive would demand B itself be Clone
impl<B: Backend> Clone for Refutation<B> {
    fn clone(&self) -> Refutation<B> {
        Refutation {
            check: self.check,
            pair: self.pair.clone(),
            ideal: self.ideal.clone(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            from_probe: self.from_probe,
        }
    }
}

impl<B: Backend> Refutation<B> {
    /// Recompute the failing check from its raw ingredients; true iff
    /// it still fails with the same computed value.
    pub fn recheck(&self, b: &B) -> bool {
        let unit = b.unit_ideal();
        if self.rhs != unit {
            return false;
        }
        let lhs = match self.check {
            FailedCheck::PairNotVInvertible => {
                let Some((x, y)) = &self.pair else {
                    return false;
                };
                let g = b.intersect(&b.principal(x), &b.principal(y));
                if g != self.ideal {
                    return false;
                }
                b.colon(&g, &g)
            }
            FailedCheck::IdealNotVInvertible => {
                let inv = b.inverse(&self.ideal);
                b.colon(&inv, &inv)
            }
            FailedCheck::ColonRingExceedsDomain => b.colon(&self.ideal, &self.ideal),
        };
        lhs == self.lhs && lhs != unit
    }
}

#[derive(Debug)]
pub struct Verdict<B: Backend> {
    pub status: Status,
    pub evidence: Evidence,
    /// Pairs and ideals examined while reaching the verdict.
    pub checked: u64,
    pub refutation: Option<Refutation<B>>,
    pub note: Option<String>,
}

impl<B: Backend> Clone for Verdict<B> {
    fn clone(&self) -> Verdict<B> {
        Verdict {
            status: self.status,
            evidence: self.evidence,
            checked: self.checked,
            refutation: self.refutation.clone(),
            note: self.note.clone(),
        }
    }
}

impl<B: Backend> Verdict<B> {
    fn holds(evidence: Evidence, checked: u64) -> Verdict<B> {
        assert!(
            !matches!(evidence, Evidence::BoundedSweep),
            "a bounded sweep alone cannot certify a universal property"
        );
        Verdict {
            status: Status::Holds,
            evidence,
            checked,
            refutation: None,
            note: None,
        }
    }

    fn refuted(r: Refutation<B>, evidence: Evidence, checked: u64) -> Verdict<B> {
        Verdict {
            status: Status::Refuted,
            evidence,
            checked,
            refutation: Some(r),
            note: None,
        }
    }

    fn undetermined(checked: u64) -> Verdict<B> {
        Verdict {
            status: Status::Undetermined,
            evidence: Evidence::BoundedSweep,
            checked,
            refutation: None,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Verdict<B> {
        self.note = Some(note);
        self
    }
}

/// Search caps shared by every classifier, echoed into reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchBounds {
    /// Height cap for domain elements in pair sweeps.
    pub pair_height: u32,
    /// Cap for canonical ideal enumeration.
    pub ideal_bound: u32,
    /// Random ideals sampled for per-ideal checks.
    pub samples: u32,
    /// Larger height used when re-verifying witnesses and closures.
    pub recheck_height: u32,
    /// RNG seed; identical bounds and seed reproduce reports exactly.
    pub seed: u64,
}

impl Default for SearchBounds {
    fn default() -> SearchBounds {
        SearchBounds {
            pair_height: 8,
            ideal_bound: 8,
            samples: 1000,
            recheck_height: 20,
            seed: 42,
        }
    }
}

// ---- primitive predicates --------------------------------------------------

/// Colon-ring criterion: A is v-invertible iff (A⁻¹ : A⁻¹) = D.
pub fn is_v_invertible<B: Backend>(b: &B, a: &B::Ideal) -> bool {
    let inv = b.inverse(a);
    b.colon(&inv, &inv) == b.unit_ideal()
}

/// Definitional route: A is v-invertible iff (A·A⁻¹)ᵛ = D. Kept
/// deliberately independent of [`is_v_invertible`] so the two can be
/// played against each other on random inputs.
pub fn v_invertible_direct<B: Backend>(b: &B, a: &B::Ideal) -> bool {
    let prod = b.mul(a, &b.inverse(a));
    b.v_closure(&prod) == b.unit_ideal()
}

fn intersect_principals<B: Backend>(b: &B, xs: &[B::K]) -> B::Ideal {
    let mut it = xs.iter();
    let mut acc = b.principal(it.next().expect("nonempty generator list"));
    for x in it {
        acc = b.intersect(&acc, &b.principal(x));
    }
    acc
}

fn module_of<B: Backend>(b: &B, gens: &[B::K]) -> B::Ideal {
    let mut it = gens.iter();
    let mut acc = b.principal(it.next().expect("nonempty generator list"));
    for g in it {
        acc = b.add(&acc, &b.principal(g));
    }
    acc
}

// ---- per-pair equivalences ---------------------------------------------

/// The four equivalent v-invertibility conditions of one pair, each
/// evaluated along its own arithmetic route.
#[derive(Debug, Clone)]
pub struct PairConditions<B: Backend> {
    pub pair: (B::K, B::K),
    /// In order, for F = (a, b): (F⁻¹ : F⁻¹) = D; (Fᵛ : Fᵛ) = D;
    /// (F·F⁻¹)ᵛ = D; ((a) ∩ (b) : (a) ∩ (b)) = D.
    pub conditions: [bool; 4],
    /// The self-colon ring of (a) ∩ (b), kept for witness reports.
    pub intersection_ring: B::Ideal,
}

impl<B: Backend> PairConditions<B> {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

/// Evaluate all four per-pair conditions and insist they agree. Each
/// condition runs its own downstream arithmetic (self-colon of the
/// inverse, self-colon of the v-closure, direct product closure, and
/// the principal-intersection ring), so agreement is a strong
/// arithmetic self-check; disagreement (or a failure of the
/// two-generated inverse identity (a, b)⁻¹ = a⁻¹D ∩ b⁻¹D) is an
/// internal error, never a verdict.
pub fn vdomain_pair_check<B: Backend>(
    b: &B,
    x: &B::K,
    y: &B::K,
) -> Result<PairConditions<B>, ClassifyError> {
    let unit = b.unit_ideal();
    let f = b.pair_ideal(x, y);

    // route 1: straight through the inverse
    let f_inv = b.inverse(&f);
    let c_pair = b.colon(&f_inv, &f_inv) == unit;

    // route 2: the self-colon ring of the v-closure itself; the
    // triple-inverse identity (Fᵛ)⁻¹ = F⁻¹ is asserted along the way
    let fv = b.v_closure(&f);
    let fv_inv = b.inverse(&fv);
    if fv_inv != f_inv {
        return Err(ClassifyError::InternalInconsistency(format!(
            "inverse of the v-closure drifted from the inverse for ({}, {})",
            b.render_k(x),
            b.render_k(y)
        )));
    }
    let c_vclosure = b.colon(&fv, &fv) == unit;

    // route 3: the direct definition (F·F⁻¹)ᵛ = D, with the inverse
    // recomputed as an intersection of principal ideals as a guard
    let inv2 = b.intersect(&b.principal(&b.k_inv(x)), &b.principal(&b.k_inv(y)));
    if inv2 != f_inv {
        return Err(ClassifyError::InternalInconsistency(format!(
            "two-generated inverse identity failed for ({}, {})",
            b.render_k(x),
            b.render_k(y)
        )));
    }
    let fvv = b.inverse(&inv2);
    if fvv != fv {
        return Err(ClassifyError::InternalInconsistency(format!(
            "v-closure recomputed through the intersection route drifted for ({}, {})",
            b.render_k(x),
            b.render_k(y)
        )));
    }
    let c_direct = b.v_closure(&b.mul(&f, &inv2)) == unit;

    // route 4: self-colon of the intersection of principals
    let g = b.intersect(&b.principal(x), &b.principal(y));
    let ring = b.colon(&g, &g);
    let c_intersection = ring == unit;

    let pc = PairConditions {
        pair: (x.clone(), y.clone()),
        conditions: [c_pair, c_vclosure, c_direct, c_intersection],
        intersection_ring: ring,
    };
    let all = pc.conditions.iter().all(|&c| c);
    let any = pc.conditions.iter().any(|&c| c);
    if all != any {
        return Err(ClassifyError::InternalInconsistency(format!(
            "the four per-pair v-invertibility conditions disagree for ({}, {}): {:?}",
            b.render_k(x),
            b.render_k(y),
            pc.conditions
        )));
    }
    Ok(pc)
}

// ---- finite-type witnesses ---------------------------------------------

/// Constructive certificate that (x, y)ᵛ and ((x) ∩ (y))⁻¹ are finite
/// intersections of principal ideals. With g₁, …, gₖ generating
/// (x) ∩ (y), the cogenerators are yᵢ = xy/gᵢ and zᵢ = 1/gᵢ; both
/// identities are verified exactly before the witness is returned.
#[derive(Debug, Clone)]
pub struct FtWitness<B: Backend> {
    pub pair: (B::K, B::K),
    /// (x, y)ᵛ = ⋂ yᵢD.
    pub cogenerators: Vec<B::K>,
    /// Whether each yᵢ lies in (x, y)ᵛ itself.
    pub cogenerators_in_ideal: Vec<bool>,
    /// ((x) ∩ (y))⁻¹ = ⋂ zᵢD.
    pub inverse_cogenerators: Vec<B::K>,
    pub inverse_cogenerators_in_ideal: Vec<bool>,
}

pub fn v_finite_type_witness<B: Backend>(
    b: &B,
    x: &B::K,
    y: &B::K,
) -> Result<FtWitness<B>, ClassifyError> {
    let f = b.pair_ideal(x, y);
    let fv = b.v_closure(&f);
    let g = b.intersect(&b.principal(x), &b.principal(y));
    let gens = b.ideal_generators(&g);
    if gens.is_empty() {
        return Err(ClassifyError::InternalInconsistency(
            "intersection of principal ideals reported no generators".into(),
        ));
    }

    let xy = b.k_mul(x, y);
    let ys: Vec<B::K> = gens.iter().map(|gi| b.k_mul(&xy, &b.k_inv(gi))).collect();
    let meet = intersect_principals(b, &ys);
    if meet != fv {
        return Err(ClassifyError::InternalInconsistency(format!(
            "finite-type identity for the v-closure failed for ({}, {})",
            b.render_k(x),
            b.render_k(y)
        )));
    }

    let g_inv = b.inverse(&g);
    let zs: Vec<B::K> = gens.iter().map(|gi| b.k_inv(gi)).collect();
    let meet_inv = intersect_principals(b, &zs);
    if meet_inv != g_inv {
        return Err(ClassifyError::InternalInconsistency(format!(
            "finite-type identity for the intersection inverse failed for ({}, {})",
            b.render_k(x),
            b.render_k(y)
        )));
    }

    Ok(FtWitness {
        pair: (x.clone(), y.clone()),
        cogenerators_in_ideal: ys.iter().map(|yi| b.ideal_contains_k(&fv, yi)).collect(),
        cogenerators: ys,
        inverse_cogenerators_in_ideal: zs.iter().map(|zi| b.ideal_contains_k(&g_inv, zi)).collect(),
        inverse_cogenerators: zs,
    })
}

// ---- t-invertibility ---------------------------------------------------

/// v-invertibility plus finite-type certificates on the ideal and its
/// inverse; in a system whose ideals are all finitely generated this is
/// exactly t-invertibility.
#[derive(Debug, Clone)]
pub struct TInvReport<B: Backend> {
    pub v_invertible: bool,
    /// Module generators of A, with membership flags (strictness).
    pub generators: Vec<B::K>,
    pub generators_in_ideal: Vec<bool>,
    /// Module generators of A⁻¹, with membership flags.
    pub inverse_generators: Vec<B::K>,
    pub inverse_generators_in_inverse: Vec<bool>,
    /// The generator modules reproduce A and A⁻¹ after v-closure.
    pub finite_type_verified: bool,
    pub t_invertible: bool,
}

pub fn is_t_invertible<B: Backend>(b: &B, a: &B::Ideal) -> TInvReport<B> {
    let v_invertible = is_v_invertible(b, a);
    let inv = b.inverse(a);

    let gens = b.ideal_generators(a);
    let ft_a = b.v_closure(&module_of(b, &gens)) == b.v_closure(a);
    let inv_gens = b.ideal_generators(&inv);
    // A⁻¹ is divisorial, so the v-closure of its generator module must
    // reproduce it exactly.
    let ft_inv = b.v_closure(&module_of(b, &inv_gens)) == inv;
    let finite_type_verified = ft_a && ft_inv;

    TInvReport {
        v_invertible,
        generators_in_ideal: gens.iter().map(|g| b.ideal_contains_k(a, g)).collect(),
        generators: gens,
        inverse_generators_in_inverse: inv_gens
            .iter()
            .map(|g| b.ideal_contains_k(&inv, g))
            .collect(),
        inverse_generators: inv_gens,
        finite_type_verified,
        t_invertible: v_invertible && finite_type_verified,
    }
}

// ---- divisorial intersection witnesses -----------------------------------

/// Elements y₁, …, yₙ of A with A⁻¹ = ⋂ yᵢ⁻¹D; n is minimized over the
/// search (singles, then pairs drawn from small elements of A, then the
/// full generator set).
#[derive(Debug, Clone)]
pub struct MoriWitness<B: Backend> {
    pub witnesses: Vec<B::K>,
    pub witnesses_in_ideal: Vec<bool>,
}

pub fn mori_witness<B: Backend>(b: &B, a: &B::Ideal) -> Result<MoriWitness<B>, ClassifyError> {
    let inv = b.inverse(a);
    let mk = |ys: Vec<B::K>| MoriWitness {
        witnesses_in_ideal: ys.iter().map(|y| b.ideal_contains_k(a, y)).collect(),
        witnesses: ys,
    };

    let elems = b.ideal_elements(a, MORI_SEARCH_HEIGHT);
    for y in &elems {
        if b.principal(&b.k_inv(y)) == inv {
            return Ok(mk(vec![y.clone()]));
        }
    }
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            let meet = b.intersect(
                &b.principal(&b.k_inv(&elems[i])),
                &b.principal(&b.k_inv(&elems[j])),
            );
            if meet == inv {
                return Ok(mk(vec![elems[i].clone(), elems[j].clone()]));
            }
        }
    }

    // A = Σ gᵢD always gives A⁻¹ = ⋂ gᵢ⁻¹D; failure of that identity is
    // an arithmetic bug, not a missing witness.
    let gens = b.ideal_generators(a);
    if gens.len() <= MORI_MAX_GENERATORS {
        let invs: Vec<B::K> = gens.iter().map(|g| b.k_inv(g)).collect();
        if intersect_principals(b, &invs) != inv {
            return Err(ClassifyError::InternalInconsistency(
                "generator meet drifted from the inverse".into(),
            ));
        }
        return Ok(mk(gens));
    }
    Err(ClassifyError::WitnessSearchExhausted(format!(
        "no divisorial intersection witness with at most {} elements",
        MORI_MAX_GENERATORS
    )))
}

// ---- property sweeps -----------------------------------------------------

/// Whether every two-generated (and, where enumerable, every) ideal is
/// v-invertible. Pairs sweep in deterministic (height, lexicographic)
/// order, so a reported witness is the first failure in that order.
pub fn vdomain_search<B: Backend>(
    b: &B,
    bounds: &SearchBounds,
) -> Result<Verdict<B>, ClassifyError> {
    let unit = b.unit_ideal();
    let elems = b.domain_elements(bounds.pair_height);
    let mut checked = 0u64;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            checked += 1;
            let (x, y) = (&elems[i], &elems[j]);
            let g = b.intersect(&b.principal(x), &b.principal(y));
            let ring = b.colon(&g, &g);
            if ring != unit {
                // a candidate witness must fail all four routes
                let pc = vdomain_pair_check(b, x, y)?;
                if b.oracle_all_properties_hold() == Some(true) {
                    return Err(ClassifyError::OracleMismatch(format!(
                        "pair ({}, {}) fails v-invertibility although the {} certifies the domain",
                        b.render_k(x),
                        b.render_k(y),
                        b.oracle_name()
                    )));
                }
                return Ok(Verdict::refuted(
                    Refutation {
                        check: FailedCheck::PairNotVInvertible,
                        pair: Some((x.clone(), y.clone())),
                        ideal: g,
                        lhs: pc.intersection_ring,
                        rhs: unit,
                        from_probe: false,
                    },
                    Evidence::BoundedSweep,
                    checked,
                ));
            }
        }
    }

    if b.ideals_exhaustive() {
        for ideal in b.enumerate_ideals(bounds.ideal_bound) {
            checked += 1;
            let inv = b.inverse(&ideal);
            let ring = b.colon(&inv, &inv);
            if ring != unit {
                if b.oracle_all_properties_hold() == Some(true) {
                    return Err(ClassifyError::OracleMismatch(format!(
                        "ideal {} fails v-invertibility although the {} certifies the system",
                        b.render_ideal(&ideal),
                        b.oracle_name()
                    )));
                }
                return Ok(Verdict::refuted(
                    Refutation {
                        check: FailedCheck::IdealNotVInvertible,
                        pair: None,
                        ideal,
                        lhs: ring,
                        rhs: unit,
                        from_probe: false,
                    },
                    Evidence::ExhaustiveEnumeration,
                    checked,
                ));
            }
        }
        if b.oracle_all_properties_hold() == Some(false) {
            return Err(ClassifyError::OracleMismatch(
                "exhaustive sweep found no witness although the oracle marks the system defective"
                    .into(),
            ));
        }
        return Ok(Verdict::holds(Evidence::ExhaustiveEnumeration, checked));
    }

    match b.oracle_all_properties_hold() {
        Some(true) => Ok(Verdict::holds(
            Evidence::TheoryOracle(b.oracle_name()),
            checked,
        )),
        Some(false) => {
            let (x, y) = b.defect_probe().ok_or_else(|| {
                ClassifyError::OracleMismatch(
                    "oracle marks the domain defective but no probe pair is available".into(),
                )
            })?;
            checked += 1;
            let pc = vdomain_pair_check(b, &x, &y)?;
            if pc.all_hold() {
                return Err(ClassifyError::OracleMismatch(
                    "the defect probe is v-invertible although the oracle marks the domain defective"
                        .into(),
                ));
            }
            let g = b.intersect(&b.principal(&x), &b.principal(&y));
            Ok(Verdict::refuted(
                Refutation {
                    check: FailedCheck::PairNotVInvertible,
                    pair: Some((x, y)),
                    ideal: g,
                    lhs: pc.intersection_ring,
                    rhs: unit,
                    from_probe: true,
                },
                Evidence::BoundedSweep,
                checked,
            ))
        }
        None => Ok(Verdict::undetermined(checked)),
    }
}

/// Verify finite-type witnesses across the pair sweep. Holds by theory
/// in any system whose ideals are all finitely generated; the sweep is
/// corroboration, capped at `cap` pairs when a co-verdict has already
/// refuted the larger conjunction.
fn v_fc_sweep<B: Backend>(
    b: &B,
    bounds: &SearchBounds,
    cap: Option<u64>,
) -> Result<Verdict<B>, ClassifyError> {
    let elems = b.domain_elements(bounds.pair_height);
    let cap = cap.unwrap_or(u64::MAX);
    let mut checked = 0u64;
    'outer: for i in 0..elems.len() {
        for j in i..elems.len() {
            if checked >= cap {
                break 'outer;
            }
            v_finite_type_witness(b, &elems[i], &elems[j])?;
            checked += 1;
        }
    }
    Ok(Verdict::holds(
        Evidence::TheoryOracle("every ideal of this system is finitely generated"),
        checked,
    )
    .with_note(format!(
        "finite-type witnesses constructed and verified for {} pairs",
        checked
    )))
}

/// Whether (x, y)ᵛ is of finite type for all swept pairs, with
/// constructive witnesses.
pub fn v_finite_conductor_check<B: Backend>(
    b: &B,
    bounds: &SearchBounds,
) -> Result<Verdict<B>, ClassifyError> {
    v_fc_sweep(b, bounds, None)
}

fn combine_pvmd<B: Backend>(vd: &Verdict<B>, vfc: &Verdict<B>) -> Verdict<B> {
    let checked = vd.checked + vfc.checked;
    let note = format!(
        "conjunction of the v-domain verdict and {} finite-type pair witnesses",
        vfc.checked
    );
    match vd.status {
        Status::Holds => Verdict {
            status: Status::Holds,
            evidence: vd.evidence,
            checked,
            refutation: None,
            note: Some(note),
        },
        Status::Refuted => Verdict {
            status: Status::Refuted,
            evidence: vd.evidence,
            checked,
            refutation: vd.refutation.clone(),
            note: Some(format!("{}; the v-domain conjunct fails", note)),
        },
        Status::Undetermined => Verdict::undetermined(checked).with_note(note),
    }
}

/// PvMD = v-domain together with the finite-type property for pair
/// v-closures. The second conjunct holds by theory here, so the verdict
/// tracks the v-domain search; both sweeps still run.
pub fn pvmd_check<B: Backend>(b: &B, bounds: &SearchBounds) -> Result<Verdict<B>, ClassifyError> {
    let vd = vdomain_search(b, bounds)?;
    let cap = match vd.status {
        Status::Refuted => Some(vd.checked),
        _ => None,
    };
    let vfc = v_fc_sweep(b, bounds, cap)?;
    Ok(combine_pvmd(&vd, &vfc))
}

/// Whether every enumerated ideal is v-invertible: the complete
/// integral closure criterion, over the canonical ideal slice.
pub fn cic_search<B: Backend>(b: &B, bounds: &SearchBounds) -> Result<Verdict<B>, ClassifyError> {
    let unit = b.unit_ideal();
    let mut checked = 0u64;
    for ideal in b.enumerate_ideals(bounds.ideal_bound) {
        checked += 1;
        let inv = b.inverse(&ideal);
        let ring = b.colon(&inv, &inv);
        if ring != unit {
            if b.oracle_all_properties_hold() == Some(true) {
                return Err(ClassifyError::OracleMismatch(format!(
                    "ideal {} fails v-invertibility although the {} certifies the domain",
                    b.render_ideal(&ideal),
                    b.oracle_name()
                )));
            }
            return Ok(Verdict::refuted(
                Refutation {
                    check: FailedCheck::IdealNotVInvertible,
                    pair: None,
                    ideal,
                    lhs: ring,
                    rhs: unit,
                    from_probe: false,
                },
                if b.ideals_exhaustive() {
                    Evidence::ExhaustiveEnumeration
                } else {
                    Evidence::BoundedSweep
                },
                checked,
            ));
        }
    }
    if b.ideals_exhaustive() {
        if b.oracle_all_properties_hold() == Some(false) {
            return Err(ClassifyError::OracleMismatch(
                "exhaustive sweep found no witness although the oracle marks the system defective"
                    .into(),
            ));
        }
        return Ok(Verdict::holds(Evidence::ExhaustiveEnumeration, checked));
    }
    match b.oracle_all_properties_hold() {
        Some(true) => Ok(Verdict::holds(
            Evidence::TheoryOracle(b.oracle_name()),
            checked,
        )),
        Some(false) => {
            let (x, y) = b.defect_probe().ok_or_else(|| {
                ClassifyError::OracleMismatch(
                    "oracle marks the domain defective but no probe pair is available".into(),
                )
            })?;
            let ideal = b.pair_ideal(&x, &y);
            checked += 1;
            let inv = b.inverse(&ideal);
            let ring = b.colon(&inv, &inv);
            if ring == unit {
                return Err(ClassifyError::OracleMismatch(
                    "the defect probe is v-invertible although the oracle marks the domain defective"
                        .into(),
                ));
            }
            Ok(Verdict::refuted(
                Refutation {
                    check: FailedCheck::IdealNotVInvertible,
                    pair: Some((x, y)),
                    ideal,
                    lhs: ring,
                    rhs: unit,
                    from_probe: true,
                },
                Evidence::BoundedSweep,
                checked,
            ))
        }
        None => Ok(Verdict::undetermined(checked)),
    }
}

/// Whether (F : F) = D for every swept two-generated F (and every
/// enumerated ideal where enumeration is complete): D admits no proper
/// integral extension certified by a finitely generated module.
pub fn integrally_closed_sweep<B: Backend>(
    b: &B,
    bounds: &SearchBounds,
) -> Result<Verdict<B>, ClassifyError> {
    let unit = b.unit_ideal();
    let elems = b.domain_elements(bounds.pair_height);
    let mut checked = 0u64;
    let refute = |pair: Option<(B::K, B::K)>,
                  ideal: B::Ideal,
                  ring: B::Ideal,
                  from_probe: bool,
                  evidence: Evidence,
                  checked: u64|
     -> Result<Verdict<B>, ClassifyError> {
        if b.oracle_all_properties_hold() == Some(true) {
            return Err(ClassifyError::OracleMismatch(format!(
                "(F : F) exceeds the domain for F = {} although the {} certifies it",
                b.render_ideal(&ideal),
                b.oracle_name()
            )));
        }
        Ok(Verdict::refuted(
            Refutation {
                check: FailedCheck::ColonRingExceedsDomain,
                pair,
                ideal,
                lhs: ring,
                rhs: unit.clone(),
                from_probe,
            },
            evidence,
            checked,
        ))
    };

    for i in 0..elems.len() {
        for j in i..elems.len() {
            checked += 1;
            let f = b.pair_ideal(&elems[i], &elems[j]);
            let ring = b.colon(&f, &f);
            if ring != unit {
                return refute(
                    Some((elems[i].clone(), elems[j].clone())),
                    f,
                    ring,
                    false,
                    Evidence::BoundedSweep,
                    checked,
                );
            }
        }
    }
    if b.ideals_exhaustive() {
        for ideal in b.enumerate_ideals(bounds.ideal_bound) {
            checked += 1;
            let ring = b.colon(&ideal, &ideal);
            if ring != unit {
                return refute(
                    None,
                    ideal,
                    ring,
                    false,
                    Evidence::ExhaustiveEnumeration,
                    checked,
                );
            }
        }
        if b.oracle_all_properties_hold() == Some(false) {
            return Err(ClassifyError::OracleMismatch(
                "exhaustive sweep found no witness although the oracle marks the system defective"
                    .into(),
            ));
        }
        return Ok(Verdict::holds(Evidence::ExhaustiveEnumeration, checked));
    }
    match b.oracle_all_properties_hold() {
        Some(true) => Ok(Verdict::holds(
            Evidence::TheoryOracle(b.oracle_name()),
            checked,
        )),
        Some(false) => {
            let (x, y) = b.defect_probe().ok_or_else(|| {
                ClassifyError::OracleMismatch(
                    "oracle marks the domain defective but no probe pair is available".into(),
                )
            })?;
            let f = b.pair_ideal(&x, &y);
            checked += 1;
            let ring = b.colon(&f, &f);
            if ring == unit {
                return Err(ClassifyError::OracleMismatch(
                    "the defect probe has trivial colon ring although the oracle marks the domain defective"
                        .into(),
                ));
            }
            refute(Some((x, y)), f, ring, true, Evidence::BoundedSweep, checked)
        }
        None => Ok(Verdict::undetermined(checked)),
    }
}

// ---- sampled per-ideal verdicts -------------------------------------------

/// Deterministic sample set shared by the per-ideal verdicts: seeded
/// random ideals, the defect probe (if any), and the full canonical
/// enumeration when it is exhaustive.
fn sample_set<B: Backend>(b: &B, bounds: &SearchBounds) -> Vec<B::Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut sampled: Vec<B::Ideal> = (0..bounds.samples)
        .map(|_| b.sample_ideal(&mut rng, bounds.pair_height))
        .collect();
    if let Some((x, y)) = b.defect_probe() {
        sampled.push(b.pair_ideal(&x, &y));
    }
    if b.ideals_exhaustive() {
        sampled.extend(b.enumerate_ideals(bounds.ideal_bound));
    }
    sampled
}

fn mori_verdict<B: Backend>(
    b: &B,
    sampled: &[B::Ideal],
) -> Result<(Verdict<B>, u64), ClassifyError> {
    let mut two_element = 0u64;
    let mut checked = 0u64;
    for a in sampled {
        match mori_witness(b, a) {
            Ok(w) => {
                checked += 1;
                if w.witnesses.len() <= 2 {
                    two_element += 1;
                }
            }
            Err(ClassifyError::WitnessSearchExhausted(msg)) => {
                return Ok((
                    Verdict::undetermined(checked).with_note(format!(
                        "witness search exhausted on {}: {}",
                        b.render_ideal(a),
                        msg
                    )),
                    two_element,
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((
        Verdict::holds(
            Evidence::TheoryOracle("every ideal of this system is finitely generated"),
            checked,
        )
        .with_note(format!(
            "divisorial intersection witnesses found for all {} sampled ideals ({} with at most two elements)",
            checked, two_element
        )),
        two_element,
    ))
}

fn t_invertible_verdict<B: Backend>(
    b: &B,
    sampled: &[B::Ideal],
) -> Result<Verdict<B>, ClassifyError> {
    let unit = b.unit_ideal();
    let mut checked = 0u64;
    for a in sampled {
        checked += 1;
        let r = is_t_invertible(b, a);
        if !r.v_invertible || !r.finite_type_verified {
            if b.oracle_all_properties_hold() == Some(true) {
                return Err(ClassifyError::OracleMismatch(format!(
                    "sampled ideal {} is not t-invertible although the {} certifies the domain",
                    b.render_ideal(a),
                    b.oracle_name()
                )));
            }
            let inv = b.inverse(a);
            let ring = b.colon(&inv, &inv);
            return Ok(Verdict::refuted(
                Refutation {
                    check: FailedCheck::IdealNotVInvertible,
                    pair: None,
                    ideal: a.clone(),
                    lhs: ring,
                    rhs: unit,
                    from_probe: false,
                },
                Evidence::BoundedSweep,
                checked,
            )
            .with_note("found among the sampled ideals".into()));
        }
    }
    match b.oracle_all_properties_hold() {
        Some(true) => Ok(Verdict::holds(
            Evidence::TheoryOracle(b.oracle_name()),
            checked,
        )),
        Some(false) => Err(ClassifyError::OracleMismatch(
            "every sampled ideal (including the defect probe) is t-invertible although the oracle marks the system defective"
                .into(),
        )),
        None => Ok(Verdict::undetermined(checked)),
    }
}

fn krull_verdict<B: Backend>(mori: &Verdict<B>, vd: &Verdict<B>) -> Verdict<B> {
    let checked = mori.checked + vd.checked;
    match (mori.status, vd.status) {
        (Status::Holds, Status::Holds) => Verdict {
            status: Status::Holds,
            evidence: vd.evidence,
            checked,
            refutation: None,
            note: Some(
                "both conjuncts hold: divisorial intersection witnesses and v-domain".into(),
            ),
        },
        (_, Status::Refuted) => Verdict {
            status: Status::Refuted,
            evidence: vd.evidence,
            checked,
            refutation: vd.refutation.clone(),
            note: Some("the v-domain conjunct fails".into()),
        },
        (Status::Refuted, _) => Verdict {
            status: Status::Refuted,
            evidence: mori.evidence,
            checked,
            refutation: mori.refutation.clone(),
            note: Some("the divisorial intersection conjunct fails".into()),
        },
        _ => Verdict::undetermined(checked)
            .with_note("one conjunct is undetermined within the bounds".into()),
    }
}

/// Krull = v-domain + divisorial intersection witnesses for every
/// ideal; equivalently, every nonzero ideal is t-invertible.
pub fn krull_check<B: Backend>(b: &B, bounds: &SearchBounds) -> Result<Verdict<B>, ClassifyError> {
    let vd = vdomain_search(b, bounds)?;
    let sampled = sample_set(b, bounds);
    let (mori, _) = mori_verdict(b, &sampled)?;
    Ok(krull_verdict(&mori, &vd))
}

// ---- whole-domain classification -------------------------------------------

#[derive(Debug, Clone)]
pub struct Classification<B: Backend> {
    pub description: String,
    pub oracle_name: &'static str,
    pub oracle: Option<bool>,
    pub bounds: SearchBounds,
    pub v_domain: Verdict<B>,
    pub v_finite_conductor: Verdict<B>,
    pub pvmd: Verdict<B>,
    pub completely_integrally_closed: Verdict<B>,
    pub integrally_closed: Verdict<B>,
    pub mori: Verdict<B>,
    pub krull: Verdict<B>,
    pub t_invertible: Verdict<B>,
    /// Sampled ideals whose divisorial intersection witness needed at
    /// most two elements.
    pub mori_two_element: u64,
}

/// Run every classifier and cross-validate the implication lattice.
pub fn classify<B: Backend>(
    b: &B,
    bounds: &SearchBounds,
) -> Result<Classification<B>, ClassifyError> {
    let v_domain = vdomain_search(b, bounds)?;
    let cap = match v_domain.status {
        Status::Refuted => Some(v_domain.checked),
        _ => None,
    };
    let v_finite_conductor = v_fc_sweep(b, bounds, cap)?;
    let pvmd = combine_pvmd(&v_domain, &v_finite_conductor);
    let completely_integrally_closed = cic_search(b, bounds)?;
    let integrally_closed = integrally_closed_sweep(b, bounds)?;

    let sampled = sample_set(b, bounds);
    let (mori, mori_two_element) = mori_verdict(b, &sampled)?;
    let t_invertible = t_invertible_verdict(b, &sampled)?;
    let krull = krull_verdict(&mori, &v_domain);

    let c = Classification {
        description: b.describe(),
        oracle_name: b.oracle_name(),
        oracle: b.oracle_all_properties_hold(),
        bounds: *bounds,
        v_domain,
        v_finite_conductor,
        pvmd,
        completely_integrally_closed,
        integrally_closed,
        mori,
        krull,
        t_invertible,
        mori_two_element,
    };
    validate_implications(&c)?;
    Ok(c)
}

/// The implication lattice between the classified properties; verdicts
/// that violate it indicate an arithmetic bug and abort the report.
pub fn validate_implications<B: Backend>(c: &Classification<B>) -> Result<(), ClassifyError> {
    use Status::{Holds, Refuted};
    let rules: [(&str, bool); 10] = [
        (
            "Krull requires both the v-domain and the divisorial intersection property",
            !(c.krull.status == Holds && (c.v_domain.status != Holds || c.mori.status != Holds)),
        ),
        (
            "v-domain plus divisorial intersection witnesses forces Krull",
            !(c.v_domain.status == Holds && c.mori.status == Holds && c.krull.status != Holds),
        ),
        (
            "Krull implies PvMD",
            !(c.krull.status == Holds && c.pvmd.status != Holds),
        ),
        (
            "PvMD requires the v-domain property",
            !(c.pvmd.status == Holds && c.v_domain.status != Holds),
        ),
        (
            "a refuted v-domain refutes PvMD",
            !(c.v_domain.status == Refuted && c.pvmd.status != Refuted),
        ),
        (
            "PvMD with finite conductors implies integral closedness",
            !(c.pvmd.status == Holds && c.integrally_closed.status == Refuted),
        ),
        (
            "integral closedness with v-finite conductors implies PvMD",
            !(c.integrally_closed.status == Holds
                && c.v_finite_conductor.status == Holds
                && c.pvmd.status == Refuted),
        ),
        (
            "complete integral closedness implies the v-domain property",
            !(c.completely_integrally_closed.status == Holds && c.v_domain.status == Refuted),
        ),
        (
            "a refuted v-domain refutes complete integral closedness",
            !(c.v_domain.status == Refuted && c.completely_integrally_closed.status == Holds),
        ),
        (
            "Krull and universal t-invertibility coincide",
            !(c.krull.status == Holds && c.t_invertible.status == Refuted
                || c.t_invertible.status == Holds && c.krull.status == Refuted),
        ),
    ];
    for (rule, ok) in rules {
        if !ok {
            return Err(ClassifyError::InternalInconsistency(format!(
                "implication violated: {}",
                rule
            )));
        }
    }
    Ok(())
}
