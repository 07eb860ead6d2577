//! Reproducible classification reports.
//!
//! The structured document is a pure function of the system and the
//! search bounds: field order is fixed, witnesses are rendered in the
//! same element syntax the CLI parses, and nothing time- or
//! machine-dependent is included, so byte-identical reruns are part of
//! the contract. Wall-clock timings may appear in the human-readable
//! text rendering only.

use crate::backend::Backend;
use crate::classify::{
    classify, Classification, ClassifyError, Evidence, FailedCheck, Refutation, SearchBounds,
    Status, Verdict,
};
use crate::numsg::{NumSemigroup, MAX_ENUM_GENUS};
use crate::quad::{QuadOrder, SplitKind};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub system: SystemInfo,
    pub oracle: OracleInfo,
    pub bounds: SearchBounds,
    pub verdicts: Vec<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<PrimeDoc>>,
    pub counters: Counters,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemInfo {
    /// "quadratic-order" or "numerical-semigroup".
    pub kind: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductor: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub name: String,
    pub all_properties_hold: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub property: String,
    pub status: String,
    pub evidence: String,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A refutation, rendered; every string round-trips through the CLI
/// expression grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[String; 2]>,
    pub ideal: String,
    pub computed: String,
    pub expected: String,
    pub from_probe: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDoc {
    pub p: u64,
    pub ideal: String,
    pub split: String,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub domain_elements: u64,
    pub enumerated_ideals: u64,
    pub sampled_ideals: u64,
    /// Sampled ideals whose divisorial intersection witness needed at
    /// most two elements.
    pub two_element_witnesses: u64,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Refuted => "refuted",
        Status::Undetermined => "undetermined",
    }
}

fn evidence_str(e: Evidence) -> String {
    match e {
        Evidence::BoundedSweep => "bounded-sweep".into(),
        Evidence::TheoryOracle(name) => format!("theory-oracle: {}", name),
        Evidence::ExhaustiveEnumeration => "exhaustive-enumeration".into(),
    }
}

fn check_str(c: FailedCheck) -> &'static str {
    match c {
        FailedCheck::PairNotVInvertible => "pair-not-v-invertible",
        FailedCheck::IdealNotVInvertible => "ideal-not-v-invertible",
        FailedCheck::ColonRingExceedsDomain => "colon-ring-exceeds-domain",
    }
}

fn witness_doc<B: Backend>(b: &B, r: &Refutation<B>) -> WitnessDoc {
    WitnessDoc {
        check: check_str(r.check).into(),
        pair: r.pair.as_ref().map(|(x, y)| [b.render_k(x), b.render_k(y)]),
        ideal: b.render_ideal(&r.ideal),
        computed: b.render_ideal(&r.lhs),
        expected: b.render_ideal(&r.rhs),
        from_probe: r.from_probe,
    }
}

fn verdict_doc<B: Backend>(b: &B, property: &str, v: &Verdict<B>) -> VerdictDoc {
    VerdictDoc {
        property: property.into(),
        status: status_str(v.status).into(),
        evidence: evidence_str(v.evidence),
        checked: v.checked,
        witness: v.refutation.as_ref().map(|r| witness_doc(b, r)),
        note: v.note.clone(),
    }
}

/// Assemble the backend-independent part of the document.
pub fn classification_document<B: Backend>(
    b: &B,
    c: &Classification<B>,
    system: SystemInfo,
    primes: Option<Vec<PrimeDoc>>,
) -> ReportDocument {
    let verdicts = vec![
        verdict_doc(b, "v-domain", &c.v_domain),
        verdict_doc(b, "v-finite-conductor", &c.v_finite_conductor),
        verdict_doc(b, "pvmd", &c.pvmd),
        verdict_doc(
            b,
            "completely-integrally-closed",
            &c.completely_integrally_closed,
        ),
        verdict_doc(b, "integrally-closed", &c.integrally_closed),
        verdict_doc(b, "mori", &c.mori),
        verdict_doc(b, "krull", &c.krull),
        verdict_doc(b, "t-invertible", &c.t_invertible),
    ];
    ReportDocument {
        tool: ToolInfo {
            name: "videal".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        system,
        oracle: OracleInfo {
            name: c.oracle_name.into(),
            all_properties_hold: c.oracle,
        },
        bounds: c.bounds,
        verdicts,
        primes,
        counters: Counters {
            domain_elements: b.domain_elements(c.bounds.pair_height).len() as u64,
            enumerated_ideals: b.enumerate_ideals(c.bounds.ideal_bound).len() as u64,
            sampled_ideals: c.bounds.samples as u64,
            two_element_witnesses: c.mori_two_element,
        },
    }
}

fn split_str(s: SplitKind) -> &'static str {
    match s {
        SplitKind::Split => "split",
        SplitKind::Inert => "inert",
        SplitKind::Ramified => "ramified",
    }
}

/// Classify a quadratic order and report, including the essential-prime
/// table for the requested rational primes.
pub fn quadratic_report(
    order: &QuadOrder,
    bounds: &SearchBounds,
    primes: &[u64],
) -> Result<ReportDocument, ClassifyError> {
    let c = classify(order, bounds)?;
    let mut prime_docs = Vec::new();
    for &p in primes {
        let infos = order
            .essential_at(p)
            .map_err(|e| ClassifyError::Unsupported(e.to_string()))?;
        for info in infos {
            prime_docs.push(PrimeDoc {
                p: info.p,
                ideal: info.rendered.clone(),
                split: split_str(info.split).into(),
                essential: info.essential,
            });
        }
    }
    // a PvMD is essential at every prime; a counterexample is a bug
    if c.pvmd.status == Status::Holds && prime_docs.iter().any(|pd| !pd.essential) {
        return Err(ClassifyError::OracleMismatch(
            "a domain classified as PvMD reported a non-essential prime".into(),
        ));
    }
    let system = SystemInfo {
        kind: "quadratic-order".into(),
        description: order.describe(),
        d: Some(order.d()),
        conductor: Some(order.conductor()),
        generators: None,
    };
    Ok(classification_document(order, &c, system, Some(prime_docs)))
}

/// Classify a numerical semigroup and report.
pub fn semigroup_report(
    sg: &Arc<NumSemigroup>,
    bounds: &SearchBounds,
) -> Result<ReportDocument, ClassifyError> {
    if sg.gaps().len() > MAX_ENUM_GENUS {
        return Err(ClassifyError::Unsupported(format!(
            "genus {} exceeds the exhaustive enumeration cap {}",
            sg.gaps().len(),
            MAX_ENUM_GENUS
        )));
    }
    let c = classify(sg, bounds)?;
    let system = SystemInfo {
        kind: "numerical-semigroup".into(),
        description: sg.describe(),
        d: None,
        conductor: Some(sg.conductor() as i64),
        generators: Some(sg.min_generators().to_vec()),
    };
    Ok(classification_document(sg, &c, system, None))
}

/// Canonical JSON bytes: pretty-printed with a trailing newline, field
/// order fixed by the struct definitions above.
pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Human-readable rendering. `elapsed_ms` is appended at the end when
/// given; it is the only non-reproducible line and never enters the
/// structured form.
pub fn to_text(doc: &ReportDocument, elapsed_ms: Option<u128>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "system: {}  [{}]",
        doc.system.description, doc.system.kind
    );
    let oracle_value = match doc.oracle.all_properties_hold {
        Some(true) => "all properties hold",
        Some(false) => "defective",
        None => "no verdict",
    };
    let _ = writeln!(out, "oracle: {} -> {}", doc.oracle.name, oracle_value);
    let _ = writeln!(
        out,
        "bounds: pair height {}, ideal bound {}, samples {}, recheck height {}, seed {}",
        doc.bounds.pair_height,
        doc.bounds.ideal_bound,
        doc.bounds.samples,
        doc.bounds.recheck_height,
        doc.bounds.seed
    );
    let _ = writeln!(out);
    for v in &doc.verdicts {
        let _ = writeln!(
            out,
            "{:<30} {:<13} ({}, {} checked)",
            v.property, v.status, v.evidence, v.checked
        );
        if let Some(w) = &v.witness {
            if let Some([x, y]) = &w.pair {
                let _ = writeln!(
                    out,
                    "    witness{}: pair ({}, {})",
                    if w.from_probe {
                        " (conductor probe)"
                    } else {
                        ""
                    },
                    x,
                    y
                );
            } else {
                let _ = writeln!(
                    out,
                    "    witness{}: ideal {}",
                    if w.from_probe {
                        " (conductor probe)"
                    } else {
                        ""
                    },
                    w.ideal
                );
            }
            let _ = writeln!(out, "      check:    {}", w.check);
            let _ = writeln!(out, "      ideal:    {}", w.ideal);
            let _ = writeln!(out, "      computed: {}", w.computed);
            let _ = writeln!(out, "      expected: {}", w.expected);
        }
        if let Some(n) = &v.note {
            let _ = writeln!(out, "    note: {}", n);
        }
    }
    if let Some(primes) = &doc.primes {
        if !primes.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "primes:");
            for p in primes {
                let _ = writeln!(
                    out,
                    "  p = {:<6} {:<24} {:<9} {}",
                    p.p,
                    p.ideal,
                    p.split,
                    if p.essential {
                        "essential"
                    } else {
                        "not essential"
                    }
                );
            }
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "counters: {} domain elements, {} enumerated ideals, {} sampled ideals, {} two-element witnesses",
        doc.counters.domain_elements,
        doc.counters.enumerated_ideals,
        doc.counters.sampled_ideals,
        doc.counters.two_element_witnesses
    );
    if let Some(ms) = elapsed_ms {
        let _ = writeln!(out, "elapsed: {} ms", ms);
    }
    out
}
