//! Machine-readable reports with a stable schema. Every field of a
//! report is always present; a check that did not run is marked
//! `"skipped"` rather than defaulted, so a reader can tell "false"
//! from "not computed". Timing lives outside the deterministic
//! payload: serializing the same `report` twice yields byte-identical
//! JSON.

use serde::{Serialize, Serializer};
use std::time::Instant;

/// Outcome of one check: completed with a value, or explicitly
/// skipped. Serializes as the bare value or the string `"skipped"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome<T = bool> {
    Done(T),
    Skipped,
}

impl<T> CheckOutcome<T> {
    pub fn done(self) -> Option<T> {
        match self {
            CheckOutcome::Done(v) => Some(v),
            CheckOutcome::Skipped => None,
        }
    }
}

impl CheckOutcome<bool> {
    /// True when the check ran and the property came out false.
    pub fn failed(&self) -> bool {
        matches!(self, CheckOutcome::Done(false))
    }
}

impl<T: Serialize> Serialize for CheckOutcome<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CheckOutcome::Done(v) => v.serialize(s),
            CheckOutcome::Skipped => s.serialize_str("skipped"),
        }
    }
}

/// Classification report for one solution or parameter family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub construction: String,
    pub points: Option<usize>,
    pub valid: CheckOutcome,
    pub indecomposable: CheckOutcome,
    pub irretractable: CheckOutcome,
    pub simple_criterion: CheckOutcome,
    pub simple_oracle: CheckOutcome,
    pub brace_simple: CheckOutcome,
    pub certificate: CheckOutcome,
    pub group_order: CheckOutcome<usize>,
    pub sigma_orders: CheckOutcome<Vec<u64>>,
    pub orbit_count: CheckOutcome<usize>,
    pub retract_tower: CheckOutcome<Vec<usize>>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(construction: impl Into<String>) -> Report {
        Report {
            construction: construction.into(),
            points: None,
            valid: CheckOutcome::Skipped,
            indecomposable: CheckOutcome::Skipped,
            irretractable: CheckOutcome::Skipped,
            simple_criterion: CheckOutcome::Skipped,
            simple_oracle: CheckOutcome::Skipped,
            brace_simple: CheckOutcome::Skipped,
            certificate: CheckOutcome::Skipped,
            group_order: CheckOutcome::Skipped,
            sigma_orders: CheckOutcome::Skipped,
            orbit_count: CheckOutcome::Skipped,
            retract_tower: CheckOutcome::Skipped,
            witnesses: Vec::new(),
        }
    }

    /// True when some boolean check ran and evaluated false.
    pub fn any_false(&self) -> bool {
        self.valid.failed()
            || self.indecomposable.failed()
            || self.irretractable.failed()
            || self.simple_criterion.failed()
            || self.simple_oracle.failed()
            || self.brace_simple.failed()
            || self.certificate.failed()
    }
}

/// Report for the asymmetric-product pipelines, with one shared key
/// set across the three constructions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymPipelineReport {
    pub construction: String,
    pub order: u64,
    pub simple: CheckOutcome,
    pub orbit_size: CheckOutcome<usize>,
    pub generates: CheckOutcome,
    pub certificate: CheckOutcome,
    pub cross_checks: Vec<String>,
}

impl AsymPipelineReport {
    pub fn new(construction: impl Into<String>, order: u64) -> AsymPipelineReport {
        AsymPipelineReport {
            construction: construction.into(),
            order,
            simple: CheckOutcome::Skipped,
            orbit_size: CheckOutcome::Skipped,
            generates: CheckOutcome::Skipped,
            certificate: CheckOutcome::Skipped,
            cross_checks: Vec::new(),
        }
    }

    pub fn any_false(&self) -> bool {
        self.simple.failed() || self.generates.failed() || self.certificate.failed()
    }
}

/// Outcome of an isomorphism search between two solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub construction: String,
    pub sizes: (usize, usize),
    pub isomorphic: CheckOutcome,
    /// Point images of a found isomorphism, first solution to second.
    pub mapping: Option<Vec<usize>>,
}

/// Lambda orbit of one brace element and the additive span it generates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraceOrbitReport {
    pub construction: String,
    pub order: usize,
    pub element: usize,
    pub orbit_size: usize,
    pub span_size: usize,
    pub generates: CheckOutcome,
}

/// One family in a census sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub j: Vec<usize>,
    pub indecomposable_criterion: bool,
    pub indecomposable_oracle: bool,
    pub irretractable_criterion: bool,
    pub irretractable_oracle: bool,
    pub simple_criterion: bool,
    pub simple_oracle: CheckOutcome,
}

impl CensusRow {
    /// Every computed oracle agrees with its criterion.
    pub fn consistent(&self) -> bool {
        self.indecomposable_criterion == self.indecomposable_oracle
            && self.irretractable_criterion == self.irretractable_oracle
            && match self.simple_oracle {
                CheckOutcome::Done(o) => o == self.simple_criterion,
                CheckOutcome::Skipped => true,
            }
    }
}

/// Census sweep over every symmetric family of one group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub group: String,
    pub families: usize,
    pub simple_families: usize,
    pub mismatches: usize,
    pub rows: Vec<CensusRow>,
}

/// A report together with its wall-clock time. Only `report` takes
/// part in determinism comparisons.
#[derive(Debug, Clone, Serialize)]
pub struct Timed<T> {
    pub report: T,
    pub elapsed_ms: u128,
}

/// Runs a closure and attaches its elapsed time.
pub fn timed<T>(f: impl FnOnce() -> T) -> Timed<T> {
    let start = Instant::now();
    let report = f();
    Timed { report, elapsed_ms: start.elapsed().as_millis() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_checks_serialize_as_a_marker_string() {
        let mut rep = Report::new("probe");
        rep.valid = CheckOutcome::Done(true);
        rep.group_order = CheckOutcome::Done(8);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"valid\":true"));
        assert!(json.contains("\"group_order\":8"));
        assert!(json.contains("\"simple_oracle\":\"skipped\""));
    }

    #[test]
    fn false_detection_ignores_skipped_fields() {
        let mut rep = Report::new("probe");
        assert!(!rep.any_false());
        rep.simple_oracle = CheckOutcome::Done(false);
        assert!(rep.any_false());
    }

    #[test]
    fn identical_payloads_serialize_identically() {
        let rep = Report::new("determinism");
        let a = serde_json::to_string(&rep).unwrap();
        let b = serde_json::to_string(&rep.clone()).unwrap();
        assert_eq!(a, b);
    }
}
