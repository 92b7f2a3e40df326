//! GDPR-derived compliance rules over DPV models.
//!
//! Findings are advisory observations for assessors, never legal
//! conclusions.

mod dpia;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::depgraph::StmtId;
use crate::dpv::{DataSource, DpvModel, ModelElement, ProcessingCategory};
use crate::slicer::PrivacySlice;

pub use dpia::{summarize_dpia, DpiaCell, DpiaRow, DpiaSummary, NO_EVIDENCE};

/// Declared in rule-id string order, so sorting by `RuleId` sorts by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    A25Adherence,
    A25Violation,
    A5Minimisation,
    Ch5ThirdParty,
}

impl RuleId {
    pub const ALL: [RuleId; 4] = [RuleId::A25Adherence, RuleId::A25Violation, RuleId::A5Minimisation, RuleId::Ch5ThirdParty];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::A25Violation => "R-A25-VIOLATION",
            RuleId::A25Adherence => "R-A25-ADHERENCE",
            RuleId::A5Minimisation => "R-A5-MIN",
            RuleId::Ch5ThirdParty => "R-CH5-3P",
        }
    }

    pub fn article(self) -> &'static str {
        match self {
            RuleId::A25Violation | RuleId::A25Adherence => "GDPR Art. 25",
            RuleId::A5Minimisation => "GDPR Art. 5(1)(c)",
            RuleId::Ch5ThirdParty => "GDPR Ch. V",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            RuleId::A25Violation => Severity::PotentialViolation,
            RuleId::A25Adherence => Severity::Adherence,
            RuleId::A5Minimisation => Severity::Suggestion,
            RuleId::Ch5ThirdParty => Severity::Note,
        }
    }

    /// Short badge title used by the summary diagram.
    pub fn title(self) -> &'static str {
        match self {
            RuleId::A25Violation => "Missing pseudonymisation",
            RuleId::A25Adherence => "Pseudonymisation applied",
            RuleId::A5Minimisation => "Data minimization",
            RuleId::Ch5ThirdParty => "Third-party data source",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Severity {
    PotentialViolation,
    Adherence,
    Suggestion,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::PotentialViolation => "PotentialViolation",
            Severity::Adherence => "Adherence",
            Severity::Suggestion => "Suggestion",
            Severity::Note => "Note",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub rule: RuleId,
    pub slice_id: String,
    pub evidence: Vec<StmtId>,
    pub message: String,
}

impl Finding {
    pub fn id(&self) -> String {
        format!("{}/{}", self.slice_id, self.rule)
    }

    pub fn article(&self) -> &'static str {
        self.rule.article()
    }

    pub fn severity(&self) -> Severity {
        self.rule.severity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("model `{model}` was not derived from slice `{slice}`")]
    Mismatch { model: String, slice: String },
    #[error("model evidence {0} is not part of the slice")]
    ForeignEvidence(StmtId),
}

fn join_words(items: &[&str]) -> String {
    match items {
        [] => String::new(),
        [one] => one.to_string(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

/// Evaluates the rule set for one slice. Output is ordered by rule id.
pub fn check(model: &DpvModel, slice: &PrivacySlice) -> Result<Vec<Finding>, RuleError> {
    if model.process_id != slice.id || model.personal_data != *slice.personal_data() {
        return Err(RuleError::Mismatch { model: model.process_id.clone(), slice: slice.id.clone() });
    }
    if let Some(bad) = model.evidence.values().flatten().find(|s| !slice.contains(s)) {
        return Err(RuleError::ForeignEvidence(bad.clone()));
    }

    let pd = model.personal_data.as_str();
    let consuming: Vec<ProcessingCategory> = model.processing.iter().copied().filter(|p| p.is_consuming()).collect();
    let consuming_nodes = || -> Vec<StmtId> {
        let mut v: Vec<StmtId> = consuming
            .iter()
            .flat_map(|p| model.evidence_for(&ModelElement::Processing(*p)).iter().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let source = || vec![slice.source.stmt.clone()];
    let mut findings = Vec::new();
    let mut push = |rule: RuleId, mut evidence: Vec<StmtId>, message: String| {
        evidence.sort();
        evidence.dedup();
        findings.push(Finding { rule, slice_id: slice.id.clone(), evidence, message });
    };

    let unprotected = model.first_consuming().filter(|&i| !model.measure_precedes(i));
    if let Some(first) = unprotected {
        push(
            RuleId::A25Violation,
            consuming_nodes(),
            format!("{pd} reaches {} without a preceding pseudonymisation measure.", model.processing[first]),
        );
    } else if !model.measures.is_empty() {
        let mut ev: Vec<StmtId> = model
            .measures
            .iter()
            .flat_map(|m| model.evidence_for(&ModelElement::Measure(m.measure)).iter().cloned())
            .collect();
        ev.extend(consuming_nodes());
        let names: Vec<&str> = model.measures.iter().map(|m| m.measure.as_str()).collect();
        let message = if consuming.is_empty() {
            format!("{pd} is protected by {} before any further processing.", join_words(&names))
        } else {
            format!("{pd} is protected by {} before it is consumed.", join_words(&names))
        };
        push(RuleId::A25Adherence, ev, message);
    }

    if consuming.is_empty() && model.measures.is_empty() {
        let ev: Vec<StmtId> = model
            .processing
            .iter()
            .flat_map(|p| model.evidence_for(&ModelElement::Processing(*p)).iter().cloned())
            .collect();
        push(
            RuleId::A5Minimisation,
            ev,
            format!("{pd} is collected but never stored, used, shared or erased; consider not collecting it."),
        );
    }

    if model.data_source == DataSource::ThirdParty {
        push(
            RuleId::Ch5ThirdParty,
            source(),
            format!("{pd} comes from a third-party data source, so its transfer must be lawful."),
        );
    }

    findings.sort_by_key(|f| f.rule);
    Ok(findings)
}
