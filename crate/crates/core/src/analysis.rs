//! End-to-end pipeline: dependence graph, slices, models and findings for
//! one program.

use sha2::{Digest, Sha256};

use crate::depgraph::{build_pdg, PdgWarning};
use crate::dpv::{map_slice, DpvModel};
use crate::rules::{check, summarize_dpia, DpiaSummary, Finding, RuleError, Severity};
use crate::slicer::{slice_program, Catalog, PrivacySlice};
use crate::slir::SlirProgram;

#[derive(Debug, Clone)]
pub struct SliceReport {
    pub slice: PrivacySlice,
    pub model: DpvModel,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub app: String,
    pub catalog_digest: String,
    pub program: SlirProgram,
    pub reports: Vec<SliceReport>,
    pub warnings: Vec<PdgWarning>,
}

/// Lowercase hex SHA-256 of the catalog bytes.
pub fn catalog_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn analyze(app: &str, program: SlirProgram, catalog: &Catalog, catalog_bytes: &[u8]) -> Result<Analysis, RuleError> {
    let pdg = build_pdg(&program);
    let mut reports = Vec::new();
    for slice in slice_program(app, &program, &pdg, catalog) {
        let model = map_slice(&slice);
        let findings = check(&model, &slice)?;
        reports.push(SliceReport { slice, model, findings });
    }
    Ok(Analysis {
        app: app.to_string(),
        catalog_digest: catalog_digest(catalog_bytes),
        warnings: pdg.warnings().to_vec(),
        program,
        reports,
    })
}

impl Analysis {
    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.reports.iter().flat_map(|r| r.findings.iter())
    }

    pub fn has_potential_violation(&self) -> bool {
        self.findings().any(|f| f.severity() == Severity::PotentialViolation)
    }

    pub fn dpia(&self) -> DpiaSummary {
        let items: Vec<_> = self.reports.iter().map(|r| (&r.model, &r.slice)).collect();
        summarize_dpia(&items)
    }
}
