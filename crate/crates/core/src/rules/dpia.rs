use crate::depgraph::StmtId;
use crate::dpv::{DpvModel, ModelElement, ProcessingCategory};
use crate::slicer::PrivacySlice;

pub const NO_EVIDENCE: &str = "no evidence found";

/// One answer in the DPIA table, with the statements that support it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpiaCell {
    pub found: bool,
    pub detail: String,
    pub evidence: Vec<StmtId>,
}

impl DpiaCell {
    fn found(detail: String, evidence: Vec<StmtId>) -> Self {
        DpiaCell { found: true, detail, evidence }
    }

    fn missing() -> Self {
        DpiaCell { found: false, detail: NO_EVIDENCE.into(), evidence: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpiaRow {
    pub slice_id: String,
    pub source: DpiaCell,
    pub use_: DpiaCell,
    pub storage: DpiaCell,
    pub deletion: DpiaCell,
    pub processing: DpiaCell,
    pub sharing: DpiaCell,
    pub pseudonymisation: DpiaCell,
}

impl DpiaRow {
    /// `(question, cell)` pairs in table order.
    pub fn cells(&self) -> [(&'static str, &DpiaCell); 7] {
        [
            ("source", &self.source),
            ("use", &self.use_),
            ("storage", &self.storage),
            ("deletion", &self.deletion),
            ("processing", &self.processing),
            ("sharing", &self.sharing),
            ("pseudonymisation", &self.pseudonymisation),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DpiaSummary {
    pub rows: Vec<DpiaRow>,
}

fn category_cell(model: &DpvModel, cat: ProcessingCategory) -> DpiaCell {
    if !model.processing.contains(&cat) {
        return DpiaCell::missing();
    }
    DpiaCell::found(cat.to_string(), model.evidence_for(&ModelElement::Processing(cat)).to_vec())
}

/// Answers the DPIA questions (source, use, storage, deletion, processing,
/// sharing, pseudonymisation) for each analysed slice.
pub fn summarize_dpia(items: &[(&DpvModel, &PrivacySlice)]) -> DpiaSummary {
    let rows = items
        .iter()
        .map(|(model, slice)| {
            let source = DpiaCell::found(
                format!("{} ({})", slice.source.signature, model.data_source),
                vec![slice.source.stmt.clone()],
            );
            let processing = {
                let names: Vec<&str> = model.processing.iter().map(|p| p.as_str()).collect();
                let mut ev: Vec<StmtId> = model
                    .processing
                    .iter()
                    .flat_map(|p| model.evidence_for(&ModelElement::Processing(*p)).iter().cloned())
                    .collect();
                ev.sort();
                ev.dedup();
                DpiaCell::found(names.join(" -> "), ev)
            };
            let pseudonymisation = if model.measures.is_empty() {
                DpiaCell::missing()
            } else {
                let names: Vec<&str> = model.measures.iter().map(|m| m.measure.as_str()).collect();
                let mut ev: Vec<StmtId> = model
                    .measures
                    .iter()
                    .flat_map(|m| model.evidence_for(&ModelElement::Measure(m.measure)).iter().cloned())
                    .collect();
                ev.sort();
                ev.dedup();
                DpiaCell::found(names.join(", "), ev)
            };
            DpiaRow {
                slice_id: slice.id.clone(),
                source,
                use_: category_cell(model, ProcessingCategory::Use),
                storage: category_cell(model, ProcessingCategory::Store),
                deletion: category_cell(model, ProcessingCategory::Erase),
                processing,
                sharing: category_cell(model, ProcessingCategory::Share),
                pseudonymisation,
            }
        })
        .collect();
    DpiaSummary { rows }
}
