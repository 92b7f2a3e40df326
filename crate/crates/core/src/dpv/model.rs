use std::collections::BTreeMap;
use std::fmt;

use super::vocab::{DataSource, PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure};
use crate::depgraph::StmtId;

/// A technical measure and where it sits in the processing sequence:
/// `position` is the number of processing categories that occurred before
/// it, so the measure precedes `processing[k]` iff `position <= k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeasureAt {
    pub measure: TechnicalMeasure,
    pub position: usize,
}

/// A model element that evidence can point at.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelElement {
    PersonalData(PersonalDataCategory),
    DataSource(DataSource),
    Processing(ProcessingCategory),
    Measure(TechnicalMeasure),
    Purpose(Purpose),
}

impl ModelElement {
    pub fn predicate(&self) -> &'static str {
        match self {
            Self::PersonalData(_) => "hasPersonalData",
            Self::DataSource(_) => "hasDataSource",
            Self::Processing(_) => "hasProcessing",
            Self::Measure(_) => "hasTechnicalMeasure",
            Self::Purpose(_) => "hasPurpose",
        }
    }

    pub fn value(&self) -> &str {
        match self {
            Self::PersonalData(p) => p.as_str(),
            Self::DataSource(d) => d.as_str(),
            Self::Processing(p) => p.as_str(),
            Self::Measure(m) => m.as_str(),
            Self::Purpose(p) => p.as_str(),
        }
    }
}

/// Rendered as `predicate:Value`, e.g. `hasProcessing:Store`.
impl fmt::Display for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.predicate(), self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpvModel {
    pub process_id: String,
    pub personal_data: PersonalDataCategory,
    pub data_source: DataSource,
    /// Distinct categories in first-occurrence order; starts with `Collect`.
    pub processing: Vec<ProcessingCategory>,
    pub measures: Vec<MeasureAt>,
    pub purpose: Option<Purpose>,
    /// Slice statements supporting each element.
    pub evidence: BTreeMap<ModelElement, Vec<StmtId>>,
}

impl DpvModel {
    /// Index of the first consuming operation in `processing`.
    pub fn first_consuming(&self) -> Option<usize> {
        self.processing.iter().position(|p| p.is_consuming())
    }

    pub fn has_consuming(&self) -> bool {
        self.first_consuming().is_some()
    }

    /// Whether some measure precedes `processing[index]`.
    pub fn measure_precedes(&self, index: usize) -> bool {
        self.measures.iter().any(|m| m.position <= index)
    }

    /// Every model element, in predicate order.
    pub fn elements(&self) -> Vec<ModelElement> {
        let mut out = vec![
            ModelElement::PersonalData(self.personal_data.clone()),
            ModelElement::DataSource(self.data_source),
        ];
        out.extend(self.processing.iter().map(|p| ModelElement::Processing(*p)));
        out.extend(self.measures.iter().map(|m| ModelElement::Measure(m.measure)));
        out.extend(self.purpose.iter().map(|p| ModelElement::Purpose(p.clone())));
        out
    }

    pub fn evidence_for(&self, element: &ModelElement) -> &[StmtId] {
        self.evidence.get(element).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Equality on the fields Turtle carries: everything but evidence and
    /// measure positions.
    pub fn serialized_eq(&self, other: &DpvModel) -> bool {
        let measures = |m: &DpvModel| m.measures.iter().map(|x| x.measure).collect::<Vec<_>>();
        self.process_id == other.process_id
            && self.personal_data == other.personal_data
            && self.data_source == other.data_source
            && self.processing == other.processing
            && measures(self) == measures(other)
            && self.purpose == other.purpose
    }
}
