//! DPV models (View 2): slice abstraction and Turtle serialization.

mod mapper;
mod model;
mod turtle;
mod vocab;

pub use mapper::{dependence_order, map_slice};
pub use model::{DpvModel, MeasureAt, ModelElement};
pub use turtle::{parse_turtle_subset, to_turtle, TurtleError, DPV_IRI, EX_IRI, PD_IRI};
pub use vocab::{
    DataSource, PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure, UnknownTerm,
};
