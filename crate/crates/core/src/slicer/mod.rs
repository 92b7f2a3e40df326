//! Privacy sources and forward slicing.

mod catalog;
mod slice;

pub use catalog::{
    Catalog, CatalogEntry, CatalogError, EntryKind, Role, SignaturePattern, DEFAULT_CATALOG_JSON,
};
pub use slice::{
    annotate_slice, find_sources, forward_slice, slice_id, slice_program, Annotation, PrivacySlice,
    SliceEdge, SliceError, SliceGraph, SourceMatch, Tag,
};
