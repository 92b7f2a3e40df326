//! Static privacy analysis over SLIR programs.
//!
//! The pipeline parses SLIR, builds a program dependence graph, slices
//! forward from catalog-matched privacy sources, abstracts each slice into a
//! DPV model, checks GDPR-derived rules and renders three assessor views plus
//! a machine-readable bundle.

pub mod slir;
pub mod depgraph;
pub mod slicer;
pub mod dpv;
pub mod rules;
pub mod views;
pub mod analysis;
pub mod corpus;
