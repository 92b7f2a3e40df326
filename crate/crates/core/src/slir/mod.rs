//! SLIR: a small Jimple-like textual IR.
//!
//! A document is a sequence of classes, each holding methods made of
//! three-address statements. Statements are the node granularity of every
//! downstream dependence graph.

mod ast;
mod error;
mod lexer;
mod parser;
mod printer;
mod validate;

pub use ast::{Literal, SlirClass, SlirMethod, SlirProgram, Stmt, StmtKind, KEYWORDS};
pub use error::{ParseError, ParseErrorKind};
pub use parser::parse_slir;
pub use printer::print_slir;
pub use validate::{validate, ValidationError};
