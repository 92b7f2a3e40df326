use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::ast::SlirProgram;
use super::error::ParseErrorKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Site {
    Class(usize),
    Method(usize, usize),
    Params(usize, usize),
    Label(usize, usize, usize),
    Stmt(usize, usize, usize),
    Target(usize, usize, usize),
}

#[derive(Debug, Default)]
pub(crate) struct SiteMap(HashMap<Site, (usize, usize)>);

impl SiteMap {
    pub(crate) fn insert(&mut self, site: Site, at: (usize, usize)) {
        self.0.insert(site, at);
    }

    pub(crate) fn locate(&self, site: &Site) -> (usize, usize) {
        let fallback = match *site {
            Site::Label(c, m, s) | Site::Target(c, m, s) => Site::Stmt(c, m, s),
            Site::Params(c, m) | Site::Stmt(c, m, _) => Site::Method(c, m),
            Site::Method(c, _) => Site::Class(c),
            Site::Class(_) => *site,
        };
        self.0
            .get(site)
            .or_else(|| self.0.get(&fallback))
            .copied()
            .unwrap_or((1, 1))
    }
}

pub(crate) struct Violation {
    pub site: Site,
    pub kind: ParseErrorKind,
}

/// Returns the first invariant violation in document order.
pub(crate) fn check_program(program: &SlirProgram) -> Option<Violation> {
    let mut class_names = HashSet::new();
    for (ci, class) in program.classes.iter().enumerate() {
        if !class_names.insert(class.name.as_str()) {
            return Some(Violation { site: Site::Class(ci), kind: ParseErrorKind::DuplicateClass(class.name.clone()) });
        }
        let mut method_names = HashSet::new();
        for (mi, method) in class.methods.iter().enumerate() {
            if !method_names.insert(method.name.as_str()) {
                return Some(Violation {
                    site: Site::Method(ci, mi),
                    kind: ParseErrorKind::DuplicateMethod {
                        class: class.name.clone(),
                        method: method.name.clone(),
                    },
                });
            }
            let mut defined: HashSet<&str> = HashSet::new();
            for p in &method.params {
                if !defined.insert(p) {
                    return Some(Violation { site: Site::Params(ci, mi), kind: ParseErrorKind::DuplicateParam(p.clone()) });
                }
            }
            let labels: HashSet<&str> = method
                .statements
                .iter()
                .filter_map(|s| s.label.as_deref())
                .collect();
            let mut seen_labels = HashSet::new();
            for (si, stmt) in method.statements.iter().enumerate() {
                if let Some(label) = &stmt.label {
                    if !seen_labels.insert(label.as_str()) {
                        return Some(Violation {
                            site: Site::Label(ci, mi, si),
                            kind: ParseErrorKind::DuplicateLabel(label.clone()),
                        });
                    }
                }
                for used in stmt.kind.used_locals() {
                    if !defined.contains(used) {
                        return Some(Violation {
                            site: Site::Stmt(ci, mi, si),
                            kind: ParseErrorKind::UseBeforeDefinition(used.to_string()),
                        });
                    }
                }
                if let Some(target) = stmt.kind.jump_target() {
                    if !labels.contains(target) {
                        return Some(Violation {
                            site: Site::Target(ci, mi, si),
                            kind: ParseErrorKind::UndefinedLabel(target.to_string()),
                        });
                    }
                }
                if let Some(d) = stmt.kind.defined_local() {
                    defined.insert(d);
                }
            }
        }
    }
    None
}

/// Invariant violation in a program built or merged in memory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {kind}")]
pub struct ValidationError {
    pub location: String,
    pub kind: ParseErrorKind,
}

/// Checks the same invariants [`super::parse_slir`] enforces, for programs
/// that did not come straight from the parser (e.g. merged corpora).
pub fn validate(program: &SlirProgram) -> Result<(), ValidationError> {
    let Some(v) = check_program(program) else {
        return Ok(());
    };
    let class = |c: usize| program.classes[c].name.clone();
    let method = |c: usize, m: usize| format!("{}.{}", class(c), program.classes[c].methods[m].name);
    let location = match v.site {
        Site::Class(c) => format!("class {}", class(c)),
        Site::Method(c, m) | Site::Params(c, m) => format!("method {}", method(c, m)),
        Site::Label(c, m, s) | Site::Stmt(c, m, s) | Site::Target(c, m, s) => {
            format!("statement {}:{s}", method(c, m))
        }
    };
    Err(ValidationError { location, kind: v.kind })
}
