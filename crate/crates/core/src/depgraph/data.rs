use std::collections::{BTreeSet, VecDeque};

use super::cfg::Cfg;
use crate::slir::SlirMethod;

/// Where a local's value was defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefSite {
    Stmt(usize),
    /// Incoming value of the k-th parameter, defined at Entry.
    Param(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataDep {
    pub def: usize,
    pub use_: usize,
    pub local: String,
}

/// Reaching definitions on entry to every statement.
#[derive(Debug, Clone)]
pub struct ReachingDefs {
    reach_in: Vec<BTreeSet<DefSite>>,
}

impl ReachingDefs {
    pub fn compute(method: &SlirMethod, cfg: &Cfg) -> Self {
        let n = cfg.statement_count();
        let slots = cfg.node_count();
        let defined = |site: DefSite| -> &str {
            match site {
                DefSite::Stmt(i) => method.statements[i].kind.defined_local().unwrap_or(""),
                DefSite::Param(k) => &method.params[k],
            }
        };

        let mut out: Vec<BTreeSet<DefSite>> = vec![BTreeSet::new(); slots];
        let mut reach_in: Vec<BTreeSet<DefSite>> = vec![BTreeSet::new(); slots];
        out[cfg.entry()] = (0..method.params.len()).map(DefSite::Param).collect();

        // Dead statements are never visited, so they neither receive nor
        // contribute definitions.
        let dead = cfg.unreachable_statements();
        let mut queue: VecDeque<usize> = (0..n).filter(|i| dead.binary_search(i).is_err()).collect();
        let mut queued = vec![false; slots];
        for &i in &queue {
            queued[i] = true;
        }
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            let mut incoming = BTreeSet::new();
            for &p in cfg.predecessors(s) {
                incoming.extend(out[p].iter().copied());
            }
            let new_out: BTreeSet<DefSite> = match method.statements[s].kind.defined_local() {
                Some(local) => incoming
                    .iter()
                    .copied()
                    .filter(|&d| defined(d) != local)
                    .chain(std::iter::once(DefSite::Stmt(s)))
                    .collect(),
                None => incoming.clone(),
            };
            reach_in[s] = incoming;
            if new_out != out[s] {
                out[s] = new_out;
                for &succ in cfg.successors(s) {
                    if succ < n && !queued[succ] {
                        queued[succ] = true;
                        queue.push_back(succ);
                    }
                }
            }
        }
        reach_in.truncate(n);
        ReachingDefs { reach_in }
    }

    /// Definitions of `local` reaching statement `stmt`.
    pub fn reaching<'a>(
        &'a self,
        method: &'a SlirMethod,
        stmt: usize,
        local: &'a str,
    ) -> impl Iterator<Item = DefSite> + 'a {
        self.reach_in[stmt].iter().copied().filter(move |d| match *d {
            DefSite::Stmt(i) => method.statements[i].kind.defined_local() == Some(local),
            DefSite::Param(k) => method.params[k] == local,
        })
    }
}

/// Flow-sensitive def-use triples for locals within one method.
pub fn data_deps(method: &SlirMethod, cfg: &Cfg) -> BTreeSet<DataDep> {
    let rd = ReachingDefs::compute(method, cfg);
    let mut out = BTreeSet::new();
    for (s, stmt) in method.statements.iter().enumerate() {
        let used: BTreeSet<&str> = stmt.kind.used_locals().into_iter().collect();
        for local in used {
            for d in rd.reaching(method, s, local) {
                if let DefSite::Stmt(def) = d {
                    out.insert(DataDep { def, use_: s, local: local.to_string() });
                }
            }
        }
    }
    out
}
