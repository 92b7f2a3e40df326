use std::collections::VecDeque;

use crate::slir::{SlirMethod, StmtKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CfgNode {
    Entry,
    Stmt(usize),
    Exit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CfgEdgeKind {
    Fallthrough,
    BranchTaken,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfgEdge {
    pub from: CfgNode,
    pub to: CfgNode,
    pub kind: CfgEdgeKind,
}

/// Control-flow graph of one method.
///
/// Nodes are stored densely: statement `i` is slot `i`, Entry is slot `len`
/// and Exit is slot `len + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    pub method: String,
    len: usize,
    edges: Vec<CfgEdge>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Cfg {
    pub fn statement_count(&self) -> usize {
        self.len
    }

    pub fn node_count(&self) -> usize {
        self.len + 2
    }

    pub fn entry(&self) -> usize {
        self.len
    }

    pub fn exit(&self) -> usize {
        self.len + 1
    }

    pub fn slot(&self, node: CfgNode) -> usize {
        match node {
            CfgNode::Stmt(i) => i,
            CfgNode::Entry => self.entry(),
            CfgNode::Exit => self.exit(),
        }
    }

    pub fn node(&self, slot: usize) -> CfgNode {
        if slot < self.len {
            CfgNode::Stmt(slot)
        } else if slot == self.len {
            CfgNode::Entry
        } else {
            CfgNode::Exit
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = CfgNode> + '_ {
        (0..self.node_count()).map(|s| self.node(s))
    }

    pub fn edges(&self) -> &[CfgEdge] {
        &self.edges
    }

    /// Distinct successor slots of `slot`, ascending.
    pub fn successors(&self, slot: usize) -> &[usize] {
        &self.succ[slot]
    }

    pub fn predecessors(&self, slot: usize) -> &[usize] {
        &self.pred[slot]
    }

    /// Statements with no path from Entry.
    pub fn unreachable_statements(&self) -> Vec<usize> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([self.entry()]);
        seen[self.entry()] = true;
        while let Some(n) = queue.pop_front() {
            for &s in &self.succ[n] {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
        (0..self.len).filter(|&i| !seen[i]).collect()
    }

    /// Builds a CFG from explicit edges; used by tests and by callers that
    /// synthesise graphs directly.
    pub fn from_edges(method: impl Into<String>, len: usize, mut edges: Vec<CfgEdge>) -> Self {
        edges.sort();
        edges.dedup();
        let mut cfg = Cfg {
            method: method.into(),
            len,
            edges: Vec::new(),
            succ: vec![Vec::new(); len + 2],
            pred: vec![Vec::new(); len + 2],
        };
        for e in &edges {
            let (f, t) = (cfg.slot(e.from), cfg.slot(e.to));
            cfg.succ[f].push(t);
            cfg.pred[t].push(f);
        }
        for list in cfg.succ.iter_mut().chain(cfg.pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        cfg.edges = edges;
        cfg
    }
}

/// Builds the control-flow graph of a validated method.
///
/// Falling off the end of the method (including an `if` in last position)
/// flows to Exit, as an implicit `return` would.
pub fn build_cfg(method: &SlirMethod) -> Cfg {
    let n = method.statements.len();
    let next = |i: usize| {
        if i + 1 < n {
            CfgNode::Stmt(i + 1)
        } else {
            CfgNode::Exit
        }
    };
    let target = |label: &str| {
        let idx = method
            .label_index(label)
            .expect("jump targets are checked by the SLIR validator");
        CfgNode::Stmt(idx)
    };
    let mut edges = Vec::new();
    let edge = |from, to, kind| CfgEdge { from, to, kind };
    edges.push(edge(
        CfgNode::Entry,
        if n == 0 { CfgNode::Exit } else { CfgNode::Stmt(0) },
        CfgEdgeKind::Fallthrough,
    ));
    for (i, stmt) in method.statements.iter().enumerate() {
        let here = CfgNode::Stmt(i);
        match &stmt.kind {
            StmtKind::Return { .. } => edges.push(edge(here, CfgNode::Exit, CfgEdgeKind::Fallthrough)),
            StmtKind::Goto { target: l } => edges.push(edge(here, target(l), CfgEdgeKind::BranchTaken)),
            StmtKind::If { target: l, .. } => {
                edges.push(edge(here, next(i), CfgEdgeKind::Fallthrough));
                edges.push(edge(here, target(l), CfgEdgeKind::BranchTaken));
            }
            _ => edges.push(edge(here, next(i), CfgEdgeKind::Fallthrough)),
        }
    }
    Cfg::from_edges(method.name.clone(), n, edges)
}
