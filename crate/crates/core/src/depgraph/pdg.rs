use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cfg::{build_cfg, Cfg};
use super::control::control_deps;
use super::data::{data_deps, DefSite, ReachingDefs};
use crate::slir::{SlirProgram, Stmt, StmtKind};

/// Global statement identity: `(class, method, index)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StmtId {
    pub class: String,
    pub method: String,
    pub index: usize,
}

impl StmtId {
    pub fn new(class: impl Into<String>, method: impl Into<String>, index: usize) -> Self {
        StmtId { class: class.into(), method: method.into(), index }
    }

    /// Looks the statement up in `program`.
    pub fn resolve<'p>(&self, program: &'p SlirProgram) -> Option<&'p Stmt> {
        program
            .class(&self.class)?
            .methods
            .iter()
            .find(|m| m.name == self.method)?
            .statements
            .get(self.index)
    }
}

impl fmt::Display for StmtId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}:{}", self.class, self.method, self.index)
    }
}

/// Dense PDG node handle. Ids are assigned in program order (class
/// declaration order, then method order, then statement index), so sorting
/// by id sorts by program position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Control,
    Data,
    Call,
    ParamIn,
    ReturnOut,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 5] =
        [EdgeKind::Control, EdgeKind::Data, EdgeKind::Call, EdgeKind::ParamIn, EdgeKind::ReturnOut];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Control => "control",
            EdgeKind::Data => "data",
            EdgeKind::Call => "call",
            EdgeKind::ParamIn => "param-in",
            EdgeKind::ReturnOut => "return-out",
        }
    }
}

/// What carried a dependence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    None,
    Local(String),
    Field(String),
    /// Callee parameter receiving the argument.
    Param(String),
    /// Callee local being returned.
    Return(String),
}

impl Provenance {
    pub fn name(&self) -> Option<&str> {
        match self {
            Provenance::None => None,
            Provenance::Local(s) | Provenance::Field(s) | Provenance::Param(s) | Provenance::Return(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdgEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub kind: EdgeKind,
    pub via: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdgWarning {
    Unreachable(StmtId),
}

impl fmt::Display for PdgWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdgWarning::Unreachable(id) => write!(f, "unreachable statement {id}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Pdg {
    nodes: Vec<StmtId>,
    index: HashMap<StmtId, NodeId>,
    edges: Vec<PdgEdge>,
    out_edges: Vec<Vec<usize>>,
    warnings: Vec<PdgWarning>,
}

impl Pdg {
    /// Assembles a PDG from explicit parts. Edges are sorted and
    /// deduplicated; endpoints must be valid node ids.
    pub fn from_parts(nodes: Vec<StmtId>, mut edges: Vec<PdgEdge>) -> Self {
        edges.sort();
        edges.dedup();
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), NodeId(i as u32)))
            .collect();
        let mut out_edges = vec![Vec::new(); nodes.len()];
        for (ei, e) in edges.iter().enumerate() {
            assert!(e.from.index() < nodes.len() && e.to.index() < nodes.len(), "edge endpoint out of range");
            out_edges[e.from.index()].push(ei);
        }
        Pdg { nodes, index, edges, out_edges, warnings: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &StmtId)> {
        self.nodes.iter().enumerate().map(|(i, s)| (NodeId(i as u32), s))
    }

    pub fn stmt(&self, id: NodeId) -> &StmtId {
        &self.nodes[id.index()]
    }

    pub fn id_of(&self, stmt: &StmtId) -> Option<NodeId> {
        self.index.get(stmt).copied()
    }

    /// All edges, sorted by `(from, to, kind, provenance)`.
    pub fn edges(&self) -> &[PdgEdge] {
        &self.edges
    }

    pub fn outgoing(&self, id: NodeId) -> impl Iterator<Item = &PdgEdge> {
        self.out_edges[id.index()].iter().map(move |&e| &self.edges[e])
    }

    pub fn warnings(&self) -> &[PdgWarning] {
        &self.warnings
    }
}

struct MethodFacts {
    cfg: Cfg,
    reaching: ReachingDefs,
    first_node: u32,
}

/// Builds the program dependence graph: intra-method Control and Data
/// edges, program-wide field edges (every `putfield f` to every
/// `getfield f`) and interprocedural edges for calls to methods defined in
/// the program.
pub fn build_pdg(program: &SlirProgram) -> Pdg {
    let mut nodes = Vec::with_capacity(program.statement_count());
    let mut facts: Vec<Vec<MethodFacts>> = Vec::new();
    for class in &program.classes {
        let mut per_class = Vec::new();
        for method in &class.methods {
            let cfg = build_cfg(method);
            let reaching = ReachingDefs::compute(method, &cfg);
            per_class.push(MethodFacts { cfg, reaching, first_node: nodes.len() as u32 });
            nodes.extend((0..method.statements.len()).map(|i| StmtId::new(&class.name, &method.name, i)));
        }
        facts.push(per_class);
    }

    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    let mut dead: BTreeSet<NodeId> = BTreeSet::new();
    let mut field_stores: BTreeMap<&str, Vec<NodeId>> = BTreeMap::new();
    let mut field_loads: BTreeMap<&str, Vec<NodeId>> = BTreeMap::new();

    for (ci, class) in program.classes.iter().enumerate() {
        for (mi, method) in class.methods.iter().enumerate() {
            let f = &facts[ci][mi];
            let node = |i: usize| NodeId(f.first_node + i as u32);

            for i in f.cfg.unreachable_statements() {
                dead.insert(node(i));
                warnings.push(PdgWarning::Unreachable(StmtId::new(&class.name, &method.name, i)));
            }
            for (a, b) in control_deps(&f.cfg) {
                edges.push(PdgEdge { from: node(a), to: node(b), kind: EdgeKind::Control, via: Provenance::None });
            }
            for d in data_deps(method, &f.cfg) {
                edges.push(PdgEdge {
                    from: node(d.def),
                    to: node(d.use_),
                    kind: EdgeKind::Data,
                    via: Provenance::Local(d.local),
                });
            }

            for (si, stmt) in method.statements.iter().enumerate() {
                match &stmt.kind {
                    StmtKind::FieldStore { field, .. } => field_stores.entry(field).or_default().push(node(si)),
                    StmtKind::FieldLoad { field, .. } => field_loads.entry(field).or_default().push(node(si)),
                    _ => {}
                }
                let Some(sig) = stmt.kind.call_signature() else { continue };
                let Some((cj, mj)) = program.resolve_call(sig) else { continue };
                let callee = &program.classes[cj].methods[mj];
                let cf = &facts[cj][mj];
                let callee_node = |i: usize| NodeId(cf.first_node + i as u32);
                if callee.statements.is_empty() {
                    continue;
                }
                edges.push(PdgEdge { from: node(si), to: callee_node(0), kind: EdgeKind::Call, via: Provenance::None });

                for (k, (arg, param)) in stmt.kind.call_args().iter().zip(&callee.params).enumerate() {
                    // An argument that is itself a caller parameter has no
                    // defining statement; the call site stands in for it.
                    let sources: Vec<NodeId> = f
                        .reaching
                        .reaching(method, si, arg)
                        .map(|d| match d {
                            DefSite::Stmt(i) => node(i),
                            DefSite::Param(_) => node(si),
                        })
                        .collect();
                    for (ti, target) in callee.statements.iter().enumerate() {
                        if !target.kind.uses(param) {
                            continue;
                        }
                        if !cf.reaching.reaching(callee, ti, param).any(|d| d == DefSite::Param(k)) {
                            continue;
                        }
                        for &src in &sources {
                            edges.push(PdgEdge {
                                from: src,
                                to: callee_node(ti),
                                kind: EdgeKind::ParamIn,
                                via: Provenance::Param(param.clone()),
                            });
                        }
                    }
                }

                if let StmtKind::CallAssign { .. } = stmt.kind {
                    for (ri, ret) in callee.statements.iter().enumerate() {
                        if let StmtKind::Return { value: Some(v) } = &ret.kind {
                            edges.push(PdgEdge {
                                from: callee_node(ri),
                                to: node(si),
                                kind: EdgeKind::ReturnOut,
                                via: Provenance::Return(v.clone()),
                            });
                        }
                    }
                }
            }
        }
    }

    for (field, stores) in &field_stores {
        let Some(loads) = field_loads.get(field) else { continue };
        for &s in stores {
            for &l in loads {
                edges.push(PdgEdge { from: s, to: l, kind: EdgeKind::Data, via: Provenance::Field(field.to_string()) });
            }
        }
    }

    // Unreachable statements stay in the graph as isolated nodes.
    edges.retain(|e| !dead.contains(&e.from) && !dead.contains(&e.to));
    let mut pdg = Pdg::from_parts(nodes, edges);
    pdg.warnings = warnings;
    pdg
}
