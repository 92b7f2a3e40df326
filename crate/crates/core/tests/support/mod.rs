//! Generators and brute-force oracles shared by the property suites and
//! the acceptance run.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use privslice::depgraph::{Cfg, CfgEdge, CfgEdgeKind, CfgNode, EdgeKind, NodeId, Pdg, PdgEdge, Provenance, StmtId};
use privslice::dpv::{
    DataSource, DpvModel, MeasureAt, PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure,
};
use privslice::rules::RuleId;
use privslice::slicer::{PrivacySlice, SliceGraph, SourceMatch};
use privslice::slir::{Literal, SlirClass, SlirMethod, SlirProgram, Stmt, StmtKind};

// ---------------------------------------------------------------- CFGs

/// Shape of one statement in a synthetic CFG.
#[derive(Debug, Clone, Copy)]
pub enum Shape {
    Next,
    Goto(usize),
    Branch(usize),
    Return,
}

#[derive(Debug, Clone)]
pub struct RandomCfg {
    pub len: usize,
    pub shapes: Vec<Shape>,
}

impl RandomCfg {
    /// Raw edges over slots: statement `i` is `i`, Entry `len`, Exit `len + 1`.
    pub fn slot_edges(&self) -> Vec<(usize, usize, CfgEdgeKind)> {
        let (entry, exit) = (self.len, self.len + 1);
        let next = |i: usize| if i + 1 < self.len { i + 1 } else { exit };
        let mut out = vec![(entry, if self.len == 0 { exit } else { 0 }, CfgEdgeKind::Fallthrough)];
        for (i, s) in self.shapes.iter().enumerate() {
            match *s {
                Shape::Next => out.push((i, next(i), CfgEdgeKind::Fallthrough)),
                Shape::Goto(t) => out.push((i, t, CfgEdgeKind::BranchTaken)),
                Shape::Branch(t) => {
                    out.push((i, next(i), CfgEdgeKind::Fallthrough));
                    out.push((i, t, CfgEdgeKind::BranchTaken));
                }
                Shape::Return => out.push((i, exit, CfgEdgeKind::Fallthrough)),
            }
        }
        out
    }

    pub fn to_cfg(&self) -> Cfg {
        let node = |slot: usize| {
            if slot == self.len {
                CfgNode::Entry
            } else if slot == self.len + 1 {
                CfgNode::Exit
            } else {
                CfgNode::Stmt(slot)
            }
        };
        let edges = self
            .slot_edges()
            .into_iter()
            .map(|(f, t, kind)| CfgEdge { from: node(f), to: node(t), kind })
            .collect();
        Cfg::from_edges("m", self.len, edges)
    }
}

/// CFGs of at most `max_stmts + 2` nodes.
pub fn random_cfg(max_stmts: usize) -> impl Strategy<Value = RandomCfg> {
    (0..=max_stmts).prop_flat_map(|len| {
        let shape = (0u8..4, 0..len.max(1)).prop_map(|(k, t)| match k {
            0 => Shape::Next,
            1 => Shape::Goto(t),
            2 => Shape::Branch(t),
            _ => Shape::Return,
        });
        proptest::collection::vec(shape, len).prop_map(move |shapes| RandomCfg { len, shapes })
    })
}

/// Control dependence from first principles: post-dominator sets by
/// fixed-point iteration, then `Y` depends on `X` iff some successor of `X`
/// is post-dominated by `Y` while `Y` does not strictly post-dominate `X`.
pub fn control_deps_oracle(len: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let n = len + 2;
    let exit = len + 1;
    let mut reach = vec![vec![false; n]; n];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        succ[a].insert(b);
    }
    for v in 0..n {
        if v != exit && !reach[v][exit] {
            succ[v].insert(exit);
        }
    }

    let mut pdom: Vec<BTreeSet<usize>> = (0..n).map(|_| (0..n).collect()).collect();
    pdom[exit] = BTreeSet::from([exit]);
    loop {
        let mut changed = false;
        for v in 0..n {
            if v == exit {
                continue;
            }
            let mut meet: Option<BTreeSet<usize>> = None;
            for &s in &succ[v] {
                meet = Some(match meet {
                    None => pdom[s].clone(),
                    Some(m) => m.intersection(&pdom[s]).copied().collect(),
                });
            }
            let mut next = meet.unwrap_or_default();
            next.insert(v);
            if next != pdom[v] {
                pdom[v] = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut out = BTreeSet::new();
    for x in 0..len {
        for y in 0..len {
            let strictly = y != x && pdom[x].contains(&y);
            if !strictly && succ[x].iter().any(|&s| pdom[s].contains(&y)) {
                out.insert((x, y));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- PDGs

#[derive(Debug, Clone)]
pub struct RandomPdg {
    pub n: usize,
    pub edges: Vec<(usize, usize, EdgeKind)>,
    pub source: usize,
}

impl RandomPdg {
    pub fn stmt(i: usize) -> StmtId {
        StmtId::new("C", "m", i)
    }

    pub fn to_pdg(&self) -> Pdg {
        let nodes = (0..self.n).map(Self::stmt).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(f, t, kind)| PdgEdge { from: NodeId(f as u32), to: NodeId(t as u32), kind, via: Provenance::None })
            .collect();
        Pdg::from_parts(nodes, edges)
    }
}

pub fn random_pdg(max_nodes: usize) -> impl Strategy<Value = RandomPdg> {
    (1..=max_nodes).prop_flat_map(|n| {
        let kind = proptest::sample::select(EdgeKind::ALL.to_vec());
        let edge = (0..n, 0..n, kind);
        (proptest::collection::vec(edge, 0..=3 * n), 0..n).prop_map(move |(edges, source)| RandomPdg { n, edges, source })
    })
}

/// Nodes reachable from `source`, via the reflexive-transitive closure of
/// the adjacency matrix computed by repeated squaring.
pub fn closure_oracle(n: usize, edges: &[(usize, usize)], source: usize) -> BTreeSet<usize> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        m[a][b] = true;
    }
    loop {
        let mut sq = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        sq[i][j] |= m[k][j];
                    }
                }
            }
        }
        if sq == m {
            break;
        }
        m = sq;
    }
    (0..n).filter(|&j| m[source][j]).collect()
}

// ---------------------------------------------------------------- SLIR

const LOCALS: [&str; 4] = ["a", "b", "c", "d"];

/// One statement request; the builder turns it into something valid.
#[derive(Debug, Clone)]
pub struct StmtPlan {
    pub kind: u8,
    pub picks: [u8; 3],
    pub target: u8,
    pub lit: Literal,
}

fn stmt_plan() -> impl Strategy<Value = StmtPlan> {
    let lit = prop_oneof![any::<i64>().prop_map(Literal::Int), "[a-z \"\\\\\n\t\r]{0,6}".prop_map(Literal::Str)];
    (0u8..10, any::<[u8; 3]>(), any::<u8>(), lit).prop_map(|(kind, picks, target, lit)| StmtPlan { kind, picks, target, lit })
}

/// Builds a method that passes validation. With `forward_only` every jump
/// goes to a later statement, so the CFG is acyclic.
pub fn build_method(name: &str, params: usize, plans: &[StmtPlan], forward_only: bool, callees: &[String]) -> SlirMethod {
    let params: Vec<String> = (0..params).map(|i| format!("p{i}")).collect();
    let mut defined: Vec<String> = params.clone();
    let len = plans.len();
    let mut statements = Vec::with_capacity(len);
    let mut targets = BTreeSet::new();
    for (i, s) in plans.iter().enumerate() {
        let pick = |k: usize, defined: &Vec<String>| defined[s.picks[k] as usize % defined.len()].clone();
        let def = LOCALS[s.picks[0] as usize % LOCALS.len()].to_string();
        let jump = if forward_only {
            (i + 1 < len).then(|| i + 1 + s.target as usize % (len - i - 1))
        } else {
            Some(s.target as usize % len)
        };
        let callee = |k: u8| {
            if !callees.is_empty() && k.is_multiple_of(3) {
                callees[k as usize % callees.len()].clone()
            } else {
                format!("lib.Api{}.call{}", k % 3, k % 5)
            }
        };
        let has = !defined.is_empty();
        let kind = match s.kind {
            0 => StmtKind::ConstAssign { target: def.clone(), value: s.lit.clone() },
            1 if has => StmtKind::OpAssign { target: def.clone(), args: vec![pick(1, &defined), pick(2, &defined)] },
            2 if has => StmtKind::CallAssign { target: def.clone(), callee: callee(s.target), args: vec![pick(1, &defined)] },
            3 => StmtKind::Call { callee: callee(s.target), args: if has { vec![pick(1, &defined)] } else { vec![] } },
            4 => StmtKind::FieldLoad { target: def.clone(), field: format!("C.f{}", s.picks[1] % 2) },
            5 if has => StmtKind::FieldStore { field: format!("C.f{}", s.picks[1] % 2), value: pick(1, &defined) },
            6 if has && jump.is_some() => {
                let t = jump.unwrap();
                targets.insert(t);
                StmtKind::If { cond: pick(1, &defined), target: format!("L{t}") }
            }
            7 if jump.is_some() => {
                let t = jump.unwrap();
                targets.insert(t);
                StmtKind::Goto { target: format!("L{t}") }
            }
            8 => StmtKind::Return { value: if has && s.picks[2] % 2 == 0 { Some(pick(1, &defined)) } else { None } },
            _ => StmtKind::ConstAssign { target: def.clone(), value: Literal::Int(i as i64) },
        };
        if let Some(d) = kind.defined_local() {
            if !defined.iter().any(|x| x == d) {
                defined.push(d.to_string());
            }
        }
        statements.push(Stmt { label: None, kind });
    }
    for t in targets {
        statements[t].label = Some(format!("L{t}"));
    }
    SlirMethod { name: name.into(), params, statements }
}

pub fn random_method(max_stmts: usize, forward_only: bool) -> impl Strategy<Value = SlirMethod> {
    (0usize..3, proptest::collection::vec(stmt_plan(), 0..=max_stmts))
        .prop_map(move |(params, plans)| build_method("m", params, &plans, forward_only, &[]))
}

pub fn random_program() -> impl Strategy<Value = SlirProgram> {
    let method = (0usize..3, proptest::collection::vec(stmt_plan(), 0..8));
    let class = proptest::collection::vec(method, 0..4);
    proptest::collection::vec(class, 0..4).prop_map(|classes| {
        let names: Vec<String> = (0..classes.len()).map(|c| format!("pkg.sub.C{c}")).collect();
        let callees: Vec<String> = classes
            .iter()
            .enumerate()
            .flat_map(|(c, ms)| (0..ms.len()).map(move |m| format!("pkg.sub.C{c}.m{m}")))
            .collect();
        let classes = classes
            .iter()
            .enumerate()
            .map(|(c, ms)| SlirClass {
                name: names[c].clone(),
                methods: ms
                    .iter()
                    .enumerate()
                    .map(|(m, (p, plans))| build_method(&format!("m{m}"), *p, plans, false, &callees))
                    .collect(),
            })
            .collect();
        SlirProgram { classes }
    })
}

/// Successors of statement `i` read off the SLIR semantics; `None` stands
/// for Exit.
pub fn stmt_successors(method: &SlirMethod, i: usize) -> Vec<Option<usize>> {
    let len = method.statements.len();
    let label = |l: &str| method.statements.iter().position(|s| s.label.as_deref() == Some(l));
    let next = if i + 1 < len { Some(i + 1) } else { None };
    match &method.statements[i].kind {
        StmtKind::Return { .. } => vec![None],
        StmtKind::Goto { target } => vec![label(target)],
        StmtKind::If { target, .. } => vec![label(target), next],
        _ => vec![next],
    }
}

/// Data dependences by enumerating every Entry-to-Exit path of an acyclic
/// method and pairing each use with the latest preceding definition.
pub fn data_deps_oracle(method: &SlirMethod) -> BTreeSet<(usize, usize, String)> {
    let len = method.statements.len();
    let succ = |i: usize| -> Vec<usize> { stmt_successors(method, i).into_iter().flatten().collect() };
    let mut out = BTreeSet::new();
    if len == 0 {
        return out;
    }
    let mut stack = vec![vec![0usize]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let s = succ(last);
        if s.is_empty() {
            for (k, &u) in path.iter().enumerate() {
                for local in method.statements[u].kind.used_locals() {
                    let def = path[..k]
                        .iter()
                        .rev()
                        .find(|&&d| method.statements[d].kind.defined_local() == Some(local));
                    if let Some(&d) = def {
                        out.insert((d, u, local.to_string()));
                    }
                }
            }
        }
        for t in s {
            let mut p = path.clone();
            p.push(t);
            stack.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------- DPV

fn extension() -> impl Strategy<Value = String> {
    "x-[a-z][a-z0-9_-]{0,5}".prop_map(String::from)
}

fn personal_data() -> impl Strategy<Value = PersonalDataCategory> {
    prop_oneof![
        Just(PersonalDataCategory::Email),
        Just(PersonalDataCategory::Location),
        Just(PersonalDataCategory::Phone),
        Just(PersonalDataCategory::Contact),
        Just(PersonalDataCategory::DeviceId),
        extension().prop_map(PersonalDataCategory::Other),
    ]
}

fn purpose() -> impl Strategy<Value = Purpose> {
    prop_oneof![Just(Purpose::CommunicationManagement), extension().prop_map(Purpose::Other)]
}

/// Models with no evidence. Processing starts with Collect; measures sit at
/// arbitrary positions in the sequence.
pub fn random_model() -> impl Strategy<Value = DpvModel> {
    let id = "[A-Za-z][A-Za-z0-9_]{0,5}(\\.[A-Za-z0-9_]{1,5}){0,3}";
    let rest = proptest::sample::subsequence(ProcessingCategory::ALL.to_vec(), 0..=ProcessingCategory::ALL.len())
        .prop_shuffle();
    let measures = proptest::sample::subsequence(TechnicalMeasure::ALL.to_vec(), 0..=3).prop_shuffle();
    (
        id,
        personal_data(),
        prop_oneof![Just(DataSource::FirstParty), Just(DataSource::ThirdParty)],
        rest,
        measures,
        proptest::collection::vec(0usize..8, 3),
        proptest::option::of(purpose()),
    )
        .prop_map(|(id, pd, ds, rest, measures, pos, purpose)| {
            let mut processing = vec![ProcessingCategory::Collect];
            processing.extend(rest.into_iter().filter(|p| *p != ProcessingCategory::Collect));
            let mut measures: Vec<MeasureAt> = measures
                .into_iter()
                .zip(pos)
                .map(|(measure, p)| MeasureAt { measure, position: 1 + p % processing.len() })
                .collect();
            measures.sort_by_key(|m| m.position);
            DpvModel {
                process_id: id,
                personal_data: pd,
                data_source: ds,
                processing,
                measures,
                purpose,
                evidence: BTreeMap::new(),
            }
        })
}

/// A one-node slice the model can be checked against.
pub fn host_slice(model: &mut DpvModel) -> PrivacySlice {
    let stmt = StmtId::new("C", "m", 0);
    let source = SourceMatch {
        stmt: stmt.clone(),
        signature: "lib.Src.get".into(),
        personal_data: model.personal_data.clone(),
        third_party: model.data_source == DataSource::ThirdParty,
        entry: "lib.Src.get".into(),
    };
    let slice = PrivacySlice::new("app", source, SliceGraph { nodes: vec![stmt], edges: vec![] });
    model.process_id = slice.id.clone();
    slice
}

/// Expected rule ids, read straight off the model.
pub fn expected_rules(m: &DpvModel) -> BTreeSet<RuleId> {
    let first = m.processing.iter().position(|p| p.is_consuming());
    let violation = first.is_some_and(|k| m.measures.iter().all(|x| x.position > k));
    let mut out = BTreeSet::new();
    if violation {
        out.insert(RuleId::A25Violation);
    }
    if !violation && !m.measures.is_empty() {
        out.insert(RuleId::A25Adherence);
    }
    if first.is_none() && m.measures.is_empty() {
        out.insert(RuleId::A5Minimisation);
    }
    if m.data_source == DataSource::ThirdParty {
        out.insert(RuleId::Ch5ThirdParty);
    }
    out
}

/// Rewrites some call targets to catalog signatures (first- and third-party
/// sources, a measure, a store and a use) so random programs produce annotated slices.
pub fn seed_privacy_calls(mut p: SlirProgram, seed: u8) -> SlirProgram {
    let mut k = seed as usize;
    for c in &mut p.classes {
        for m in &mut c.methods {
            for s in &mut m.statements {
                let callee = match &mut s.kind {
                    StmtKind::CallAssign { callee, .. } | StmtKind::Call { callee, .. } => callee,
                    _ => continue,
                };
                k += 1;
                match k % 7 {
                    0 => *callee = "android.location.Location.getLatitude".into(),
                    1 => *callee = "java.security.MessageDigest.digest".into(),
                    2 => *callee = "com.google.firebase.storage.StorageReference.putBytes".into(),
                    3 => *callee = "com.google.android.gms.auth.api.signin.GoogleSignInAccount.getEmail".into(),
                    4 => *callee = "javax.mail.Transport.send".into(),
                    _ => {}
                }
            }
        }
    }
    p
}
