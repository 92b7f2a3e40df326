use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use super::catalog::{Catalog, EntryKind, Role};
use crate::depgraph::{EdgeKind, NodeId, Pdg, Provenance, StmtId};
use crate::dpv::{PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure};
use crate::slir::SlirProgram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("statement {0} is not a node of the dependence graph")]
    UnknownStatement(StmtId),
}

/// A catalog-matched privacy source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceMatch {
    pub stmt: StmtId,
    pub signature: String,
    pub personal_data: PersonalDataCategory,
    pub third_party: bool,
    /// Pattern of the catalog entry that matched.
    pub entry: String,
}

/// Call statements matching a Source entry, in program order.
pub fn find_sources(program: &SlirProgram, catalog: &Catalog) -> Vec<SourceMatch> {
    let mut out = Vec::new();
    for (class, method) in program.methods() {
        for (index, stmt) in method.statements.iter().enumerate() {
            let Some(sig) = stmt.kind.call_signature() else { continue };
            let Some(entry) = catalog.lookup(sig, Role::Source) else { continue };
            let EntryKind::Source(pd) = &entry.kind else { continue };
            out.push(SourceMatch {
                stmt: StmtId::new(&class.name, &method.name, index),
                signature: sig.to_string(),
                personal_data: pd.clone(),
                third_party: catalog.is_third_party(sig),
                entry: entry.signature.to_string(),
            });
        }
    }
    out
}

/// Edge of a slice; endpoints index into [`SliceGraph::nodes`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SliceEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    pub via: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceGraph {
    /// Statements in program order.
    pub nodes: Vec<StmtId>,
    pub edges: Vec<SliceEdge>,
}

impl SliceGraph {
    pub fn position(&self, stmt: &StmtId) -> Option<usize> {
        self.nodes.iter().position(|s| s == stmt)
    }
}

/// Forward closure from `source` over every PDG edge kind, with the induced
/// edges.
pub fn forward_slice(pdg: &Pdg, source: &StmtId) -> Result<SliceGraph, SliceError> {
    let start = pdg.id_of(source).ok_or_else(|| SliceError::UnknownStatement(source.clone()))?;
    let mut seen = vec![false; pdg.node_count()];
    seen[start.index()] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        for e in pdg.outgoing(n) {
            if !seen[e.to.index()] {
                seen[e.to.index()] = true;
                queue.push_back(e.to);
            }
        }
    }
    let members: Vec<NodeId> = (0..pdg.node_count())
        .filter(|&i| seen[i])
        .map(|i| NodeId(i as u32))
        .collect();
    let mut position = vec![usize::MAX; pdg.node_count()];
    for (p, id) in members.iter().enumerate() {
        position[id.index()] = p;
    }
    let mut edges: Vec<SliceEdge> = members
        .iter()
        .flat_map(|&id| pdg.outgoing(id))
        .map(|e| SliceEdge {
            from: position[e.from.index()],
            to: position[e.to.index()],
            kind: e.kind,
            via: e.via.clone(),
        })
        .collect();
    edges.sort();
    Ok(SliceGraph { nodes: members.iter().map(|&id| pdg.stmt(id).clone()).collect(), edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tag {
    Processing { category: ProcessingCategory, purpose: Option<Purpose> },
    Measure(TechnicalMeasure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub tag: Tag,
    /// Catalog entry pattern that produced the tag.
    pub entry: String,
    pub third_party: bool,
}

impl Annotation {
    pub fn processing(&self) -> Option<ProcessingCategory> {
        match self.tag {
            Tag::Processing { category, .. } => Some(category),
            Tag::Measure(_) => None,
        }
    }

    pub fn measure(&self) -> Option<TechnicalMeasure> {
        match self.tag {
            Tag::Measure(m) => Some(m),
            Tag::Processing { .. } => None,
        }
    }

    pub fn purpose(&self) -> Option<&Purpose> {
        match &self.tag {
            Tag::Processing { purpose, .. } => purpose.as_ref(),
            Tag::Measure(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacySlice {
    pub id: String,
    pub source: SourceMatch,
    pub graph: SliceGraph,
    /// Keyed by position in `graph.nodes`.
    pub annotations: BTreeMap<usize, Annotation>,
}

impl PrivacySlice {
    pub fn new(app: &str, source: SourceMatch, graph: SliceGraph) -> Self {
        let id = slice_id(app, &source.stmt);
        PrivacySlice { id, source, graph, annotations: BTreeMap::new() }
    }

    pub fn personal_data(&self) -> &PersonalDataCategory {
        &self.source.personal_data
    }

    pub fn source_position(&self) -> usize {
        self.graph
            .position(&self.source.stmt)
            .expect("slice contains its source")
    }

    pub fn contains(&self, stmt: &StmtId) -> bool {
        self.graph.position(stmt).is_some()
    }
}

/// Stable slice id: `<app>.<class>.<method>.<index>`. Characters outside
/// `[A-Za-z0-9_]` in the app name become `_`.
pub fn slice_id(app: &str, stmt: &StmtId) -> String {
    let app: String = app
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    let app = if app.is_empty() { "app".to_string() } else { app };
    format!("{app}.{}.{}.{}", stmt.class, stmt.method, stmt.index)
}

/// Tags call nodes with catalog Processing/Measure entries. The source node
/// is always tagged `Collect`.
pub fn annotate_slice(mut slice: PrivacySlice, catalog: &Catalog, program: &SlirProgram) -> PrivacySlice {
    slice.annotations.clear();
    let source_pos = slice.source_position();
    for (pos, stmt_id) in slice.graph.nodes.iter().enumerate() {
        if pos == source_pos {
            slice.annotations.insert(
                pos,
                Annotation {
                    tag: Tag::Processing { category: ProcessingCategory::Collect, purpose: None },
                    entry: slice.source.entry.clone(),
                    third_party: slice.source.third_party,
                },
            );
            continue;
        }
        let Some(sig) = stmt_id.resolve(program).and_then(|s| s.kind.call_signature()) else { continue };
        let entry = catalog
            .lookup(sig, Role::Processing)
            .or_else(|| catalog.lookup(sig, Role::Measure));
        let Some(entry) = entry else { continue };
        let tag = match &entry.kind {
            EntryKind::Processing { category, purpose } => Tag::Processing { category: *category, purpose: purpose.clone() },
            EntryKind::Measure(m) => Tag::Measure(*m),
            EntryKind::Source(_) => continue,
        };
        slice.annotations.insert(
            pos,
            Annotation { tag, entry: entry.signature.to_string(), third_party: catalog.is_third_party(sig) },
        );
    }
    slice
}

/// Finds every source and returns its annotated forward slice.
pub fn slice_program(app: &str, program: &SlirProgram, pdg: &Pdg, catalog: &Catalog) -> Vec<PrivacySlice> {
    find_sources(program, catalog)
        .into_iter()
        .map(|src| {
            let graph = forward_slice(pdg, &src.stmt).expect("sources come from the same program");
            annotate_slice(PrivacySlice::new(app, src, graph), catalog, program)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depgraph::build_pdg;
    use crate::slir::parse_slir;

    const SRC: &str = "class org.Loc {
  method run(loc) {
    sb = call java.lang.StringBuilder.init()
    lat = call android.location.Location.getLatitude(loc)
    t = call java.lang.StringBuilder.append(sb, lat)
    h = call java.security.MessageDigest.digest(t)
    call org.Other.unknown(sb)
    return
  }
}";

    fn setup() -> (SlirProgram, Pdg, Catalog) {
        let p = parse_slir(SRC).unwrap();
        let g = build_pdg(&p);
        (p, g, Catalog::builtin())
    }

    #[test]
    fn finds_location_source() {
        let (p, _, c) = setup();
        let s = find_sources(&p, &c);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].stmt, StmtId::new("org.Loc", "run", 1));
        assert_eq!(s[0].personal_data, PersonalDataCategory::Location);
        assert!(!s[0].third_party);
    }

    #[test]
    fn third_party_flag_from_prefix() {
        let p = parse_slir("class A { method m(a) {\n e = call com.google.android.gms.auth.api.signin.GoogleSignInAccount.getEmail(a)\n } }").unwrap();
        let s = find_sources(&p, &Catalog::builtin());
        assert_eq!(s[0].personal_data, PersonalDataCategory::Email);
        assert!(s[0].third_party);
    }

    #[test]
    fn no_matches_no_sources() {
        let p = parse_slir("class A { method m() {\n x = call foo.Bar.baz()\n } }").unwrap();
        assert!(find_sources(&p, &Catalog::builtin()).is_empty());
    }

    #[test]
    fn slice_excludes_untainted_statements() {
        let (p, g, _) = setup();
        let s = forward_slice(&g, &StmtId::new("org.Loc", "run", 1)).unwrap();
        let idx: Vec<usize> = s.nodes.iter().map(|n| n.index).collect();
        assert_eq!(idx, vec![1, 2, 3]);
        assert!(s.edges.iter().all(|e| e.from < 3 && e.to < 3));
        let _ = p;
    }

    #[test]
    fn isolated_source_is_its_own_slice() {
        let p = parse_slir("class A { method m(l) {\n x = call android.location.Location.getLatitude(l)\n return } }").unwrap();
        let s = forward_slice(&build_pdg(&p), &StmtId::new("A", "m", 0)).unwrap();
        assert_eq!(s.nodes, vec![StmtId::new("A", "m", 0)]);
        assert!(s.edges.is_empty());
    }

    #[test]
    fn unknown_statement_is_an_error() {
        let (_, g, _) = setup();
        assert!(matches!(
            forward_slice(&g, &StmtId::new("org.Loc", "run", 99)),
            Err(SliceError::UnknownStatement(_))
        ));
    }

    #[test]
    fn annotations_follow_the_catalog() {
        let (p, g, c) = setup();
        let slices = slice_program("Roid", &p, &g, &c);
        assert_eq!(slices.len(), 1);
        let s = &slices[0];
        assert_eq!(s.id, "Roid.org.Loc.run.1");
        let tags: Vec<(usize, Tag)> = s.annotations.iter().map(|(k, a)| (*k, a.tag.clone())).collect();
        assert_eq!(
            tags,
            vec![
                (0, Tag::Processing { category: ProcessingCategory::Collect, purpose: None }),
                (1, Tag::Processing { category: ProcessingCategory::Combine, purpose: None }),
                (2, Tag::Measure(TechnicalMeasure::HashFunction)),
            ]
        );
    }

    #[test]
    fn uncatalogued_calls_get_no_tags() {
        let p = parse_slir("class A { method m(l) {\n x = call android.location.Location.getLatitude(l)\n y = call foo.Bar.baz(x)\n } }").unwrap();
        let slices = slice_program("a", &p, &build_pdg(&p), &Catalog::builtin());
        assert_eq!(slices[0].graph.nodes.len(), 2);
        assert_eq!(slices[0].annotations.len(), 1, "only the Collect tag on the source");
    }

    #[test]
    fn slice_id_sanitizes_app_name() {
        assert_eq!(slice_id("my app!", &StmtId::new("a.B", "m", 3)), "my_app_.a.B.m.3");
    }
}
