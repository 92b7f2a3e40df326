use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::model::{DpvModel, MeasureAt, ModelElement};
use super::vocab::{DataSource, ProcessingCategory};
use crate::slicer::{PrivacySlice, SliceGraph};

/// Linear order of slice node positions consistent with the dependence
/// edges. Cycles are collapsed into strongly connected components which are
/// emitted in program order, with the source leading its component. Ties
/// between independent components go to the one appearing first in the
/// program.
pub fn dependence_order(graph: &SliceGraph, source: usize) -> Vec<usize> {
    let n = graph.nodes.len();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, graph.edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for e in &graph.edges {
        if e.from != e.to {
            g.add_edge(NodeIndex::new(e.from), NodeIndex::new(e.to), ());
        }
    }
    let sccs = tarjan_scc(&g);
    let mut comp_of = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(sccs.len());
    for (c, scc) in sccs.iter().enumerate() {
        let mut m: Vec<usize> = scc.iter().map(|ix| ix.index()).collect();
        m.sort_unstable();
        if let Some(p) = m.iter().position(|&v| v == source) {
            m.remove(p);
            m.insert(0, source);
        }
        for &v in &m {
            comp_of[v] = c;
        }
        members.push(m);
    }

    let key = |c: usize| if members[c].contains(&source) { 0 } else { members[c][0] + 1 };
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); members.len()];
    let mut indeg = vec![0usize; members.len()];
    for e in &graph.edges {
        let (a, b) = (comp_of[e.from], comp_of[e.to]);
        if a != b && succ[a].insert(b) {
            indeg[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..members.len())
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((key(c), c)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.extend_from_slice(&members[c]);
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                ready.push(Reverse((key(s), s)));
            }
        }
    }
    order
}

/// Abstracts an annotated slice into its DPV model.
pub fn map_slice(slice: &PrivacySlice) -> DpvModel {
    let source = slice.source_position();
    let order = dependence_order(&slice.graph, source);
    let stmt = |pos: usize| slice.graph.nodes[pos].clone();

    let mut evidence: BTreeMap<ModelElement, Vec<_>> = BTreeMap::new();
    let data_source = if slice.source.third_party { DataSource::ThirdParty } else { DataSource::FirstParty };
    evidence.insert(ModelElement::PersonalData(slice.personal_data().clone()), vec![stmt(source)]);
    evidence.insert(ModelElement::DataSource(data_source), vec![stmt(source)]);

    let mut processing = vec![ProcessingCategory::Collect];
    let mut measures: Vec<MeasureAt> = Vec::new();
    let mut purpose = None;
    for pos in order {
        let Some(ann) = slice.annotations.get(&pos) else { continue };
        if let Some(cat) = ann.processing() {
            if !processing.contains(&cat) {
                processing.push(cat);
            }
            evidence.entry(ModelElement::Processing(cat)).or_default().push(stmt(pos));
        }
        if let Some(m) = ann.measure() {
            if !measures.iter().any(|x| x.measure == m) {
                measures.push(MeasureAt { measure: m, position: processing.len() });
            }
            evidence.entry(ModelElement::Measure(m)).or_default().push(stmt(pos));
        }
        if let Some(p) = ann.purpose() {
            let chosen = purpose.get_or_insert_with(|| p.clone());
            if chosen == p {
                evidence.entry(ModelElement::Purpose(p.clone())).or_default().push(stmt(pos));
            }
        }
    }
    // Collect is forced at the source even when nothing else carries it.
    evidence
        .entry(ModelElement::Processing(ProcessingCategory::Collect))
        .or_insert_with(|| vec![stmt(source)]);
    for nodes in evidence.values_mut() {
        nodes.sort();
        nodes.dedup();
    }

    DpvModel {
        process_id: slice.id.clone(),
        personal_data: slice.personal_data().clone(),
        data_source,
        processing,
        measures,
        purpose,
        evidence,
    }
}
