use std::fmt::Write;

use super::{attrs, quote, ViewStyle};
use crate::slicer::PrivacySlice;
use crate::slir::SlirProgram;

/// Renders the slice as a DOT digraph with one node per statement, labeled
/// with its printed SLIR text. The source node has a double border.
pub fn render_view1(slice: &PrivacySlice, program: &SlirProgram, style: &ViewStyle) -> String {
    let source = slice.source_position();
    let mut out = String::new();
    let _ = writeln!(out, "digraph view1 {{");
    let _ = writeln!(out, "  graph [label={}, labelloc=\"t\"];", quote(&format!("View 1: {}", slice.id)));
    let _ = writeln!(out, "  node [shape=\"box\", fontname=\"monospace\"];");
    for (pos, stmt) in slice.graph.nodes.iter().enumerate() {
        let text = stmt.resolve(program).map(|s| s.to_string()).unwrap_or_default();
        let mut label = format!("{stmt}\n{text}");
        if let Some(ann) = slice.annotations.get(&pos) {
            let tag = match (ann.processing(), ann.measure()) {
                (Some(p), _) => p.as_str(),
                (_, Some(m)) => m.as_str(),
                _ => "",
            };
            let _ = write!(label, "\n[{tag}]");
        }
        let mut a = vec![("label", label)];
        if pos == source {
            a.push(("peripheries", "2".into()));
        }
        let _ = writeln!(out, "  {}{};", quote(&stmt.to_string()), attrs(&a));
    }
    for e in &slice.graph.edges {
        let mut a = style.edge_attrs(e.kind);
        let label = match e.via.name() {
            Some(n) => format!("{} {n}", e.kind.as_str()),
            None => e.kind.as_str().to_string(),
        };
        a.push(("label", label));
        let _ = writeln!(
            out,
            "  {} -> {}{};",
            quote(&slice.graph.nodes[e.from].to_string()),
            quote(&slice.graph.nodes[e.to].to_string()),
            attrs(&a)
        );
    }
    out.push_str("}\n");
    out
}
