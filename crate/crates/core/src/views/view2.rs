use std::fmt::Write;

use super::{attrs, quote};
use crate::dpv::{DataSource, DpvModel};

/// Renders the model as a star: the process in the middle, one labeled
/// edge per predicate value. Processing nodes carry their order.
pub fn render_view2(model: &DpvModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph view2 {{");
    let _ = writeln!(out, "  graph [label={}, labelloc=\"t\"];", quote(&format!("View 2: {}", model.process_id)));
    let _ = writeln!(
        out,
        "  \"process\"{};",
        attrs(&[("label", format!("ex:{}\ndpv:Process", model.process_id)), ("shape", "ellipse".into())])
    );
    let mut leaf = |id: String, label: String, predicate: &str, shape: &str| {
        let _ = writeln!(out, "  {}{};", quote(&id), attrs(&[("label", label), ("shape", shape.into())]));
        let _ = writeln!(out, "  \"process\" -> {}{};", quote(&id), attrs(&[("label", predicate.into())]));
    };
    let pd = model.personal_data.as_str();
    leaf(format!("pd:{pd}"), format!("pd:{pd}"), "hasPersonalData", "box");
    if model.data_source == DataSource::ThirdParty {
        leaf("dpv:ThirdParty".into(), "dpv:ThirdParty".into(), "hasDataSource", "box");
    }
    for (i, p) in model.processing.iter().enumerate() {
        leaf(format!("processing:{}", i + 1), format!("dpv:{} ({})", p.as_str(), i + 1), "hasProcessing", "box");
    }
    for m in &model.measures {
        let id = format!("dpv:{}", m.measure.as_str());
        leaf(id.clone(), id, "hasTechnicalMeasure", "hexagon");
    }
    if let Some(p) = &model.purpose {
        let id = format!("dpv:{}", p.as_str());
        leaf(id.clone(), id, "hasPurpose", "note");
    }
    out.push_str("}\n");
    out
}
