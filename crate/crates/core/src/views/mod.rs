//! Assessor views: the source-level slice graph (View 1), the DPV model
//! star (View 2), the findings summary (View 3) and the JSON bundle that
//! links them.

mod bundle;
mod view1;
mod view2;
mod view3;

pub use bundle::{emit_bundle, node_id, BUNDLE_VERSION};
pub use view1::render_view1;
pub use view2::render_view2;
pub use view3::{render_app_summary, render_view3, severity_color};

use crate::depgraph::EdgeKind;

/// Edge styling for View 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewStyle {
    pub data_color: String,
    pub control_color: String,
    pub interprocedural_color: String,
    pub interprocedural_style: String,
}

impl Default for ViewStyle {
    fn default() -> Self {
        ViewStyle {
            data_color: "blue".into(),
            control_color: "green".into(),
            interprocedural_color: "gray40".into(),
            interprocedural_style: "dashed".into(),
        }
    }
}

impl ViewStyle {
    fn edge_attrs(&self, kind: EdgeKind) -> Vec<(&'static str, String)> {
        match kind {
            EdgeKind::Data => vec![("color", self.data_color.clone())],
            EdgeKind::Control => vec![("color", self.control_color.clone())],
            EdgeKind::Call | EdgeKind::ParamIn | EdgeKind::ReturnOut => vec![
                ("color", self.interprocedural_color.clone()),
                ("style", self.interprocedural_style.clone()),
            ],
        }
    }
}

/// Quotes `s` as a DOT string. Line breaks become `\n` escapes.
pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub(crate) fn attrs(list: &[(&str, String)]) -> String {
    if list.is_empty() {
        return String::new();
    }
    let body: Vec<String> = list.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
    format!(" [{}]", body.join(", "))
}
