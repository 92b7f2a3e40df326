use std::fmt::Write;

use super::{attrs, quote};
use crate::dpv::DpvModel;
use crate::rules::{Finding, Severity};

pub fn severity_color(severity: Severity) -> &'static str {
    match severity {
        Severity::PotentialViolation => "red",
        Severity::Adherence => "green",
        Severity::Suggestion => "#FFBF00",
        Severity::Note => "gray",
    }
}

/// First line of a badge: rule title and article.
pub(crate) fn badge_title(f: &Finding) -> String {
    format!("{} — {}", f.rule.title(), f.article())
}

fn write_badges(out: &mut String, anchor: &str, findings: &[Finding]) {
    for f in findings {
        let id = f.id();
        let a = [
            ("label", format!("{}\n{}", badge_title(f), f.message)),
            ("shape", "note".into()),
            ("style", "filled".into()),
            ("fillcolor", severity_color(f.severity()).into()),
        ];
        let _ = writeln!(out, "  {}{};", quote(&id), attrs(&a));
        let _ = writeln!(out, "  {} -> {};", quote(anchor), quote(&id));
    }
}

/// Compact per-slice summary: app, the personal data it handles, and one
/// colored badge per finding.
pub fn render_view3(app: &str, model: &DpvModel, findings: &[Finding]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph view3 {{");
    let _ = writeln!(out, "  graph [label={}, labelloc=\"t\"];", quote(&format!("View 3: {}", model.process_id)));
    let pd = format!("pd:{}", model.personal_data.as_str());
    let _ = writeln!(out, "  \"app\"{};", attrs(&[("label", app.into()), ("shape", "box3d".into())]));
    let _ = writeln!(out, "  {}{};", quote(&pd), attrs(&[("label", pd.clone()), ("shape", "ellipse".into())]));
    let _ = writeln!(out, "  \"app\" -> {};", quote(&pd));
    write_badges(&mut out, &pd, findings);
    out.push_str("}\n");
    out
}

/// App-level roll-up listing every slice with its badges.
pub fn render_app_summary(app: &str, slices: &[(&DpvModel, &[Finding])]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph summary {{");
    let _ = writeln!(out, "  graph [label={}, labelloc=\"t\"];", quote(&format!("Summary: {app}")));
    let _ = writeln!(out, "  \"app\"{};", attrs(&[("label", app.into()), ("shape", "box3d".into())]));
    for (model, findings) in slices {
        let node = model.process_id.clone();
        let a = [("label", format!("pd:{}\n{node}", model.personal_data.as_str())), ("shape", "ellipse".into())];
        let _ = writeln!(out, "  {}{};", quote(&node), attrs(&a));
        let _ = writeln!(out, "  \"app\" -> {};", quote(&node));
        write_badges(&mut out, &node, findings);
    }
    out.push_str("}\n");
    out
}
