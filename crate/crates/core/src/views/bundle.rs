//! Machine-readable analysis bundle (`bundle_version` 1).

use serde_json::{json, Map, Value};

use super::view3::{badge_title, severity_color};
use crate::analysis::{Analysis, SliceReport};
use crate::depgraph::StmtId;
use crate::dpv::{to_turtle, DpvModel};
use crate::rules::{DpiaCell, DpiaSummary, Finding};
use crate::slicer::Tag;

pub const BUNDLE_VERSION: u64 = 1;

/// View 1 node id of a statement; evidence links use the same string.
pub fn node_id(stmt: &StmtId) -> String {
    stmt.to_string()
}

fn ids(stmts: &[StmtId]) -> Value {
    Value::Array(stmts.iter().map(|s| Value::String(node_id(s))).collect())
}

fn view1(report: &SliceReport, analysis: &Analysis) -> Value {
    let slice = &report.slice;
    let source = slice.source_position();
    let nodes: Vec<Value> = slice
        .graph
        .nodes
        .iter()
        .enumerate()
        .map(|(pos, stmt)| {
            let mut tags = Vec::new();
            if pos == source {
                tags.push(format!("source:{}", slice.personal_data().as_str()));
            }
            match slice.annotations.get(&pos).map(|a| &a.tag) {
                Some(Tag::Processing { category, purpose }) => {
                    tags.push(format!("processing:{}", category.as_str()));
                    if let Some(p) = purpose {
                        tags.push(format!("purpose:{}", p.as_str()));
                    }
                }
                Some(Tag::Measure(m)) => tags.push(format!("measure:{}", m.as_str())),
                None => {}
            }
            json!({
                "id": node_id(stmt),
                "label": format!("{}:{}", stmt.method, stmt.index),
                "stmt": stmt.resolve(&analysis.program).map(|s| s.to_string()).unwrap_or_default(),
                "tags": tags,
            })
        })
        .collect();
    let edges: Vec<Value> = slice
        .graph
        .edges
        .iter()
        .map(|e| {
            json!({
                "from": node_id(&slice.graph.nodes[e.from]),
                "to": node_id(&slice.graph.nodes[e.to]),
                "kind": e.kind.as_str(),
                "via": e.via.name(),
            })
        })
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

fn model_json(m: &DpvModel) -> Value {
    json!({
        "process_id": m.process_id,
        "personal_data": m.personal_data.as_str(),
        "data_source": m.data_source.as_str(),
        "processing": m.processing.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
        "measures": m.measures.iter().map(|x| json!({"measure": x.measure.as_str(), "position": x.position})).collect::<Vec<_>>(),
        "purpose": m.purpose.as_ref().map(|p| p.as_str()),
    })
}

fn view2(report: &SliceReport) -> Value {
    let m = &report.model;
    let evidence: Map<String, Value> = m.elements().iter().map(|el| (el.to_string(), ids(m.evidence_for(el)))).collect();
    json!({
        "turtle": to_turtle(m),
        "model": model_json(m),
        "evidence": evidence,
    })
}

fn view3(report: &SliceReport) -> Value {
    let badges: Vec<Value> = report
        .findings
        .iter()
        .map(|f| {
            json!({
                "finding": f.id(),
                "title": badge_title(f),
                "severity": f.severity().to_string(),
                "color": severity_color(f.severity()),
            })
        })
        .collect();
    json!({
        "personal_data": report.model.personal_data.as_str(),
        "data_source": report.model.data_source.as_str(),
        "findings": report.findings.iter().map(Finding::id).collect::<Vec<_>>(),
        "badges": badges,
    })
}

fn finding_json(f: &Finding) -> Value {
    json!({
        "id": f.id(),
        "rule_id": f.rule.as_str(),
        "article": f.article(),
        "severity": f.severity().to_string(),
        "slice": f.slice_id,
        "evidence": ids(&f.evidence),
        "message": f.message,
    })
}

fn cell(c: &DpiaCell) -> Value {
    json!({ "found": c.found, "detail": c.detail, "evidence": ids(&c.evidence) })
}

fn dpia_json(d: &DpiaSummary) -> Value {
    let rows: Vec<Value> = d
        .rows
        .iter()
        .map(|r| {
            let mut row: Map<String, Value> = r.cells().iter().map(|(q, c)| (q.to_string(), cell(c))).collect();
            row.insert("slice".into(), Value::String(r.slice_id.clone()));
            Value::Object(row)
        })
        .collect();
    json!({ "rows": rows })
}

/// Rebuilds every object with keys in sorted order, independent of the
/// map implementation serde_json was compiled with.
fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Serializes the analysis as pretty-printed JSON with sorted keys and a
/// trailing newline.
pub fn emit_bundle(analysis: &Analysis) -> String {
    let slices: Vec<Value> = analysis
        .reports
        .iter()
        .map(|r| {
            json!({
                "id": r.slice.id,
                "personal_data": r.slice.personal_data().as_str(),
                "source": node_id(&r.slice.source.stmt),
                "view1": view1(r, analysis),
                "view2": view2(r),
                "view3": view3(r),
            })
        })
        .collect();
    let bundle = json!({
        "bundle_version": BUNDLE_VERSION,
        "app": analysis.app,
        "catalog_digest": analysis.catalog_digest,
        "slices": slices,
        "findings": analysis.findings().map(finding_json).collect::<Vec<_>>(),
        "dpia_summary": dpia_json(&analysis.dpia()),
    });
    let mut text = serde_json::to_string_pretty(&sort_keys(bundle)).expect("bundle values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::slicer::{Catalog, DEFAULT_CATALOG_JSON};
    use crate::slir::{parse_slir, SlirProgram};

    #[test]
    fn empty_app_bundle() {
        let a = analyze("empty", SlirProgram::default(), &Catalog::builtin(), DEFAULT_CATALOG_JSON.as_bytes()).unwrap();
        let v: Value = serde_json::from_str(&emit_bundle(&a)).unwrap();
        assert_eq!(v["slices"], json!([]));
        assert_eq!(v["findings"], json!([]));
        assert_eq!(v["bundle_version"], json!(1));
    }

    #[test]
    fn keys_are_sorted_and_links_resolve() {
        let p = parse_slir(
            "class A { method m(a) {\n p = call android.telephony.TelephonyManager.getLine1Number(a)\n h = call java.security.MessageDigest.digest(p)\n } }",
        )
        .unwrap();
        let a = analyze("t", p, &Catalog::builtin(), DEFAULT_CATALOG_JSON.as_bytes()).unwrap();
        let text = emit_bundle(&a);
        let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
        let keys: Vec<&str> = top.iter().map(|l| l.split('"').nth(1).unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        let v: Value = serde_json::from_str(&text).unwrap();
        let slice = &v["slices"][0];
        let nodes: Vec<&str> = slice["view1"]["nodes"].as_array().unwrap().iter().map(|n| n["id"].as_str().unwrap()).collect();
        for (_, links) in slice["view2"]["evidence"].as_object().unwrap() {
            for l in links.as_array().unwrap() {
                assert!(nodes.contains(&l.as_str().unwrap()));
            }
        }
        assert_eq!(slice["view2"]["evidence"]["hasTechnicalMeasure:HashFunction"], json!(["A.m:1"]));
    }
}
