use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

use privslice::analysis::Analysis;
use privslice::dpv::to_turtle;
use privslice::rules::Finding;
use privslice::views::{emit_bundle, render_app_summary, render_view1, render_view2, render_view3, ViewStyle};

use crate::Emit;

/// Every output file as `(file name, contents)`, in a fixed order.
pub fn artifacts(analysis: &Analysis, emit: &[Emit]) -> Vec<(String, String)> {
    let mut files = vec![("bundle.json".to_string(), emit_bundle(analysis))];
    let style = ViewStyle::default();
    if emit.contains(&Emit::Dot) {
        for r in &analysis.reports {
            let id = &r.slice.id;
            files.push((format!("view1-{id}.dot"), render_view1(&r.slice, &analysis.program, &style)));
            files.push((format!("view2-{id}.dot"), render_view2(&r.model)));
            files.push((format!("view3-{id}.dot"), render_view3(&analysis.app, &r.model, &r.findings)));
        }
        let rows: Vec<(_, &[Finding])> = analysis.reports.iter().map(|r| (&r.model, r.findings.as_slice())).collect();
        files.push(("summary.dot".to_string(), render_app_summary(&analysis.app, &rows)));
    }
    if emit.contains(&Emit::Turtle) {
        for r in &analysis.reports {
            files.push((format!("view2-{}.ttl", r.slice.id), to_turtle(&r.model)));
        }
    }
    files
}

/// Stages every file in `dir` and renames them into place only once all
/// of them have been written.
pub fn write_all(dir: &Path, files: &[(String, String)]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("{}: cannot create output directory", dir.display()))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("{}: cannot create file", dir.display()))?;
        tmp.write_all(contents.as_bytes()).with_context(|| format!("{name}: write failed"))?;
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, target) in staged {
        tmp.persist(&target).with_context(|| format!("{}: cannot write", target.display()))?;
    }
    Ok(())
}
