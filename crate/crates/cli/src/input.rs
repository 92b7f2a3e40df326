use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use privslice::slicer::{Catalog, DEFAULT_CATALOG_JSON};
use privslice::slir::{parse_slir, validate, SlirProgram};

pub struct Loaded {
    pub app: String,
    pub program: SlirProgram,
    pub catalog: Catalog,
    pub catalog_bytes: Vec<u8>,
}

fn slir_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("{}: cannot read directory", dir.display()))? {
        let path = entry.with_context(|| format!("{}: cannot read directory", dir.display()))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "slir") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn parse_file(path: &Path) -> Result<SlirProgram> {
    let text = fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))?;
    parse_slir(&text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

/// Reads and checks every input before any output is produced.
pub fn load(ir: &Path, catalog: Option<&Path>, app: Option<&str>) -> Result<Loaded> {
    let (catalog, catalog_bytes) = match catalog {
        Some(path) => {
            let bytes = fs::read(path).with_context(|| format!("{}: cannot read catalog", path.display()))?;
            let text = std::str::from_utf8(&bytes).with_context(|| format!("{}: catalog is not UTF-8", path.display()))?;
            let cat = Catalog::from_json(text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))?;
            (cat, bytes)
        }
        None => (Catalog::builtin(), DEFAULT_CATALOG_JSON.as_bytes().to_vec()),
    };

    let program = if ir.is_dir() {
        let files = slir_files(ir)?;
        if files.is_empty() {
            bail!("{}: no .slir files found", ir.display());
        }
        let parts = files.iter().map(|f| parse_file(f)).collect::<Result<Vec<_>>>()?;
        let merged = SlirProgram::merge(parts);
        validate(&merged).map_err(|e| anyhow::anyhow!("{}: {e}", ir.display()))?;
        merged
    } else {
        parse_file(ir)?
    };

    let app = match app {
        Some(a) => a.to_string(),
        None => ir.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "app".into()),
    };
    Ok(Loaded { app, program, catalog, catalog_bytes })
}
