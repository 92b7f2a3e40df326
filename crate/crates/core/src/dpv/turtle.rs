//! View 2 serialization: a fixed Turtle subset.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use super::model::{DpvModel, MeasureAt};
use super::vocab::{DataSource, PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure};

pub const EX_IRI: &str = "http://example.org/privslice/";
pub const DPV_IRI: &str = "https://w3id.org/dpv#";
pub const PD_IRI: &str = "https://w3id.org/dpv/pd#";

/// Serializes a model. Predicates appear in a fixed order; optional ones
/// (`hasDataSource` for first-party data, measures, purpose) are omitted
/// when absent.
pub fn to_turtle(model: &DpvModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@prefix ex: <{EX_IRI}> .");
    let _ = writeln!(out, "@prefix dpv: <{DPV_IRI}> .");
    let _ = writeln!(out, "@prefix pd: <{PD_IRI}> .");
    out.push('\n');

    let mut lines = vec![format!("dpv:hasPersonalData pd:{}", model.personal_data.as_str())];
    if model.data_source == DataSource::ThirdParty {
        lines.push("dpv:hasDataSource dpv:ThirdParty".into());
    }
    let list = |items: Vec<&str>| items.iter().map(|i| format!("dpv:{i}")).collect::<Vec<_>>().join(", ");
    lines.push(format!("dpv:hasProcessing {}", list(model.processing.iter().map(|p| p.as_str()).collect())));
    if !model.measures.is_empty() {
        lines.push(format!(
            "dpv:hasTechnicalMeasure {}",
            list(model.measures.iter().map(|m| m.measure.as_str()).collect())
        ));
    }
    if let Some(p) = &model.purpose {
        lines.push(format!("dpv:hasPurpose dpv:{}", p.as_str()));
    }

    let _ = writeln!(out, "ex:{} a dpv:Process ;", model.process_id);
    let last = lines.len() - 1;
    for (i, l) in lines.iter().enumerate() {
        let _ = writeln!(out, "    {l} {}", if i == last { "." } else { ";" });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("line {line}: malformed document: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown predicate `{predicate}`")]
    UnknownPredicate { line: usize, predicate: String },
    #[error("line {line}: unknown category value `{value}`")]
    UnknownCategory { line: usize, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Prefix,
    Iri(String),
    Name { prefix: String, local: String },
    A,
    Semi,
    Comma,
    Dot,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, TurtleError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let malformed = |message: String| TurtleError::Malformed { line, message };
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\r' => i += 1,
                '#' => break,
                ';' => {
                    out.push((Tok::Semi, line));
                    i += 1;
                }
                ',' => {
                    out.push((Tok::Comma, line));
                    i += 1;
                }
                '.' => {
                    out.push((Tok::Dot, line));
                    i += 1;
                }
                '<' => {
                    let end = chars[i..]
                        .iter()
                        .position(|&c| c == '>')
                        .ok_or_else(|| malformed("unterminated IRI".into()))?;
                    out.push((Tok::Iri(chars[i + 1..i + end].iter().collect()), line));
                    i += end + 1;
                }
                _ => {
                    let start = i;
                    while i < chars.len() && !matches!(chars[i], ' ' | '\t' | '\r' | ',' | ';' | '#' | '<') {
                        i += 1;
                    }
                    let mut word: String = chars[start..i].iter().collect();
                    let mut dots = 0;
                    while word.ends_with('.') {
                        word.pop();
                        dots += 1;
                    }
                    if word == "@prefix" {
                        out.push((Tok::Prefix, line));
                    } else if word == "a" {
                        out.push((Tok::A, line));
                    } else if let Some((prefix, local)) = word.split_once(':') {
                        let ok_local = local.is_empty()
                            || local.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
                        let ok_prefix = prefix.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                        if !ok_local || !ok_prefix {
                            return Err(malformed(format!("invalid prefixed name `{word}`")));
                        }
                        out.push((Tok::Name { prefix: prefix.into(), local: local.into() }, line));
                    } else {
                        return Err(malformed(format!("unexpected `{word}`")));
                    }
                    out.extend(std::iter::repeat_n((Tok::Dot, line), dots));
                }
            }
        }
    }
    Ok(out)
}

/// Line of the predicate and its `(prefix, local)` objects.
type Objects = (usize, Vec<(String, String)>);

/// Parses the Turtle subset written by [`to_turtle`]. Evidence is not part
/// of the serialization and comes back empty; measure positions are not
/// serialized either and are reported as following all processing.
pub fn parse_turtle_subset(text: &str) -> Result<DpvModel, TurtleError> {
    let toks = tokenize(text)?;
    let last_line = text.lines().count().max(1);
    let mut pos = 0;
    let line_at = |pos: usize| toks.get(pos).map(|t| t.1).unwrap_or(last_line);
    let malformed = |pos: usize, message: &str| TurtleError::Malformed { line: line_at(pos), message: message.into() };

    let mut prefixes: BTreeMap<String, String> = BTreeMap::new();
    while matches!(toks.get(pos), Some((Tok::Prefix, _))) {
        match (toks.get(pos + 1), toks.get(pos + 2), toks.get(pos + 3)) {
            (Some((Tok::Name { prefix, local }, _)), Some((Tok::Iri(iri), _)), Some((Tok::Dot, _))) if local.is_empty() => {
                prefixes.insert(prefix.clone(), iri.clone());
                pos += 4;
            }
            _ => return Err(malformed(pos, "bad @prefix declaration")),
        }
    }
    let declared = |prefix: &str, pos: usize| {
        if prefixes.contains_key(prefix) {
            Ok(())
        } else {
            Err(malformed(pos, &format!("undeclared prefix `{prefix}:`")))
        }
    };

    let process_id = match toks.get(pos) {
        Some((Tok::Name { prefix, local }, _)) if prefix == "ex" && !local.is_empty() => {
            declared("ex", pos)?;
            local.clone()
        }
        _ => return Err(malformed(pos, "expected an `ex:` subject")),
    };
    pos += 1;

    let mut typed = false;
    let mut objects: BTreeMap<&'static str, Objects> = BTreeMap::new();
    loop {
        let verb_pos = pos;
        let verb = match toks.get(pos) {
            Some((Tok::A, _)) => None,
            Some((Tok::Name { prefix, local }, line)) => {
                declared(prefix, pos)?;
                let known = ["hasPersonalData", "hasDataSource", "hasProcessing", "hasTechnicalMeasure", "hasPurpose"];
                match known.iter().find(|k| prefix == "dpv" && *k == local) {
                    Some(k) => Some(*k),
                    None => {
                        return Err(TurtleError::UnknownPredicate { line: *line, predicate: format!("{prefix}:{local}") })
                    }
                }
            }
            _ => return Err(malformed(pos, "expected a predicate")),
        };
        pos += 1;
        let mut objs = Vec::new();
        loop {
            match toks.get(pos) {
                Some((Tok::Name { prefix, local }, _)) if !local.is_empty() => {
                    declared(prefix, pos)?;
                    objs.push((prefix.clone(), local.clone()));
                    pos += 1;
                }
                _ => return Err(malformed(pos, "expected an object")),
            }
            if matches!(toks.get(pos), Some((Tok::Comma, _))) {
                pos += 1;
            } else {
                break;
            }
        }
        match verb {
            None => {
                if typed || objs != [("dpv".to_string(), "Process".to_string())] {
                    return Err(malformed(verb_pos, "subject must be typed exactly once as `dpv:Process`"));
                }
                typed = true;
            }
            Some(v) => {
                if objects.insert(v, (line_at(verb_pos), objs)).is_some() {
                    return Err(malformed(verb_pos, &format!("predicate `dpv:{v}` repeated")));
                }
            }
        }
        match toks.get(pos) {
            Some((Tok::Semi, _)) => pos += 1,
            Some((Tok::Dot, _)) => {
                pos += 1;
                break;
            }
            _ => return Err(malformed(pos, "expected `;` or `.`")),
        }
    }
    if pos != toks.len() {
        return Err(malformed(pos, "trailing content after the process description"));
    }
    if !typed {
        return Err(malformed(0, "missing `a dpv:Process`"));
    }

    fn term<T: std::str::FromStr>(line: usize, want: &str, (prefix, local): &(String, String)) -> Result<T, TurtleError> {
        if prefix != want {
            return Err(TurtleError::UnknownCategory { line, value: format!("{prefix}:{local}") });
        }
        local.parse().map_err(|_| TurtleError::UnknownCategory { line, value: format!("{prefix}:{local}") })
    }
    let single = |name: &str, entry: &(usize, Vec<(String, String)>)| {
        if entry.1.len() == 1 {
            Ok(())
        } else {
            Err(TurtleError::Malformed { line: entry.0, message: format!("`dpv:{name}` takes one object") })
        }
    };

    let Some(pd) = objects.get("hasPersonalData") else {
        return Err(malformed(0, "missing `dpv:hasPersonalData`"));
    };
    single("hasPersonalData", pd)?;
    let personal_data: PersonalDataCategory = term(pd.0, "pd", &pd.1[0])?;

    let data_source = match objects.get("hasDataSource") {
        None => DataSource::FirstParty,
        Some(ds) => {
            single("hasDataSource", ds)?;
            term(ds.0, "dpv", &ds.1[0])?
        }
    };

    let Some(proc_) = objects.get("hasProcessing") else {
        return Err(malformed(0, "missing `dpv:hasProcessing`"));
    };
    let processing = proc_
        .1
        .iter()
        .map(|o| term::<ProcessingCategory>(proc_.0, "dpv", o))
        .collect::<Result<Vec<_>, _>>()?;
    if processing.first() != Some(&ProcessingCategory::Collect) {
        return Err(TurtleError::Malformed { line: proc_.0, message: "processing must begin with `dpv:Collect`".into() });
    }

    let measures = match objects.get("hasTechnicalMeasure") {
        None => Vec::new(),
        Some(ms) => ms
            .1
            .iter()
            .map(|o| {
                term::<TechnicalMeasure>(ms.0, "dpv", o)
                    .map(|measure| MeasureAt { measure, position: processing.len() })
            })
            .collect::<Result<Vec<_>, _>>()?,
    };

    let purpose = match objects.get("hasPurpose") {
        None => None,
        Some(p) => {
            single("hasPurpose", p)?;
            Some(term::<Purpose>(p.0, "dpv", &p.1[0])?)
        }
    };

    Ok(DpvModel {
        process_id,
        personal_data,
        data_source,
        processing,
        measures,
        purpose,
        evidence: BTreeMap::new(),
    })
}
