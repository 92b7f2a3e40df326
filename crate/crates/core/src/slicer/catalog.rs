use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::dpv::{PersonalDataCategory, ProcessingCategory, Purpose, TechnicalMeasure};

/// The catalog shipped with the tool.
pub const DEFAULT_CATALOG_JSON: &str = include_str!("../../data/catalog/default.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Source,
    Processing,
    Measure,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Source => "source",
            Role::Processing => "processing",
            Role::Measure => "measure",
        })
    }
}

/// Exact dotted signature, or a prefix pattern written with a trailing `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignaturePattern {
    Exact(String),
    Prefix(String),
}

impl SignaturePattern {
    fn parse(s: &str) -> Option<Self> {
        match s.strip_suffix('*') {
            Some(stem) if !stem.contains('*') => Some(Self::Prefix(stem.to_string())),
            Some(_) => None,
            None if !s.is_empty() && !s.contains('*') => Some(Self::Exact(s.to_string())),
            None => None,
        }
    }

    pub fn matches(&self, signature: &str) -> bool {
        match self {
            Self::Exact(s) => s == signature,
            Self::Prefix(p) => signature.starts_with(p.as_str()),
        }
    }

    /// Whether some signature could match both patterns.
    fn overlaps(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a == b,
            (Self::Exact(e), p @ Self::Prefix(_)) | (p @ Self::Prefix(_), Self::Exact(e)) => p.matches(e),
            (Self::Prefix(a), Self::Prefix(b)) => a.starts_with(b.as_str()) || b.starts_with(a.as_str()),
        }
    }
}

impl fmt::Display for SignaturePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(s) => f.write_str(s),
            Self::Prefix(p) => write!(f, "{p}*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryKind {
    Source(PersonalDataCategory),
    Processing { category: ProcessingCategory, purpose: Option<Purpose> },
    Measure(TechnicalMeasure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub signature: SignaturePattern,
    pub kind: EntryKind,
}

impl CatalogEntry {
    pub fn role(&self) -> Role {
        match self.kind {
            EntryKind::Source(_) => Role::Source,
            EntryKind::Processing { .. } => Role::Processing,
            EntryKind::Measure(_) => Role::Measure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{line}:{column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("entry {index}: invalid signature pattern `{signature}`")]
    BadPattern { index: usize, signature: String },
    #[error("entry {index}: {role} entries require `{field}`")]
    MissingField { index: usize, role: Role, field: &'static str },
    #[error("entry {index}: `{field}` is not allowed on {role} entries")]
    ForeignField { index: usize, role: Role, field: &'static str },
    #[error("entry {index}: duplicate {role} entry for `{signature}`")]
    Duplicate { index: usize, role: Role, signature: String },
    #[error("entry {index}: `{signature}` conflicts with measure/processing entry `{other}`")]
    Conflict { index: usize, signature: String, other: String },
    #[error("invalid third-party prefix `{0}`")]
    BadPrefix(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    entries: Vec<RawEntry>,
    #[serde(default)]
    third_party_prefixes: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    signature: String,
    role: Role,
    personal_data: Option<PersonalDataCategory>,
    processing: Option<ProcessingCategory>,
    measure: Option<TechnicalMeasure>,
    purpose: Option<Purpose>,
}

/// Signature catalog mapping API calls to sources, processing operations
/// and technical measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    third_party_prefixes: Vec<String>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let raw: RawCatalog = serde_json::from_str(text).map_err(|e| CatalogError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (index, e) in raw.entries.into_iter().enumerate() {
            let signature = SignaturePattern::parse(&e.signature)
                .ok_or_else(|| CatalogError::BadPattern { index, signature: e.signature.clone() })?;
            let role = e.role;
            let foreign = |present: bool, field| {
                if present {
                    Err(CatalogError::ForeignField { index, role, field })
                } else {
                    Ok(())
                }
            };
            let missing = |field| CatalogError::MissingField { index, role, field };
            let kind = match role {
                Role::Source => {
                    foreign(e.processing.is_some(), "processing")?;
                    foreign(e.measure.is_some(), "measure")?;
                    foreign(e.purpose.is_some(), "purpose")?;
                    EntryKind::Source(e.personal_data.ok_or_else(|| missing("personal_data"))?)
                }
                Role::Processing => {
                    foreign(e.personal_data.is_some(), "personal_data")?;
                    foreign(e.measure.is_some(), "measure")?;
                    EntryKind::Processing {
                        category: e.processing.ok_or_else(|| missing("processing"))?,
                        purpose: e.purpose,
                    }
                }
                Role::Measure => {
                    foreign(e.personal_data.is_some(), "personal_data")?;
                    foreign(e.processing.is_some(), "processing")?;
                    foreign(e.purpose.is_some(), "purpose")?;
                    EntryKind::Measure(e.measure.ok_or_else(|| missing("measure"))?)
                }
            };
            entries.push(CatalogEntry { signature, kind });
        }

        let mut seen = BTreeSet::new();
        for (index, e) in entries.iter().enumerate() {
            if !seen.insert((e.role(), e.signature.clone())) {
                return Err(CatalogError::Duplicate { index, role: e.role(), signature: e.signature.to_string() });
            }
            if e.role() == Role::Processing {
                if let Some(m) = entries
                    .iter()
                    .find(|m| m.role() == Role::Measure && m.signature.overlaps(&e.signature))
                {
                    return Err(CatalogError::Conflict {
                        index,
                        signature: e.signature.to_string(),
                        other: m.signature.to_string(),
                    });
                }
            }
        }

        for p in &raw.third_party_prefixes {
            if p.is_empty() || p.contains('*') || p.ends_with('.') {
                return Err(CatalogError::BadPrefix(p.clone()));
            }
        }
        Ok(Catalog { entries, third_party_prefixes: raw.third_party_prefixes })
    }

    /// The shipped default catalog.
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_CATALOG_JSON).expect("default catalog is valid")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn third_party_prefixes(&self) -> &[String] {
        &self.third_party_prefixes
    }

    /// Best entry of `role` for `signature`: an exact match wins, otherwise
    /// the longest matching prefix.
    pub fn lookup(&self, signature: &str, role: Role) -> Option<&CatalogEntry> {
        let candidates = self.entries.iter().filter(|e| e.role() == role);
        let mut best: Option<&CatalogEntry> = None;
        for e in candidates {
            match &e.signature {
                SignaturePattern::Exact(s) if s == signature => return Some(e),
                SignaturePattern::Prefix(p) if signature.starts_with(p.as_str()) => {
                    let longer = match best {
                        Some(CatalogEntry { signature: SignaturePattern::Prefix(q), .. }) => p.len() > q.len(),
                        _ => true,
                    };
                    if longer {
                        best = Some(e);
                    }
                }
                _ => {}
            }
        }
        best
    }

    /// Whether `signature` lies under a third-party package prefix.
    pub fn is_third_party(&self, signature: &str) -> bool {
        self.third_party_prefixes.iter().any(|p| {
            signature == p || signature.strip_prefix(p.as_str()).is_some_and(|rest| rest.starts_with('.'))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog(entries: &str) -> Result<Catalog, CatalogError> {
        Catalog::from_json(&format!(r#"{{"entries": [{entries}], "third_party_prefixes": ["com.google.android.gms"]}}"#))
    }

    #[test]
    fn builtin_catalog_loads() {
        let c = Catalog::builtin();
        assert!(c.entries().iter().any(|e| e.role() == Role::Source));
        assert!(c.is_third_party("com.google.android.gms.auth.api.signin.GoogleSignInAccount.getEmail"));
    }

    #[test]
    fn exact_beats_prefix_and_longest_prefix_wins() {
        let c = catalog(
            r#"{"signature": "a.b.*", "role": "processing", "processing": "Use"},
               {"signature": "a.b.c.*", "role": "processing", "processing": "Share"},
               {"signature": "a.b.c.D.send", "role": "processing", "processing": "Store"}"#,
        )
        .unwrap();
        let cat = |s| match &c.lookup(s, Role::Processing).unwrap().kind {
            EntryKind::Processing { category, .. } => *category,
            _ => unreachable!(),
        };
        assert_eq!(cat("a.b.c.D.send"), ProcessingCategory::Store);
        assert_eq!(cat("a.b.c.D.recv"), ProcessingCategory::Share);
        assert_eq!(cat("a.b.X.y"), ProcessingCategory::Use);
        assert!(c.lookup("z.y", Role::Processing).is_none());
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = catalog(r#"{"signature": "a.b", "role": "source", "personal_data": "Email", "colour": "red"}"#).unwrap_err();
        assert!(matches!(e, CatalogError::Json { .. }), "{e}");
    }

    #[test]
    fn categories_must_be_known() {
        let e = catalog(r#"{"signature": "a.b", "role": "source", "personal_data": "Weather"}"#).unwrap_err();
        assert!(e.to_string().contains("Weather"), "{e}");
    }

    #[test]
    fn role_fields_are_exclusive() {
        let e = catalog(r#"{"signature": "a.b", "role": "source", "personal_data": "Email", "measure": "HashFunction"}"#)
            .unwrap_err();
        assert!(matches!(e, CatalogError::ForeignField { field: "measure", .. }));
        let e = catalog(r#"{"signature": "a.b", "role": "measure"}"#).unwrap_err();
        assert!(matches!(e, CatalogError::MissingField { field: "measure", .. }));
    }

    #[test]
    fn duplicate_per_role_rejected() {
        let e = catalog(
            r#"{"signature": "a.b", "role": "source", "personal_data": "Email"},
               {"signature": "a.b", "role": "source", "personal_data": "Phone"}"#,
        )
        .unwrap_err();
        assert!(matches!(e, CatalogError::Duplicate { index: 1, .. }));
        // Same signature in different roles is fine.
        catalog(
            r#"{"signature": "a.b", "role": "source", "personal_data": "Email"},
               {"signature": "a.b", "role": "processing", "processing": "Use"}"#,
        )
        .unwrap();
    }

    #[test]
    fn processing_measure_overlap_is_a_conflict() {
        let e = catalog(
            r#"{"signature": "java.security.*", "role": "processing", "processing": "Use"},
               {"signature": "java.security.MessageDigest.digest", "role": "measure", "measure": "HashFunction"}"#,
        )
        .unwrap_err();
        assert!(matches!(e, CatalogError::Conflict { .. }));
    }

    #[test]
    fn third_party_prefix_respects_segments() {
        let c = catalog("").unwrap();
        assert!(c.is_third_party("com.google.android.gms.Foo.bar"));
        assert!(!c.is_third_party("com.google.android.gmsx.Foo.bar"));
    }

    #[test]
    fn bad_patterns() {
        assert!(matches!(
            catalog(r#"{"signature": "a.*.b", "role": "measure", "measure": "Encryption"}"#).unwrap_err(),
            CatalogError::BadPattern { .. }
        ));
    }
}
