//! Manifest parsing and entry resolution for `verify`.
//!
//! A manifest is a UTF-8 text file. Blank lines and lines starting with `#`
//! are ignored. Directive lines start with `@`:
//!
//! ```text
//! @seed 42
//! @cap subgroup_enum 128
//! ```
//!
//! Every other line is an entry: `name<TAB>kind<TAB>source`, where `kind` is
//! one of `family`, `perm`, `table`, or `builtin`. Entry names must be unique;
//! every source must resolve to a valid group before any analysis starts.

use crate::input::locate_error;
use crate::CliError;
use nilpotwo_core::{
    builtin_corpus, parse_family, parse_group_spec, Caps, GeneratedGroup, TableGroup,
};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SourceKind {
    Family,
    Perm,
    Table,
    Builtin,
}

impl SourceKind {
    fn parse(text: &str) -> Option<SourceKind> {
        match text {
            "family" => Some(SourceKind::Family),
            "perm" => Some(SourceKind::Perm),
            "table" => Some(SourceKind::Table),
            "builtin" => Some(SourceKind::Builtin),
            _ => None,
        }
    }
}

pub struct ManifestEntry {
    pub name: String,
    pub kind: SourceKind,
    pub source: String,
    /// 1-based manifest line, for error messages.
    pub line: usize,
}

pub struct Manifest {
    pub seed: Option<u64>,
    pub caps: Caps,
    pub entries: Vec<ManifestEntry>,
}

/// Apply one `@cap` directive by field name.
fn set_cap(caps: &mut Caps, name: &str, value: u64) -> Result<(), String> {
    match name {
        "table" => caps.table = value,
        "subgroup_enum" => caps.subgroup_enum = value,
        "automorphisms" => caps.automorphisms = value,
        "coset_index" => caps.coset_index = value,
        "element_scan" => caps.element_scan = value,
        "class_reps" => caps.class_reps = value,
        "recognition" => caps.recognition = value,
        "exact_sylow" => caps.exact_sylow = value,
        "sylow_budget" => {
            caps.sylow_budget = u32::try_from(value).map_err(|_| "value too large".to_string())?
        }
        "sylow_stagnation" => {
            caps.sylow_stagnation =
                u32::try_from(value).map_err(|_| "value too large".to_string())?
        }
        "sample_budget" => {
            caps.sample_budget = u32::try_from(value).map_err(|_| "value too large".to_string())?
        }
        _ => return Err(format!("unknown cap {name:?}")),
    }
    Ok(())
}

/// Parse manifest text. `origin` names the file for error messages.
pub fn parse_manifest(origin: &str, text: &str) -> Result<Manifest, CliError> {
    let mut manifest = Manifest {
        seed: None,
        caps: Caps::default(),
        entries: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    let bad = |line: usize, message: String| CliError::input(format!("{origin}:{line}: {message}"));

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(directive) = trimmed.strip_prefix('@') {
            let mut words = directive.split_whitespace();
            match words.next() {
                Some("seed") => {
                    let value = words
                        .next()
                        .ok_or_else(|| bad(line_no, "@seed needs a value".into()))?;
                    let seed = value
                        .parse::<u64>()
                        .map_err(|_| bad(line_no, format!("bad @seed value {value:?}")))?;
                    if words.next().is_some() {
                        return Err(bad(line_no, "@seed takes one value".into()));
                    }
                    manifest.seed = Some(seed);
                }
                Some("cap") => {
                    let name = words
                        .next()
                        .ok_or_else(|| bad(line_no, "@cap needs a name and a value".into()))?;
                    let value = words
                        .next()
                        .ok_or_else(|| bad(line_no, "@cap needs a name and a value".into()))?;
                    let value = value
                        .parse::<u64>()
                        .map_err(|_| bad(line_no, format!("bad @cap value {value:?}")))?;
                    if words.next().is_some() {
                        return Err(bad(line_no, "@cap takes a name and one value".into()));
                    }
                    set_cap(&mut manifest.caps, name, value).map_err(|m| bad(line_no, m))?;
                }
                other => {
                    return Err(bad(
                        line_no,
                        format!("unknown directive @{}", other.unwrap_or("")),
                    ));
                }
            }
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(bad(
                line_no,
                format!(
                    "expected name<TAB>kind<TAB>source, found {} field(s)",
                    fields.len()
                ),
            ));
        }
        let name = fields[0].trim();
        let kind_text = fields[1].trim();
        let source = fields[2].trim();
        if name.is_empty() {
            return Err(bad(line_no, "empty entry name".into()));
        }
        let kind = SourceKind::parse(kind_text).ok_or_else(|| {
            bad(
                line_no,
                format!("unknown source kind {kind_text:?} (family, perm, table, builtin)"),
            )
        })?;
        if !seen.insert(name.to_string()) {
            return Err(bad(line_no, format!("duplicate entry name {name:?}")));
        }
        manifest.entries.push(ManifestEntry {
            name: name.to_string(),
            kind,
            source: source.to_string(),
            line: line_no,
        });
    }
    Ok(manifest)
}

/// The built-in corpus as a ready-made manifest (default seed and caps).
pub fn builtin_manifest() -> Manifest {
    let entries = builtin_corpus()
        .into_iter()
        .enumerate()
        .map(|(idx, (name, _))| ManifestEntry {
            source: name.clone(),
            name,
            kind: SourceKind::Builtin,
            line: idx + 1,
        })
        .collect();
    Manifest {
        seed: None,
        caps: Caps::default(),
        entries,
    }
}

/// Resolve every entry to a concrete group, failing on the first bad source.
/// `base_dir` anchors relative `table` paths (the manifest's directory).
pub fn resolve_entries(
    origin: &str,
    manifest: &Manifest,
    base_dir: &Path,
) -> Result<Vec<(String, GeneratedGroup)>, CliError> {
    let corpus = builtin_corpus();
    let mut resolved = Vec::with_capacity(manifest.entries.len());
    for entry in &manifest.entries {
        let context = format!("{origin}:{} ({})", entry.line, entry.name);
        let group = match entry.kind {
            SourceKind::Family => parse_family(&entry.source)
                .and_then(|spec| spec.realize())
                .map_err(|e| locate_error(&context, &entry.source, 1, e))?,
            SourceKind::Perm => parse_group_spec(&entry.source)
                .map_err(|e| locate_error(&context, &entry.source, 1, e))?,
            SourceKind::Table => {
                let path: PathBuf = if Path::new(&entry.source).is_absolute() {
                    PathBuf::from(&entry.source)
                } else {
                    base_dir.join(&entry.source)
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::input(format!("{context}: {}: {e}", path.display()))
                })?;
                let table = TableGroup::from_text(&text, manifest.caps.table)
                    .map_err(|e| locate_error(&context, &text, 1, e))?;
                let members: Vec<u16> = (0..table.order()).map(|i| i as u16).collect();
                table.to_generated(&members)
            }
            SourceKind::Builtin => {
                let spec = corpus
                    .iter()
                    .find(|(name, _)| name == &entry.source)
                    .map(|(_, spec)| spec)
                    .ok_or_else(|| {
                        CliError::input(format!(
                            "{context}: unknown builtin corpus entry {:?}",
                            entry.source
                        ))
                    })?;
                spec.realize()
                    .map_err(|e| CliError::input(format!("{context}: {e}")))?
            }
        };
        resolved.push((entry.name.clone(), group));
    }
    Ok(resolved)
}
