//! Input loading shared by the subcommands: seed resolution, group-spec and
//! table reading, and byte-offset → line/column conversion for parse errors.

use crate::CliError;
use nilpotwo_core::{
    parse_family, parse_group_spec, Caps, Error, GeneratedGroup, TableGroup, DEFAULT_SEED,
};
use std::io::Read;

/// Environment variable consulted when no `--seed` flag is given.
pub const SEED_ENV: &str = "NILPOTWO_SEED";

/// Resolve the effective seed. Precedence: `--seed` flag, then a manifest
/// `@seed` directive, then the `NILPOTWO_SEED` environment variable, then the
/// built-in default. A malformed environment value is an input error rather
/// than a silent fallback.
pub fn resolve_seed(flag: Option<u64>, manifest: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Some(s) = manifest {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.parse::<u64>().map_err(|_| {
            CliError::input(format!(
                "{SEED_ENV} must be an unsigned 64-bit integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Convert a byte offset in `text` to 1-based (line, column).
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let clamped = offset.min(text.len());
    let mut line = 1usize;
    let mut col = 1usize;
    for &b in &text.as_bytes()[..clamped] {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Wrap a core error for input named `origin`, translating parse offsets into
/// line/column positions within `text`.
pub fn locate_error(origin: &str, text: &str, line_base: usize, e: Error) -> CliError {
    match e {
        Error::Parse { offset, message } => {
            let (line, col) = line_col(text, offset);
            CliError::input(format!(
                "{origin}:{}:{col}: parse error: {message}",
                line_base + line - 1
            ))
        }
        other => CliError::input(format!("{origin}: {other}")),
    }
}

/// Where an `analyze` input came from, for naming and error messages.
pub struct LoadedGroup {
    pub name: String,
    pub group: GeneratedGroup,
}

/// Read all of stdin as text.
fn read_stdin() -> Result<String, CliError> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| CliError::input(format!("stdin: {e}")))?;
    Ok(text)
}

/// Pick the first line that contains content (skipping blanks and `#`
/// comments), returning it with its 1-based line number.
fn first_content_line(text: &str) -> Option<(usize, &str)> {
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            return Some((idx + 1, trimmed));
        }
    }
    None
}

/// Load the group for `analyze` from one of its input forms.
///
/// * `--family EXPR` realizes a family expression;
/// * a source starting with `perm ` is an inline group spec;
/// * `-` (or piped stdin with no source) reads a spec from stdin;
/// * anything else is a file path, parsed as a group spec, or as a
///   multiplication table under `--table`.
pub fn load_analyze_group(
    source: Option<&str>,
    family: Option<&str>,
    table: bool,
    name_flag: Option<&str>,
    caps: &Caps,
) -> Result<LoadedGroup, CliError> {
    if let Some(expr) = family {
        let spec =
            parse_family(expr).map_err(|e| locate_error("family expression", expr, 1, e))?;
        let group = spec.realize().map_err(CliError::from)?;
        let name = match name_flag {
            Some(n) => n.to_string(),
            None => spec.to_string(),
        };
        return Ok(LoadedGroup { name, group });
    }

    let (origin, text): (String, String) = match source {
        Some("-") => ("stdin".into(), read_stdin()?),
        Some(inline) if inline.starts_with("perm ") => ("argument".into(), inline.to_string()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("{path}: {e}")))?;
            (path.to_string(), text)
        }
        None => {
            use std::io::IsTerminal;
            if std::io::stdin().is_terminal() {
                return Err(CliError::input(
                    "no input group: pass a spec, a file, \"-\", or --family",
                ));
            }
            ("stdin".into(), read_stdin()?)
        }
    };

    let default_name = match source {
        Some(path) if !path.starts_with("perm ") && path != "-" => std::path::Path::new(path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into()),
        _ => "input".into(),
    };
    let name = name_flag.map(str::to_string).unwrap_or(default_name);

    let group = if table {
        let table_group = TableGroup::from_text(&text, caps.table)
            .map_err(|e| locate_error(&origin, &text, 1, e))?;
        let members: Vec<u16> = (0..table_group.order()).map(|i| i as u16).collect();
        table_group.to_generated(&members)
    } else {
        let (line_no, line) = first_content_line(&text)
            .ok_or_else(|| CliError::input(format!("{origin}: no group spec found")))?;
        parse_group_spec(line).map_err(|e| locate_error(&origin, line, line_no, e))?
    };

    Ok(LoadedGroup { name, group })
}
