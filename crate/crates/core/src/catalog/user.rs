use std::path::Path;

use serde::Deserialize;

use super::spec::CatalogEntry;
use crate::ears::EarsFamily;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryFile {
    Many { entries: Vec<CatalogEntry> },
    List(Vec<CatalogEntry>),
    One(Box<CatalogEntry>),
}

fn finish(file: EntryFile) -> Result<Vec<CatalogEntry>> {
    let mut entries = match file {
        EntryFile::Many { entries } | EntryFile::List(entries) => entries,
        EntryFile::One(e) => vec![*e],
    };
    for e in &mut entries {
        let f = e.family;
        e.family = EarsFamily::new(f.tag, f.kind, f.rank, f.nvars)?;
        if e.recipe.is_empty() {
            e.recipe = e.name.clone();
        }
        e.expected.sort_by(|a, b| a.grade.cmp(&b.grade));
        e.validate()?;
    }
    Ok(entries)
}

/// Parses entries from JSON (a single entry, a list, or `{"entries": [...]}`)
/// or from TOML (a single entry or `[[entries]]` tables). Matrix entries are
/// one-based `[i, j, value]` triples.
pub fn parse_entries(text: &str, toml_format: bool) -> Result<Vec<CatalogEntry>> {
    let file: EntryFile = if toml_format {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    };
    finish(file)
}

/// Reads entries from a `.json` or `.toml` file.
pub fn load_entries(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)?;
    let toml_format = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("toml"));
    parse_entries(&text, toml_format)
}
