//! Persistent bound table: a JSON array of [`FBoundEntry`] objects.
//!
//! Every entry is re-verified on load. Stores rewrite the whole file through
//! a temporary sibling and a rename, so readers never see a partial file.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hfsearch::{best_entries, FBoundEntry};

/// Verified entries plus one warning per dropped entry.
#[derive(Clone, Debug, Default)]
pub struct Loaded {
    pub entries: Vec<FBoundEntry>,
    pub warnings: Vec<String>,
}

/// Parses and re-verifies a table. Blank text is an empty table.
pub fn parse(text: &str) -> Result<Loaded> {
    if text.trim().is_empty() {
        return Ok(Loaded::default());
    }
    let raw: Vec<FBoundEntry> = serde_json::from_str(text).map_err(|e| Error::CorruptCache {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let checked: Vec<(FBoundEntry, Result<()>)> = raw
        .into_par_iter()
        .map(|entry| {
            let verdict = entry.verify().map(|_| ());
            (entry, verdict)
        })
        .collect();
    let mut loaded = Loaded::default();
    for (entry, verdict) in checked {
        match verdict {
            Ok(()) => loaded.entries.push(entry),
            Err(err) => loaded
                .warnings
                .push(format!("dropped entry (e = {}, r = {}): {err}", entry.e, entry.r)),
        }
    }
    Ok(loaded)
}

/// Loads a table; a missing file is an error.
pub fn load(path: &Path) -> Result<Loaded> {
    parse(&fs::read_to_string(path)?)
}

/// Loads a table, treating a missing file as empty.
pub fn load_or_empty(path: &Path) -> Result<Loaded> {
    if path.exists() {
        load(path)
    } else {
        Ok(Loaded::default())
    }
}

/// Per `(e, r)` the entry with the smallest bound; on ties `existing` wins.
pub fn merge(existing: &[FBoundEntry], incoming: &[FBoundEntry]) -> Vec<FBoundEntry> {
    let mut all = existing.to_vec();
    for entry in incoming {
        let beaten = existing
            .iter()
            .any(|old| old.e == entry.e && old.r == entry.r && old.upper <= entry.upper);
        if !beaten {
            all.retain(|old| !(old.e == entry.e && old.r == entry.r));
            all.push(entry.clone());
        }
    }
    best_entries(&all)
}

/// Writes `entries` as the whole table, atomically.
pub fn store(path: &Path, entries: &[FBoundEntry]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut text = serde_json::to_string_pretty(entries).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    let tmp = temp_sibling(path);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Merges verified `incoming` entries into the table at `path` and returns
/// the stored table with any load warnings.
pub fn merge_store(path: &Path, incoming: &[FBoundEntry]) -> Result<Loaded> {
    let current = load_or_empty(path)?;
    let merged = merge(&current.entries, incoming);
    if merged != current.entries {
        store(path, &merged)?;
    }
    Ok(Loaded {
        entries: merged,
        warnings: current.warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheMode {
    Load,
    MergeStore,
}

/// `Load` ignores `entries` and requires the file; `MergeStore` merges them
/// in, creating the file when missing. Both return the resulting table.
pub fn cache_load_store(path: &Path, entries: &[FBoundEntry], mode: CacheMode) -> Result<Loaded> {
    match mode {
        CacheMode::Load => load(path),
        CacheMode::MergeStore => merge_store(path, entries),
    }
}

fn temp_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(format!(".tmp{}", std::process::id()));
    path.with_file_name(name)
}
