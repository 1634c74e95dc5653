//! Resolving `--machine FILE` and `--builtin NAME`.

use std::path::{Path, PathBuf};

use f2lab_core::machines::{lookup, CatalogEntry, CATALOG};
use f2lab_core::simulator::{parse_machine, Machine, SpecError};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: SpecError,
    },
    #[error("unknown builtin machine `{0}` (known: {known})", known = builtin_names())]
    UnknownBuiltin(String),
}

pub fn builtin_names() -> String {
    CATALOG.iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
}

#[derive(Debug)]
pub struct LoadedMachine {
    pub name: String,
    pub machine: Machine,
    /// Catalog metadata for builtins.
    pub entry: Option<&'static CatalogEntry>,
}

pub fn builtin(name: &str) -> Result<LoadedMachine, LoadError> {
    let entry = lookup(name).ok_or_else(|| LoadError::UnknownBuiltin(name.into()))?;
    Ok(LoadedMachine {
        name: name.into(),
        machine: (entry.build)(),
        entry: Some(entry),
    })
}

/// Machines loaded from a file are named after the file stem.
pub fn from_file(path: &Path) -> Result<LoadedMachine, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.into(),
        source,
    })?;
    let machine = parse_machine(&text).map_err(|source| LoadError::Parse {
        path: path.into(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_graphic() && b != b',' && b != b'#'))
        .unwrap_or_else(|| "machine".into());
    Ok(LoadedMachine {
        name,
        machine,
        entry: None,
    })
}
