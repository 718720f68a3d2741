//! Single-line scan checkpoints: `last_completed_d=<n>`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

const KEY: &str = "last_completed_d=";

/// Every `d` up to and including `last_completed_d` has been emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub last_completed_d: u64,
}

impl Checkpoint {
    pub fn render(&self) -> String {
        format!("{KEY}{}\n", self.last_completed_d)
    }

    pub fn parse(text: &str) -> Option<Self> {
        let value = text.strip_suffix('\n').unwrap_or(text).strip_prefix(KEY)?;
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Some(Checkpoint { last_completed_d: value.parse().ok()? })
    }
}

/// `None` when the file does not exist.
pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
    match fs::read_to_string(path) {
        Ok(text) => Checkpoint::parse(&text).map(Some).ok_or_else(|| Error::Checkpoint {
            path: path.to_path_buf(),
            reason: format!("expected a single line {KEY}<n>"),
        }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::io(path, e)),
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Writes through a sibling temp file and renames it into place.
pub fn store(path: &Path, cp: Checkpoint) -> Result<()> {
    let tmp = temp_path(path);
    let write = || -> io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(cp.render().as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cp = Checkpoint { last_completed_d: 2048 };
        assert_eq!(cp.render(), "last_completed_d=2048\n");
        assert_eq!(Checkpoint::parse(&cp.render()), Some(cp));
        assert_eq!(Checkpoint::parse("last_completed_d=\n"), None);
        assert_eq!(Checkpoint::parse("last_completed_d=12x"), None);
        assert_eq!(Checkpoint::parse("d=12"), None);
    }

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        assert_eq!(load(&path).unwrap(), None);
        store(&path, Checkpoint { last_completed_d: 77 }).unwrap();
        assert_eq!(load(&path).unwrap(), Some(Checkpoint { last_completed_d: 77 }));
        assert!(!temp_path(&path).exists());
        fs::write(&path, "garbage").unwrap();
        assert!(matches!(load(&path), Err(Error::Checkpoint { .. })));
    }

    #[test]
    fn unwritable_location() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("scan.ckpt");
        assert!(store(&path, Checkpoint { last_completed_d: 1 }).unwrap_err().is_io());
    }
}
