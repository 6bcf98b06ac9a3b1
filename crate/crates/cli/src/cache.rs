use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub value: String,
    pub err: f64,
    pub digits: u32,
}

/// Canonical index string → value, persisted as JSON.
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, Entry>,
}

impl Cache {
    pub fn open(path: &Path) -> io::Result<Self> {
        let entries = match fs::read_to_string(path) {
            Ok(s) if !s.trim().is_empty() => {
                serde_json::from_str(&s).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?
            }
            Ok(_) => BTreeMap::new(),
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e),
        };
        Ok(Self { path: path.to_path_buf(), entries })
    }

    /// A stored value computed with at least `digits` digits.
    pub fn get(&self, key: &str, digits: u32) -> Option<&Entry> {
        self.entries.get(key).filter(|e| e.digits >= digits)
    }

    pub fn put(&mut self, key: String, e: Entry) {
        self.entries.insert(key, e);
    }

    pub fn save(&self) -> io::Result<()> {
        let s = serde_json::to_string_pretty(&self.entries).expect("cache serializes");
        fs::write(&self.path, s + "\n")
    }
}
