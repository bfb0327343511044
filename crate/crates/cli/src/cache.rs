//! Content-addressed result cache. Entries are keyed by SHA-256 of the crate
//! version, command name and canonical config JSON, and written via a temp
//! file plus rename so readers never see partial entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::commands::Report;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    created: u64,
    key: String,
    result: Report,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn key(command: &str, config: &Value) -> String {
    let material = serde_json::json!({"version": VERSION, "command": command, "config": config});
    hex::encode(Sha256::digest(material.to_string().as_bytes()))
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored result, or None when absent, unreadable or from another version.
    pub fn get(&self, key: &str) -> Option<Report> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == VERSION && entry.key == key).then_some(entry.result)
    }

    pub fn put(&self, key: &str, result: &Report) -> std::io::Result<()> {
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let entry = Entry { version: VERSION.to_string(), created, key: key.to_string(), result: result.clone() };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, self.path(key))
    }
}
