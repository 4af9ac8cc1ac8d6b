//! Append-only store of extremal reports, one JSON object per line, keyed
//! by `(graph6, k)`. Re-running a verification over the same directory
//! reuses finished records.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::extremal::ExtremalReport;

pub const REPORTS_FILE: &str = "extremal.jsonl";

pub struct ResultStore {
    path: PathBuf,
    index: Mutex<HashMap<(String, usize), ExtremalReport>>,
}

impl std::fmt::Debug for ResultStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ResultStore").field("path", &self.path).finish()
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

impl ResultStore {
    /// Opens (creating if needed) the store in `dir` and loads existing records.
    /// Lines that fail to parse, such as a torn final write, are ignored.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let path = dir.join(REPORTS_FILE);
        let mut index = HashMap::new();
        if path.exists() {
            let f = File::open(&path).map_err(|e| io_err(&path, e))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| io_err(&path, e))?;
                if let Ok(rep) = serde_json::from_str::<ExtremalReport>(&line) {
                    index.insert((rep.graph6.clone(), rep.k), rep);
                }
            }
        }
        Ok(Self {
            path,
            index: Mutex::new(index),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.index.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, graph6: &str, k: usize) -> Option<ExtremalReport> {
        self.index
            .lock()
            .expect("store lock")
            .get(&(graph6.to_string(), k))
            .cloned()
    }

    /// Appends a record unless one with the same key is already stored.
    pub fn put(&self, report: &ExtremalReport) -> Result<()> {
        let mut index = self.index.lock().expect("store lock");
        let key = (report.graph6.clone(), report.k);
        if index.contains_key(&key) {
            return Ok(());
        }
        let line = serde_json::to_string(report).expect("report serializes");
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| io_err(&self.path, e))?;
        writeln!(f, "{line}").map_err(|e| io_err(&self.path, e))?;
        index.insert(key, report.clone());
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        graph6: &str,
        k: usize,
        compute: impl FnOnce() -> Result<ExtremalReport>,
    ) -> Result<ExtremalReport> {
        if let Some(r) = self.get(graph6, k) {
            return Ok(r);
        }
        let r = compute()?;
        self.put(&r)?;
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::find_extremal;
    use crate::graph::Graph;

    #[test]
    fn persists_and_reloads() {
        let dir = std::env::temp_dir().join(format!("rchrom-store-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let report = find_extremal(&Graph::cycle(4).unwrap(), 1).unwrap();
        {
            let store = ResultStore::open(&dir).unwrap();
            assert!(store.is_empty());
            store.put(&report).unwrap();
            store.put(&report).unwrap();
        }
        let store = ResultStore::open(&dir).unwrap();
        assert_eq!(store.len(), 1);
        assert_eq!(store.get(&report.graph6, 1).unwrap(), report);
        let again = store
            .get_or_compute(&report.graph6, 1, || panic!("must be served from the store"))
            .unwrap();
        assert_eq!(again, report);
        let text = fs::read_to_string(dir.join(REPORTS_FILE)).unwrap();
        assert_eq!(text.lines().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
