//! On-disk workspace: content-addressed result cache, run log, reports and
//! configuration.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const HOME_VAR: &str = "QAFFINE_HOME";
const DEFAULT_DIR: &str = ".qaffine";

/// Tolerances and budgets read from `config.json`; missing keys keep their
/// defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub qchar_budget: usize,
    pub cluster_budget: usize,
    pub chain_depth: usize,
    pub commutator_tol: f64,
    pub fit_tol: f64,
    pub xxz_seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            qchar_budget: qaffine::qchar::DEFAULT_BUDGET,
            cluster_budget: 10_000,
            chain_depth: 3,
            commutator_tol: 1e-10,
            fit_tol: 1e-8,
            xxz_seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Workspace {
    root: PathBuf,
}

impl Workspace {
    /// Opens (creating if needed) the workspace at `root`.
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let ws = Workspace { root: root.into() };
        fs::create_dir_all(ws.cache_dir())?;
        fs::create_dir_all(ws.reports_dir())?;
        Ok(ws)
    }

    /// `$QAFFINE_HOME`, or `./.qaffine`.
    pub fn from_env() -> io::Result<Self> {
        match std::env::var_os(HOME_VAR) {
            Some(p) if !p.is_empty() => Self::open(PathBuf::from(p)),
            _ => Self::open(DEFAULT_DIR),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.root.join("cache")
    }

    pub fn reports_dir(&self) -> PathBuf {
        self.root.join("reports")
    }

    pub fn log_path(&self) -> PathBuf {
        self.root.join("runs.log")
    }

    pub fn config_path(&self) -> PathBuf {
        self.root.join("config.json")
    }

    pub fn config(&self) -> io::Result<Config> {
        match fs::read_to_string(self.config_path()) {
            Ok(s) => serde_json::from_str(&s).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Config::default()),
            Err(e) => Err(e),
        }
    }

    /// SHA-256 of the operation name and its canonical JSON input.
    pub fn cache_key(op: &str, input: &Value) -> String {
        let mut h = Sha256::new();
        h.update(op.as_bytes());
        h.update([0u8]);
        h.update(serde_json::to_string(input).expect("JSON values serialize").as_bytes());
        hex::encode(h.finalize())
    }

    fn cache_path(&self, key: &str) -> PathBuf {
        self.cache_dir().join(format!("{key}.json"))
    }

    pub fn cache_get(&self, key: &str) -> Option<Value> {
        let s = fs::read_to_string(self.cache_path(key)).ok()?;
        serde_json::from_str(&s).ok()
    }

    pub fn cache_put(&self, key: &str, value: &Value) -> io::Result<()> {
        write_atomic(&self.cache_path(key), &to_pretty(value))
    }

    /// Returns the cached payload for `(op, input)` or computes and stores
    /// it. The flag is true on a cache hit.
    pub fn cached<E>(&self, op: &str, input: &Value, f: impl FnOnce() -> Result<Value, E>) -> Result<(Value, bool), E>
    where
        E: From<io::Error>,
    {
        let key = Self::cache_key(op, input);
        if let Some(v) = self.cache_get(&key) {
            return Ok((v, true));
        }
        let v = f()?;
        self.cache_put(&key, &v)?;
        Ok((v, false))
    }

    pub fn write_report(&self, name: &str, payload: &Value) -> io::Result<PathBuf> {
        let path = self.reports_dir().join(format!("{name}.json"));
        write_atomic(&path, &to_pretty(payload))?;
        Ok(path)
    }

    /// Appends one line, prefixed by the Unix time, to `runs.log`.
    pub fn log_run(&self, line: &str) -> io::Result<()> {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut f = fs::OpenOptions::new().create(true).append(true).open(self.log_path())?;
        writeln!(f, "{secs} {line}")
    }

    /// Deletes cache entries last modified at least `age` ago; returns the
    /// number of bytes freed.
    pub fn cache_gc(&self, age: Duration) -> io::Result<u64> {
        let now = SystemTime::now();
        let mut freed = 0;
        for entry in fs::read_dir(self.cache_dir())? {
            let entry = entry?;
            let meta = entry.metadata()?;
            if !meta.is_file() {
                continue;
            }
            let old = meta.modified().ok().and_then(|m| now.duration_since(m).ok()).unwrap_or(Duration::ZERO);
            if old >= age {
                fs::remove_file(entry.path())?;
                freed += meta.len();
            }
        }
        Ok(freed)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn cache_round_trip_and_gc() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::open(dir.path()).unwrap();
        let input = json!({"type": "A1", "node": 1});
        let (v, hit) = ws.cached::<io::Error>("qchar", &input, || Ok(json!([1, 2]))).unwrap();
        assert!(!hit);
        let (w, hit) = ws.cached::<io::Error>("qchar", &input, || Ok(json!(null))).unwrap();
        assert!(hit);
        assert_eq!(v, w);
        assert!(ws.cache_gc(Duration::ZERO).unwrap() > 0);
        assert_eq!(fs::read_dir(ws.cache_dir()).unwrap().count(), 0);
    }

    #[test]
    fn config_defaults_fill_missing_keys() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::open(dir.path()).unwrap();
        fs::write(ws.config_path(), r#"{"fit_tol": 1e-6}"#).unwrap();
        let c = ws.config().unwrap();
        assert_eq!(c.fit_tol, 1e-6);
        assert_eq!(c.cluster_budget, Config::default().cluster_budget);
    }
}
