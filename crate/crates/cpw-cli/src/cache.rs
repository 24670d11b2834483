//! Content-addressed result cache for sweep reports. Keys hash the tool
//! version, the operation, and a canonical encoding of the inputs, so cache
//! hits survive file-time churn in CI. Writes take an advisory lock file in
//! the cache directory.

use cpw_core::report::VerificationReport;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

pub fn content_key(parts: &[&str]) -> u64 {
    let mut h = FNV_OFFSET;
    for p in parts {
        for b in p.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
        h ^= 0x1f;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

pub struct Cache {
    dir: PathBuf,
}

struct DirLock {
    path: PathBuf,
}

impl Drop for DirLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    fn entry_path(&self, key: u64) -> PathBuf {
        self.dir.join(format!("{key:016x}.json"))
    }

    fn lock(&self) -> std::io::Result<DirLock> {
        let path = self.dir.join(".lock");
        for _ in 0..200 {
            match fs::OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(&path)
            {
                Ok(_) => return Ok(DirLock { path }),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    std::thread::sleep(Duration::from_millis(10));
                }
                Err(e) => return Err(e),
            }
        }
        Err(std::io::Error::new(
            std::io::ErrorKind::TimedOut,
            "cache directory stayed locked",
        ))
    }

    pub fn lookup(&self, key: u64) -> Option<VerificationReport> {
        let text = fs::read_to_string(self.entry_path(key)).ok()?;
        let envelope: serde_json::Value = serde_json::from_str(&text).ok()?;
        if envelope.get("key")?.as_str()? != format!("{key:016x}") {
            return None;
        }
        let report = envelope.get("report")?;
        VerificationReport::from_json(&report.to_string()).ok()
    }

    pub fn store(&self, key: u64, report: &VerificationReport) -> std::io::Result<()> {
        let _lock = self.lock()?;
        let envelope = serde_json::json!({
            "key": format!("{key:016x}"),
            "created_unix": SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            "report": serde_json::from_str::<serde_json::Value>(&report.to_json())
                .expect("report JSON is valid"),
        });
        fs::write(self.entry_path(key), serde_json::to_string_pretty(&envelope)?)
    }
}
