//! A content-addressed result cache: one canonical-JSON file per
//! (polytope hash, computation, parameters) key.

use std::path::{Path, PathBuf};

use polykit_core::error::{PolyError, Result};

pub const CACHE_VERSION: u32 = 1;

/// (hash, computation, params, input polytope text, cached value)
pub type CacheEntry = (String, String, String, String, String);

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Resolve from the CLI flag or the POLYKIT_CACHE environment variable.
    pub fn resolve(flag: &Option<PathBuf>) -> Option<Cache> {
        let dir = flag
            .clone()
            .or_else(|| std::env::var_os("POLYKIT_CACHE").map(PathBuf::from))?;
        std::fs::create_dir_all(&dir).ok()?;
        Some(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str, computation: &str, params: &str) -> PathBuf {
        let safe_params: String = params
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        self.dir
            .join(format!("{hash}-{computation}-{safe_params}.json"))
    }

    pub fn get(&self, hash: &str, computation: &str, params: &str) -> Option<String> {
        let path = self.path(hash, computation, params);
        let blob = std::fs::read_to_string(path).ok()?;
        let value: serde_json::Value = serde_json::from_str(&blob).ok()?;
        if value.get("version")?.as_u64()? != u64::from(CACHE_VERSION) {
            return None;
        }
        serde_json::to_string_pretty(value.get("value")?).ok()
    }

    pub fn put(
        &self,
        hash: &str,
        computation: &str,
        params: &str,
        input_poly: &str,
        value: &serde_json::Value,
    ) {
        let entry = serde_json::json!({
            "version": CACHE_VERSION,
            "key": {"hash": hash, "computation": computation, "params": params},
            "input": input_poly,
            "value": value,
        });
        let path = self.path(hash, computation, params);
        let _ = std::fs::write(path, serde_json::to_string_pretty(&entry).unwrap());
    }

    pub fn stats(&self) -> Result<(usize, u64)> {
        let mut files = 0usize;
        let mut bytes = 0u64;
        for entry in std::fs::read_dir(&self.dir)
            .map_err(|e| PolyError::MalformedInput(format!("cache dir: {e}")))?
        {
            let entry = entry.map_err(|e| PolyError::MalformedInput(e.to_string()))?;
            if entry.path().extension().is_some_and(|x| x == "json") {
                files += 1;
                bytes += entry.metadata().map(|m| m.len()).unwrap_or(0);
            }
        }
        Ok((files, bytes))
    }

    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0usize;
        for entry in std::fs::read_dir(&self.dir)
            .map_err(|e| PolyError::MalformedInput(format!("cache dir: {e}")))?
        {
            let entry = entry.map_err(|e| PolyError::MalformedInput(e.to_string()))?;
            if entry.path().extension().is_some_and(|x| x == "json") {
                std::fs::remove_file(entry.path()).ok();
                removed += 1;
            }
        }
        Ok(removed)
    }

    /// Entries as (hash, computation, params, input, cached value) for
    /// self-checks.
    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        for entry in std::fs::read_dir(&self.dir)
            .map_err(|e| PolyError::MalformedInput(format!("cache dir: {e}")))?
        {
            let entry = entry.map_err(|e| PolyError::MalformedInput(e.to_string()))?;
            let path = entry.path();
            if path.extension().is_none_or(|x| x != "json") {
                continue;
            }
            let blob = match std::fs::read_to_string(&path) {
                Ok(b) => b,
                Err(_) => continue,
            };
            let value: serde_json::Value = match serde_json::from_str(&blob) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let key = &value["key"];
            let (Some(hash), Some(comp), Some(params), Some(input)) = (
                key["hash"].as_str(),
                key["computation"].as_str(),
                key["params"].as_str(),
                value["input"].as_str(),
            ) else {
                continue;
            };
            let cached = serde_json::to_string_pretty(&value["value"]).unwrap_or_default();
            out.push((
                hash.to_string(),
                comp.to_string(),
                params.to_string(),
                input.to_string(),
                cached,
            ));
        }
        out.sort();
        Ok(out)
    }
}
