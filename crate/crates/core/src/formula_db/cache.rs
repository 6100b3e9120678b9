use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::DbError;

/// Where a cached digit string came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Embedded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCacheEntry {
    pub name: String,
    pub precision: u32,
    pub digits: String,
    pub provenance: Provenance,
}

impl ConstantCacheEntry {
    pub fn computed(name: &str, precision: u32, digits: &str) -> Self {
        Self { name: name.to_string(), precision, digits: digits.to_string(), provenance: Provenance::Computed }
    }
}

/// Reads every entry of a cache file. A missing file is an empty cache.
pub fn cache_read_all(path: &Path) -> Result<BTreeMap<String, ConstantCacheEntry>, DbError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(DbError::Io(e.to_string())),
    };
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: &str| DbError::Cache { line: i + 1, message: message.to_string() };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(bad("expected name<TAB>precision<TAB>digits"));
        }
        let precision: u32 = fields[1].parse().map_err(|_| bad("precision is not an integer"))?;
        let digits = fields[2];
        if digits.is_empty() || rug::Float::parse(digits).is_err() {
            return Err(bad("digit string does not parse"));
        }
        let provenance = match fields.get(3) {
            None | Some(&"computed") => Provenance::Computed,
            Some(&"embedded") => Provenance::Embedded,
            Some(_) => return Err(bad("unknown provenance")),
        };
        let entry = ConstantCacheEntry { name: fields[0].to_string(), precision, digits: digits.to_string(), provenance };
        out.insert(entry.name.clone(), entry);
    }
    Ok(out)
}

/// Loads one entry; absent names give `None`.
pub fn cache_load(path: &Path, name: &str) -> Result<Option<ConstantCacheEntry>, DbError> {
    Ok(cache_read_all(path)?.remove(name))
}

/// Stores an entry unless the cache already holds the name at higher precision.
pub fn cache_store(path: &Path, entry: &ConstantCacheEntry) -> Result<(), DbError> {
    if entry.name.contains('\t') || entry.name.contains('\n') {
        return Err(DbError::Cache { line: 0, message: "name contains a tab or newline".into() });
    }
    let mut all = cache_read_all(path)?;
    if all.get(&entry.name).is_some_and(|old| old.precision > entry.precision) {
        return Ok(());
    }
    all.insert(entry.name.clone(), entry.clone());
    let mut body = String::new();
    for e in all.values() {
        body.push_str(&format!("{}\t{}\t{}", e.name, e.precision, e.digits));
        if e.provenance == Provenance::Embedded {
            body.push_str("\tembedded");
        }
        body.push('\n');
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| DbError::Io(e.to_string()))?;
    f.write_all(body.as_bytes()).map_err(|e| DbError::Io(e.to_string()))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| DbError::Io(e.to_string()))
}
