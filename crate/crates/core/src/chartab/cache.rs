//! On-disk cache of character tables, one JSON file per (group kind, Cartan type).
//!
//! A cached table is used only if its checksum matches, its classes coincide with the freshly
//! computed ones, and it passes exact row orthogonality; otherwise it is recomputed and rewritten.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::group::{Classes, Group};

pub const CACHE_ENV: &str = "HECKE_DIRAC_CACHE";

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    kind: String,
    cartan_type: String,
    checksum: String,
    table: CharacterTable,
}

fn fnv1a(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{:016x}", h)
}

fn checksum(table: &CharacterTable) -> String {
    fnv1a(serde_json::to_string(table).expect("table serializes").as_bytes())
}

fn path_for(dir: &Path, kind: &str, ty: &str) -> PathBuf {
    dir.join(format!("{}-{}.json", kind, ty))
}

fn try_load(path: &Path, kind: &str, ty: &str, classes: &Classes) -> Option<CharacterTable> {
    let text = std::fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    let valid = file.kind == kind
        && file.cartan_type == ty
        && file.checksum == checksum(&file.table)
        && &file.table.classes == classes
        && file.table.verify_orthogonality();
    valid.then_some(file.table)
}

pub fn load_or_compute<G: Group + ?Sized>(dir: Option<&Path>, kind: &str, ty: &str, g: &G, classes: &Classes) -> CharacterTable {
    if let Some(dir) = dir {
        let path = path_for(dir, kind, ty);
        if let Some(t) = try_load(&path, kind, ty, classes) {
            return t;
        }
        let table = CharacterTable::compute(g, classes);
        let file = CacheFile { kind: kind.to_string(), cartan_type: ty.to_string(), checksum: checksum(&table), table };
        // the cache is advisory; write failures are ignored
        if std::fs::create_dir_all(dir).is_ok() {
            if let Ok(text) = serde_json::to_string(&file) {
                let tmp = path.with_extension("json.tmp");
                if std::fs::write(&tmp, text).is_ok() {
                    let _ = std::fs::rename(&tmp, &path);
                }
            }
        }
        return file.table;
    }
    CharacterTable::compute(g, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use crate::weylgrp::WeylGroup;

    #[test]
    fn corrupt_cache_is_recomputed() {
        let dir = std::env::temp_dir().join(format!("hecke-dirac-cache-test-{}", std::process::id()));
        let w = WeylGroup::new(&RootSystem::parse("B2").unwrap()).unwrap();
        let t1 = load_or_compute(Some(&dir), "weyl", "B2", &w, w.classes());
        let path = path_for(&dir, "weyl", "B2");
        assert!(path.exists());
        let t2 = load_or_compute(Some(&dir), "weyl", "B2", &w, w.classes());
        assert_eq!(t1, t2);
        let text = std::fs::read_to_string(&path).unwrap().replace("\"-1\"", "\"-2\"");
        std::fs::write(&path, text).unwrap();
        assert!(try_load(&path, "weyl", "B2", w.classes()).is_none());
        let t3 = load_or_compute(Some(&dir), "weyl", "B2", &w, w.classes());
        assert_eq!(t1, t3);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
