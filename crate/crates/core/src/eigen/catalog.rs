//! Eigentope records and their JSON catalog file.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::SignatureLabel;
use crate::words::Context;

/// Default catalog file name.
pub const DEFAULT_CATALOG: &str = "eigentopes.json";
/// Environment variable overriding the catalog path.
pub const CATALOG_ENV: &str = "POLYSYM_CATALOG";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigentopeRecord {
    pub word: String,
    pub context: Context,
    pub evec: Vec<f64>,
    pub q: Option<u32>,
    pub lambda_q: Option<f64>,
    #[serde(rename = "J")]
    pub j: Option<f64>,
    pub signature: Option<SignatureLabel>,
    pub residual: f64,
    pub ortho_residual: Option<f64>,
    pub det_residual: Option<f64>,
    pub isolated: bool,
    /// `null` entries stand for +∞
    #[serde(serialize_with = "ser_fsym", deserialize_with = "de_fsym")]
    pub f_symbol: Option<Vec<f64>>,
}

fn ser_fsym<S: Serializer>(v: &Option<Vec<f64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|xs| xs.iter().map(|x| x.is_finite().then_some(*x)).collect::<Vec<_>>())
        .serialize(s)
}

fn de_fsym<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<f64>>, D::Error> {
    let raw: Option<Vec<Option<f64>>> = Option::deserialize(d)?;
    Ok(raw.map(|xs| xs.into_iter().map(|x| x.unwrap_or(f64::INFINITY)).collect()))
}

impl EigentopeRecord {
    /// Merge key: word plus evec rounded to 1e−6.
    pub fn key(&self) -> (String, Vec<i64>) {
        (
            self.word.clone(),
            self.evec.iter().map(|v| (v * 1e6).round() as i64).collect(),
        )
    }
}

/// Sort by (word, evec) and drop later duplicates of a key.
pub fn merge(existing: Vec<EigentopeRecord>, new: Vec<EigentopeRecord>) -> Vec<EigentopeRecord> {
    let mut all = existing;
    all.extend(new);
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<EigentopeRecord> = all.into_iter().filter(|r| seen.insert(r.key())).collect();
    out.sort_by_key(|a| a.key());
    out
}

pub fn load(path: &Path) -> Result<Vec<EigentopeRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn save(path: &Path, records: &[EigentopeRecord]) -> Result<()> {
    let text = serde_json::to_string_pretty(records).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Load, merge and write back; returns the merged catalog size.
pub fn append(path: &Path, new: Vec<EigentopeRecord>) -> Result<usize> {
    let merged = merge(load(path)?, new);
    save(path, &merged)?;
    Ok(merged.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(word: &str, x: f64) -> EigentopeRecord {
        EigentopeRecord {
            word: word.into(),
            context: Context::E4,
            evec: vec![x, 0.25, 0.5],
            q: Some(4),
            lambda_q: Some(7.457_712_345_678_901),
            j: Some(1.5),
            signature: Some(SignatureLabel::Minkowski),
            residual: 1.2e-16,
            ortho_residual: Some(3e-15),
            det_residual: None,
            isolated: true,
            f_symbol: Some(vec![3.0, f64::INFINITY, 4.0]),
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = rec("AGA", 0.1 + 0.2);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("null"));
        let back: EigentopeRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn merge_dedupes_on_rounded_evec() {
        let m = merge(vec![rec("B", 0.3)], vec![rec("A", 0.3), rec("B", 0.3 + 1e-9), rec("B", 0.31)]);
        let words: Vec<&str> = m.iter().map(|r| r.word.as_str()).collect();
        assert_eq!(words, vec!["A", "B", "B"]);
    }

    #[test]
    fn append_to_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cat.json");
        assert_eq!(append(&p, vec![rec("A", 0.3)]).unwrap(), 1);
        assert_eq!(append(&p, vec![rec("A", 0.3), rec("C", 0.2)]).unwrap(), 2);
        assert_eq!(load(&p).unwrap().len(), 2);
    }
}
