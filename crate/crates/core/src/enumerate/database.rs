//! Persistent store of canonical representatives.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Mutex;

use num_bigint::BigUint;

use super::CanonicalKey;
use crate::error::{Error, Result};
use crate::gf2::{is_projective, GeneratorMatrix};
use crate::spectra::{weight_distribution, WeightDistribution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    pub key: CanonicalKey,
    pub aut_order: BigUint,
}

impl CodeRecord {
    pub fn n(&self) -> usize {
        self.key.n
    }

    pub fn k(&self) -> usize {
        self.key.k
    }

    pub fn matrix(&self) -> GeneratorMatrix {
        self.key.to_matrix()
    }

    pub fn distribution(&self) -> WeightDistribution {
        weight_distribution(&self.matrix()).expect("stored codes have full rank")
    }

    pub fn is_projective(&self) -> bool {
        is_projective(&self.matrix())
    }

    fn to_line(&self) -> String {
        format!(
            "{} key={:016x} aut={}",
            self.matrix().to_line(false),
            self.key.digest(),
            self.aut_order
        )
    }
}

/// Records sorted by `(n, k, canonical columns)`, plus run parameters and
/// the pending work units of an interrupted run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeDatabase {
    pub params: BTreeMap<String, String>,
    records: BTreeMap<CanonicalKey, BigUint>,
    pub frontier: BTreeSet<CanonicalKey>,
}

impl CodeDatabase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a record; returns `false` (and changes nothing) when the key
    /// is already present.
    pub fn insert(&mut self, key: CanonicalKey, aut_order: BigUint) -> bool {
        if self.records.contains_key(&key) {
            return false;
        }
        self.records.insert(key, aut_order);
        true
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.records.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = CodeRecord> + '_ {
        self.records.iter().map(|(k, a)| CodeRecord {
            key: k.clone(),
            aut_order: a.clone(),
        })
    }

    /// Records of effective length `n` and dimension `k`.
    pub fn bucket(&self, n: usize, k: usize) -> Vec<CodeRecord> {
        self.records()
            .filter(|r| r.n() == n && r.k() == k)
            .collect()
    }

    pub fn counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for key in self.records.keys() {
            *out.entry((key.n, key.k)).or_insert(0) += 1;
        }
        out
    }

    /// `k x n` table of counts: one column per length with at least one
    /// code, blank cells left of the shortest code of each dimension.
    pub fn counts_table(&self) -> String {
        let counts = self.counts();
        let lengths: BTreeSet<usize> = counts.keys().map(|&(n, _)| n).collect();
        let dims: BTreeSet<usize> = counts.keys().map(|&(_, k)| k).collect();
        let mut out = String::from("k\\n");
        for n in &lengths {
            write!(out, "\t{n}").unwrap();
        }
        out.push('\n');
        for &k in &dims {
            let first = counts
                .keys()
                .filter(|&&(_, kk)| kk == k)
                .map(|&(n, _)| n)
                .min();
            write!(out, "{k}").unwrap();
            for &n in &lengths {
                out.push('\t');
                if Some(n) >= first {
                    write!(out, "{}", counts.get(&(n, k)).copied().unwrap_or(0)).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            writeln!(out, "# param {k}={v}").unwrap();
        }
        for key in &self.frontier {
            writeln!(out, "# frontier {}", key.to_matrix().to_line(false)).unwrap();
        }
        for r in self.records() {
            writeln!(out, "{}", r.to_line()).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut db = CodeDatabase::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let corrupt = |msg: String| Error::CorruptDatabase { line, msg };
            let l = raw.trim();
            if l.is_empty() {
                continue;
            }
            if let Some(rest) = l.strip_prefix("# param ") {
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| corrupt("parameter without '='".into()))?;
                db.params.insert(k.trim().into(), v.trim().into());
            } else if let Some(rest) = l.strip_prefix("# frontier ") {
                let g = GeneratorMatrix::parse_line(rest).map_err(|e| corrupt(e.to_string()))?;
                db.frontier.insert(key_of(&g));
            } else if l.starts_with('#') {
                continue;
            } else {
                let mut code = Vec::new();
                let (mut digest, mut aut) = (None, None);
                for tok in l.split_whitespace() {
                    if let Some(h) = tok.strip_prefix("key=") {
                        digest = Some(
                            u64::from_str_radix(h, 16)
                                .map_err(|_| corrupt(format!("bad key {h:?}")))?,
                        );
                    } else if let Some(a) = tok.strip_prefix("aut=") {
                        aut = Some(
                            a.parse::<BigUint>()
                                .map_err(|_| corrupt(format!("bad automorphism order {a:?}")))?,
                        );
                    } else {
                        code.push(tok);
                    }
                }
                let g = GeneratorMatrix::parse_line(&code.join(" "))
                    .map_err(|e| corrupt(e.to_string()))?;
                let key = key_of(&g);
                let digest = digest.ok_or_else(|| corrupt("missing key field".into()))?;
                if digest != key.digest() {
                    return Err(corrupt("key does not match the columns".into()));
                }
                let aut = aut.ok_or_else(|| corrupt("missing aut field".into()))?;
                if !db.insert(key, aut) {
                    return Err(corrupt("duplicate record".into()));
                }
            }
        }
        Ok(db)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Writes through a temporary file so an interrupted write leaves the
    /// previous version intact.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_text()).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }
}

/// Key of a stored canonical matrix (already in canonical column order).
fn key_of(g: &GeneratorMatrix) -> CanonicalKey {
    let mut columns = g.columns();
    columns.sort_unstable();
    CanonicalKey {
        n: g.n(),
        k: g.k(),
        columns,
    }
}

/// Insert-if-absent store shared between worker threads.
pub(crate) struct SharedDatabase(pub(crate) Mutex<CodeDatabase>);

impl SharedDatabase {
    pub(crate) fn insert(&self, key: CanonicalKey, aut: BigUint) -> bool {
        self.0.lock().expect("database lock").insert(key, aut)
    }
}
