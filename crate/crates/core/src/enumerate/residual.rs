//! Lifting a residual code over a database of base codes.
//!
//! The tracked code has the base columns followed by one block of extra
//! columns. Each step adds a row whose restriction to the extra block is the
//! next row of the residual matrix; only the split of the base classes is
//! searched. Intermediate codes are merged up to equivalences that preserve
//! every extra column's full residual column.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::canonical::canonical_labeled;
use super::extend::{for_each_extension, ExtensionProblem};
use super::{canonical_form, CanonicalKey, CodeDatabase};
use crate::error::{Error, Result};
use crate::gf2::{is_projective, ColumnMultiset, GeneratorMatrix};

#[derive(Clone, Debug)]
pub struct ResidualSearchParams {
    pub base_length: usize,
    pub weights: Vec<usize>,
    /// Prune partial codes whose `A_8 + A_16` already exceeds the bound that
    /// every projective code of the final dimension satisfies. Only outputs
    /// that are projective are guaranteed to survive the cut.
    pub weight_cut: bool,
    /// Stop each lift after this many distinct outputs.
    pub max_outputs: Option<usize>,
}

impl Default for ResidualSearchParams {
    fn default() -> Self {
        ResidualSearchParams {
            base_length: 40,
            weights: vec![8, 16, 24, 32, 40],
            weight_cut: false,
            max_outputs: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResidualOutput {
    /// Canonical key of the base code.
    pub base: CanonicalKey,
    pub code: GeneratorMatrix,
    pub projective: bool,
}

/// Upper bound on `A_8 + A_16` for a projective `[59, k]` code with weights
/// in `{8, 16, 24, 32, 40}`: `(128/3) 2^k / 4096 - 8`, floored. Negative
/// when no such code exists.
fn low_weight_bound(k: usize) -> i128 {
    (128i128 << k) / (3 * 4096) - 8
}

struct State {
    base: ColumnMultiset,
    low: i128,
}

/// Runs the lifting for every base code of the configured length and
/// returns the distinct resulting codes.
pub fn residual_prescribed_search(
    residual: &GeneratorMatrix,
    base_db: &CodeDatabase,
    params: &ResidualSearchParams,
) -> Result<Vec<ResidualOutput>> {
    if residual.rank() != residual.k() {
        return Err(Error::RankDeficient {
            rank: residual.rank(),
            rows: residual.k(),
        });
    }
    let mut out = Vec::new();
    for rec in base_db.records().filter(|r| r.n() == params.base_length) {
        let base = rec.matrix();
        for code in lift(&base, residual, params)? {
            out.push(ResidualOutput {
                base: rec.key.clone(),
                projective: is_projective(&code),
                code,
            });
        }
    }
    Ok(out)
}

/// Distinct codes obtained by lifting `residual` over one base code.
pub fn lift(
    base: &GeneratorMatrix,
    residual: &GeneratorMatrix,
    params: &ResidualSearchParams,
) -> Result<Vec<GeneratorMatrix>> {
    let kb = base.k();
    let r = residual.k();
    if kb + r > 63 {
        return Err(Error::DimensionTooLarge {
            k: kb + r,
            budget: 63,
        });
    }
    let mut base_ms = ColumnMultiset::new(kb);
    for c in base.columns() {
        base_ms.add(c, 1);
    }
    let start_low = (1..1u64 << kb)
        .filter(|&m| is_low(base.encode(m).weight()))
        .count() as i128;
    let mut lifter = Lifter {
        params,
        kb,
        cols: residual.columns(),
        bound: params.weight_cut.then(|| low_weight_bound(kb + r)),
        labels: HashMap::new(),
        seen: vec![HashSet::new(); r],
        keys: BTreeSet::new(),
        out: Vec::new(),
    };
    if lifter.bound.is_some_and(|b| start_low > b) {
        return Ok(Vec::new());
    }
    lifter.dfs(
        0,
        State {
            base: base_ms,
            low: start_low,
        },
    )?;
    Ok(lifter.out)
}

fn is_low(w: usize) -> bool {
    w == 8 || w == 16
}

struct Lifter<'a> {
    params: &'a ResidualSearchParams,
    kb: usize,
    cols: Vec<u64>,
    bound: Option<i128>,
    labels: HashMap<(usize, Vec<u64>), usize>,
    /// Labeled keys of the states reached after each step.
    seen: Vec<HashSet<Vec<(u64, usize)>>>,
    keys: BTreeSet<CanonicalKey>,
    out: Vec<GeneratorMatrix>,
}

impl Lifter<'_> {
    fn done(&self) -> bool {
        self.params.max_outputs.is_some_and(|m| self.out.len() >= m)
    }

    fn dfs(&mut self, i: usize, st: State) -> Result<()> {
        let kb = self.kb;
        if i == self.seen.len() {
            let mut columns = st.base.sorted_columns();
            columns.extend(self.cols.iter().map(|&c| c << kb));
            let g = GeneratorMatrix::from_columns(kb + i, &columns);
            if self.keys.insert(canonical_form(&g)?.key) {
                self.out.push(g);
            }
            return Ok(());
        }
        let k = kb + i;
        // Extra columns so far carry the first `i` residual rows, shifted
        // above the base coordinates.
        let mut ms = st.base.clone();
        let mut ones: HashMap<u64, usize> = HashMap::new();
        for &c in &self.cols {
            let u = (c & ((1u64 << i) - 1)) << kb;
            ms.add(u, 1);
            *ones.entry(u).or_insert(0) += (c >> i & 1) as usize;
        }
        let mut p = ExtensionProblem::from_multiset(&ms, &self.params.weights).normal_form(true);
        p.allow_zero = false;
        for (&u, &x) in &ones {
            p = p.prescribe(u, x);
        }
        let mut found = Vec::new();
        for_each_extension(&p, |v| {
            let low = st.low + v.new_weights.iter().filter(|&&w| is_low(w)).count() as i128;
            if self.bound.is_some_and(|b| low > b) {
                return;
            }
            let mut child = ColumnMultiset::new(k + 1);
            for (&(u, c), &x) in v.classes.iter().zip(v.ones) {
                if u & ((1u64 << kb) - 1) != 0 {
                    child.add(u | 1 << k, x);
                    child.add(u, c - x);
                }
            }
            found.push(State { base: child, low });
        })?;
        for child in found {
            let key = labeled_key(&child.base, &self.cols, kb, i + 1, &mut self.labels);
            if self.seen[i].insert(key) {
                self.dfs(i + 1, child)?;
                if self.done() {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// Canonical list of the tracked code with every extra column labeled by
/// its complete residual column.
fn labeled_key(
    base: &ColumnMultiset,
    cols: &[u64],
    kb: usize,
    rows: usize,
    labels: &mut HashMap<(usize, Vec<u64>), usize>,
) -> Vec<(u64, usize)> {
    let mut extra: HashMap<u64, Vec<u64>> = HashMap::new();
    for &c in cols {
        let u = (c & ((1u64 << rows) - 1)) << kb;
        if u != 0 {
            extra.entry(u).or_default().push(c);
        }
    }
    let mut pts: Vec<(u64, usize)> = Vec::new();
    let mut intern = |key: (usize, Vec<u64>)| {
        let next = labels.len();
        *labels.entry(key).or_insert(next)
    };
    for (&u, &c) in base.counts() {
        pts.push((u, intern((c, Vec::new()))));
    }
    for (u, mut tags) in extra {
        tags.sort_unstable();
        pts.push((u, intern((0, tags))));
    }
    pts.sort_unstable();
    canonical_labeled(kb + rows, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{construct_named, NamedCode};
    use crate::spectra::weight_distribution;

    fn repetition_db() -> CodeDatabase {
        let mut db = CodeDatabase::new();
        let g = GeneratorMatrix::from_row_strs(&[&"1".repeat(40)]).unwrap();
        let cf = canonical_form(&g).unwrap();
        db.insert(cf.key, cf.aut_order);
        db
    }

    #[test]
    fn bound_values() {
        assert_eq!(low_weight_bound(10), 2);
        assert_eq!(low_weight_bound(11), 13);
        assert!(low_weight_bound(9) < 0);
    }

    #[test]
    fn relaxed_run_emits_witnesses() {
        let residual = construct_named(NamedCode::C2);
        let params = ResidualSearchParams {
            max_outputs: Some(2),
            ..Default::default()
        };
        let out = residual_prescribed_search(&residual, &repetition_db(), &params).unwrap();
        assert!(!out.is_empty());
        for o in &out {
            assert_eq!((o.code.n(), o.code.k()), (59, 8));
            assert_eq!(o.projective, is_projective(&o.code));
            let a = weight_distribution(&o.code).unwrap();
            assert!(a.support().all(|(w, _)| w % 8 == 0 && w <= 40));
            // The extra block carries the residual code.
            let tail: Vec<usize> = (40..59).collect();
            let shifted = o.code.select_columns(&tail);
            assert_eq!(shifted.row_basis().rank(), 7);
        }
    }

    #[test]
    fn doubled_residual_is_a_witness() {
        let residual = construct_named(NamedCode::C2);
        let mut rows = vec![format!("{}{}", "1".repeat(40), "0".repeat(19))];
        for row in residual.rows() {
            let r = row.to_string();
            rows.push(format!("{r}{}{r}", "0".repeat(21)));
        }
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        let g = GeneratorMatrix::from_row_strs(&rows).unwrap();
        let a = weight_distribution(&g).unwrap();
        assert!(a.support().all(|(w, _)| w % 8 == 0 && w <= 40));
        assert!(!is_projective(&g));
    }
}
