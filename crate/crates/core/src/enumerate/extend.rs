//! One-row extensions of a code under weight constraints.
//!
//! The parent is a multiset of columns in `F_2^k`, including `c(0)`
//! placeholder zero columns. A new row assigns a bit to every column, so
//! each class `u` splits into `x_(u,0) + x_(u,1) = c(u)`. For a functional
//! `h = (h', 1)` on `F_2^(k+1)` the new weight is
//!
//! ```text
//! w_h = sum_{h'(u) = 0} x_(u,1) + sum_{h'(u) = 1} (c(u) - x_(u,1)),
//! ```
//!
//! and every such weight must be allowed. Functionals `(h', 0)` are the
//! parent's and are checked once up front.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{ColumnMultiset, GeneratorMatrix};

#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    k: usize,
    /// `(u, c(u))`, including the zero class when present.
    classes: Vec<(u64, usize)>,
    tracked: usize,
    allowed: Vec<bool>,
    /// Fixed `x_(u,1)` for selected classes.
    pub prescribed: BTreeMap<u64, usize>,
    /// At least one placeholder turns into the new unit vector and every
    /// old unit vector keeps a copy.
    pub systematic: bool,
    /// Every placeholder must be used, so the result has effective length
    /// equal to the tracked length.
    pub full_length: bool,
    /// Accepts weight zero for a new functional.
    pub allow_zero: bool,
    /// Emits one solution per orbit under adding parent codewords to the new
    /// row (restricted to translations that keep the prescription and the
    /// systematic constraints intact).
    pub normal_form: bool,
}

impl ExtensionProblem {
    /// Weights `{a*delta, (a+1)*delta, ..., b*delta}` over `n_prime` tracked
    /// columns, the last `n_prime - n` of which are placeholders.
    pub fn new(
        g: &GeneratorMatrix,
        delta: usize,
        a: usize,
        b: usize,
        n_prime: usize,
    ) -> Result<Self> {
        if delta == 0 || a == 0 {
            return Err(Error::PreconditionViolated(
                "delta and a must be positive".into(),
            ));
        }
        if b < a {
            return Err(Error::InfeasibleBudget(format!(
                "upper weight {} is below lower weight {}",
                b * delta,
                a * delta
            )));
        }
        let weights: Vec<usize> = (a..=b).map(|i| i * delta).collect();
        Self::with_weights(g, &weights, n_prime)
    }

    pub fn with_weights(g: &GeneratorMatrix, weights: &[usize], n_prime: usize) -> Result<Self> {
        if n_prime < g.n() {
            return Err(Error::PreconditionViolated(format!(
                "tracked length {n_prime} is below the code length {}",
                g.n()
            )));
        }
        let mut ms = ColumnMultiset::new(g.k());
        for c in g.columns() {
            ms.add(c, 1);
        }
        ms.add(0, n_prime - g.n());
        Ok(Self::from_multiset(&ms, weights))
    }

    pub(crate) fn from_multiset(ms: &ColumnMultiset, weights: &[usize]) -> Self {
        let tracked = ms.total();
        let mut allowed = vec![false; tracked + 1];
        for &w in weights {
            if w <= tracked {
                allowed[w] = true;
            }
        }
        ExtensionProblem {
            k: ms.k(),
            classes: ms.counts().iter().map(|(&u, &c)| (u, c)).collect(),
            tracked,
            allowed,
            prescribed: BTreeMap::new(),
            systematic: false,
            full_length: false,
            allow_zero: true,
            normal_form: false,
        }
    }

    pub fn prescribe(mut self, class: u64, ones: usize) -> Self {
        self.prescribed.insert(class, ones);
        self
    }

    pub fn systematic(mut self, on: bool) -> Self {
        self.systematic = on;
        self.allow_zero = !on;
        self
    }

    pub fn full_length(mut self, on: bool) -> Self {
        self.full_length = on;
        self
    }

    pub fn normal_form(mut self, on: bool) -> Self {
        self.normal_form = on;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tracked_length(&self) -> usize {
        self.tracked
    }

    fn count(&self, u: u64) -> usize {
        self.classes.iter().find(|c| c.0 == u).map_or(0, |c| c.1)
    }

    fn validate(&self) -> Result<()> {
        for (&u, &x) in &self.prescribed {
            let c = self.count(u);
            if c == 0 {
                return Err(Error::InconsistentPrescription(format!(
                    "class {u:x} has no columns"
                )));
            }
            if x > c {
                return Err(Error::InconsistentPrescription(format!(
                    "class {u:x} has {c} columns but {x} are prescribed"
                )));
            }
            if u == 0 && self.systematic && x == 0 {
                return Err(Error::InconsistentPrescription(
                    "systematic form needs a placeholder in the new row".into(),
                ));
            }
            if u == 0 && self.full_length && x != c {
                return Err(Error::InconsistentPrescription(
                    "full length needs every placeholder in the new row".into(),
                ));
            }
        }
        for h in 1..1u64 << self.k {
            let w: usize = self
                .classes
                .iter()
                .filter(|(u, _)| odd(h & u))
                .map(|c| c.1)
                .sum();
            if !(self.allowed[w] || (w == 0 && self.allow_zero)) {
                return Err(Error::PreconditionViolated(format!(
                    "parent has a codeword of weight {w} outside the allowed set"
                )));
            }
        }
        Ok(())
    }
}

fn odd(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// A solution: class `i` sends `ones[i]` of its `classes[i].1` columns to
/// the new row.
pub struct ExtensionView<'a> {
    pub k: usize,
    pub classes: &'a [(u64, usize)],
    pub ones: &'a [usize],
    /// Weight of `(h', 1)` for every `h'` in `F_2^k`.
    pub new_weights: &'a [usize],
}

impl ExtensionView<'_> {
    /// Columns of the extended code in `F_2^(k+1)`, the new row being bit `k`.
    pub fn to_multiset(&self) -> ColumnMultiset {
        let mut ms = ColumnMultiset::new(self.k + 1);
        for (&(u, c), &x) in self.classes.iter().zip(self.ones) {
            ms.add(u | 1 << self.k, x);
            ms.add(u, c - x);
        }
        ms
    }

    pub fn to_matrix(&self) -> GeneratorMatrix {
        self.to_multiset().to_matrix()
    }
}

/// Runs the search and calls `visit` once per solution.
pub fn for_each_extension(
    p: &ExtensionProblem,
    mut visit: impl FnMut(&ExtensionView),
) -> Result<()> {
    p.validate()?;
    let mut engine = Engine::new(p);
    engine.run(&mut visit);
    Ok(())
}

/// All solutions as `(k+1)`-row matrices over the tracked columns.
pub fn extensions(p: &ExtensionProblem) -> Result<Vec<GeneratorMatrix>> {
    let mut out = Vec::new();
    for_each_extension(p, |v| out.push(v.to_matrix()))?;
    Ok(out)
}

struct Engine<'a> {
    p: &'a ExtensionProblem,
    /// Classes in search order: prescribed first, then by decreasing count.
    order: Vec<usize>,
    fixed: usize,
    lo: Vec<usize>,
    hi: Vec<usize>,
    /// Per position in `order`: dual functional if the class is a basis
    /// class for the translation normal form.
    dual: Vec<Option<u64>>,
    next_ok: Vec<usize>,
    weights: Vec<usize>,
    ones: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(p: &'a ExtensionProblem) -> Self {
        let n = p.classes.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| {
            let (u, c) = p.classes[i];
            (!p.prescribed.contains_key(&u), std::cmp::Reverse(c), u)
        });
        let fixed = order
            .iter()
            .take_while(|&&i| p.prescribed.contains_key(&p.classes[i].0))
            .count();
        let is_unit = |u: u64| u.count_ones() == 1;

        let mut lo = vec![0; n];
        let mut hi = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            let (u, c) = p.classes[i];
            let (mut l, mut h) = match p.prescribed.get(&u) {
                Some(&x) => (x, x),
                None => (0, c),
            };
            if u == 0 {
                if p.systematic {
                    l = l.max(1);
                }
                if p.full_length {
                    l = c;
                }
            } else if p.systematic && is_unit(u) {
                h = h.min(c.saturating_sub(1));
            }
            lo[pos] = l;
            hi[pos] = h;
        }

        let mut dual = vec![None; n];
        if p.normal_form {
            // Translations must vanish on these points.
            let pinned: Vec<u64> = order
                .iter()
                .map(|&i| p.classes[i].0)
                .filter(|&u| {
                    u != 0 && (p.prescribed.contains_key(&u) || (p.systematic && is_unit(u)))
                })
                .collect();
            let mut echelon = Echelon::default();
            for &u in &pinned {
                echelon.insert(u);
            }
            let mut basis = echelon.vectors.clone();
            let mut chosen = Vec::new();
            for (pos, &i) in order.iter().enumerate().skip(fixed) {
                let u = p.classes[i].0;
                if u != 0 && !pinned.contains(&u) && echelon.insert(u) {
                    chosen.push((pos, basis.len()));
                    basis.push(u);
                }
            }
            let duals = dual_basis(&basis, p.k);
            for (pos, j) in chosen {
                dual[pos] = Some(duals[j]);
                hi[pos] = hi[pos].min(p.classes[order[pos]].1 / 2);
            }
        }

        let mut next_ok = vec![usize::MAX; p.tracked + 2];
        for w in (0..=p.tracked).rev() {
            let ok = p.allowed[w] || (w == 0 && p.allow_zero);
            next_ok[w] = if ok { w } else { next_ok[w + 1] };
        }
        Engine {
            p,
            order,
            fixed,
            lo,
            hi,
            dual,
            next_ok,
            weights: vec![0; 1 << p.k],
            ones: vec![0; n],
        }
    }

    fn apply(&mut self, pos: usize, x: usize, sign: isize) {
        let (u, c) = self.p.classes[self.order[pos]];
        for (h, w) in self.weights.iter_mut().enumerate() {
            let add = if odd(h as u64 & u) { c - x } else { x };
            *w = (*w as isize + sign * add as isize) as usize;
        }
    }

    fn feasible(&self, rem: usize) -> bool {
        self.weights.iter().all(|&w| self.next_ok[w] <= w + rem)
    }

    fn run(&mut self, visit: &mut dyn FnMut(&ExtensionView)) {
        let mut rem = self.p.tracked;
        for pos in 0..self.fixed {
            let x = self.lo[pos];
            if x > self.hi[pos] {
                return;
            }
            self.apply(pos, x, 1);
            self.ones[self.order[pos]] = x;
            rem -= self.p.classes[self.order[pos]].1;
        }
        if !self.feasible(rem) {
            return;
        }
        self.dfs(self.fixed, rem, visit);
    }

    fn dfs(&mut self, pos: usize, rem: usize, visit: &mut dyn FnMut(&ExtensionView)) {
        if pos == self.order.len() {
            if self.is_normal() {
                visit(&ExtensionView {
                    k: self.p.k,
                    classes: &self.p.classes,
                    ones: &self.ones,
                    new_weights: &self.weights,
                });
            }
            return;
        }
        let c = self.p.classes[self.order[pos]].1;
        let rem = rem - c;
        for x in self.lo[pos]..=self.hi[pos] {
            self.apply(pos, x, 1);
            if self.feasible(rem) {
                self.ones[self.order[pos]] = x;
                self.dfs(pos + 1, rem, visit);
            }
            self.apply(pos, x, -1);
        }
    }

    /// Whether the current assignment is the least in its translation orbit.
    fn is_normal(&self) -> bool {
        let ties: Vec<u64> = (0..self.order.len())
            .filter_map(|pos| {
                let d = self.dual[pos]?;
                let i = self.order[pos];
                (2 * self.ones[i] == self.p.classes[i].1).then_some(d)
            })
            .collect();
        for s in 1u64..1 << ties.len() {
            let t = (0..ties.len())
                .filter(|&j| s >> j & 1 == 1)
                .fold(0, |acc, j| acc ^ ties[j]);
            for &i in &self.order[self.fixed..] {
                let (u, c) = self.p.classes[i];
                let x = self.ones[i];
                let y = if odd(t & u) { c - x } else { x };
                if y != x {
                    if y < x {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }
}

#[derive(Default)]
struct Echelon {
    /// Reduced vectors keyed by their lowest set bit.
    rows: Vec<(u32, u64)>,
    vectors: Vec<u64>,
}

impl Echelon {
    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, v: u64) -> bool {
        let mut r = v;
        for &(bit, row) in &self.rows {
            if r >> bit & 1 == 1 {
                r ^= row;
            }
        }
        if r == 0 {
            return false;
        }
        let bit = r.trailing_zeros();
        for row in self.rows.iter_mut() {
            if row.1 >> bit & 1 == 1 {
                row.1 ^= r;
            }
        }
        self.rows.push((bit, r));
        self.vectors.push(v);
        true
    }
}

/// Functionals `f_j` with `<f_j, b_i> = [i = j]`, for independent `b_i`
/// (completed to a basis of `F_2^k` internally).
fn dual_basis(basis: &[u64], k: usize) -> Vec<u64> {
    let mut full = Echelon::default();
    for &b in basis {
        full.insert(b);
    }
    for i in 0..k {
        full.insert(1 << i);
    }
    let rows = full.vectors.clone();
    // Gauss-Jordan on [A | I] with A's rows the basis vectors.
    let mut aug: Vec<(u64, u64)> = rows.iter().enumerate().map(|(i, &r)| (r, 1 << i)).collect();
    for col in 0..k {
        let Some(p) = (col..k).find(|&i| aug[i].0 >> col & 1 == 1) else {
            continue;
        };
        aug.swap(col, p);
        let pivot = aug[col];
        for (i, row) in aug.iter_mut().enumerate() {
            if i != col && row.0 >> col & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
    }
    // Row `i` of the inverse now sits in aug[i].1; f_j is column j.
    (0..basis.len())
        .map(|j| (0..k).fold(0u64, |acc, i| acc | ((aug[i].1 >> j & 1) << i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_form;

    fn ones(n: usize) -> GeneratorMatrix {
        GeneratorMatrix::from_row_strs(&[&"1".repeat(n)]).unwrap()
    }

    #[test]
    fn raw_solutions_of_small_problem() {
        let p = ExtensionProblem::new(&ones(4), 4, 1, 1, 4).unwrap();
        let sols = extensions(&p).unwrap();
        assert_eq!(sols.len(), 2);
        // Brute force over all 16 candidate rows.
        let brute = (0u32..16)
            .filter(|r| {
                let w = r.count_ones();
                let w2 = 4 - w;
                [w, w2].iter().all(|&x| x == 0 || x == 4)
            })
            .count();
        assert_eq!(brute, 2);
        let p = p.systematic(true);
        assert_eq!(extensions(&p).unwrap().len(), 0);
    }

    fn classes_of_full_rank(p: &ExtensionProblem) -> usize {
        let mut keys = std::collections::BTreeSet::new();
        for g in extensions(p).unwrap() {
            let g = g.select_columns(&(0..g.n()).filter(|&j| g.column(j) != 0).collect::<Vec<_>>());
            if g.rank() == g.k() && g.n() == p.tracked_length() {
                keys.insert(canonical_form(&g).unwrap().key);
            }
        }
        keys.len()
    }

    #[test]
    fn repetition_extensions() {
        let w: Vec<usize> = (1..=5).map(|i| 8 * i).collect();
        let p = ExtensionProblem::with_weights(&ones(8), &w, 12).unwrap();
        assert_eq!(classes_of_full_rank(&p), 1);
        let p = ExtensionProblem::with_weights(&ones(8), &w, 16).unwrap();
        assert_eq!(classes_of_full_rank(&p), 1);
    }

    #[test]
    fn every_solution_meets_the_weights() {
        let g = GeneratorMatrix::from_row_strs(&["11110000", "00111100"]).unwrap();
        let p = ExtensionProblem::new(&g, 2, 1, 4, 10).unwrap();
        let sols = extensions(&p).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            for m in 0..1u64 << s.k() {
                let w = s.encode(m).weight();
                assert!(w % 2 == 0 && w <= 8, "{s:?}");
            }
        }
    }

    fn flip(classes: &[(u64, usize)], ones: &[usize], h: u64) -> Vec<usize> {
        classes
            .iter()
            .zip(ones)
            .map(|(&(u, c), &x)| if odd(h & u) { c - x } else { x })
            .collect()
    }

    #[test]
    fn normal_form_keeps_one_per_translation_orbit() {
        let g = GeneratorMatrix::from_row_strs(&["11110000", "00001111", "00111100"]).unwrap();
        let p = ExtensionProblem::new(&g, 2, 1, 4, 9).unwrap();
        let mut orbits = std::collections::BTreeSet::new();
        for_each_extension(&p, |v| {
            let rep = (0..1u64 << v.k)
                .map(|h| flip(v.classes, v.ones, h))
                .min()
                .unwrap();
            orbits.insert(rep);
        })
        .unwrap();
        let mut reps = std::collections::BTreeSet::new();
        let mut count = 0;
        for_each_extension(&p.clone().normal_form(true), |v| {
            count += 1;
            let rep = (0..1u64 << v.k)
                .map(|h| flip(v.classes, v.ones, h))
                .min()
                .unwrap();
            reps.insert(rep);
        })
        .unwrap();
        assert!(orbits.len() > 1);
        assert_eq!(count, orbits.len());
        assert_eq!(reps, orbits);
    }

    #[test]
    fn prescription_errors() {
        let p = ExtensionProblem::new(&ones(4), 4, 1, 1, 6)
            .unwrap()
            .prescribe(0, 3);
        assert!(matches!(
            extensions(&p),
            Err(Error::InconsistentPrescription(_))
        ));
        let p = ExtensionProblem::new(&ones(4), 4, 1, 1, 6)
            .unwrap()
            .prescribe(2, 1);
        assert!(matches!(
            extensions(&p),
            Err(Error::InconsistentPrescription(_))
        ));
        assert!(matches!(
            ExtensionProblem::new(&ones(4), 4, 2, 1, 6),
            Err(Error::InfeasibleBudget(_))
        ));
    }

    #[test]
    fn duals_are_dual() {
        let basis = [0b011, 0b110];
        let d = dual_basis(&basis, 3);
        for (j, &f) in d.iter().enumerate() {
            for (i, &b) in basis.iter().enumerate() {
                assert_eq!(odd(f & b), i == j);
            }
        }
    }
}
