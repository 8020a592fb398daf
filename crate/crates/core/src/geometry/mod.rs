//! Point sets in binary projective space and operations on codes through
//! that lens.
//!
//! A projective `[n, k]` code is the same thing as a set of `n` spanning
//! points in `F_2^k`; points are stored as `u64` with bit `i` holding
//! coordinate `i`, matching the column encoding of [`GeneratorMatrix`].

mod named;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, ColumnMultiset, GeneratorMatrix, MAX_COLUMN_BITS};
use crate::spectra::DEFAULT_K_BUDGET;

pub use named::{construct_named, NamedCode};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    k: usize,
    points: BTreeSet<u64>,
}

impl PointSet {
    pub fn new(k: usize, points: impl IntoIterator<Item = u64>) -> Result<Self> {
        if k > MAX_COLUMN_BITS {
            return Err(Error::DimensionTooLarge {
                k,
                budget: MAX_COLUMN_BITS,
            });
        }
        let mut set = BTreeSet::new();
        for p in points {
            if p == 0 {
                return Err(Error::PreconditionViolated(
                    "zero vector is not a point".into(),
                ));
            }
            if k < 64 && p >> k != 0 {
                return Err(Error::PreconditionViolated(format!(
                    "point {p:#x} outside F2^{k}"
                )));
            }
            if !set.insert(p) {
                return Err(Error::PreconditionViolated(format!(
                    "point {p:#x} repeated"
                )));
            }
        }
        Ok(PointSet { k, points: set })
    }

    /// The columns of a projective generator matrix.
    pub fn from_matrix(g: &GeneratorMatrix) -> Result<Self> {
        PointSet::new(g.k(), g.columns())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.points.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.points.iter().copied()
    }

    /// Dimension of the span of the points.
    pub fn rank(&self) -> usize {
        span_basis(self.points.iter().copied()).len()
    }

    pub fn is_spanning(&self) -> bool {
        self.rank() == self.k
    }

    /// Generator matrix with the points as columns in ascending order.
    pub fn to_matrix(&self) -> GeneratorMatrix {
        let cols: Vec<u64> = self.points.iter().copied().collect();
        GeneratorMatrix::from_columns(self.k, &cols)
    }

    /// The same points viewed in `F_2^k` for a larger `k`.
    pub fn embed(&self, k: usize) -> Result<Self> {
        PointSet::new(k, self.points.iter().copied())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(k={}, {{", self.k)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p:x}")?;
        }
        f.write_str("})")
    }
}

/// Reduced echelon basis of the span, keyed by leading bit.
fn span_basis(vectors: impl IntoIterator<Item = u64>) -> BTreeMap<u32, u64> {
    let mut basis: BTreeMap<u32, u64> = BTreeMap::new();
    for mut v in vectors {
        for (&lead, &b) in basis.iter().rev() {
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.insert(63 - v.leading_zeros(), v);
        }
    }
    basis
}

/// The three points of the line through `a` and `b`.
pub fn line(a: u64, b: u64) -> [u64; 3] {
    [a, b, a ^ b]
}

/// The seven points of the plane spanned by `a`, `b`, `c`.
pub fn plane(a: u64, b: u64, c: u64) -> [u64; 7] {
    [a, b, a ^ b, c, a ^ c, b ^ c, a ^ b ^ c]
}

/// Nonzero vectors of the span, if `pts` is closed under addition and has
/// size `2^d - 1`.
fn is_subspace(pts: &BTreeSet<u64>, d: usize) -> bool {
    pts.len() == (1 << d) - 1
        && !pts.contains(&0)
        && pts
            .iter()
            .all(|&a| pts.iter().all(|&b| a == b || pts.contains(&(a ^ b))))
}

/// Replaces the line `l` by the affine plane `e \ l`.
///
/// Requires `l` to be a line contained in `p`, `e` a plane containing `l`,
/// and `e` to meet `p` exactly in `l`.
pub fn switch(p: &PointSet, l: &[u64], e: &[u64]) -> Result<PointSet> {
    let l: BTreeSet<u64> = l.iter().copied().collect();
    let e: BTreeSet<u64> = e.iter().copied().collect();
    if !is_subspace(&l, 2) {
        return Err(Error::PreconditionViolated("L is not a line".into()));
    }
    if !is_subspace(&e, 3) {
        return Err(Error::PreconditionViolated("E is not a plane".into()));
    }
    if !l.iter().all(|&x| p.contains(x)) {
        return Err(Error::PreconditionViolated(
            "L is not contained in P".into(),
        ));
    }
    if !l.is_subset(&e) {
        return Err(Error::PreconditionViolated(
            "L is not contained in E".into(),
        ));
    }
    if e.iter().any(|&x| p.contains(x) && !l.contains(&x)) {
        return Err(Error::PreconditionViolated("E meets P outside L".into()));
    }
    let pts = p
        .iter()
        .filter(|x| !l.contains(x))
        .chain(e.difference(&l).copied());
    PointSet::new(p.k, pts)
}

/// Image of `p` in `F_2^k / <q>`, identified with `F_2^(k-1)` by dropping
/// the leading coordinate of `q`.
pub fn project_through(p: &PointSet, q: u64) -> Result<ColumnMultiset> {
    if q == 0 || (p.k < 64 && q >> p.k != 0) {
        return Err(Error::PreconditionViolated(format!(
            "{q:#x} is not a point of F2^{}",
            p.k
        )));
    }
    if p.contains(q) {
        return Err(Error::PointInSet);
    }
    let h = 63 - q.leading_zeros();
    let low = (1u64 << h) - 1;
    let mut out = ColumnMultiset::new(p.k - 1);
    for v in p.iter() {
        let v = if v >> h & 1 == 1 { v ^ q } else { v };
        out.add((v & low) | ((v >> (h + 1)) << h), 1);
    }
    Ok(out)
}

/// Number of points outside `p` on some secant of `p`, and the number of
/// points outside `p` overall.
pub fn secant_external_cover(p: &PointSet) -> (usize, u128) {
    let pts: Vec<u64> = p.iter().collect();
    let mut covered = BTreeSet::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let c = a ^ b;
            if !p.contains(c) {
                covered.insert(c);
            }
        }
    }
    (covered.len(), (1u128 << p.k) - 1 - p.len() as u128)
}

fn require_codeword(g: &GeneratorMatrix, c: &BitVector) -> Result<u64> {
    if c.len() != g.n() {
        return Err(Error::NotACodeword);
    }
    g.message_for(c).ok_or(Error::NotACodeword)
}

/// Deletes the support of `c` and reduces to a row basis.
pub fn residual_code(g: &GeneratorMatrix, c: &BitVector) -> Result<GeneratorMatrix> {
    require_codeword(g, c)?;
    let keep: Vec<usize> = (0..g.n()).filter(|&i| !c.get(i)).collect();
    Ok(g.select_columns(&keep).row_basis())
}

/// Projects onto the support of `c` and reduces to a row basis.
pub fn restriction_code(g: &GeneratorMatrix, c: &BitVector) -> Result<GeneratorMatrix> {
    require_codeword(g, c)?;
    let keep: Vec<usize> = c.iter_ones().collect();
    Ok(g.select_columns(&keep).row_basis())
}

/// Keeps the codewords vanishing on `positions`, then deletes those
/// coordinates.
pub fn shorten(g: &GeneratorMatrix, positions: &[usize]) -> Result<GeneratorMatrix> {
    if let Some(&p) = positions.iter().find(|&&p| p >= g.n()) {
        return Err(Error::PreconditionViolated(format!(
            "position {p} outside 0..{}",
            g.n()
        )));
    }
    let mut rows: Vec<BitVector> = g.rows().to_vec();
    for &p in positions {
        if let Some(i) = rows.iter().position(|r| r.get(p)) {
            let pivot = rows.swap_remove(i);
            for r in rows.iter_mut() {
                if r.get(p) {
                    r.xor_assign(&pivot);
                }
            }
        }
    }
    let drop: BTreeSet<usize> = positions.iter().copied().collect();
    let keep: Vec<usize> = (0..g.n()).filter(|i| !drop.contains(i)).collect();
    Ok(GeneratorMatrix::new(g.n(), rows)
        .select_columns(&keep)
        .row_basis())
}

/// Types of the two-dimensional subcodes containing a fixed codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcodeSpectrum {
    pub base_weight: usize,
    /// `(sorted nonzero weights, effective length) -> count`.
    pub entries: BTreeMap<([usize; 3], usize), u128>,
}

impl SubcodeSpectrum {
    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    /// Counts subcodes by `effective length - base weight`.
    pub fn by_residual_weight(&self) -> BTreeMap<usize, u128> {
        let mut out = BTreeMap::new();
        for (&(_, len), &count) in &self.entries {
            *out.entry(len - self.base_weight).or_insert(0) += count;
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("w1\tw2\tw3\tlength\tcount\n");
        for (&(w, len), &count) in &self.entries {
            s.push_str(&format!("{}\t{}\t{}\t{len}\t{count}\n", w[0], w[1], w[2]));
        }
        s
    }
}

/// Enumerates the `2^(k-1) - 1` subcodes `{0, c, x, x + c}`.
pub fn subcode_spectrum(g: &GeneratorMatrix, c: &BitVector) -> Result<SubcodeSpectrum> {
    let g = g.row_basis();
    let k = g.k();
    if k > DEFAULT_K_BUDGET {
        return Err(Error::DimensionTooLarge {
            k,
            budget: DEFAULT_K_BUDGET,
        });
    }
    let m = require_codeword(&g, c)?;
    if m == 0 {
        return Err(Error::PreconditionViolated(
            "codeword must be nonzero".into(),
        ));
    }
    if k < 2 {
        return Err(Error::PreconditionViolated(
            "dimension must be at least 2".into(),
        ));
    }
    let pivot = m.trailing_zeros() as usize;
    let others: Vec<&BitVector> = (0..k).filter(|&i| i != pivot).map(|i| g.row(i)).collect();
    let wc = c.weight();
    let mut entries = BTreeMap::new();
    let mut x = BitVector::zeros(g.n());
    for step in 1u64..(1 << others.len()) {
        x.xor_assign(others[step.trailing_zeros() as usize]);
        let wx = x.weight();
        let wxc = x.xor(c).weight();
        let len = c.union_weight(&x);
        debug_assert_eq!(2 * len, wc + wx + wxc);
        let mut w = [wc, wx, wxc];
        w.sort_unstable();
        *entries.entry((w, len)).or_insert(0u128) += 1;
    }
    Ok(SubcodeSpectrum {
        base_weight: wc,
        entries,
    })
}
