//! Linear algebra over GF(2).
//!
//! Rows are bit-packed into `u64` words. Column vectors of a `k`-row matrix
//! are identified with integers: bit `i` of the integer is the entry in row
//! `i`, so row 0 is the least significant bit. That bijection is shared by
//! the text format, [`ColumnMultiset`] keys and every point-set operation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of rows for which columns fit in a `u64`.
pub const MAX_COLUMN_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` from the low bits of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.mask_tail();
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits; only meaningful for `len <= 64`.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Size of the intersection of the supports.
    pub fn overlap(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Size of the union of the supports.
    pub fn union_weight(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        self.overlap(other) % 2 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Keeps the bits at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> BitVector {
        let mut v = BitVector::zeros(positions.len());
        for (dst, &src) in positions.iter().enumerate() {
            if self.get(src) {
                v.set(dst, true);
            }
        }
        v
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters; spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse(format!(
                        "unexpected character {c:?} in bit string"
                    )))
                }
            }
        }
        Ok(BitVector::from_bits(bits))
    }
}

/// A `k x n` matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    n: usize,
    rows: Vec<BitVector>,
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GeneratorMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn new(n: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), n, "row length differs from n");
        }
        GeneratorMatrix { n, rows }
    }

    pub fn zero(k: usize, n: usize) -> Self {
        GeneratorMatrix::new(n, vec![BitVector::zeros(n); k])
    }

    /// The empty code: no rows, no columns.
    pub fn empty() -> Self {
        GeneratorMatrix::zero(0, 0)
    }

    pub fn identity(k: usize) -> Self {
        GeneratorMatrix::new(k, (0..k).map(|i| BitVector::unit(k, i)).collect())
    }

    /// Parses one `0`/`1` string per row.
    pub fn from_row_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let n = rows.first().map_or(0, BitVector::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("rows have different lengths".into()));
        }
        Ok(GeneratorMatrix { n, rows })
    }

    /// Builds a `k`-row matrix from integer-encoded columns.
    pub fn from_columns(k: usize, columns: &[u64]) -> Self {
        assert!(k <= MAX_COLUMN_BITS);
        let n = columns.len();
        let mut rows = vec![BitVector::zeros(n); k];
        for (j, &c) in columns.iter().enumerate() {
            assert!(
                k == 64 || c >> k == 0,
                "column {c:#x} has bits beyond row {k}"
            );
            let mut c = c;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                rows[i].set(j, true);
                c &= c - 1;
            }
        }
        GeneratorMatrix { n, rows }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> u64 {
        assert!(
            self.k() <= MAX_COLUMN_BITS,
            "too many rows for integer columns"
        );
        let mut c = 0u64;
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c |= 1 << i;
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    /// `sum_i message_i * row_i`, with message bit `i` selecting row `i`.
    pub fn encode(&self, message: u64) -> BitVector {
        let mut c = BitVector::zeros(self.n);
        let mut m = message;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            c.xor_assign(&self.rows[i]);
            m &= m - 1;
        }
        c
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Solves `message * G = v`; `None` when `v` is outside the row space.
    /// Requires independent rows.
    pub fn message_for(&self, v: &BitVector) -> Option<u64> {
        assert_eq!(v.len(), self.n);
        assert!(self.k() <= 64);
        // Echelon copy of the rows, each tagged with the message that produces it.
        let mut basis: Vec<(usize, BitVector, u64)> = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut r = r.clone();
            let mut tag = 1u64 << i;
            for (p, b, t) in &basis {
                if r.get(*p) {
                    r.xor_assign(b);
                    tag ^= t;
                }
            }
            let lead = r.iter_ones().next();
            if let Some(p) = lead {
                for (_, b, t) in basis.iter_mut() {
                    if b.get(p) {
                        b.xor_assign(&r);
                        *t ^= tag;
                    }
                }
                basis.push((p, r, tag));
            }
        }
        let mut rest = v.clone();
        let mut msg = 0u64;
        for (p, b, t) in &basis {
            if rest.get(*p) {
                rest.xor_assign(b);
                msg ^= t;
            }
        }
        rest.is_zero().then_some(msg)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let basis = self.row_basis();
        basis.message_for(v).is_some()
    }

    /// Keeps the given columns in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> GeneratorMatrix {
        GeneratorMatrix::new(
            columns.len(),
            self.rows.iter().map(|r| r.select(columns)).collect(),
        )
    }

    /// The nonzero rows of the reduced row-echelon form.
    pub fn row_basis(&self) -> GeneratorMatrix {
        let r = rref(self);
        let mut m = r.matrix;
        m.rows.truncate(r.rank);
        m
    }

    /// Column multiset view without placeholder columns.
    pub fn column_counts(&self) -> BTreeMap<u64, usize> {
        let mut counts = BTreeMap::new();
        for c in self.columns() {
            *counts.entry(c).or_insert(0) += 1;
        }
        counts
    }

    /// Number of nonzero columns.
    pub fn effective_length(&self) -> usize {
        let mut support = BitVector::zeros(self.n);
        for r in &self.rows {
            for (a, b) in support.words.iter_mut().zip(&r.words) {
                *a |= *b;
            }
        }
        support.weight()
    }

    /// Text-format line `n k c_1 ... c_n` (hex columns). With `sorted`, the
    /// columns are emitted in ascending order.
    pub fn to_line(&self, sorted: bool) -> String {
        let mut cols = self.columns();
        if sorted {
            cols.sort_unstable();
        }
        let mut s = format!("{} {}", self.n, self.k());
        for c in cols {
            s.push_str(&format!(" {c:x}"));
        }
        s
    }

    /// Parses a text-format line.
    pub fn parse_line(line: &str) -> Result<Self> {
        let mut fields = line.split_whitespace();
        let n: usize = parse_field(fields.next(), "n")?;
        let k: usize = parse_field(fields.next(), "k")?;
        if k > MAX_COLUMN_BITS {
            return Err(Error::Parse(format!("k={k} exceeds {MAX_COLUMN_BITS}")));
        }
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            let f = fields
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {n} columns")))?;
            let c = u64::from_str_radix(f, 16)
                .map_err(|e| Error::Parse(format!("bad column {f:?}: {e}")))?;
            if k < 64 && c >> k != 0 {
                return Err(Error::Parse(format!("column {f} does not fit in {k} rows")));
            }
            cols.push(c);
        }
        Ok(GeneratorMatrix::from_columns(k, &cols))
    }
}

fn parse_field<T: FromStr>(f: Option<&str>, what: &str) -> Result<T> {
    let f = f.ok_or_else(|| Error::Parse(format!("missing field {what}")))?;
    f.parse()
        .map_err(|_| Error::Parse(format!("bad value {f:?} for {what}")))
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GeneratorMatrix [{}, {}]", self.n, self.k())?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form. Zero rows are moved to the bottom.
pub fn rref(m: &GeneratorMatrix) -> Rref {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Rref {
        matrix: GeneratorMatrix { n: m.n, rows },
        rank: r,
        pivots,
    }
}

/// Returns `(G_sys, perm)` where the first `k` columns of `G_sys` are the
/// identity and column `j` of `G_sys` is column `perm[j]` of the row-reduced
/// input.
pub fn systematic_form(m: &GeneratorMatrix) -> Result<(GeneratorMatrix, Vec<usize>)> {
    let r = rref(m);
    if r.rank < m.k() {
        return Err(Error::RankDeficient {
            rank: r.rank,
            rows: m.k(),
        });
    }
    let mut perm = r.pivots.clone();
    let mut is_pivot = vec![false; m.n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    perm.extend((0..m.n).filter(|&j| !is_pivot[j]));
    Ok((r.matrix.select_columns(&perm), perm))
}

/// Multiset of column vectors, including a count for the zero vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColumnMultiset {
    k: usize,
    counts: BTreeMap<u64, usize>,
}

impl ColumnMultiset {
    pub fn new(k: usize) -> Self {
        assert!(k <= MAX_COLUMN_BITS);
        ColumnMultiset {
            k,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts(k: usize, counts: impl IntoIterator<Item = (u64, usize)>) -> Self {
        let mut m = ColumnMultiset::new(k);
        for (u, c) in counts {
            m.add(u, c);
        }
        m
    }

    pub fn add(&mut self, u: u64, count: usize) {
        assert!(
            self.k == 64 || u >> self.k == 0,
            "vector {u:#x} outside F2^{}",
            self.k
        );
        if count > 0 {
            *self.counts.entry(u).or_insert(0) += count;
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, u: u64) -> usize {
        self.counts.get(&u).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u64, usize> {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// All columns in ascending order, repeated by multiplicity.
    pub fn sorted_columns(&self) -> Vec<u64> {
        self.counts
            .iter()
            .flat_map(|(&u, &c)| std::iter::repeat_n(u, c))
            .collect()
    }

    pub fn to_matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix::from_columns(self.k, &self.sorted_columns())
    }

    /// Distinct nonzero vectors.
    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied().filter(|&u| u != 0)
    }
}

/// Counts columns of `m`; the zero vector additionally receives `padding`
/// placeholder columns.
pub fn column_multiset(m: &GeneratorMatrix, padding: usize) -> ColumnMultiset {
    let mut ms = ColumnMultiset::new(m.k());
    for c in m.columns() {
        ms.add(c, 1);
    }
    ms.add(0, padding);
    ms
}

/// No zero column and no repeated column.
pub fn is_projective(m: &GeneratorMatrix) -> bool {
    let mut cols = m.columns();
    if cols.contains(&0) {
        return false;
    }
    cols.sort_unstable();
    cols.windows(2).all(|w| w[0] != w[1])
}
