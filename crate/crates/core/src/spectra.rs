//! Weight distributions, Krawtchouk polynomials and the binary MacWilliams
//! transform. All arithmetic is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2::{rref, GeneratorMatrix};

/// Default cap on the dimension for brute-force codeword enumeration.
pub const DEFAULT_K_BUDGET: usize = 28;

/// Counts `A_0 .. A_n` of codewords by weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightDistribution {
    counts: Vec<u128>,
}

impl WeightDistribution {
    /// All-zero distribution for length `n`.
    pub fn zeros(n: usize) -> Self {
        WeightDistribution {
            counts: vec![0; n + 1],
        }
    }

    pub fn from_counts(counts: Vec<u128>) -> Self {
        assert!(!counts.is_empty(), "distribution needs at least A_0");
        WeightDistribution { counts }
    }

    /// Builds a distribution of length `n` from `(weight, count)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, u128)]) -> Self {
        let mut d = Self::zeros(n);
        for &(w, c) in pairs {
            d.counts[w] += c;
        }
        d
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, w: usize) -> u128 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// `(w, A_w)` for every `A_w > 0`.
    pub fn support(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
    }

    /// Largest `k` with `2^k` equal to the total, if the total is a power of two.
    pub fn dimension(&self) -> Option<usize> {
        let t = self.total();
        t.is_power_of_two().then(|| t.trailing_zeros() as usize)
    }

    /// `w<TAB>A_w` lines for nonzero entries.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (w, c) in self.support() {
            s.push_str(&format!("{w}\t{c}\n"));
        }
        s
    }

    /// Parses enumerator notation such as `(0^1 4^7)`.
    pub fn parse_enumerator(n: usize, s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut d = Self::zeros(n);
        for term in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if term.is_empty() {
                continue;
            }
            let (w, c) = term
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected w^A, got {term:?}")))?;
            let w: usize = w
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            let c: u128 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {c:?}")))?;
            if w > n {
                return Err(Error::Parse(format!("weight {w} exceeds length {n}")));
            }
            d.counts[w] += c;
        }
        Ok(d)
    }
}

/// Enumerator notation: `(0^1 4^4 8^150 12^100 16^1)`.
impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (w, c)) in self.support().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}^{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightDistribution[n={}]{self}", self.n())
    }
}

/// Weight distribution `B_0 .. B_n` of the dual code.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualDistribution(pub WeightDistribution);

impl DualDistribution {
    pub fn get(&self, i: usize) -> u128 {
        self.0.get(i)
    }

    pub fn as_distribution(&self) -> &WeightDistribution {
        &self.0
    }

    pub fn into_distribution(self) -> WeightDistribution {
        self.0
    }
}

impl fmt::Display for DualDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for DualDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualDistribution[n={}]{}", self.0.n(), self.0)
    }
}

/// Weight distribution with the default dimension budget.
pub fn weight_distribution(g: &GeneratorMatrix) -> Result<WeightDistribution> {
    weight_distribution_with_budget(g, DEFAULT_K_BUDGET)
}

/// Enumerates all `2^k` codewords in Gray-code order, one row XOR per step.
pub fn weight_distribution_with_budget(
    g: &GeneratorMatrix,
    budget: usize,
) -> Result<WeightDistribution> {
    let k = g.k();
    if k > budget {
        return Err(Error::DimensionTooLarge { k, budget });
    }
    let rank = rref(g).rank;
    if rank < k {
        return Err(Error::RankDeficient { rank, rows: k });
    }
    let mut counts = vec![0u128; g.n() + 1];
    let words = g.n().div_ceil(64);
    if words <= 1 {
        let rows: Vec<u64> = g.rows().iter().map(|r| r.as_u64()).collect();
        let mut local = vec![0u64; g.n() + 1];
        let mut cw = 0u64;
        local[0] = 1;
        for i in 1u64..(1u64 << k) {
            cw ^= rows[i.trailing_zeros() as usize];
            local[cw.count_ones() as usize] += 1;
        }
        for (c, l) in counts.iter_mut().zip(local) {
            *c = l as u128;
        }
    } else {
        let rows: Vec<&[u64]> = g.rows().iter().map(|r| r.words()).collect();
        let mut cw = vec![0u64; words];
        counts[0] = 1;
        for i in 1u64..(1u64 << k) {
            let r = rows[i.trailing_zeros() as usize];
            let mut w = 0usize;
            for (a, b) in cw.iter_mut().zip(r) {
                *a ^= *b;
                w += a.count_ones() as usize;
            }
            counts[w] += 1;
        }
    }
    Ok(WeightDistribution { counts })
}

fn binomial(n: i128, r: i128) -> i128 {
    if r < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul(n - i)
            .expect("binomial overflow; lengths up to 64 are supported")
            / (i + 1);
    }
    acc
}

/// Binary Krawtchouk kernel `K_i(j) = sum_s (-1)^s C(n-j, i-s) C(j, s)`.
/// Exact for `n <= 64`.
pub fn krawtchouk(i: usize, j: usize, n: usize) -> i128 {
    assert!(i <= n && j <= n, "krawtchouk indices must lie in 0..=n");
    let (i, j, n) = (i as i128, j as i128, n as i128);
    let mut sum: i128 = 0;
    for s in 0..=i.min(j) {
        let term = binomial(n - j, i - s) * binomial(j, s);
        if s % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `2^k * B_i` as exact integers, without dividing.
fn scaled_dual(a: &WeightDistribution) -> Vec<BigInt> {
    let n = a.n();
    (0..=n)
        .map(|i| {
            a.support()
                .map(|(j, c)| BigInt::from(krawtchouk(i, j, n)) * BigInt::from(c))
                .sum()
        })
        .collect()
}

/// Exact rational `B_i = 2^-k sum_j K_i(j) A_j`, without integrality checks.
pub fn macwilliams_rational(a: &WeightDistribution, k: usize) -> Vec<BigRational> {
    let denom = BigInt::from(1) << k;
    scaled_dual(a)
        .into_iter()
        .map(|s| BigRational::new(s, denom.clone()))
        .collect()
}

/// MacWilliams transform of the weight distribution of a `k`-dimensional
/// code. Fails when some `B_i` is negative or fractional.
pub fn macwilliams_transform(a: &WeightDistribution, k: usize) -> Result<DualDistribution> {
    let total = a.total();
    if k >= 128 || total != 1u128 << k {
        return Err(Error::NotACodeDistribution(format!(
            "sum of A is {total}, expected 2^{k}"
        )));
    }
    let denom = BigInt::from(1) << k;
    let mut out = Vec::with_capacity(a.n() + 1);
    for (i, s) in scaled_dual(a).into_iter().enumerate() {
        let (q, r) = s.div_rem(&denom);
        if !r.is_zero() {
            return Err(Error::NotACodeDistribution(format!(
                "B_{i} = {s}/2^{k} is not an integer"
            )));
        }
        if q.is_negative() {
            return Err(Error::NotACodeDistribution(format!(
                "B_{i} = {q} is negative"
            )));
        }
        out.push(q.to_u128().ok_or_else(|| {
            Error::NotACodeDistribution(format!("B_{i} does not fit in 128 bits"))
        })?);
    }
    Ok(DualDistribution(WeightDistribution { counts: out }))
}

/// Every nonzero weight occurring in `a` is a multiple of `delta`.
pub fn is_divisible(a: &WeightDistribution, delta: usize) -> bool {
    assert!(delta > 0);
    a.support().all(|(w, _)| w == 0 || w % delta == 0)
}

/// Every pair of rows, including a row with itself, meets in an even number
/// of positions.
pub fn is_self_orthogonal(g: &GeneratorMatrix) -> bool {
    let rows = g.rows();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i..] {
            if a.overlap(b) % 2 != 0 {
                return false;
            }
        }
    }
    true
}
