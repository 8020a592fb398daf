//! Random instances and property checks shared by the integration targets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use divcodes::enumerate::{canonical_form, for_each_extension, ExtensionProblem};
use divcodes::geometry::{residual_code, subcode_spectrum};
use divcodes::gf2::is_projective;
use divcodes::spectra::{
    is_divisible, is_self_orthogonal, macwilliams_transform, weight_distribution,
};
use divcodes::{BitVector, GeneratorMatrix};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random `k x n` matrix of rank `k` (requires `n >= k`).
pub fn random_full_rank(rng: &mut StdRng, k: usize, n: usize) -> GeneratorMatrix {
    assert!(n >= k);
    loop {
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << k)).collect();
        let g = GeneratorMatrix::from_columns(k, &cols);
        if g.rank() == k {
            return g;
        }
    }
}

/// Random rank-`k` matrix without zero columns.
pub fn random_nonzero_columns(rng: &mut StdRng, k: usize, n: usize) -> GeneratorMatrix {
    loop {
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << k)).collect();
        let g = GeneratorMatrix::from_columns(k, &cols);
        if g.rank() == k {
            return g;
        }
    }
}

/// Nonzero points of a random `s`-dimensional subspace of `F_2^k`.
fn random_subspace(rng: &mut StdRng, k: usize, s: usize) -> Vec<u64> {
    loop {
        let basis: Vec<u64> = (0..s).map(|_| rng.gen_range(1..1u64 << k)).collect();
        let g = GeneratorMatrix::from_columns(k, &basis);
        if g.rank() == s {
            return (1..1u64 << s)
                .map(|m| {
                    (0..s)
                        .filter(|&i| m >> i & 1 == 1)
                        .fold(0, |acc, i| acc ^ basis[i])
                })
                .collect();
        }
    }
}

/// A `2^r`-divisible code: the union of a few random subspaces of
/// dimension greater than `r`, reduced to a row basis.
pub fn random_divisible(rng: &mut StdRng, r: usize) -> GeneratorMatrix {
    let k = rng.gen_range(r + 1..=r + 4);
    let parts = rng.gen_range(1..=4);
    let mut cols = Vec::new();
    for _ in 0..parts {
        let s = rng.gen_range(r + 1..=k.min(r + 2));
        cols.extend(random_subspace(rng, k, s));
    }
    cols.shuffle(rng);
    GeneratorMatrix::from_columns(k, &cols).row_basis()
}

pub fn random_codeword(rng: &mut StdRng, g: &GeneratorMatrix) -> BitVector {
    g.encode(rng.gen_range(1..1u64 << g.k()))
}

pub fn permute_columns(g: &GeneratorMatrix, perm: &[usize]) -> GeneratorMatrix {
    let cols = g.columns();
    let permuted: Vec<u64> = perm.iter().map(|&j| cols[j]).collect();
    GeneratorMatrix::from_columns(g.k(), &permuted)
}

/// Random invertible row operations followed by a random column
/// permutation.
pub fn scramble(rng: &mut StdRng, g: &GeneratorMatrix) -> GeneratorMatrix {
    let k = g.k();
    let mut rows: Vec<BitVector> = g.rows().to_vec();
    for _ in 0..4 * k {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i != j {
            let rj = rows[j].clone();
            rows[i].xor_assign(&rj);
        }
    }
    rows.shuffle(rng);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    permute_columns(&GeneratorMatrix::new(g.n(), rows), &perm)
}

pub fn macwilliams_involution(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=8);
    let n = rng.gen_range(k..=20);
    let g = random_full_rank(&mut rng, k, n);
    let a = weight_distribution(&g).map_err(|e| e.to_string())?;
    let b = macwilliams_transform(&a, k).map_err(|e| e.to_string())?;
    let back = macwilliams_transform(b.as_distribution(), n - k).map_err(|e| e.to_string())?;
    ensure!(
        back.as_distribution() == &a,
        "involution broken for {}",
        g.to_line(false)
    );
    Ok(())
}

pub fn projectivity_from_dual(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=6);
    let n = rng.gen_range(k..=12);
    let g = random_full_rank(&mut rng, k, n);
    let a = weight_distribution(&g).map_err(|e| e.to_string())?;
    let b = macwilliams_transform(&a, k).map_err(|e| e.to_string())?;
    let small = b.get(1) == 0 && (n < 2 || b.get(2) == 0);
    ensure!(
        small == is_projective(&g),
        "B1, B2 = {}, {} but projective = {} for {}",
        b.get(1),
        b.get(2),
        is_projective(&g),
        g.to_line(false)
    );
    Ok(())
}

pub fn residual_divisibility(seed: u64) -> Check {
    let mut rng = rng(seed);
    let r = rng.gen_range(1..=3);
    let g = random_divisible(&mut rng, r);
    let a = weight_distribution(&g).map_err(|e| e.to_string())?;
    ensure!(
        is_divisible(&a, 1 << r),
        "generator is not {}-divisible",
        1 << r
    );
    let c = random_codeword(&mut rng, &g);
    let res = residual_code(&g, &c).map_err(|e| e.to_string())?;
    if res.k() == 0 {
        return Ok(());
    }
    let ar = weight_distribution(&res).map_err(|e| e.to_string())?;
    ensure!(
        is_divisible(&ar, 1 << (r - 1)),
        "residual of a {}-divisible code is not {}-divisible",
        1 << r,
        1 << (r - 1)
    );
    Ok(())
}

pub fn doubly_even_is_self_orthogonal(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = random_divisible(&mut rng, 2);
    ensure!(
        is_self_orthogonal(&g),
        "{} is not self-orthogonal",
        g.to_line(false)
    );
    Ok(())
}

pub fn subcode_count_and_lengths(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(2..=8);
    let n = rng.gen_range(k..=24);
    let g = random_full_rank(&mut rng, k, n);
    let c = random_codeword(&mut rng, &g);
    let s = subcode_spectrum(&g, &c).map_err(|e| e.to_string())?;
    ensure!(
        s.total() == (1u128 << (k - 1)) - 1,
        "{} subcodes for k = {k}",
        s.total()
    );
    for &(w, len) in s.entries.keys() {
        ensure!(
            2 * len == w[0] + w[1] + w[2],
            "length {len} for weights {w:?}"
        );
    }
    Ok(())
}

/// Two-dimensional subcodes through `c`, grouped by the weight their
/// residual image picks up, against `z * A_j` of the residual code.
pub fn residual_fiber_counts(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(2..=14);
    let n = rng.gen_range(k..=k + 16);
    let g = random_full_rank(&mut rng, k, n);
    let c = random_codeword(&mut rng, &g);
    let d = residual_code(&g, &c).map_err(|e| e.to_string())?;
    let z = 1u128 << (k - d.k() - 1);
    let ad = if d.k() == 0 {
        BTreeMap::from([(0, 1u128)])
    } else {
        weight_distribution(&d)
            .map_err(|e| e.to_string())?
            .support()
            .collect()
    };
    let s = subcode_spectrum(&g, &c).map_err(|e| e.to_string())?;
    let fibers = s.by_residual_weight();
    for (&j, &a) in &ad {
        let expected = if j == 0 { z * a - 1 } else { z * a };
        let got = fibers.get(&j).copied().unwrap_or(0);
        ensure!(
            got == expected,
            "fiber {j}: {got} subcodes, expected {expected}"
        );
    }
    ensure!(
        fibers.keys().all(|j| ad.contains_key(j)),
        "subcode with a residual weight missing from the residual code"
    );
    Ok(())
}

pub fn canonical_invariance(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=7);
    let n = rng.gen_range(k..=24);
    let g = random_full_rank(&mut rng, k, n);
    let h = scramble(&mut rng, &g);
    let (a, b) = (
        canonical_form(&g).map_err(|e| e.to_string())?,
        canonical_form(&h).map_err(|e| e.to_string())?,
    );
    ensure!(a.key == b.key, "keys differ for {}", g.to_line(false));
    ensure!(
        a.aut_order == b.aut_order,
        "orders differ for {}",
        g.to_line(false)
    );
    Ok(())
}

/// Extension splits of a random parent against every candidate row of the
/// tracked length.
pub fn extension_matches_brute_force(seed: u64) -> Check {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=3);
    let n = rng.gen_range(k..=10);
    let n_prime = rng.gen_range(n..=12);
    let g = random_nonzero_columns(&mut rng, k, n);
    let weights: Vec<usize> = (1..1u64 << k).map(|m| g.encode(m).weight()).collect();
    // Usually a range that admits the parent; occasionally a random one.
    let (delta, a, b) = if rng.gen_ratio(1, 8) {
        let delta = [1, 2, 4][rng.gen_range(0..3)];
        let a = rng.gen_range(1..=3);
        (delta, a, rng.gen_range(a..=a + 3))
    } else {
        let g = weights.iter().fold(0, |g, &w| gcd(g, w));
        let delta = [4, 2, 1].into_iter().find(|d| g % d == 0).unwrap();
        let lo = weights.iter().min().unwrap() / delta;
        let hi = weights.iter().max().unwrap() / delta;
        (delta, rng.gen_range(1..=lo), rng.gen_range(hi..=hi + 3))
    };
    let allowed: BTreeSet<usize> = (a..=b).map(|i| i * delta).collect();
    let parent_ok = weights.iter().all(|w| allowed.contains(w));
    let p = ExtensionProblem::new(&g, delta, a, b, n_prime).map_err(|e| e.to_string())?;

    let mut engine = BTreeSet::new();
    let result = for_each_extension(&p, |v| {
        let split: BTreeMap<u64, usize> = v
            .classes
            .iter()
            .zip(v.ones)
            .map(|(&(u, _), &x)| (u, x))
            .collect();
        engine.insert(split);
    });
    if !parent_ok {
        ensure!(
            result.is_err(),
            "parent with disallowed weights was accepted"
        );
        return Ok(());
    }
    result.map_err(|e| e.to_string())?;

    let mut cols = g.columns();
    cols.resize(n_prime, 0);
    let mut brute = BTreeSet::new();
    for row in 0..1u64 << n_prime {
        let ok = (0..1u64 << k).all(|h| {
            let w = (0..n_prime)
                .filter(|&j| ((row >> j & 1) as u32 + (h & cols[j]).count_ones()) % 2 == 1)
                .count();
            w == 0 || allowed.contains(&w)
        });
        if ok {
            let mut split: BTreeMap<u64, usize> = cols.iter().map(|&u| (u, 0)).collect();
            for (j, &u) in cols.iter().enumerate() {
                *split.get_mut(&u).unwrap() += (row >> j & 1) as usize;
            }
            brute.insert(split);
        }
    }
    ensure!(
        engine == brute,
        "{} splits from the search, {} by brute force for {} (n' = {n_prime}, weights {allowed:?})",
        engine.len(),
        brute.len(),
        g.to_line(false)
    );
    Ok(())
}

/// Counts per `(n, k)` of all codes with `k <= k_max`, no zero columns,
/// length at most `max_n` and nonzero weights in `weights`, found by
/// enumerating every column multiset.
pub fn brute_force_counts(
    weights: &[usize],
    max_n: usize,
    k_max: usize,
) -> BTreeMap<(usize, usize), usize> {
    let allowed: BTreeSet<usize> = weights.iter().copied().collect();
    let mut keys = BTreeSet::new();
    for k in 1..=k_max {
        let points = (1usize << k) - 1;
        let mut counts = vec![0usize; points];
        multisets(&mut counts, 0, max_n, &mut |counts| {
            let cols: Vec<u64> = counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i as u64 + 1, c))
                .collect();
            if cols.is_empty() {
                return;
            }
            let g = GeneratorMatrix::from_columns(k, &cols);
            if g.rank() < k {
                return;
            }
            if (1..1u64 << k).all(|m| allowed.contains(&g.encode(m).weight())) {
                keys.insert(canonical_form(&g).unwrap().key);
            }
        });
    }
    let mut out = BTreeMap::new();
    for key in keys {
        *out.entry((key.n, key.k)).or_insert(0) += 1;
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn multisets(counts: &mut [usize], i: usize, budget: usize, visit: &mut impl FnMut(&[usize])) {
    if i == counts.len() {
        visit(counts);
        return;
    }
    for c in 0..=budget {
        counts[i] = c;
        multisets(counts, i + 1, budget - c, visit);
    }
    counts[i] = 0;
}
