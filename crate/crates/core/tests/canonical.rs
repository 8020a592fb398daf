mod common;

use std::collections::BTreeMap;

use divcodes::enumerate::{canonical_form, classify, ClassifyParams};
use divcodes::geometry::{construct_named, NamedCode};
use divcodes::GeneratorMatrix;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

/// Searches for an invertible map sending the columns of `a` onto the
/// columns of `b` (as multisets). The map is pinned down by the images of
/// `k` independent columns of `a`, which must themselves be columns of `b`.
fn equivalent(a: &GeneratorMatrix, b: &GeneratorMatrix) -> bool {
    let k = a.k();
    if (a.n(), k) != (b.n(), b.k()) {
        return false;
    }
    let ca = a.columns();
    let mut target = b.columns();
    target.sort_unstable();
    let mut basis = Vec::new();
    for &c in &ca {
        let mut cand = basis.clone();
        cand.push(c);
        if GeneratorMatrix::from_columns(k, &cand).rank() == cand.len() {
            basis = cand;
        }
    }
    let mut values = target.clone();
    values.dedup();
    // Express every column of `a` in the chosen basis.
    let coords: Vec<u64> = ca
        .iter()
        .map(|&c| {
            (0..1u64 << k)
                .find(|&m| combine(&basis, m) == c)
                .expect("basis spans the columns")
        })
        .collect();
    let mut images = Vec::new();
    search(&values, &coords, &target, k, &mut images)
}

fn combine(vs: &[u64], m: u64) -> u64 {
    (0..vs.len())
        .filter(|&i| m >> i & 1 == 1)
        .fold(0, |acc, i| acc ^ vs[i])
}

fn search(values: &[u64], coords: &[u64], target: &[u64], k: usize, images: &mut Vec<u64>) -> bool {
    if images.len() == k {
        if GeneratorMatrix::from_columns(k, images).rank() < k {
            return false;
        }
        let mut mapped: Vec<u64> = coords.iter().map(|&m| combine(images, m)).collect();
        mapped.sort_unstable();
        return mapped == target;
    }
    for &v in values {
        images.push(v);
        if search(values, coords, target, k, images) {
            return true;
        }
        images.pop();
    }
    false
}

#[test]
fn named_automorphism_orders() {
    for (name, order) in [
        (NamedCode::C1, 18432u32),
        (NamedCode::C2, 1440),
        (NamedCode::C3, 5760),
    ] {
        let cf = canonical_form(&construct_named(name)).unwrap();
        assert_eq!(cf.aut_order, BigUint::from(order), "{name:?}");
    }
}

#[test]
fn keys_separate_exactly_the_inequivalent_pairs() {
    let db = classify(
        &ClassifyParams::new(1, &(1..=10).collect::<Vec<_>>(), 8),
        None,
    )
    .unwrap();
    let mut groups: BTreeMap<(usize, usize, String), Vec<GeneratorMatrix>> = BTreeMap::new();
    for r in db.records() {
        groups
            .entry((r.n(), r.k(), r.distribution().to_string()))
            .or_default()
            .push(r.matrix());
    }
    let shared: Vec<&Vec<GeneratorMatrix>> = groups.values().filter(|g| g.len() > 1).collect();
    assert!(!shared.is_empty());
    let mut rng = common::rng(10);
    for _ in 0..200 {
        let group = shared[rng.gen_range(0..shared.len())];
        let (i, j) = loop {
            let (i, j) = (rng.gen_range(0..group.len()), rng.gen_range(0..group.len()));
            if i != j {
                break (i, j);
            }
        };
        let (a, b) = (&group[i], &common::scramble(&mut rng, &group[j]));
        assert_ne!(
            canonical_form(a).unwrap().key,
            canonical_form(b).unwrap().key
        );
        assert!(
            !equivalent(a, b),
            "{} ~ {}",
            a.to_line(false),
            b.to_line(false)
        );
    }
    let all: Vec<GeneratorMatrix> = db.records().map(|r| r.matrix()).collect();
    for _ in 0..200 {
        let a = all.choose(&mut rng).unwrap();
        let b = common::scramble(&mut rng, a);
        assert_eq!(
            canonical_form(a).unwrap().key,
            canonical_form(&b).unwrap().key
        );
        assert!(equivalent(a, &b));
    }
}

#[test]
fn random_permutations_keep_the_key() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let k = rng.gen_range(1..=6);
        let n = rng.gen_range(k..=30);
        let g = common::random_full_rank(&mut rng, k, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = common::permute_columns(&g, &perm);
        let (a, b) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_eq!(a.key, b.key);
        assert_eq!(a.aut_order, b.aut_order);
    }
}

/// Counts the column permutations that map the code onto itself.
#[test]
fn automorphism_orders_by_brute_force() {
    let mut rng = common::rng(12);
    for _ in 0..30 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k..=6);
        let g = common::random_full_rank(&mut rng, k, n);
        let cols = g.columns();
        let space: Vec<u64> = {
            let mut s: Vec<u64> = (0..1u64 << k).map(|m| g.encode(m).as_u64()).collect();
            s.sort_unstable();
            s
        };
        let mut count = 0u64;
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let permuted: Vec<u64> = p.iter().map(|&j| cols[j]).collect();
            let h = GeneratorMatrix::from_columns(k, &permuted);
            let mut s: Vec<u64> = (0..1u64 << k).map(|m| h.encode(m).as_u64()).collect();
            s.sort_unstable();
            if s == space {
                count += 1;
            }
        });
        assert_eq!(
            canonical_form(&g).unwrap().aut_order,
            BigUint::from(count),
            "{}",
            g.to_line(false)
        );
    }
}

fn permutations(p: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        visit(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, visit);
        p.swap(i, j);
    }
}
