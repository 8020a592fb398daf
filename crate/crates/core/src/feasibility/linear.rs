//! Exact rational elimination and integer-point enumeration in small
//! polytopes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) type Q = BigRational;

pub(crate) fn q(v: i128) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Linear system `A x = R` where each right-hand side entry is itself a
/// vector over a fixed list of symbolic terms.
pub(crate) struct System {
    pub coeffs: Vec<Vec<Q>>,
    pub rhs: Vec<Vec<Q>>,
}

/// Solved form: every unknown is `rhs_terms + sum_f coeff_f * free_f`.
pub(crate) struct Solved {
    /// Indices of free unknowns, ascending.
    pub free: Vec<usize>,
    /// For each unknown, its expression: term coefficients and free-variable
    /// coefficients (aligned with `free`).
    pub exprs: Vec<(Vec<Q>, Vec<Q>)>,
}

impl System {
    /// Row reduction. Returns `None` when the system is inconsistent in a way
    /// that does not depend on the terms (a zero row with a nonzero right-hand
    /// side).
    pub fn solve(&self) -> Option<Solved> {
        let rows = self.coeffs.len();
        let cols = self.coeffs.first().map_or(0, Vec::len);
        let terms = self.rhs.first().map_or(0, Vec::len);
        let mut a = self.coeffs.clone();
        let mut r = self.rhs.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            r.swap(row, p);
            let inv = Q::one() / a[row][col].clone();
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for x in r[row].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    let (pa, pr) = (a[row].clone(), r[row].clone());
                    for (x, p) in a[i].iter_mut().zip(&pa) {
                        *x -= &f * p;
                    }
                    for (x, p) in r[i].iter_mut().zip(&pr) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if r[row..].iter().any(|rr| rr.iter().any(|x| !x.is_zero())) {
            return None;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut exprs: Vec<(Vec<Q>, Vec<Q>)> = vec![(Vec::new(), Vec::new()); cols];
        for (fi, &f) in free.iter().enumerate() {
            let mut fc = vec![Q::zero(); free.len()];
            fc[fi] = Q::one();
            exprs[f] = (vec![Q::zero(); terms], fc);
        }
        for (pr, &pc) in pivots.iter().enumerate() {
            let fc = free.iter().map(|&f| -a[pr][f].clone()).collect();
            exprs[pc] = (r[pr].clone(), fc);
        }
        Some(Solved { free, exprs })
    }
}

/// `coeffs . t + constant >= 0`.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

fn eliminate_last(cs: &[Constraint]) -> Vec<Constraint> {
    let d = cs.first().map_or(0, |c| c.coeffs.len());
    let last = d - 1;
    let mut keep = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for c in cs {
        let v = &c.coeffs[last];
        if v.is_zero() {
            keep.push(Constraint {
                coeffs: c.coeffs[..last].to_vec(),
                constant: c.constant.clone(),
            });
        } else if v.is_positive() {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    for p in &pos {
        for n in &neg {
            // Scale so the eliminated coefficients cancel.
            let sp = -n.coeffs[last].clone();
            let sn = p.coeffs[last].clone();
            let coeffs = (0..last)
                .map(|i| &p.coeffs[i] * &sp + &n.coeffs[i] * &sn)
                .collect();
            keep.push(Constraint {
                coeffs,
                constant: &p.constant * &sp + &n.constant * &sn,
            });
        }
    }
    keep
}

fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Enumerates every integer point of `{t : constraints}` in lexicographic
/// order. Each dimension must be bounded; otherwise the error names the
/// unbounded variable.
pub(crate) fn integer_points(
    dims: usize,
    constraints: &[Constraint],
    names: &[String],
    limit: usize,
    mut visit: impl FnMut(&[BigInt]),
) -> Result<()> {
    if dims == 0 {
        if constraints.iter().all(|c| !c.constant.is_negative()) {
            visit(&[]);
        }
        return Ok(());
    }
    // projections[i] constrains t_0..=t_i.
    let mut projections = vec![constraints.to_vec()];
    for _ in 1..dims {
        let next = eliminate_last(projections.last().unwrap());
        projections.push(next);
    }
    projections.reverse();
    let mut point: Vec<BigInt> = Vec::with_capacity(dims);
    let mut count = 0usize;
    descend(
        &projections,
        names,
        &mut point,
        limit,
        &mut count,
        &mut visit,
    )
}

fn descend(
    projections: &[Vec<Constraint>],
    names: &[String],
    point: &mut Vec<BigInt>,
    limit: usize,
    count: &mut usize,
    visit: &mut impl FnMut(&[BigInt]),
) -> Result<()> {
    let level = point.len();
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for c in &projections[level] {
        let mut constant = c.constant.clone();
        for (i, v) in point.iter().enumerate() {
            constant += &c.coeffs[i] * Q::from_integer(v.clone());
        }
        let a = &c.coeffs[level];
        if a.is_zero() {
            if constant.is_negative() {
                return Ok(());
            }
            continue;
        }
        let bound = -constant / a.clone();
        if a.is_positive() {
            if lo.as_ref().is_none_or(|l| &bound > l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|h| &bound < h) {
            hi = Some(bound);
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::UnboundedPolytope(names[level].clone()));
    };
    let mut t = ceil(&lo);
    let end = floor(&hi);
    while t <= end {
        point.push(t.clone());
        if level + 1 == projections.len() {
            *count += 1;
            if *count > limit {
                return Err(Error::SolutionLimitExceeded(limit));
            }
            visit(point);
        } else {
            descend(projections, names, point, limit, count, visit)?;
        }
        point.pop();
        t += 1;
    }
    Ok(())
}
