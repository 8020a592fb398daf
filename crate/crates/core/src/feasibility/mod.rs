//! Exact rational analysis of truncated MacWilliams systems.
//!
//! A code with weights in `W` and dimension `k` satisfies, for every
//! `0 <= i <= n`,
//!
//! ```text
//! K_i(0) + sum_{w in W} K_i(w) A_w = 2^k B_i
//! ```
//!
//! Only the first `m` identities are imposed. For a fixed `k` the system is
//! linear in the unknown `A_w` and `B_i`, and its nonnegative integer points
//! are enumerated exhaustively. With `y = 2^k` kept symbolic, selected
//! parameters are moved to the right-hand side and the remaining counts are
//! expressed as affine forms.

mod lengths;
mod linear;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectra::{krawtchouk, macwilliams_rational, WeightDistribution};
use linear::{integer_points, q, Constraint, System, Q};

pub use lengths::{known_length_status, LengthStatus, OPEN_BINARY_R4, OPEN_TERNARY_R2};
pub use num_rational::BigRational;

/// Default cap on the number of lattice points visited per instance.
pub const DEFAULT_SOLUTION_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FeasibilityInstance {
    pub n: usize,
    pub weights: Vec<usize>,
    /// Forces `B_1 = B_2 = 0`.
    pub projective: bool,
    /// Number of identities imposed, starting from `i = 0`.
    pub identities: usize,
    pub dimensions: RangeInclusive<usize>,
    pub solution_limit: usize,
    /// Keep only points whose complete dual distribution `B_0 .. B_n` is
    /// a nonnegative integer vector.
    pub full_dual_check: bool,
}

impl FeasibilityInstance {
    pub fn new(n: usize, weights: &[usize]) -> Self {
        let mut weights = weights.to_vec();
        weights.sort_unstable();
        weights.dedup();
        FeasibilityInstance {
            n,
            weights,
            projective: true,
            identities: 4,
            dimensions: 1..=n.clamp(1, 64),
            solution_limit: DEFAULT_SOLUTION_LIMIT,
            full_dual_check: true,
        }
    }

    pub fn with_dimension(mut self, k: usize) -> Self {
        self.dimensions = k..=k;
        self
    }

    pub fn with_identities(mut self, m: usize) -> Self {
        self.identities = m;
        self
    }

    pub fn with_full_dual_check(mut self, on: bool) -> Self {
        self.full_dual_check = on;
        self
    }

    pub fn with_projective(mut self, projective: bool) -> Self {
        self.projective = projective;
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(&w) = self.weights.iter().find(|&&w| w == 0 || w > self.n) {
            return Err(Error::PreconditionViolated(format!(
                "weight {w} outside 1..={}",
                self.n
            )));
        }
        if self.identities == 0 || self.identities > self.n + 1 {
            return Err(Error::PreconditionViolated(format!(
                "number of identities must lie in 1..={}",
                self.n + 1
            )));
        }
        if *self.dimensions.end() > 64 || *self.dimensions.start() == 0 {
            return Err(Error::PreconditionViolated(
                "dimension range must lie in 1..=64".into(),
            ));
        }
        Ok(())
    }

    /// Indices `i < m` whose `B_i` is an unknown rather than fixed.
    fn unknown_duals(&self) -> Vec<usize> {
        let first = if self.projective { 3 } else { 1 };
        (first..self.identities).collect()
    }

    fn fixed_dual(&self, i: usize) -> Option<u128> {
        match i {
            0 => Some(1),
            1 | 2 if self.projective => Some(0),
            _ => None,
        }
    }
}

/// One nonnegative integer point of a truncated system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleSolution {
    pub k: usize,
    pub distribution: WeightDistribution,
    /// `B_0 .. B_{m-1}`.
    pub dual_prefix: Vec<u128>,
}

impl FeasibleSolution {
    pub fn a(&self, w: usize) -> u128 {
        self.distribution.get(w)
    }

    pub fn b(&self, i: usize) -> Option<u128> {
        self.dual_prefix.get(i).copied()
    }

    pub fn tsv_header(weights: &[usize]) -> String {
        let mut s = String::from("k\tB3");
        for w in weights {
            s.push_str(&format!("\tA{w}"));
        }
        s
    }

    pub fn tsv_row(&self, weights: &[usize]) -> String {
        let b3 = self.b(3).map_or_else(|| "-".to_string(), |b| b.to_string());
        let mut s = format!("{}\t{}", self.k, b3);
        for &w in weights {
            s.push_str(&format!("\t{}", self.a(w)));
        }
        s
    }
}

/// Enumerates every nonnegative integer solution of the first `m`
/// identities, for each dimension in the instance's range.
///
/// Solutions are sorted by `k`, then lexicographically by `(A_w)`.
pub fn solve_truncated_system(inst: &FeasibilityInstance) -> Result<Vec<FeasibleSolution>> {
    inst.validate()?;
    let mut out = Vec::new();
    for k in inst.dimensions.clone() {
        solve_for_dimension(inst, k, &mut out)?;
        if out.len() > inst.solution_limit {
            return Err(Error::SolutionLimitExceeded(inst.solution_limit));
        }
    }
    out.sort_by(|x, y| {
        x.k.cmp(&y.k)
            .then_with(|| x.distribution.counts().cmp(y.distribution.counts()))
    });
    Ok(out)
}

fn solve_for_dimension(
    inst: &FeasibilityInstance,
    k: usize,
    out: &mut Vec<FeasibleSolution>,
) -> Result<()> {
    let n = inst.n;
    let y = Q::from_integer(BigInt::one() << k);
    let duals = inst.unknown_duals();
    let nw = inst.weights.len();
    let cols = nw + duals.len();
    let mut names: Vec<String> = inst.weights.iter().map(|w| format!("A{w}")).collect();
    names.extend(duals.iter().map(|i| format!("B{i}")));

    let mut coeffs = Vec::with_capacity(inst.identities);
    let mut rhs = Vec::with_capacity(inst.identities);
    for i in 0..inst.identities {
        let mut row: Vec<Q> = inst
            .weights
            .iter()
            .map(|&w| q(krawtchouk(i, w, n)))
            .collect();
        row.extend(
            duals
                .iter()
                .map(|&d| if d == i { -y.clone() } else { Q::zero() }),
        );
        let fixed = inst.fixed_dual(i).map_or(Q::zero(), |b| q(b as i128) * &y);
        coeffs.push(row);
        rhs.push(vec![fixed - q(krawtchouk(i, 0, n))]);
    }
    let Some(solved) = (System { coeffs, rhs }).solve() else {
        return Ok(());
    };
    let free = &solved.free;
    let constraints: Vec<Constraint> = solved
        .exprs
        .iter()
        .map(|(t, f)| Constraint {
            coeffs: f.clone(),
            constant: t[0].clone(),
        })
        .collect();
    let free_names: Vec<String> = free.iter().map(|&f| names[f].clone()).collect();
    let mut failure = None;
    integer_points(
        free.len(),
        &constraints,
        &free_names,
        inst.solution_limit,
        |point| {
            if failure.is_some() {
                return;
            }
            let mut values = Vec::with_capacity(cols);
            for (t, f) in &solved.exprs {
                let mut v = t[0].clone();
                for (c, p) in f.iter().zip(point) {
                    v += c * Q::from_integer(p.clone());
                }
                if !v.is_integer() || v.is_negative() {
                    return;
                }
                let Some(v) = v.to_integer().to_u128() else {
                    failure = Some(names[values.len()].clone());
                    return;
                };
                values.push(v);
            }
            let mut counts = vec![0u128; n + 1];
            counts[0] = 1;
            for (j, &w) in inst.weights.iter().enumerate() {
                counts[w] = values[j];
            }
            let dual_prefix = (0..inst.identities)
                .map(|i| {
                    inst.fixed_dual(i).unwrap_or_else(|| {
                        let pos = duals.iter().position(|&d| d == i).unwrap();
                        values[nw + pos]
                    })
                })
                .collect();
            let distribution = WeightDistribution::from_counts(counts);
            if inst.full_dual_check
                && macwilliams_rational(&distribution, k)
                    .iter()
                    .any(|b| !b.is_integer() || b.is_negative())
            {
                return;
            }
            out.push(FeasibleSolution {
                k,
                distribution,
                dual_prefix,
            });
        },
    )?;
    if let Some(name) = failure {
        return Err(Error::UnboundedPolytope(name));
    }
    Ok(())
}

/// Removes solutions with `A_w > B_w` for some `w` in `check`, where `B` is
/// the exact MacWilliams transform of the full distribution. A
/// non-integral or negative `B` also removes the solution.
pub fn filter_self_orthogonality(
    solutions: Vec<FeasibleSolution>,
    check: &[usize],
) -> Vec<FeasibleSolution> {
    solutions
        .into_iter()
        .filter(|s| {
            let b = macwilliams_rational(&s.distribution, s.k);
            check.iter().all(|&w| {
                let Some(bw) = b.get(w) else { return true };
                bw.is_integer() && !bw.is_negative() && q(s.a(w) as i128) <= *bw
            })
        })
        .collect()
}

/// A symbolic quantity on the right-hand side of a parametric solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    One,
    Y,
    A(usize),
    /// `y * B_i`.
    YB(usize),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::One => f.write_str("1"),
            Term::Y => f.write_str("y"),
            Term::A(w) => write!(f, "A{w}"),
            Term::YB(i) => write!(f, "y*B{i}"),
        }
    }
}

/// Affine expressions for the dependent counts in terms of the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricSolution {
    pub terms: Vec<Term>,
    /// Dependent weight and its coefficients, aligned with `terms`.
    pub expressions: Vec<(usize, Vec<BigRational>)>,
}

impl ParametricSolution {
    pub fn expression(&self, w: usize) -> Option<&[BigRational]> {
        self.expressions
            .iter()
            .find(|(v, _)| *v == w)
            .map(|(_, c)| c.as_slice())
    }

    pub fn coefficient(&self, w: usize, term: Term) -> Option<&BigRational> {
        let t = self.terms.iter().position(|&x| x == term)?;
        self.expression(w).map(|c| &c[t])
    }

    /// Evaluates every dependent count at `y` with the given parameter values.
    pub fn evaluate(
        &self,
        y: &BigInt,
        a: &BTreeMap<usize, BigInt>,
        b: &BTreeMap<usize, BigInt>,
    ) -> Result<Vec<(usize, BigRational)>> {
        let values = self
            .terms
            .iter()
            .map(|t| {
                let v = match t {
                    Term::One => BigInt::one(),
                    Term::Y => y.clone(),
                    Term::A(w) => a.get(w).cloned().ok_or_else(|| missing(*t))?,
                    Term::YB(i) => y * b.get(i).cloned().ok_or_else(|| missing(*t))?,
                };
                Ok(Q::from_integer(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .expressions
            .iter()
            .map(|(w, c)| {
                let v = c.iter().zip(&values).map(|(c, v)| c * v).sum();
                (*w, v)
            })
            .collect())
    }

    pub fn render(&self, w: usize) -> Option<String> {
        let coeffs = self.expression(w)?;
        let mut s = String::new();
        for (c, t) in coeffs.iter().zip(&self.terms) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mag = c.abs();
            match (t, mag.is_one()) {
                (Term::One, _) => s.push_str(&mag.to_string()),
                (_, true) => s.push_str(&t.to_string()),
                _ => s.push_str(&format!("{mag}*{t}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        Some(s)
    }
}

fn missing(t: Term) -> Error {
    Error::PreconditionViolated(format!("no value supplied for parameter {t}"))
}

/// Solves the first `m` identities with `y = 2^k` symbolic.
///
/// `params_a` are the weights whose counts stay free; every unknown `B_i`
/// must appear in `params_b`, since `y * B_i` is carried as a single term.
/// The remaining counts must be uniquely determined.
pub fn solve_parametric(
    inst: &FeasibilityInstance,
    params_a: &[usize],
    params_b: &[usize],
) -> Result<ParametricSolution> {
    inst.validate()?;
    let n = inst.n;
    let duals = inst.unknown_duals();
    if let Some(i) = duals.iter().find(|i| !params_b.contains(i)) {
        return Err(Error::PreconditionViolated(format!(
            "B{i} must be a parameter"
        )));
    }
    if let Some(w) = params_a.iter().find(|w| !inst.weights.contains(w)) {
        return Err(Error::PreconditionViolated(format!(
            "parameter A{w} is not an allowed weight"
        )));
    }
    let dependent: Vec<usize> = inst
        .weights
        .iter()
        .copied()
        .filter(|w| !params_a.contains(w))
        .collect();
    let mut terms = vec![Term::One];
    terms.extend(params_a.iter().map(|&w| Term::A(w)));
    terms.push(Term::Y);
    terms.extend(params_b.iter().map(|&i| Term::YB(i)));
    let at = |t: Term| terms.iter().position(|&x| x == t).unwrap();

    let mut coeffs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..inst.identities {
        coeffs.push(dependent.iter().map(|&w| q(krawtchouk(i, w, n))).collect());
        let mut r = vec![Q::zero(); terms.len()];
        r[at(Term::One)] = q(-krawtchouk(i, 0, n));
        for &w in params_a {
            r[at(Term::A(w))] = q(-krawtchouk(i, w, n));
        }
        match inst.fixed_dual(i) {
            Some(b) => r[at(Term::Y)] = q(b as i128),
            None => r[at(Term::YB(i))] = Q::one(),
        }
        rhs.push(r);
    }
    let solved = (System { coeffs, rhs })
        .solve()
        .ok_or_else(|| Error::PreconditionViolated("identities are inconsistent".into()))?;
    if !solved.free.is_empty() {
        let names: Vec<String> = solved
            .free
            .iter()
            .map(|&f| format!("A{}", dependent[f]))
            .collect();
        return Err(Error::PreconditionViolated(format!(
            "counts {} are not determined by the parameters",
            names.join(", ")
        )));
    }
    let expressions = dependent
        .iter()
        .zip(solved.exprs)
        .map(|(&w, (t, _))| (w, t))
        .collect();
    Ok(ParametricSolution { terms, expressions })
}

fn instance_59() -> FeasibilityInstance {
    FeasibilityInstance::new(59, &[8, 16, 24, 32, 40])
}

/// The parametric solution of the first four identities for a projective
/// code of length 59 with weights in `{8, 16, 24, 32, 40}`, in the
/// parameters `A8`, `y` and `B3`.
pub fn parametric_solution_59() -> ParametricSolution {
    solve_parametric(&instance_59(), &[8], &[3]).expect("length 59 system is determined")
}

/// `(A16, A24, A32, A40)` at the given `y`, `A8` and `B3`.
pub fn parametric_59(y: &BigInt, a8: &BigInt, b3: &BigInt) -> [BigRational; 4] {
    let sol = parametric_solution_59();
    let a = BTreeMap::from([(8, a8.clone())]);
    let b = BTreeMap::from([(3, b3.clone())]);
    let vals = sol.evaluate(y, &a, &b).expect("all parameters supplied");
    let get = |w: usize| vals.iter().find(|(v, _)| *v == w).unwrap().1.clone();
    [get(16), get(24), get(32), get(40)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
    Equals,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equals => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedBound {
    pub name: &'static str,
    pub relation: Relation,
    pub value: BigRational,
}

impl fmt::Display for DerivedBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.name, self.relation, self.value)
    }
}

/// Affine form over `(1, A8, y*B3)` at a fixed `y`.
#[derive(Clone, Debug)]
struct Form59 {
    c: Q,
    a8: Q,
    yb3: Q,
}

impl Form59 {
    fn of(sol: &ParametricSolution, w: usize, y: &Q) -> Form59 {
        let get = |t| sol.coefficient(w, t).unwrap().clone();
        Form59 {
            c: get(Term::One) + get(Term::Y) * y,
            a8: get(Term::A(8)),
            yb3: get(Term::YB(3)),
        }
    }

    fn plus(&self, other: &Form59, scale: i128) -> Form59 {
        Form59 {
            c: &self.c + &other.c * q(scale),
            a8: &self.a8 + &other.a8 * q(scale),
            yb3: &self.yb3 + &other.yb3 * q(scale),
        }
    }
}

/// Bounds implied by nonnegativity of the length-59 parametric solution at
/// a fixed `y = 2^k`, recomputed from the solved forms:
///
/// - `B3 >=` from `A16 >= 0` with `A8 >= 0`,
/// - `B3 <=` from `A16 + 4 A40 >= 0` (independent of `A8`),
/// - `A8 <=` from `A16 + A40 >= 0` (independent of `B3`),
/// - `A8+A16 <=` by inserting the upper bound on `B3`,
/// - the value of `A16+A40` at `A8 = 0`.
pub fn derived_inequalities_59(y: &BigInt) -> Vec<DerivedBound> {
    let sol = parametric_solution_59();
    let yq = Q::from_integer(y.clone());
    let a16 = Form59::of(&sol, 16, &yq);
    let a40 = Form59::of(&sol, 40, &yq);

    // A16 >= 0 at A8 = 0: c + yb3 * y * B3 >= 0 with yb3 > 0.
    let b3_lower = -&a16.c / (&a16.yb3 * &yq);
    let mixed = a16.plus(&a40, 4);
    debug_assert!(mixed.a8.is_zero() && mixed.yb3.is_negative());
    let b3_upper = -&mixed.c / (&mixed.yb3 * &yq);
    let sum = a16.plus(&a40, 1);
    debug_assert!(sum.yb3.is_zero() && sum.a8.is_negative());
    let a8_upper = -&sum.c / &sum.a8;
    // A8 + A16 = c + (1 + a8) A8 + yb3 * y * B3, decreasing in A8.
    let a8_plus_a16 = &a16.c + &a16.yb3 * &yq * &b3_upper;
    debug_assert!((Q::one() + &a16.a8).is_negative());

    vec![
        DerivedBound {
            name: "B3",
            relation: Relation::AtLeast,
            value: b3_lower,
        },
        DerivedBound {
            name: "B3",
            relation: Relation::AtMost,
            value: b3_upper,
        },
        DerivedBound {
            name: "A8",
            relation: Relation::AtMost,
            value: a8_upper,
        },
        DerivedBound {
            name: "A8+A16",
            relation: Relation::AtMost,
            value: a8_plus_a16,
        },
        DerivedBound {
            name: "A16+A40|A8=0",
            relation: Relation::Equals,
            value: sum.c,
        },
    ]
}

/// Largest `k` with `2^k - (n + 1) <= C(n, 2)`.
pub fn secant_dimension_bound(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::PreconditionViolated(
            "length must be at least 2".into(),
        ));
    }
    let secants = (n as u128) * (n as u128 - 1) / 2;
    let mut k = 0;
    while (1u128 << (k + 1)) <= secants + n as u128 + 1 {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn length_19_raw() -> Vec<FeasibleSolution> {
        let inst = FeasibilityInstance::new(19, &[4, 8, 12, 16]);
        solve_truncated_system(&inst).unwrap()
    }

    fn key(s: &FeasibleSolution) -> (usize, [u128; 4], u128) {
        (s.k, [s.a(4), s.a(8), s.a(12), s.a(16)], s.b(3).unwrap())
    }

    #[test]
    fn length_19_raw_solutions() {
        let got: Vec<_> = length_19_raw().iter().map(key).collect();
        assert_eq!(
            got,
            vec![
                (7, [0, 78, 48, 1], 1),
                (7, [1, 75, 51, 0], 5),
                (8, [4, 150, 100, 1], 1),
                (8, [5, 147, 103, 0], 3),
            ]
        );
    }

    #[test]
    fn without_full_dual_check_every_dimension_survives() {
        let inst = FeasibilityInstance::new(19, &[4, 8, 12, 16]).with_full_dual_check(false);
        let sols = solve_truncated_system(&inst).unwrap();
        assert!(sols.iter().any(|s| s.k == 19));
        assert!(sols.len() > 4);
    }

    #[test]
    fn length_19_filter() {
        let raw = length_19_raw();
        let b = macwilliams_rational(&raw[3].distribution, 8);
        assert_eq!(b[4], q(2));
        let kept: Vec<_> = filter_self_orthogonality(raw, &[4])
            .iter()
            .map(key)
            .collect();
        assert_eq!(kept.len(), 3);
        assert!(kept.iter().all(|k| k.1 != [5, 147, 103, 0]));
    }

    #[test]
    fn length_59_dimension_10() {
        let inst = FeasibilityInstance::new(59, &[8, 16, 24, 32]).with_dimension(10);
        let sols = solve_truncated_system(&inst).unwrap();
        assert_eq!(sols.len(), 1);
        let s = &sols[0];
        assert_eq!([s.a(8), s.a(16), s.a(24), s.a(32)], [0, 2, 312, 709]);
    }

    #[test]
    fn single_identity_counts_splits() {
        let inst = FeasibilityInstance::new(8, &[4, 8])
            .with_identities(1)
            .with_dimension(3)
            .with_full_dual_check(false);
        assert_eq!(solve_truncated_system(&inst).unwrap().len(), 8);
    }

    #[test]
    fn parametric_matches_closed_forms() {
        let sol = parametric_solution_59();
        let expect: [(usize, [Q; 4]); 4] = [
            (16, [q(-10), q(-4), r(-45, 4096), r(1, 4096)]),
            (24, [q(20), q(6), r(1447, 4096), r(-3, 4096)]),
            (32, [q(-15), q(-4), r(2617, 4096), r(3, 4096)]),
            (40, [q(4), q(1), r(77, 4096), r(-1, 4096)]),
        ];
        assert_eq!(sol.terms, vec![Term::One, Term::A(8), Term::Y, Term::YB(3)]);
        for (w, coeffs) in expect {
            assert_eq!(sol.expression(w).unwrap(), &coeffs, "A{w}");
        }
        let ysum: Q = [16, 24, 32, 40]
            .iter()
            .map(|&w| sol.coefficient(w, Term::Y).unwrap().clone())
            .sum();
        let bsum: Q = [16, 24, 32, 40]
            .iter()
            .map(|&w| sol.coefficient(w, Term::YB(3)).unwrap().clone())
            .sum();
        assert_eq!(ysum, q(1));
        assert_eq!(bsum, q(0));
    }

    #[test]
    fn parametric_59_values() {
        let v = parametric_59(&BigInt::from(1024), &BigInt::zero(), &BigInt::from(93));
        assert_eq!(v, [q(2), q(312), q(709), q(0)]);
        for (y, a8, b3) in [(512, 3, 17), (2048, 0, 70), (4096, 5, 100)] {
            let (y, a8, b3) = (BigInt::from(y), BigInt::from(a8), BigInt::from(b3));
            let v = parametric_59(&y, &a8, &b3);
            let total: Q = v.iter().cloned().sum::<Q>() + q(1) + Q::from_integer(a8.clone());
            assert_eq!(total, Q::from_integer(y.clone()));
            let expect = q(-6) - q(3) * Q::from_integer(a8) + Q::from_integer(y) / q(128);
            assert_eq!(&v[0] + &v[3], expect);
        }
    }

    #[test]
    fn derived_bounds() {
        let at = |y: i128| derived_inequalities_59(&BigInt::from(y));
        let b = at(1024);
        assert_eq!(b[0].value, q(45) + r(40960, 1024));
        assert_eq!(b[1].value, q(87) + r(2, 3) + r(8192, 1024));
        assert_eq!(b[2].value, r(2, 3));
        assert_eq!(b[3].value, r(8, 3));
        assert_eq!(b[4].value, q(2));
        assert_eq!(at(2048)[3].value, r(40, 3));
        assert_eq!(at(768)[4].value, q(0));
    }

    #[test]
    fn secant_bound() {
        assert_eq!(secant_dimension_bound(59).unwrap(), 10);
        assert_eq!(secant_dimension_bound(3).unwrap(), 2);
        assert_eq!(secant_dimension_bound(2).unwrap(), 2);
    }
}
