//! Classification of all codes with weights in a given set.
//!
//! Codes are generated by adding one row at a time: the children of `D` are
//! the codes `C` with a point `p` of multiplicity `m` such that projecting
//! `C` from `p` (dropping the `m` copies of `p`) gives `D`. In the default
//! mode a child is kept only when `p` lies in the orbit of the canonically
//! chosen point of `C`, so every class is produced from exactly one parent.
//! The hash mode instead canonicalizes every child and keeps a global set.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;

use super::canonical::canonical_form_of;
use super::database::SharedDatabase;
use super::extend::{for_each_extension, ExtensionProblem};
use super::{CanonicalForm, CanonicalKey, CodeDatabase};
use crate::error::{Error, Result};
use crate::gf2::ColumnMultiset;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IsoMode {
    #[default]
    Augment,
    Hash,
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoMode::Augment => "augment",
            IsoMode::Hash => "hash",
        })
    }
}

impl FromStr for IsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "augment" => Ok(IsoMode::Augment),
            "hash" => Ok(IsoMode::Hash),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyParams {
    pub delta: usize,
    pub weights: Vec<usize>,
    pub max_n: usize,
    /// Keep only projective codes in the output (the search still runs
    /// through non-projective intermediate codes).
    pub projective: bool,
    pub mode: IsoMode,
    /// Dimension at which subtrees become independent work units.
    pub shard_depth: usize,
    pub jobs: usize,
    /// Stop after this many work units; the rest stay in the frontier.
    pub unit_limit: Option<usize>,
    /// Database file rewritten after every finished work unit.
    pub checkpoint: Option<PathBuf>,
}

impl ClassifyParams {
    pub fn new(delta: usize, weights: &[usize], max_n: usize) -> Self {
        ClassifyParams {
            delta,
            weights: weights.to_vec(),
            max_n,
            projective: false,
            mode: IsoMode::Augment,
            shard_depth: 2,
            jobs: 1,
            unit_limit: None,
            checkpoint: None,
        }
    }

    pub fn projective(mut self, on: bool) -> Self {
        self.projective = on;
        self
    }

    pub fn mode(mut self, mode: IsoMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn shard_depth(mut self, d: usize) -> Self {
        self.shard_depth = d;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Parameters that determine the result, as stored in the database.
    pub fn header(&self) -> BTreeMap<String, String> {
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        BTreeMap::from([
            ("delta".to_string(), self.delta.to_string()),
            ("weights".to_string(), weights.join(",")),
            ("max_n".to_string(), self.max_n.to_string()),
            ("projective".to_string(), self.projective.to_string()),
            ("mode".to_string(), self.mode.to_string()),
        ])
    }

    fn validate(&self) -> Result<()> {
        if self.delta == 0 || self.weights.is_empty() {
            return Err(Error::PreconditionViolated(
                "need a positive delta and a nonempty weight set".into(),
            ));
        }
        if let Some(w) = self
            .weights
            .iter()
            .find(|&&w| w == 0 || w % self.delta != 0)
        {
            return Err(Error::PreconditionViolated(format!(
                "weight {w} is not a positive multiple of {}",
                self.delta
            )));
        }
        Ok(())
    }
}

struct Node {
    k: usize,
    n: usize,
    points: Vec<(u64, usize)>,
}

impl Node {
    fn root() -> Self {
        Node {
            k: 0,
            n: 0,
            points: Vec::new(),
        }
    }

    fn from_key(key: &CanonicalKey) -> Self {
        let mut points: Vec<(u64, usize)> = Vec::new();
        for &c in key.columns.iter().filter(|&&c| c != 0) {
            match points.last_mut() {
                Some(last) if last.0 == c => last.1 += 1,
                _ => points.push((c, 1)),
            }
        }
        Node {
            k: key.k,
            n: key.n,
            points,
        }
    }
}

/// Cheap invariant of a point: its multiplicity and the weighted number of
/// lines through it.
fn point_invariant(points: &[(u64, usize)], i: usize) -> (usize, usize) {
    let (p, m) = points[i];
    let lines = points
        .iter()
        .filter(|q| q.0 != p)
        .map(|&(q, mq)| {
            let r = p ^ q;
            points
                .binary_search_by_key(&r, |x| x.0)
                .map_or(0, |j| mq * points[j].1)
        })
        .sum();
    (m, lines)
}

/// Canonical form of the child if `p0` is its canonical parent point.
fn canonical_child(k: usize, points: &[(u64, usize)], p0: u64) -> Option<CanonicalForm> {
    let inv: Vec<(usize, usize)> = (0..points.len())
        .map(|i| point_invariant(points, i))
        .collect();
    let best = *inv.iter().max()?;
    let i0 = points.binary_search_by_key(&p0, |x| x.0).ok()?;
    if inv[i0] != best {
        return None;
    }
    let cf = canonical_form_of(k, points, 0);
    let cands: Vec<u64> = (0..points.len())
        .filter(|&i| inv[i] == best)
        .map(|i| points[i].0)
        .collect();
    if cands.len() == 1 {
        return Some(cf);
    }
    let star = cands
        .into_iter()
        .max_by_key(|&p| cf.image(p))
        .expect("nonempty");
    cf.same_orbit(p0, star).then_some(cf)
}

/// All children of `node`; with `augment`, only those whose canonical
/// parent is `node`, each class once.
fn children(node: &Node, p: &ClassifyParams, augment: bool) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let p0 = 1u64 << node.k;
    for m in 1..=p.max_n.saturating_sub(node.n) {
        let mut ms = ColumnMultiset::from_counts(node.k, node.points.iter().copied());
        ms.add(0, m);
        let mut problem = ExtensionProblem::from_multiset(&ms, &p.weights)
            .prescribe(0, m)
            .normal_form(true);
        problem.allow_zero = false;
        for_each_extension(&problem, |v| {
            let child = v.to_multiset();
            let pts: Vec<(u64, usize)> = child.counts().iter().map(|(&u, &c)| (u, c)).collect();
            let cf = if augment {
                canonical_child(node.k + 1, &pts, p0)
            } else {
                Some(canonical_form_of(node.k + 1, &pts, 0))
            };
            if let Some(cf) = cf {
                if seen.insert(cf.key.clone()) {
                    out.push(cf);
                }
            }
        })
        .expect("parent codes satisfy the weight constraints");
    }
    out
}

fn keep(key: &CanonicalKey, p: &ClassifyParams) -> bool {
    !p.projective || key.columns.windows(2).all(|w| w[0] != w[1])
}

/// Every code strictly below `node`.
fn subtree(node: &Node, p: &ClassifyParams, out: &mut Vec<(CanonicalKey, BigUint)>) {
    for cf in children(node, p, true) {
        let child = Node::from_key(&cf.key);
        if keep(&cf.key, p) {
            out.push((cf.key, cf.aut_order));
        }
        subtree(&child, p, out);
    }
}

fn expand_to_frontier(node: &Node, p: &ClassifyParams, db: &mut CodeDatabase) {
    if node.k >= p.shard_depth {
        return;
    }
    for cf in children(node, p, true) {
        let child = Node::from_key(&cf.key);
        if keep(&cf.key, p) {
            db.insert(cf.key.clone(), cf.aut_order.clone());
        }
        if child.k >= p.shard_depth {
            db.frontier.insert(cf.key);
        } else {
            expand_to_frontier(&child, p, db);
        }
    }
}

/// Classifies all codes of effective length at most `max_n` whose nonzero
/// weights lie in the weight set. With `resume`, continues an interrupted
/// run from its frontier.
pub fn classify(p: &ClassifyParams, resume: Option<CodeDatabase>) -> Result<CodeDatabase> {
    p.validate()?;
    let header = p.header();
    let db = match resume {
        Some(db) => {
            if db.params != header {
                let diff: Vec<String> = header
                    .iter()
                    .filter(|(k, v)| db.params.get(*k) != Some(v))
                    .map(|(k, v)| {
                        format!(
                            "{k}: stored {:?}, requested {v:?}",
                            db.params.get(k).map_or("", String::as_str)
                        )
                    })
                    .collect();
                return Err(Error::ResumeMismatch(diff.join("; ")));
            }
            db
        }
        None => {
            let mut db = CodeDatabase::new();
            db.params = header;
            if p.mode == IsoMode::Hash {
                classify_hash(p, &mut db);
                if let Some(path) = &p.checkpoint {
                    db.write(path)?;
                }
                return Ok(db);
            }
            let root = Node::root();
            if p.shard_depth == 0 {
                db.frontier.insert(CanonicalKey {
                    n: 0,
                    k: 0,
                    columns: Vec::new(),
                });
            } else {
                expand_to_frontier(&root, p, &mut db);
            }
            db
        }
    };
    if let Some(path) = &p.checkpoint {
        db.write(path)?;
    }

    let queue: Mutex<Vec<CanonicalKey>> = Mutex::new(db.frontier.iter().rev().cloned().collect());
    let started = AtomicUsize::new(0);
    let shared = SharedDatabase(Mutex::new(db));
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..p.jobs.max(1) {
            scope.spawn(|| loop {
                if let Some(limit) = p.unit_limit {
                    if started.fetch_add(1, Ordering::SeqCst) >= limit {
                        return;
                    }
                }
                let Some(unit) = queue.lock().expect("queue lock").pop() else {
                    return;
                };
                let mut found = Vec::new();
                subtree(&Node::from_key(&unit), p, &mut found);
                for (key, aut) in found {
                    shared.insert(key, aut);
                }
                let mut db = shared.0.lock().expect("database lock");
                db.frontier.remove(&unit);
                if let Some(path) = &p.checkpoint {
                    if let Err(e) = db.write(path) {
                        failure.lock().expect("failure lock").get_or_insert(e);
                        return;
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e);
    }
    Ok(shared.0.into_inner().expect("database lock"))
}

/// Level-by-level generation with a global set of canonical keys.
fn classify_hash(p: &ClassifyParams, db: &mut CodeDatabase) {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut level = vec![Node::root()];
    while !level.is_empty() {
        let mut next = Vec::new();
        for node in &level {
            for cf in children(node, p, false) {
                if seen.insert(cf.key.clone()) {
                    if keep(&cf.key, p) {
                        db.insert(cf.key.clone(), cf.aut_order);
                    }
                    next.push(Node::from_key(&cf.key));
                }
            }
        }
        level = next;
    }
}
