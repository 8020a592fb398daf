//! Canonical forms of binary codes under column permutation.
//!
//! A code of full rank `k` is a multiset of columns in `F_2^k`; two codes
//! are equivalent iff some `A in GL(k, 2)` maps one multiset onto the other.
//! The canonical form is the lexicographically least sorted column list over
//! all choices of basis.
//!
//! Choosing the basis vectors `b_0, b_1, ...` one at a time, the columns with
//! values in `[2^j, 2^(j+1))` are exactly the images of the points in the
//! coset `b_j + <b_0, ..., b_(j-1)>`, so the sorted list is compared one
//! segment per level. Each `b_j` is a column point that minimizes its
//! segment. The search over the remaining choices is a backtrack with
//! automorphism pruning: leaves that reproduce the first or the best leaf
//! yield automorphisms, which prune equivalent siblings and give the group
//! order through the orbit-stabilizer chain along the first path.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf2::GeneratorMatrix;

/// Total-order identifier of an equivalence class: the canonical column
/// list together with the length and dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub n: usize,
    pub k: usize,
    /// Canonical columns in ascending order, zero columns first.
    pub columns: Vec<u64>,
}

impl CanonicalKey {
    /// 64-bit FNV-1a digest of `(n, k, columns)`.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.n as u64);
        feed(self.k as u64);
        for &c in &self.columns {
            feed(c);
        }
        h
    }

    pub fn to_matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix::from_columns(self.k, &self.columns)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] {:016x}", self.n, self.k, self.digest())
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// Order of the group of column permutations preserving the code.
    pub aut_order: BigUint,
    /// Canonical basis: `basis[j]` is the original vector sent to `1 << j`.
    pub basis: Vec<u64>,
    points: Vec<u64>,
    images: Vec<u64>,
    orbit: Vec<usize>,
}

impl CanonicalForm {
    /// Distinct nonzero columns of the input.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    fn index(&self, p: u64) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    /// Image of the column point `p` in the canonical basis.
    pub fn image(&self, p: u64) -> Option<u64> {
        self.index(p).map(|i| self.images[i])
    }

    /// Smallest point of the orbit of `p` under the stabilizer of the
    /// column multiset in `GL(k, 2)`.
    pub fn orbit_representative(&self, p: u64) -> Option<u64> {
        self.index(p).map(|i| self.points[self.orbit[i]])
    }

    pub fn same_orbit(&self, p: u64, q: u64) -> bool {
        match (self.index(p), self.index(q)) {
            (Some(a), Some(b)) => self.orbit[a] == self.orbit[b],
            _ => false,
        }
    }
}

/// Canonical form of a full-rank generator matrix.
pub fn canonical_form(g: &GeneratorMatrix) -> Result<CanonicalForm> {
    let rank = g.rank();
    if rank != g.k() {
        return Err(Error::RankDeficient { rank, rows: g.k() });
    }
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for c in g.columns() {
        *counts.entry(c).or_insert(0) += 1;
    }
    let zeros = counts.remove(&0).unwrap_or(0);
    let mut pts: Vec<(u64, usize)> = counts.into_iter().collect();
    pts.sort_unstable();
    Ok(canonical_form_of(g.k(), &pts, zeros))
}

/// Canonical form of the multiset with the given nonzero points (ascending,
/// spanning `F_2^k`) and `zeros` zero columns.
pub(crate) fn canonical_form_of(k: usize, pts: &[(u64, usize)], zeros: usize) -> CanonicalForm {
    let points: Vec<u64> = pts.iter().map(|p| p.0).collect();
    let mult: Vec<usize> = pts.iter().map(|p| p.1).collect();
    let n = zeros + mult.iter().sum::<usize>();
    let mut s = explore(k, &points, &mult);
    let first = s.first.take().expect("search reaches a leaf");
    let best = s.best.take().unwrap_or_else(|| first.clone());
    let mut order = BigUint::one();
    for d in 0..k {
        let fixed = &first.basis[..d];
        let uf = s.orbits(fixed);
        let root = uf.find_const(first.basis[d]);
        let size = (0..points.len())
            .filter(|&i| uf.find_const(i) == root)
            .count();
        order *= BigUint::from(size);
    }
    for &m in &mult {
        order *= factorial(m);
    }
    order *= factorial(zeros);

    let uf = s.orbits(&[]);
    let mut orbit: Vec<usize> = (0..points.len()).map(|i| uf.find_const(i)).collect();
    // Replace union-find roots by the smallest member.
    let mut smallest: HashMap<usize, usize> = HashMap::new();
    for (i, &r) in orbit.iter().enumerate() {
        smallest.entry(r).or_insert(i);
    }
    for r in orbit.iter_mut() {
        *r = smallest[r];
    }

    let mut columns = vec![0u64; zeros];
    for (j, seg) in best.segs.iter().enumerate() {
        for &(v, c) in seg {
            columns.extend(std::iter::repeat_n((1u64 << j) | v, c));
        }
    }
    CanonicalForm {
        key: CanonicalKey { n, k, columns },
        aut_order: order,
        basis: best.basis.iter().map(|&i| points[i]).collect(),
        images: best.coords.clone(),
        points,
        orbit,
    }
}

fn explore<'a>(k: usize, points: &[u64], mult: &'a [usize]) -> Search<'a> {
    let mut s = Search {
        k,
        mult,
        first: None,
        best: None,
        gens: Vec::new(),
        path: Vec::with_capacity(k),
        segs: Vec::with_capacity(k),
    };
    let root = Node {
        residue: points.to_vec(),
        coords: vec![0; points.len()],
    };
    s.search(&root, true);
    s
}

/// Canonical list of `(image, label)` pairs for distinct points carrying
/// labels; two labeled sets get equal lists iff some element of `GL(k, 2)`
/// maps one onto the other preserving labels. Points must span `F_2^k`.
pub(crate) fn canonical_labeled(k: usize, pts: &[(u64, usize)]) -> Vec<(u64, usize)> {
    let points: Vec<u64> = pts.iter().map(|p| p.0).collect();
    let labels: Vec<usize> = pts.iter().map(|p| p.1).collect();
    let mut s = explore(k, &points, &labels);
    let best = s
        .best
        .take()
        .or(s.first.take())
        .expect("search reaches a leaf");
    best.segs
        .iter()
        .enumerate()
        .flat_map(|(j, seg)| seg.iter().map(move |&(v, l)| ((1u64 << j) | v, l)))
        .collect()
}

fn factorial(m: usize) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Coset values `(coordinates relative to b_j, multiplicity)`, ascending.
type Segment = Vec<(u64, usize)>;

/// Order in which smaller means a lexicographically smaller column list.
fn cmp_segment(a: &Segment, b: &Segment) -> Ordering {
    for i in 0.. {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(&(va, ca)), Some(&(vb, cb))) => {
                if va != vb {
                    return va.cmp(&vb);
                }
                if ca != cb {
                    return cb.cmp(&ca);
                }
            }
        }
    }
    unreachable!()
}

#[derive(Clone)]
struct Leaf {
    basis: Vec<usize>,
    segs: Vec<Segment>,
    /// Coordinates of every point in this leaf's basis.
    coords: Vec<u64>,
}

struct Node {
    /// Each point reduced modulo the span of the chosen basis prefix, with
    /// zeros at all pivot positions; zero iff the point lies in the span.
    residue: Vec<u64>,
    /// Coordinates of `point - residue` in the chosen basis prefix.
    coords: Vec<u64>,
}

impl Node {
    /// Candidates for the next basis vector together with their common
    /// (minimal) segment.
    fn children(&self, mult: &[usize]) -> (Segment, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.residue.len())
            .filter(|&i| self.residue[i] != 0)
            .collect();
        order.sort_by_key(|&i| (self.residue[i], i));
        let mut best: Option<Segment> = None;
        let mut cands = Vec::new();
        for class in order.chunk_by(|&a, &b| self.residue[a] == self.residue[b]) {
            for &b in class {
                let mut seg: Segment = class
                    .iter()
                    .map(|&q| (self.coords[q] ^ self.coords[b], mult[q]))
                    .collect();
                seg.sort_unstable();
                match best.as_ref().map(|s| cmp_segment(&seg, s)) {
                    Some(Ordering::Greater) => {}
                    Some(Ordering::Equal) => cands.push(b),
                    _ => {
                        best = Some(seg);
                        cands.clear();
                        cands.push(b);
                    }
                }
            }
        }
        (best.unwrap_or_default(), cands)
    }

    fn child(&self, b: usize, level: usize) -> Node {
        let rb = self.residue[b];
        let pivot = rb.trailing_zeros();
        let cb = self.coords[b];
        let mut residue = self.residue.clone();
        let mut coords = self.coords.clone();
        for q in 0..residue.len() {
            if residue[q] >> pivot & 1 == 1 {
                residue[q] ^= rb;
                coords[q] ^= cb | (1 << level);
            }
        }
        Node { residue, coords }
    }
}

struct Search<'a> {
    k: usize,
    mult: &'a [usize],
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as permutations of point indices.
    gens: Vec<Vec<u32>>,
    path: Vec<usize>,
    segs: Vec<Segment>,
}

impl Search<'_> {
    /// Compares the current partial list, extended by `seg`, with the best
    /// leaf's list truncated to the same depth.
    fn vs_best(&self, seg: Option<&Segment>) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Equal;
        };
        self.segs
            .iter()
            .chain(seg)
            .zip(&best.segs)
            .map(|(a, b)| cmp_segment(a, b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Explores the subtree below `node`; returns the depth to resume at.
    fn search(&mut self, node: &Node, eq_first: bool) -> usize {
        let depth = self.path.len();
        if depth == self.k {
            return self.leaf(node, eq_first);
        }
        let (seg, cands) = node.children(self.mult);
        let eq_first = match &self.first {
            Some(f) => eq_first && seg == f.segs[depth],
            None => true,
        };
        if !eq_first && self.vs_best(Some(&seg)) == Ordering::Greater {
            return depth;
        }
        self.segs.push(seg);
        let mut explored: Vec<usize> = Vec::new();
        let mut uf_gens = usize::MAX;
        let mut uf = UnionFind::new(0);
        for &c in &cands {
            if !explored.is_empty() {
                if !eq_first && self.vs_best(None) == Ordering::Greater {
                    break;
                }
                if uf_gens != self.gens.len() {
                    uf = self.orbits(&self.path);
                    uf_gens = self.gens.len();
                }
                let rc = uf.find(c);
                if explored.iter().any(|&e| uf.find(e) == rc) {
                    continue;
                }
            }
            explored.push(c);
            let child = node.child(c, depth);
            self.path.push(c);
            let ret = self.search(&child, eq_first);
            self.path.pop();
            if ret < depth {
                self.segs.pop();
                return ret;
            }
        }
        self.segs.pop();
        depth
    }

    fn leaf(&mut self, node: &Node, eq_first: bool) -> usize {
        let leaf = Leaf {
            basis: self.path.clone(),
            segs: self.segs.clone(),
            coords: node.coords.clone(),
        };
        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return self.k;
        };
        if eq_first {
            let d = divergence(&first.basis, &leaf.basis);
            let g = automorphism(first, &leaf);
            self.gens.push(g);
            return d;
        }
        match self.vs_best(None) {
            Ordering::Equal => {
                let best = self.best.as_ref().unwrap();
                let d = divergence(&best.basis, &leaf.basis);
                let g = automorphism(best, &leaf);
                self.gens.push(g);
                d
            }
            Ordering::Less => {
                self.best = Some(leaf);
                self.k
            }
            Ordering::Greater => self.k,
        }
    }

    /// Orbits of the generators fixing every point index in `fixed`.
    fn orbits(&self, fixed: &[usize]) -> UnionFind {
        let n = self.mult.len();
        let mut uf = UnionFind::new(n);
        for g in &self.gens {
            if fixed.iter().all(|&x| g[x] as usize == x) {
                for (i, &j) in g.iter().enumerate() {
                    uf.union(i, j as usize);
                }
            }
        }
        uf
    }
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The map sending `from`'s basis onto `to`'s basis, as a permutation of
/// point indices.
fn automorphism(from: &Leaf, to: &Leaf) -> Vec<u32> {
    let by_coord: HashMap<u64, u32> = to
        .coords
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();
    from.coords.iter().map(|c| by_coord[c]).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{construct_named, NamedCode};

    fn simplex(k: usize) -> GeneratorMatrix {
        let cols: Vec<u64> = (1..1u64 << k).collect();
        GeneratorMatrix::from_columns(k, &cols)
    }

    fn gl_order(k: u32) -> BigUint {
        (0..k).fold(BigUint::one(), |acc, i| {
            acc * BigUint::from((1u64 << k) - (1u64 << i))
        })
    }

    #[test]
    fn simplex_codes() {
        for k in 1..=5 {
            let cf = canonical_form(&simplex(k)).unwrap();
            assert_eq!(cf.aut_order, gl_order(k as u32), "k={k}");
            let expect: Vec<u64> = (1..1u64 << k).collect();
            assert_eq!(cf.key.columns, expect);
        }
    }

    #[test]
    fn repetition_code() {
        let g = GeneratorMatrix::from_row_strs(&["11111111"]).unwrap();
        let cf = canonical_form(&g).unwrap();
        assert_eq!(cf.aut_order, BigUint::from(40320u32));
        assert_eq!(cf.key.columns, vec![1; 8]);
    }

    #[test]
    fn named_automorphism_orders() {
        for (name, order) in [
            (NamedCode::C1, 18432u32),
            (NamedCode::C2, 1440),
            (NamedCode::C3, 5760),
        ] {
            let cf = canonical_form(&construct_named(name)).unwrap();
            assert_eq!(cf.aut_order, BigUint::from(order), "{name}");
        }
    }

    #[test]
    fn golay_automorphism_order() {
        let cf = canonical_form(&construct_named(NamedCode::Golay24)).unwrap();
        assert_eq!(cf.aut_order, BigUint::from(244_823_040u64));
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let g = GeneratorMatrix::from_row_strs(&["1100", "1100"]).unwrap();
        assert!(matches!(
            canonical_form(&g),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn canonical_matrix_is_equivalent() {
        let g = construct_named(NamedCode::C2);
        let cf = canonical_form(&g).unwrap();
        let again = canonical_form(&cf.key.to_matrix()).unwrap();
        assert_eq!(again.key, cf.key);
        for &p in cf.points() {
            let img = cf.image(p).unwrap();
            // Reconstruct p from its canonical coordinates.
            let mut v = 0;
            for (j, &b) in cf.basis.iter().enumerate() {
                if img >> j & 1 == 1 {
                    v ^= b;
                }
            }
            assert_eq!(v, p);
        }
    }
}
