//! Brute-force certification, independent of the constructions.
//!
//! Nothing here uses the partition or cover builders: subspaces are
//! enumerated straight from RREF shapes, coverage is checked by walking
//! every vector, and minimum cover sizes come from an exact
//! branch-and-bound search over projective points.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::{finite_cover_number, Cover};
use crate::gf::Field;
use crate::linalg::{encode_entries, FqVec, Subspace};
use crate::partitions::Partition;
use crate::{Error, Limits, Result};

/// Number of d-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> BigUint {
    if d > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((d - i) as u32) - 1u32;
    }
    num / den
}

/// Strictly increasing `size`-subsets of `0..n`, in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < n - size + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Every d-dimensional subspace of F_q^n exactly once, built directly as
/// RREF matrices: choose pivot columns, then fill the free entries.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    d: usize,
    limits: &Limits,
) -> Result<Vec<Subspace>> {
    if d > n {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds n = {n}")));
    }
    let q = field.q() as u64;
    let count = gaussian_binomial(n, d, q);
    if count > BigUint::from(limits.max_subspaces) {
        return Err(Error::TooLarge {
            what: "subspace count",
            size: count.to_string(),
            bound: limits.max_subspaces,
        });
    }
    let mut out = Vec::new();
    for pivots in combinations(n, d) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        for enc in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u32; n]; d];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            let fill = FqVec::decode(field, free.len(), enc);
            for (&(i, c), &e) in free.iter().zip(fill.entries()) {
                rows[i][c] = e;
            }
            out.push(Subspace::from_rref_rows(field, n, &rows)?);
        }
    }
    Ok(out)
}

/// The lines of F_q^n, each represented by its vector whose first
/// nonzero coordinate is 1.
#[derive(Debug, Clone)]
pub struct ProjectivePointSet {
    field: Field,
    n: usize,
    points: Vec<FqVec>,
    index: HashMap<u64, usize>,
}

impl ProjectivePointSet {
    pub fn new(field: &Field, n: usize, limits: &Limits) -> Result<ProjectivePointSet> {
        let total = limits.check_q_pow(field.q() as u64, n)?;
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for enc in 1..total {
            let v = FqVec::decode(field, n, enc);
            if v.entries().iter().find(|&&e| e != 0) == Some(&1) {
                index.insert(enc, points.len());
                points.push(v);
            }
        }
        Ok(ProjectivePointSet {
            field: field.clone(),
            n,
            points,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FqVec] {
        &self.points
    }

    /// Index of the line through a nonzero vector.
    pub fn index_of(&self, v: &[u32]) -> Option<usize> {
        let lead = *v.iter().find(|&&e| e != 0)?;
        let inv = self.field.inv(lead)?;
        let normalized: Vec<u32> = v.iter().map(|&e| self.field.mul(inv, e)).collect();
        self.index
            .get(&encode_entries(self.field.q(), &normalized))
            .copied()
    }

    /// Bitset of the points lying in `s`.
    fn membership(&self, s: &Subspace) -> Bitset {
        let mut bits = Bitset::new(self.len());
        s.for_each_vector(|v| {
            if v.iter().find(|&&e| e != 0) == Some(&1) {
                bits.set(self.index[&encode_entries(self.field.q(), v)]);
            }
        });
        bits
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub ok: bool,
    pub uncovered: Vec<Vec<u32>>,
    pub checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub ok: bool,
    pub uncovered: Vec<Vec<u32>>,
    pub double_covered: Vec<Vec<u32>>,
    pub checked: u64,
}

/// How many members contain each vector, indexed by vector encoding.
fn coverage_counts(
    field: &Field,
    n: usize,
    members: &[Subspace],
    limits: &Limits,
) -> Result<Vec<u32>> {
    let total = limits.check_q_pow(field.q() as u64, n)?;
    let q = field.q();
    let mut counts = vec![0u32; total as usize];
    for s in members {
        s.for_each_vector(|v| {
            let c = &mut counts[encode_entries(q, v) as usize];
            *c = c.saturating_add(1);
        });
    }
    Ok(counts)
}

fn vectors_where(
    field: &Field,
    n: usize,
    counts: &[u32],
    pred: impl Fn(u32) -> bool,
) -> Vec<Vec<u32>> {
    counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &c)| pred(c))
        .map(|(enc, _)| FqVec::decode(field, n, enc as u64).entries().to_vec())
        .collect()
}

pub fn verify_cover(cover: &Cover, limits: &Limits) -> Result<CoverReport> {
    let (f, n) = (cover.field(), cover.ambient_dim());
    let counts = coverage_counts(f, n, cover.subspaces(), limits)?;
    let uncovered = vectors_where(f, n, &counts, |c| c == 0);
    Ok(CoverReport {
        ok: uncovered.is_empty(),
        uncovered,
        checked: counts.len() as u64 - 1,
    })
}

/// Every nonzero vector in exactly one part. Two parts share a nonzero
/// vector iff their intersection is nontrivial, so an empty
/// `double_covered` list also certifies pairwise trivial intersections.
pub fn verify_partition(partition: &Partition, limits: &Limits) -> Result<PartitionReport> {
    let (f, n) = (partition.field(), partition.ambient_dim());
    let counts = coverage_counts(f, n, partition.parts(), limits)?;
    let uncovered = vectors_where(f, n, &counts, |c| c == 0);
    let double_covered = vectors_where(f, n, &counts, |c| c > 1);
    Ok(PartitionReport {
        ok: uncovered.is_empty() && double_covered.is_empty(),
        uncovered,
        double_covered,
        checked: counts.len() as u64 - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(len: usize) -> Bitset {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn count_new(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (b & !a).count_ones() as usize)
            .sum()
    }

    fn first_unset(&self, len: usize) -> Option<usize> {
        (0..len).find(|&i| !self.get(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCover {
    pub size: usize,
    /// One optimal family. Which one is found can depend on the thread
    /// count; the size cannot.
    pub witness: Vec<Subspace>,
    /// `⌈#points / #points per member⌉`.
    pub counting_bound: usize,
    pub nodes: u64,
}

struct Search<'a> {
    candidates: &'a [Bitset],
    by_point: &'a [Vec<usize>],
    num_points: usize,
    per_member: usize,
    best: AtomicUsize,
    witness: Mutex<Option<Vec<usize>>>,
    nodes: AtomicU64,
}

impl Search<'_> {
    fn record(&self, chosen: &[usize]) {
        let mut w = self.witness.lock().unwrap();
        if chosen.len() < self.best.load(Ordering::SeqCst) {
            self.best.store(chosen.len(), Ordering::SeqCst);
            *w = Some(chosen.to_vec());
        }
    }

    fn dfs(&self, covered: &Bitset, chosen: &mut Vec<usize>) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let uncovered = self.num_points - covered.count();
        if uncovered == 0 {
            self.record(chosen);
            return;
        }
        let bound = chosen.len() + uncovered.div_ceil(self.per_member);
        if bound >= self.best.load(Ordering::Relaxed) {
            return;
        }
        // every point lies in equally many candidates, so the least
        // covered uncovered point is the first one
        let point = covered.first_unset(self.num_points).unwrap();
        for c in self.branch_order(covered, point) {
            let mut next = covered.clone();
            next.union_with(&self.candidates[c]);
            chosen.push(c);
            self.dfs(&next, chosen);
            chosen.pop();
        }
    }

    /// Candidates through `point`, most newly covered points first.
    fn branch_order(&self, covered: &Bitset, point: usize) -> Vec<usize> {
        let mut order: Vec<(usize, usize)> = self.by_point[point]
            .iter()
            .map(|&c| (covered.count_new(&self.candidates[c]), c))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        order.into_iter().map(|(_, c)| c).collect()
    }

    fn run(&self, threads: usize) {
        let root = Bitset::new(self.num_points);
        if threads <= 1 {
            self.dfs(&root, &mut Vec::new());
            return;
        }
        let first = self.branch_order(&root, 0);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            first.par_iter().for_each(|&c| {
                let mut chosen = vec![c];
                self.dfs(&self.candidates[c], &mut chosen);
            })
        });
    }
}

/// Exact minimum number of codimension-k subspaces covering F_q^n.
///
/// The search first looks for covers of size at most `upper_hint`
/// (default: the closed-form value); if none exists it restarts with the
/// trivial bound of all candidates. The returned size is always backed
/// by a witness found in the search.
pub fn min_cover_size(
    field: &Field,
    n: usize,
    k: usize,
    upper_hint: Option<usize>,
    threads: usize,
    limits: &Limits,
) -> Result<MinCover> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "codimension must satisfy 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let points = ProjectivePointSet::new(field, n, limits)?;
    let candidates_sub = enumerate_subspaces(field, n, n - k, limits)?;
    let candidates: Vec<Bitset> = candidates_sub
        .iter()
        .map(|s| points.membership(s))
        .collect();
    let mut by_point = vec![Vec::new(); points.len()];
    for (c, bits) in candidates.iter().enumerate() {
        for (p, list) in by_point.iter_mut().enumerate() {
            if bits.get(p) {
                list.push(c);
            }
        }
    }
    let per_member = candidates[0].count();
    let counting_bound = points.len().div_ceil(per_member);

    let hint = match upper_hint {
        Some(h) => h,
        None => {
            let nu = finite_cover_number(&BigUint::from(field.q()), n, k)?;
            usize::try_from(&nu).unwrap_or(usize::MAX)
        }
    };
    let mut nodes = 0;
    for limit in [hint, candidates.len()] {
        let search = Search {
            candidates: &candidates,
            by_point: &by_point,
            num_points: points.len(),
            per_member,
            best: AtomicUsize::new(limit.saturating_add(1)),
            witness: Mutex::new(None),
            nodes: AtomicU64::new(0),
        };
        search.run(threads);
        nodes += search.nodes.load(Ordering::Relaxed);
        if let Some(w) = search.witness.into_inner().unwrap() {
            return Ok(MinCover {
                size: w.len(),
                witness: w.iter().map(|&c| candidates_sub[c].clone()).collect(),
                counting_bound,
                nodes,
            });
        }
    }
    unreachable!("the family of all candidates covers every point")
}
