//! Exhaustive enumeration of `R_{α,β}`.
//!
//! The search keeps the set of covered cross pairs as a bitmask. At each
//! node it takes the least uncovered pair and branches over the squares
//! that contain it and are disjoint from what is already covered. Squares
//! with a repeated corner edge can never appear in a relation and are
//! dropped from the index up front.
//!
//! For parallel runs the tree is cut at a fixed shallow depth; the
//! resulting prefixes are solved independently and the results are merged
//! by canonical sort, so the output never depends on the worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relation::BMRelation;
use crate::square::{all_squares, Ambient, GeometricSquare};

/// Largest number of cross pairs the bitmask search supports.
pub const MAX_PAIRS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Materialize,
    CountOnly,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub jobs: usize,
    /// Stop with [`Error::BudgetExceeded`] once more solutions than this are found.
    pub max_solutions: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 1, max_solutions: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Relations(Vec<BMRelation>),
    Count(u64),
}

impl Enumeration {
    pub fn count(&self) -> u64 {
        match self {
            Enumeration::Relations(rs) => rs.len() as u64,
            Enumeration::Count(n) => *n,
        }
    }
}

/// Squares with four distinct corners, indexed by every pair they cover.
struct SquareIndex {
    ambient: Ambient,
    squares: Vec<GeometricSquare>,
    /// `by_pair[p]` holds `(mask, square id)` for every square covering pair `p`,
    /// in canonical square order.
    by_pair: Vec<Vec<(u64, u32)>>,
    full: u64,
}

impl SquareIndex {
    fn build(ambient: Ambient) -> Result<SquareIndex> {
        let pairs = ambient.pair_count();
        if pairs > MAX_PAIRS {
            return Err(Error::BudgetExceeded(format!(
                "ambient {ambient} has {pairs} cross pairs; the search supports at most {MAX_PAIRS}"
            )));
        }
        let squares: Vec<GeometricSquare> =
            all_squares(ambient).into_iter().filter(|s| s.has_distinct_corners()).collect();
        let mut by_pair = vec![Vec::new(); pairs];
        for (id, s) in squares.iter().enumerate() {
            let mask = s.corner_edges().iter().fold(0u64, |m, e| m | (1u64 << ambient.pair_index(*e)));
            for e in s.corner_edges() {
                by_pair[ambient.pair_index(e)].push((mask, id as u32));
            }
        }
        let full = if pairs == 64 { u64::MAX } else { (1u64 << pairs) - 1 };
        Ok(SquareIndex { ambient, squares, by_pair, full })
    }

    fn relation(&self, stack: &[u32]) -> BMRelation {
        let mut squares: Vec<GeometricSquare> = stack.iter().map(|&i| self.squares[i as usize]).collect();
        squares.sort_unstable();
        BMRelation::from_sorted_unchecked(self.ambient, squares.into_boxed_slice())
    }
}

#[derive(Clone)]
struct Prefix {
    covered: u64,
    stack: Vec<u32>,
}

struct Worker<'a> {
    index: &'a SquareIndex,
    stack: Vec<u32>,
    count: u64,
    cap: u64,
    found: Option<Vec<BMRelation>>,
}

impl Worker<'_> {
    /// Returns false once the cap has been exceeded.
    fn dfs(&mut self, covered: u64) -> bool {
        if covered == self.index.full {
            self.count += 1;
            if let Some(found) = self.found.as_mut() {
                found.push(self.index.relation(&self.stack));
            }
            return self.count <= self.cap;
        }
        let pair = (!covered).trailing_zeros() as usize;
        let index = self.index;
        for &(mask, id) in &index.by_pair[pair] {
            if mask & covered == 0 {
                self.stack.push(id);
                let ok = self.dfs(covered | mask);
                self.stack.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn children(index: &SquareIndex, p: &Prefix) -> Vec<Prefix> {
    if p.covered == index.full {
        return vec![p.clone()];
    }
    let pair = (!p.covered).trailing_zeros() as usize;
    index.by_pair[pair]
        .iter()
        .filter(|(mask, _)| mask & p.covered == 0)
        .map(|&(mask, id)| {
            let mut stack = p.stack.clone();
            stack.push(id);
            Prefix { covered: p.covered | mask, stack }
        })
        .collect()
}

/// Prefixes at the first depth giving enough independent tasks for `jobs` workers.
fn split(index: &SquareIndex, jobs: usize) -> Vec<Prefix> {
    let mut frontier = vec![Prefix { covered: 0, stack: Vec::new() }];
    if jobs <= 1 {
        return frontier;
    }
    for _ in 0..3 {
        if frontier.len() >= 8 * jobs {
            break;
        }
        frontier = frontier.iter().flat_map(|p| children(index, p)).collect();
    }
    frontier
}

fn solve(index: &SquareIndex, prefix: &Prefix, mode: Mode, cap: u64) -> (u64, Vec<BMRelation>, bool) {
    let mut w =
        Worker { index, stack: prefix.stack.clone(), count: 0, cap, found: (mode == Mode::Materialize).then(Vec::new) };
    let ok = w.dfs(prefix.covered);
    (w.count, w.found.unwrap_or_default(), ok)
}

pub fn enumerate_relations(ambient: Ambient, mode: Mode, opts: &SearchOptions) -> Result<Enumeration> {
    let index = SquareIndex::build(ambient)?;
    let jobs = opts.jobs.max(1);
    let cap = opts.max_solutions.unwrap_or(u64::MAX);
    let tasks = split(&index, jobs);

    let results: Vec<(u64, Vec<BMRelation>, bool)> = if jobs == 1 {
        tasks.iter().map(|t| solve(&index, t, mode, cap)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        pool.install(|| tasks.par_iter().map(|t| solve(&index, t, mode, cap)).collect())
    };

    let mut total: u64 = 0;
    let mut within_cap = true;
    for (n, _, ok) in &results {
        total = total.checked_add(*n).ok_or(Error::Overflow("relation count"))?;
        within_cap &= ok;
    }
    if !within_cap || total > cap {
        return Err(Error::BudgetExceeded(format!("more than {cap} relations in R{ambient}")));
    }
    match mode {
        Mode::CountOnly => Ok(Enumeration::Count(total)),
        Mode::Materialize => {
            let mut all: Vec<BMRelation> = results.into_iter().flat_map(|(_, rs, _)| rs).collect();
            all.sort_unstable();
            Ok(Enumeration::Relations(all))
        }
    }
}

pub fn count_relations(ambient: Ambient, opts: &SearchOptions) -> Result<u64> {
    enumerate_relations(ambient, Mode::CountOnly, opts).map(|e| e.count())
}

/// All of `R_{α,β}` in canonical order.
pub fn all_relations(ambient: Ambient, opts: &SearchOptions) -> Result<Vec<BMRelation>> {
    match enumerate_relations(ambient, Mode::Materialize, opts)? {
        Enumeration::Relations(rs) => Ok(rs),
        Enumeration::Count(_) => unreachable!("materialize mode returns relations"),
    }
}
