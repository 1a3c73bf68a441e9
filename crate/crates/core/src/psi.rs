//! The square-splitting map φ and the expansion ψ = ψ⁽¹⁾ ∪ ψ⁽²⁾ taking each
//! (1,β)-BM relation to `3 + 2β` distinct (1,β+1)-BM relations.
//!
//! Levels built this way partition `R_{1,β+1}`, which gives
//! `|R_{1,β}| = 3·5·…·(2β+1)`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relation::BMRelation;
use crate::square::{canonicalize, Ambient, GeometricSquare, Letter, SquareQuad};

/// The two unordered pairs `{{v1, v2}, {v3, v4}}` of squares in `GS_{1,β+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiResult {
    pairs: [[GeometricSquare; 2]; 2],
}

impl PhiResult {
    fn new(v1: GeometricSquare, v2: GeometricSquare, v3: GeometricSquare, v4: GeometricSquare) -> PhiResult {
        let pair = |x: GeometricSquare, y: GeometricSquare| if x <= y { [x, y] } else { [y, x] };
        let mut pairs = [pair(v1, v2), pair(v3, v4)];
        pairs.sort_unstable();
        PhiResult { pairs }
    }

    pub fn pairs(&self) -> &[[GeometricSquare; 2]; 2] {
        &self.pairs
    }
}

fn new_letter(beta: usize) -> Letter {
    Letter::b(beta + 1)
}

fn check_in_gs1(q: &SquareQuad, beta: usize) -> Result<()> {
    let ambient = Ambient::new(1, beta)?;
    if q.letters().iter().all(|&l| ambient.contains(l)) {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { square: q.to_string(), beta })
    }
}

/// φ_β evaluated on a specific representative `a b a′ b′`.
pub fn phi_quad(q: SquareQuad, beta: usize) -> Result<PhiResult> {
    check_in_gs1(&q, beta)?;
    let SquareQuad { a, b, a2, b2 } = q;
    let t = new_letter(beta);
    let sq = |a, b, a2, b2| canonicalize(SquareQuad { a, b, a2, b2 });
    Ok(PhiResult::new(sq(a, t, a2, b2), sq(a, b, a2, t.inverse()), sq(a, t.inverse(), a2, b2), sq(a, b, a2, t)))
}

pub fn phi(s: GeometricSquare, beta: usize) -> Result<PhiResult> {
    phi_quad(s.canonical(), beta)
}

fn require_alpha_one(r: &BMRelation) -> Result<usize> {
    let ambient = r.ambient();
    if ambient.alpha != 1 {
        return Err(Error::Unsupported(format!("ψ is defined for α = 1 only, got ambient {ambient}")));
    }
    Ok(ambient.beta)
}

/// `R` extended by each of the three squares on `b_{β+1}` alone.
pub fn psi1(r: &BMRelation) -> Result<Vec<BMRelation>> {
    let beta = require_alpha_one(r)?;
    let ambient = Ambient::new(1, beta + 1)?;
    let (a, t) = (Letter::a(1), new_letter(beta));
    [
        SquareQuad { a, b: t, a2: a.inverse(), b2: t.inverse() },
        SquareQuad { a, b: t, a2: a, b2: t.inverse() },
        SquareQuad { a, b: t, a2: a.inverse(), b2: t },
    ]
    .into_iter()
    .map(|q| BMRelation::new(ambient, r.squares().iter().copied().chain([canonicalize(q)])))
    .collect()
}

/// Each square `r_i` replaced by each of the two pairs of `φ(r_i)`,
/// in the relation's canonical square order.
pub fn psi2(r: &BMRelation) -> Result<Vec<BMRelation>> {
    let beta = require_alpha_one(r)?;
    let ambient = Ambient::new(1, beta + 1)?;
    let mut out = Vec::with_capacity(2 * beta);
    for (i, &ri) in r.squares().iter().enumerate() {
        let rest = r.squares().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s);
        for pair in phi(ri, beta)?.pairs() {
            out.push(BMRelation::new(ambient, rest.clone().chain(pair.iter().copied()))?);
        }
    }
    Ok(out)
}

/// ψ(R), sorted. Fails if the image does not have exactly `3 + 2β` members.
pub fn psi(r: &BMRelation) -> Result<Vec<BMRelation>> {
    let beta = require_alpha_one(r)?;
    let mut out = psi1(r)?;
    out.extend(psi2(r)?);
    out.sort_unstable();
    out.dedup();
    let expected = 3 + 2 * beta as u64;
    if out.len() as u64 != expected {
        return Err(Error::DisjointnessViolation { expected, found: out.len() as u64 });
    }
    Ok(out)
}

/// A complete, canonically sorted `R_{1,β}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLevel {
    beta: usize,
    relations: Vec<BMRelation>,
}

impl RelationLevel {
    pub fn new(beta: usize, mut relations: Vec<BMRelation>) -> Result<RelationLevel> {
        let ambient = Ambient::new(1, beta)?;
        if let Some(r) = relations.iter().find(|r| r.ambient() != ambient) {
            return Err(Error::Corrupt(format!("relation {r} has ambient {} in level {ambient}", r.ambient())));
        }
        relations.sort_unstable();
        if relations.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Corrupt(format!("duplicate relation in level {ambient}")));
        }
        Ok(RelationLevel { beta, relations })
    }

    /// `R_{1,1}`, seeded from the three relations with one square.
    pub fn base() -> RelationLevel {
        let ambient = Ambient::new(1, 1).expect("valid ambient");
        let (a, b) = (Letter::a(1), Letter::b(1));
        let relations = [
            SquareQuad { a, b, a2: a.inverse(), b2: b.inverse() },
            SquareQuad { a, b, a2: a, b2: b.inverse() },
            SquareQuad { a, b, a2: a.inverse(), b2: b },
        ]
        .into_iter()
        .map(|q| BMRelation::new(ambient, [canonicalize(q)]).expect("R(1,1) member"))
        .collect();
        RelationLevel::new(1, relations).expect("R(1,1) is a valid level")
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn relations(&self) -> &[BMRelation] {
        &self.relations
    }

    pub fn into_relations(self) -> Vec<BMRelation> {
        self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub jobs: usize,
    /// Largest target β that may be materialised.
    pub max_beta: usize,
}

/// Default materialisation ceiling: `R_{1,8}` has 34 459 425 members.
pub const DEFAULT_MAX_BETA: usize = 7;

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { jobs: 1, max_beta: DEFAULT_MAX_BETA }
    }
}

/// `⋃_{R ∈ level} ψ(R)`, checked to be a disjoint union by cardinality.
pub fn build_level(level: &RelationLevel, opts: &BuildOptions) -> Result<RelationLevel> {
    let beta = level.beta;
    if beta + 1 > opts.max_beta {
        return Err(Error::BudgetExceeded(format!(
            "materialising R(1,{}) exceeds the limit β ≤ {}; use count-only mode",
            beta + 1,
            opts.max_beta
        )));
    }
    let expand = |r: &BMRelation| psi(r);
    let parts: Vec<Vec<BMRelation>> = if opts.jobs <= 1 {
        level.relations.iter().map(expand).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        pool.install(|| level.relations.par_iter().map(expand).collect::<Result<_>>())?
    };
    let mut out: Vec<BMRelation> = parts.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    let expected = (3 + 2 * beta as u64).checked_mul(level.len() as u64).ok_or(Error::Overflow("level size"))?;
    if out.len() as u64 != expected {
        return Err(Error::DisjointnessViolation { expected, found: out.len() as u64 });
    }
    Ok(RelationLevel { beta: beta + 1, relations: out })
}

/// `∏_{i=1}^{β} (2i+1)`.
pub fn kimberley_count(beta: usize) -> BigUint {
    (1..=beta as u64).fold(BigUint::from(1u32), |acc, i| acc * (2 * i + 1))
}

/// [`kimberley_count`] when it fits in 64 bits, which holds for β ≤ 16.
pub fn kimberley_count_u64(beta: usize) -> Option<u64> {
    (1..=beta as u64).try_fold(1u64, |acc, i| acc.checked_mul(2 * i + 1))
}

/// The recurrence `|R_{1,β+1}| = (3+2β) |R_{1,β}|` applied from `from_count` at `from_beta`.
pub fn level_counts(from_beta: usize, from_count: &BigUint, to_beta: usize) -> Vec<(usize, BigUint)> {
    let mut out = vec![(from_beta, from_count.clone())];
    let mut n = from_count.clone();
    for beta in from_beta..to_beta {
        n *= 3 + 2 * beta as u64;
        out.push((beta + 1, n.clone()));
    }
    out
}
