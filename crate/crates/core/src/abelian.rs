//! Abelianization of BM groups via the integer Smith normal form of the
//! relator exponent-sum matrix.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::BMPresentation;
use crate::relation::BMRelation;

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `2 ≤ d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// Rows are relators, columns the generators `a_1 … a_α, b_1 … b_β`.
pub fn exponent_matrix(p: &BMPresentation) -> Vec<Vec<i64>> {
    let gens = p.generators();
    p.relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; gens.len()];
            for l in r.letters() {
                let col = gens.iter().position(|&g| g == l.generator()).expect("relator letter is a generator");
                row[col] += if l.is_inverted() { -1 } else { 1 };
            }
            row
        })
        .collect()
}

fn overflow() -> Error {
    Error::Overflow("Smith normal form")
}

/// Non-zero invariant factors of an integer matrix, in divisibility order
/// (including any leading 1s).
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Result<Vec<u64>> {
    let mut a: Vec<Vec<i64>> = matrix.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // smallest non-zero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, &y) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x = x.checked_sub(q.checked_mul(y).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] =
                            row[j].checked_sub(q.checked_mul(row[t]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it into place
                let (bi, bj) = (t..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
                    .expect("pivot is non-zero");
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad_row {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, &y) in a[t][t..].iter_mut().zip(&row[t..]) {
                        *x = x.checked_add(y).ok_or_else(overflow)?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].unsigned_abs());
    }
    Ok(diag)
}

pub fn abelianization(p: &BMPresentation) -> Result<AbelianInvariants> {
    let matrix = exponent_matrix(p);
    let factors = invariant_factors(&matrix)?;
    Ok(AbelianInvariants {
        free_rank: p.generators().len() - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    })
}

/// Relations grouped by the abelianization of their groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    /// Invariants in ascending order, each with the positions (in the input) of its members.
    pub classes: Vec<(AbelianInvariants, Vec<usize>)>,
}

impl ClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|(_, m)| m.len()).collect()
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "classes = {}", self.class_count())?;
        for (inv, members) in &self.classes {
            writeln!(f, "{inv}: {}", members.len())?;
        }
        Ok(())
    }
}

pub fn classify_by_abelianization(relations: &[BMRelation], jobs: usize) -> Result<ClassReport> {
    if let Some(first) = relations.first() {
        if relations.iter().any(|r| r.ambient() != first.ambient()) {
            return Err(Error::Corrupt("relations to classify have different ambients".into()));
        }
    }
    let invariant = |r: &BMRelation| BMPresentation::from_relation(r.clone()).and_then(|p| abelianization(&p));
    let invariants: Vec<AbelianInvariants> = if jobs <= 1 {
        relations.iter().map(invariant).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        pool.install(|| relations.par_iter().map(invariant).collect::<Result<_>>())?
    };
    let mut classes: BTreeMap<AbelianInvariants, Vec<usize>> = BTreeMap::new();
    for (i, inv) in invariants.into_iter().enumerate() {
        classes.entry(inv).or_default().push(i);
    }
    Ok(ClassReport { classes: classes.into_iter().collect() })
}
