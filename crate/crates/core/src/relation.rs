//! Links, the link condition and BM relations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::square::{Ambient, GeometricSquare, Letter, LinkEdge};

/// Multiset of link edges over `A_α^{±1} ⊔ B_β^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkGraph {
    edges: BTreeMap<LinkEdge, usize>,
}

impl LinkGraph {
    pub fn multiplicity(&self, edge: LinkEdge) -> usize {
        self.edges.get(&edge).copied().unwrap_or(0)
    }

    /// Number of edges counted with multiplicity.
    pub fn len(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn distinct_edges(&self) -> impl Iterator<Item = (LinkEdge, usize)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    /// True when this is `K_{2α,2β}` with every edge exactly once.
    pub fn is_complete_simple(&self, ambient: Ambient) -> bool {
        self.edges.len() == ambient.pair_count()
            && self.edges.iter().all(|(e, &m)| m == 1 && ambient.contains(e.h) && ambient.contains(e.v))
    }
}

/// Multiset union of the corner edges of `squares`.
pub fn link<'a>(squares: impl IntoIterator<Item = &'a GeometricSquare>) -> LinkGraph {
    let mut g = LinkGraph::default();
    for s in squares {
        for e in s.corner_edges() {
            *g.edges.entry(e).or_insert(0) += 1;
        }
    }
    g
}

/// First reason a square set fails the link condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkViolation {
    WrongSize { expected: usize, found: usize },
    OutsideAmbient(GeometricSquare),
    Uncovered(LinkEdge),
    DoublyCovered(LinkEdge),
}

impl fmt::Display for LinkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkViolation::WrongSize { expected, found } => {
                write!(f, "expected {expected} squares, found {found}")
            }
            LinkViolation::OutsideAmbient(s) => write!(f, "square {s} uses letters outside the ambient"),
            LinkViolation::Uncovered(e) => write!(f, "pair {e} is not covered"),
            LinkViolation::DoublyCovered(e) => write!(f, "pair {e} is covered more than once"),
        }
    }
}

/// Checks the link condition, reporting the first violated cross pair in pair order.
pub fn diagnose_relation(squares: &[GeometricSquare], ambient: Ambient) -> Result<(), LinkViolation> {
    let expected = ambient.alpha * ambient.beta;
    if let Some(s) = squares.iter().find(|s| !s.fits(ambient)) {
        return Err(LinkViolation::OutsideAmbient(*s));
    }
    let mut counts = vec![0usize; ambient.pair_count()];
    for s in squares {
        for e in s.corner_edges() {
            counts[ambient.pair_index(e)] += 1;
        }
    }
    for (i, &c) in counts.iter().enumerate() {
        match c {
            1 => {}
            0 => return Err(LinkViolation::Uncovered(ambient.pair_at(i))),
            _ => return Err(LinkViolation::DoublyCovered(ambient.pair_at(i))),
        }
    }
    if squares.len() != expected {
        return Err(LinkViolation::WrongSize { expected, found: squares.len() });
    }
    Ok(())
}

pub fn validate_relation(squares: &[GeometricSquare], ambient: Ambient) -> bool {
    diagnose_relation(squares, ambient).is_ok()
}

/// An (α,β)-BM relation: `αβ` geometric squares whose link is `K_{2α,2β}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BMRelation {
    ambient: Ambient,
    squares: Box<[GeometricSquare]>,
}

impl BMRelation {
    /// Validates and sorts. Any order and any representatives are accepted.
    pub fn new(ambient: Ambient, squares: impl IntoIterator<Item = GeometricSquare>) -> Result<BMRelation> {
        let mut squares: Vec<GeometricSquare> = squares.into_iter().collect();
        squares.sort_unstable();
        diagnose_relation(&squares, ambient).map_err(|v| Error::Corrupt(v.to_string()))?;
        Ok(BMRelation { ambient, squares: squares.into_boxed_slice() })
    }

    /// Caller guarantees `squares` is sorted and satisfies the link condition.
    pub(crate) fn from_sorted_unchecked(ambient: Ambient, squares: Box<[GeometricSquare]>) -> BMRelation {
        debug_assert!(squares.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(validate_relation(&squares, ambient));
        BMRelation { ambient, squares }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn squares(&self) -> &[GeometricSquare] {
        &self.squares
    }

    pub fn link(&self) -> LinkGraph {
        link(self.squares.iter())
    }

    pub fn contains(&self, s: &GeometricSquare) -> bool {
        self.squares.binary_search(s).is_ok()
    }

    /// Parses one line of the relation file format. The ambient is taken
    /// from `ambient` or, when absent, from the largest indices used.
    pub fn parse_line(line: &str, ambient: Option<Ambient>) -> Result<BMRelation> {
        let squares = line.split(';').map(|part| part.trim().parse::<GeometricSquare>()).collect::<Result<Vec<_>>>()?;
        let ambient = match ambient {
            Some(a) => a,
            None => infer_ambient(&squares)?,
        };
        BMRelation::new(ambient, squares)
    }

    /// Unique `(square, a′, b′)` with `[a b a′ b′]` in the relation.
    pub fn lookup_square(&self, a: Letter, b: Letter) -> Result<(GeometricSquare, Letter, Letter)> {
        if !a.is_horizontal() || !b.is_vertical() {
            return Err(Error::MalformedQuad(format!("lookup needs (horizontal, vertical), got ({a}, {b})")));
        }
        let mut found = None;
        for s in self.squares.iter() {
            for r in s.representatives() {
                if r.a == a && r.b == b {
                    if found.is_some() {
                        return Err(Error::Corrupt(format!("several squares start with {a} {b}")));
                    }
                    found = Some((*s, r.a2, r.b2));
                }
            }
        }
        found.ok_or_else(|| Error::Corrupt(format!("no square starts with {a} {b}")))
    }
}

impl fmt::Display for BMRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.squares.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            fmt::Display::fmt(s, f)?;
        }
        Ok(())
    }
}

pub fn lookup_square(r: &BMRelation, a: Letter, b: Letter) -> Result<(GeometricSquare, Letter, Letter)> {
    r.lookup_square(a, b)
}

/// Smallest ambient containing every letter of `squares`.
pub fn infer_ambient(squares: &[GeometricSquare]) -> Result<Ambient> {
    let mut alpha = 0;
    let mut beta = 0;
    for l in squares.iter().flat_map(|s| s.letters()) {
        if l.is_horizontal() {
            alpha = alpha.max(l.index());
        } else {
            beta = beta.max(l.index());
        }
    }
    Ambient::new(alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::canonicalize;

    fn sq(s: &str) -> GeometricSquare {
        s.parse().unwrap()
    }

    fn amb(a: usize, b: usize) -> Ambient {
        Ambient::new(a, b).unwrap()
    }

    #[test]
    fn link_of_commutator_is_k22() {
        let g = link([sq("a1 b1 A1 B1")].iter());
        assert_eq!(g.len(), 4);
        assert!(g.is_complete_simple(amb(1, 1)));
        assert!(link(std::iter::empty()).is_empty());
    }

    #[test]
    fn surgery_preserves_link() {
        // {[a b a′ b′], [a b3 a′ B3]} and {[a b3 a′ b′], [a b a′ B3]} for a few choices.
        for (a, b, a2, b2) in [("a1", "b1", "A1", "B1"), ("a1", "b2", "a1", "B1"), ("A1", "B2", "a1", "b1")] {
            let before = [sq(&format!("{a} {b} {a2} {b2}")), sq(&format!("{a} b3 {a2} B3"))];
            let after = [sq(&format!("{a} b3 {a2} {b2}")), sq(&format!("{a} {b} {a2} B3"))];
            assert_eq!(link(before.iter()), link(after.iter()));
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate_relation(&[sq("a1 b1 A1 B1")], amb(1, 1)));
        assert!(!validate_relation(&[sq("a1 b1 a1 b1")], amb(1, 1)));
        assert!(!validate_relation(&[], amb(1, 1)));
        assert!(!validate_relation(&[sq("a1 b1 A1 B1"), sq("a1 b1 A1 B1")], amb(1, 1)));
    }

    #[test]
    fn diagnostics_name_first_bad_pair() {
        let e = |h: &str, v: &str| LinkEdge::new(h.parse().unwrap(), v.parse().unwrap()).unwrap();
        // [a1 b1 a1 b1] covers {A1,b1} and {a1,B1} twice each and misses the rest.
        assert_eq!(diagnose_relation(&[sq("a1 b1 a1 b1")], amb(1, 1)), Err(LinkViolation::Uncovered(e("a1", "b1"))));
        assert_eq!(
            diagnose_relation(&[sq("a1 b1 A1 B1"), sq("a1 b1 a1 B1")], amb(1, 1)),
            Err(LinkViolation::DoublyCovered(e("a1", "b1")))
        );
        assert_eq!(
            diagnose_relation(&[sq("a1 b2 A1 B2")], amb(1, 1)),
            Err(LinkViolation::OutsideAmbient(sq("a1 b2 A1 B2")))
        );
    }

    #[test]
    fn lookup_examples() {
        let r = BMRelation::new(amb(1, 1), [sq("a1 b1 A1 B1")]).unwrap();
        let (s, a2, b2) = r.lookup_square(Letter::a(1), Letter::b(1)).unwrap();
        assert_eq!(s, sq("a1 b1 A1 B1"));
        assert_eq!((a2, b2), (Letter::a(1).inverse(), Letter::b(1).inverse()));
        let (_, a2, b2) = r.lookup_square(Letter::a(1).inverse(), Letter::b(1).inverse()).unwrap();
        assert_eq!((a2, b2), (Letter::a(1), Letter::b(1)));
        assert!(r.lookup_square(Letter::b(1), Letter::a(1)).is_err());
    }

    #[test]
    fn line_round_trip_and_rejection() {
        let r = BMRelation::parse_line("a1 b2 A1 B2;a1 b1 A1 B1", None).unwrap();
        assert_eq!(r.to_string(), "a1 b1 A1 B1; a1 b2 A1 B2");
        assert_eq!(r.ambient(), amb(1, 2));
        // non-canonical representative is accepted and normalised
        let r2 = BMRelation::parse_line("A1 b1 a1 B1; a1 b2 A1 B2", None).unwrap();
        assert_eq!(r2, r);
        assert!(BMRelation::parse_line("a1 b1 a1 b1", None).is_err());
        assert!(BMRelation::parse_line("a1 b1 A1", None).is_err());
        assert!(r.contains(&canonicalize("a1 b2 A1 B2".parse().unwrap())));
    }
}
