//! Letters, geometric squares and their corner edges.
//!
//! Letters are ordered `a1 < A1 < a2 < A2 < … < b1 < B1 < b2 < …`, i.e. all
//! horizontal letters before all vertical ones, then by index, with the
//! non-inverted letter first. A geometric square is stored as the least of
//! its (at most four) representative quads under the induced lexicographic
//! order, so equality of classes is plain equality of values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const AXIS_BIT: u16 = 1 << 15;
const MAX_INDEX: usize = (1 << 14) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Horizontal => f.write_str("horizontal"),
            Axis::Vertical => f.write_str("vertical"),
        }
    }
}

/// An oriented edge label `a_k^{±1}` or `b_k^{±1}`.
///
/// Packed as `axis << 15 | (index - 1) << 1 | inverted`, so the derived
/// ordering on the packed value is the letter order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn new(axis: Axis, index: usize, inverted: bool) -> Letter {
        assert!((1..=MAX_INDEX).contains(&index), "letter index {index} out of range");
        let axis_bit = match axis {
            Axis::Horizontal => 0,
            Axis::Vertical => AXIS_BIT,
        };
        Letter(axis_bit | ((index as u16 - 1) << 1) | inverted as u16)
    }

    /// `a_index`
    pub fn a(index: usize) -> Letter {
        Letter::new(Axis::Horizontal, index, false)
    }

    /// `b_index`
    pub fn b(index: usize) -> Letter {
        Letter::new(Axis::Vertical, index, false)
    }

    pub fn axis(self) -> Axis {
        if self.0 & AXIS_BIT == 0 {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }

    pub fn is_horizontal(self) -> bool {
        self.0 & AXIS_BIT == 0
    }

    pub fn is_vertical(self) -> bool {
        !self.is_horizontal()
    }

    pub fn index(self) -> usize {
        (((self.0 & !AXIS_BIT) >> 1) + 1) as usize
    }

    pub fn is_inverted(self) -> bool {
        self.0 & 1 == 1
    }

    #[must_use]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The non-inverted letter with the same axis and index.
    pub fn generator(self) -> Letter {
        Letter(self.0 & !1)
    }

    /// Dense position within its own alphabet `X^{±1}`: `2 (index - 1) + inverted`.
    pub fn slot(self) -> usize {
        (self.0 & !AXIS_BIT) as usize
    }

    pub fn from_slot(axis: Axis, slot: usize) -> Letter {
        Letter::new(axis, slot / 2 + 1, slot % 2 == 1)
    }

    pub fn packed(self) -> u16 {
        self.0
    }

    pub fn from_packed(bits: u16) -> Letter {
        Letter(bits)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.axis(), self.is_inverted()) {
            (Axis::Horizontal, false) => 'a',
            (Axis::Horizontal, true) => 'A',
            (Axis::Vertical, false) => 'b',
            (Axis::Vertical, true) => 'B',
        };
        write!(f, "{c}{}", self.index())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let mut chars = s.chars();
        let (axis, inverted) = match chars.next() {
            Some('a') => (Axis::Horizontal, false),
            Some('A') => (Axis::Horizontal, true),
            Some('b') => (Axis::Vertical, false),
            Some('B') => (Axis::Vertical, true),
            _ => return Err(Error::Parse(format!("invalid letter {s:?}"))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
            return Err(Error::Parse(format!("invalid letter {s:?}")));
        }
        let index: usize = digits.parse().map_err(|_| Error::Parse(format!("invalid letter {s:?}")))?;
        if index > MAX_INDEX {
            return Err(Error::Parse(format!("letter index too large in {s:?}")));
        }
        Ok(Letter::new(axis, index, inverted))
    }
}

/// Sizes `(α, β)` of the horizontal and vertical alphabets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ambient {
    pub alpha: usize,
    pub beta: usize,
}

impl Ambient {
    pub fn new(alpha: usize, beta: usize) -> Result<Ambient> {
        if alpha == 0 || beta == 0 || alpha > MAX_INDEX || beta > MAX_INDEX {
            return Err(Error::InvalidAmbient { alpha, beta });
        }
        Ok(Ambient { alpha, beta })
    }

    pub fn contains(&self, letter: Letter) -> bool {
        match letter.axis() {
            Axis::Horizontal => letter.index() <= self.alpha,
            Axis::Vertical => letter.index() <= self.beta,
        }
    }

    pub fn check(&self, letter: Letter) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange { letter: letter.to_string(), alpha: self.alpha, beta: self.beta })
        }
    }

    /// `A_α^{±1}` in letter order.
    pub fn horizontal_letters(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.alpha).map(|s| Letter::from_slot(Axis::Horizontal, s))
    }

    /// `B_β^{±1}` in letter order.
    pub fn vertical_letters(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.beta).map(|s| Letter::from_slot(Axis::Vertical, s))
    }

    /// Number of cross pairs `(x, y)` in `A_α^{±1} × B_β^{±1}`.
    pub fn pair_count(&self) -> usize {
        4 * self.alpha * self.beta
    }

    /// Dense index of the cross pair `{h, v}` in pair order.
    pub fn pair_index(&self, edge: LinkEdge) -> usize {
        edge.h.slot() * 2 * self.beta + edge.v.slot()
    }

    pub fn pair_at(&self, index: usize) -> LinkEdge {
        let width = 2 * self.beta;
        LinkEdge {
            h: Letter::from_slot(Axis::Horizontal, index / width),
            v: Letter::from_slot(Axis::Vertical, index % width),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// An oriented square `a b a2 b2` read around its boundary.
///
/// Field order matches the word order, so the derived `Ord` is the
/// lexicographic order on 4-letter words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareQuad {
    pub a: Letter,
    pub b: Letter,
    pub a2: Letter,
    pub b2: Letter,
}

impl SquareQuad {
    pub fn new(a: Letter, b: Letter, a2: Letter, b2: Letter) -> Result<SquareQuad> {
        if !(a.is_horizontal() && a2.is_horizontal() && b.is_vertical() && b2.is_vertical()) {
            return Err(Error::MalformedQuad(format!("{a} {b} {a2} {b2}")));
        }
        Ok(SquareQuad { a, b, a2, b2 })
    }

    pub fn letters(&self) -> [Letter; 4] {
        [self.a, self.b, self.a2, self.b2]
    }

    /// The four oriented squares identified with this one, in the order
    /// `aba′b′, a′b′ab, a⁻¹b′⁻¹a′⁻¹b⁻¹, a′⁻¹b⁻¹a⁻¹b′⁻¹` (possibly repeating).
    pub fn orbit(&self) -> [SquareQuad; 4] {
        let SquareQuad { a, b, a2, b2 } = *self;
        [
            SquareQuad { a, b, a2, b2 },
            SquareQuad { a: a2, b: b2, a2: a, b2: b },
            SquareQuad { a: a.inverse(), b: b2.inverse(), a2: a2.inverse(), b2: b.inverse() },
            SquareQuad { a: a2.inverse(), b: b.inverse(), a2: a.inverse(), b2: b2.inverse() },
        ]
    }

    pub fn canonicalize(&self) -> GeometricSquare {
        canonicalize(*self)
    }
}

impl fmt::Display for SquareQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.a2, self.b2)
    }
}

impl FromStr for SquareQuad {
    type Err = Error;

    fn from_str(s: &str) -> Result<SquareQuad> {
        let letters = s.split_whitespace().map(str::parse).collect::<Result<Vec<Letter>>>()?;
        match letters[..] {
            [a, b, a2, b2] => SquareQuad::new(a, b, a2, b2),
            _ => Err(Error::Parse(format!("a square needs exactly 4 letters, got {s:?}"))),
        }
    }
}

/// The identification class `[aba′b′]`, held by its least representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeometricSquare(SquareQuad);

pub fn canonicalize(q: SquareQuad) -> GeometricSquare {
    GeometricSquare(q.orbit().into_iter().min().expect("orbit is non-empty"))
}

impl GeometricSquare {
    pub fn canonical(&self) -> SquareQuad {
        self.0
    }

    /// The distinct representative quads, sorted; always 2 or 4 of them.
    pub fn representatives(&self) -> Vec<SquareQuad> {
        let mut reps = self.0.orbit().to_vec();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Corner edges `{a⁻¹,b}, {a′,b⁻¹}, {a′⁻¹,b′}, {a,b′⁻¹}` as a multiset.
    pub fn corner_edges(&self) -> [LinkEdge; 4] {
        corner_edges_of(&self.0)
    }

    /// True when the four corner edges are pairwise distinct.
    pub fn has_distinct_corners(&self) -> bool {
        let mut e = self.corner_edges();
        e.sort_unstable();
        e.windows(2).all(|w| w[0] != w[1])
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        self.0.letters().into_iter()
    }

    pub fn fits(&self, ambient: Ambient) -> bool {
        self.letters().all(|l| ambient.contains(l))
    }
}

impl fmt::Display for GeometricSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for GeometricSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<GeometricSquare> {
        Ok(canonicalize(s.parse()?))
    }
}

pub(crate) fn corner_edges_of(q: &SquareQuad) -> [LinkEdge; 4] {
    let SquareQuad { a, b, a2, b2 } = *q;
    [
        LinkEdge { h: a.inverse(), v: b },
        LinkEdge { h: a2, v: b.inverse() },
        LinkEdge { h: a2.inverse(), v: b2 },
        LinkEdge { h: a, v: b2.inverse() },
    ]
}

/// An undirected link edge between a horizontal and a vertical letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkEdge {
    pub h: Letter,
    pub v: Letter,
}

impl LinkEdge {
    pub fn new(x: Letter, y: Letter) -> Result<LinkEdge> {
        match (x.axis(), y.axis()) {
            (Axis::Horizontal, Axis::Vertical) => Ok(LinkEdge { h: x, v: y }),
            (Axis::Vertical, Axis::Horizontal) => Ok(LinkEdge { h: y, v: x }),
            _ => Err(Error::MalformedQuad(format!("link edge {{{x}, {y}}} does not cross the bipartition"))),
        }
    }
}

impl fmt::Display for LinkEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.h, self.v)
    }
}

/// `GS_{α,β}` in canonical order.
pub fn all_squares(ambient: Ambient) -> Vec<GeometricSquare> {
    let hs: Vec<Letter> = ambient.horizontal_letters().collect();
    let vs: Vec<Letter> = ambient.vertical_letters().collect();
    let mut out = Vec::new();
    for &a in &hs {
        for &b in &vs {
            for &a2 in &hs {
                for &b2 in &vs {
                    let q = SquareQuad { a, b, a2, b2 };
                    // Loops run in lexicographic order, so keeping only the
                    // quads that are their own class minimum yields a sorted list.
                    if canonicalize(q).canonical() == q {
                        out.push(GeometricSquare(q));
                    }
                }
            }
        }
    }
    out
}
