//! BM group presentations `⟨A_α ∪ B_β | R⟩`, normal forms and checks of
//! homomorphism / isomorphism certificates between them.
//!
//! Each relator `x₁ y₁ x₂ y₂` gives the rewriting rule `y₁ x₂ → x₁⁻¹ y₂⁻¹`.
//! Taking all four representatives of every square, the link condition
//! makes the rule table total on vertical × horizontal letters. Moving
//! every horizontal letter to the left with these rules, with free
//! reduction in between, brings any word to the shape `u · v` with `u` a
//! reduced horizontal word and `v` a reduced vertical word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relation::BMRelation;
use crate::square::{canonicalize, Ambient, Axis, Letter, SquareQuad};

/// A word over `A_α^{±1} ⊔ B_β^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    #[must_use]
    pub fn free_reduce(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Parses the compact `a, b, c, d` notation used for (2,2)-presentations,
    /// e.g. `"bc^{-1}bd^{-1}"`, with `a, b, c, d ↦ a1, a2, b1, b2`.
    /// Inverses may be written `^{-1}`, `^-1` or `⁻¹`.
    pub fn parse_abcd(s: &str) -> Result<Word> {
        let bad = || Error::Parse(format!("invalid word {s:?}"));
        let mut letters = Vec::new();
        let mut rest = s.trim();
        while let Some(c) = rest.chars().next() {
            rest = &rest[c.len_utf8()..];
            if c.is_whitespace() {
                continue;
            }
            let mut l = alias_letter(c).ok_or_else(bad)?;
            for suffix in ["^{-1}", "^-1", "⁻¹"] {
                if let Some(r) = rest.strip_prefix(suffix) {
                    l = l.inverse();
                    rest = r;
                    break;
                }
            }
            letters.push(l);
        }
        Ok(Word(letters))
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// `a, b, c, d` as shorthand for `a1, a2, b1, b2`.
pub fn alias_letter(c: char) -> Option<Letter> {
    match c {
        'a' => Some(Letter::a(1)),
        'b' => Some(Letter::a(2)),
        'c' => Some(Letter::b(1)),
        'd' => Some(Letter::b(2)),
        _ => None,
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            fmt::Display::fmt(l, f)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Space-separated letters such as `"a1 a2 B1"`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Word> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// A BM presentation with its rewriting table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMPresentation {
    relation: BMRelation,
    /// Indexed by `y.slot() * 2α + x.slot()`; holds the rewrite `(x̂, ŷ)` of `y · x`.
    table: Vec<(Letter, Letter)>,
}

impl BMPresentation {
    pub fn from_relation(relation: BMRelation) -> Result<BMPresentation> {
        let ambient = relation.ambient();
        let width = 2 * ambient.alpha;
        let mut table: Vec<Option<(Letter, Letter)>> = vec![None; width * 2 * ambient.beta];
        for s in relation.squares() {
            for q in s.representatives() {
                let key = q.b.slot() * width + q.a2.slot();
                if table[key].is_some() {
                    return Err(Error::Corrupt(format!("two rules rewrite {} {}", q.b, q.a2)));
                }
                table[key] = Some((q.a.inverse(), q.b2.inverse()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                e.ok_or_else(|| {
                    let y = Letter::from_slot(Axis::Vertical, k / width);
                    let x = Letter::from_slot(Axis::Horizontal, k % width);
                    Error::Corrupt(format!("no rule rewrites {y} {x}"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(BMPresentation { relation, table })
    }

    /// Builds a presentation from relator words of the form `x y x′ y′`.
    pub fn from_relators(ambient: Ambient, relators: &[Word]) -> Result<BMPresentation> {
        let squares = relators
            .iter()
            .map(|w| match w.letters() {
                &[a, b, a2, b2] => SquareQuad::new(a, b, a2, b2).map(canonicalize),
                _ => Err(Error::MalformedQuad(format!("relator {w} is not of the form x y x′ y′"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BMPresentation::from_relation(BMRelation::new(ambient, squares)?)
    }

    pub fn relation(&self) -> &BMRelation {
        &self.relation
    }

    pub fn ambient(&self) -> Ambient {
        self.relation.ambient()
    }

    /// Generators in the order `a_1 … a_α, b_1 … b_β`.
    pub fn generators(&self) -> Vec<Letter> {
        let ambient = self.ambient();
        (1..=ambient.alpha).map(Letter::a).chain((1..=ambient.beta).map(Letter::b)).collect()
    }

    /// One relator per square, read off its canonical quad.
    pub fn relators(&self) -> Vec<Word> {
        self.relation.squares().iter().map(|s| Word(s.canonical().letters().to_vec())).collect()
    }

    /// The rewrite `(x̂, ŷ)` with `y · x = x̂ · ŷ`.
    pub fn rule(&self, y: Letter, x: Letter) -> (Letter, Letter) {
        debug_assert!(y.is_vertical() && x.is_horizontal());
        self.table[y.slot() * 2 * self.ambient().alpha + x.slot()]
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        let ambient = self.ambient();
        w.letters().iter().try_for_each(|&l| ambient.check(l))
    }

    /// Horizontal-prefix normal form `u · v`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        let mut u: Vec<Letter> = Vec::new();
        let mut v: Vec<Letter> = Vec::new();
        for &l in w.letters() {
            if l.is_vertical() {
                push_reduced(&mut v, l);
                continue;
            }
            // Carry x leftwards through v, rewriting each `y · x` adjacency.
            let mut x = l;
            for y in v.iter_mut().rev() {
                let (x2, y2) = self.rule(*y, x);
                *y = y2;
                x = x2;
            }
            push_reduced(&mut u, x);
            let mut reduced = Vec::with_capacity(v.len());
            for &y in &v {
                push_reduced(&mut reduced, y);
            }
            v = reduced;
        }
        u.extend(v);
        Ok(Word(u))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.normal_form(w)?.is_empty())
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }
}

/// The four (2,2)-BM groups compared in the isomorphism certificates.
pub const PRESETS: &[(&str, &str)] = &[
    ("gamma4", "acac^{-1}, adad^{-1}, bcbd, bc^{-1}bd^{-1}"),
    ("gamma30", "acad, ac^{-1}ad^{-1}, bcbd, bc^{-1}bd^{-1}"),
    ("gamma5", "acac^{-1}, adad^{-1}, bcb^{-1}c, bdb^{-1}d"),
    ("gamma10", "acac^{-1}, ada^{-1}d, bcbc^{-1}, bdb^{-1}d^{-1}"),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn preset(name: &str) -> Result<BMPresentation> {
    let (_, relators) = PRESETS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Parse(format!("unknown preset {name:?}")))?;
    let words = relators.split(',').map(Word::parse_abcd).collect::<Result<Vec<_>>>()?;
    BMPresentation::from_relators(Ambient::new(2, 2)?, &words)
}

/// Parses a presentation file: relators separated by `;`, `,` or newlines,
/// each either in letter syntax (`a1 b1 A1 B1`) or in the compact
/// `a, b, c, d` notation (`acac^{-1}`). `#` starts a comment. The ambient is
/// the smallest one containing every letter.
pub fn parse_presentation(text: &str) -> Result<BMPresentation> {
    let mut squares = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default();
        for part in line.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()) {
            let word = part.parse::<Word>().or_else(|_| Word::parse_abcd(part)).map_err(|e| e.at_line(n + 1))?;
            let quad = match word.letters() {
                &[a, b, a2, b2] => SquareQuad::new(a, b, a2, b2),
                _ => Err(Error::MalformedQuad(format!("relator {part:?} does not have four letters"))),
            };
            squares.push(canonicalize(quad.map_err(|e| e.at_line(n + 1))?));
        }
    }
    if squares.is_empty() {
        return Err(Error::Parse("presentation has no relators".into()));
    }
    let ambient = crate::relation::infer_ambient(&squares)?;
    BMPresentation::from_relation(BMRelation::new(ambient, squares)?)
}

/// Images of the source generators as words over the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source: BMPresentation,
    target: BMPresentation,
    /// Aligned with `source.generators()`.
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(source: BMPresentation, target: BMPresentation, images: Vec<(Letter, Word)>) -> Result<GeneratorMap> {
        let gens = source.generators();
        let mut slots: Vec<Option<Word>> = vec![None; gens.len()];
        for (g, w) in images {
            let i = gens
                .iter()
                .position(|&x| x == g)
                .ok_or_else(|| Error::Parse(format!("{g} is not a generator of the source")))?;
            target.check_word(&w)?;
            if slots[i].replace(w).is_some() {
                return Err(Error::Parse(format!("generator {g} is mapped twice")));
            }
        }
        let images = slots
            .into_iter()
            .zip(&gens)
            .map(|(w, g)| w.ok_or_else(|| Error::Parse(format!("no image given for generator {g}"))))
            .collect::<Result<_>>()?;
        Ok(GeneratorMap { source, target, images })
    }

    pub fn source(&self) -> &BMPresentation {
        &self.source
    }

    pub fn target(&self) -> &BMPresentation {
        &self.target
    }

    pub fn image_of(&self, g: Letter) -> Word {
        let ambient = self.source.ambient();
        let i = match g.axis() {
            Axis::Horizontal => g.index() - 1,
            Axis::Vertical => ambient.alpha + g.index() - 1,
        };
        if g.is_inverted() {
            self.images[i].inverse()
        } else {
            self.images[i].clone()
        }
    }

    /// The (unreduced) image of a source word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.check_word(w)?;
        Ok(w.letters().iter().flat_map(|&l| self.image_of(l).0).collect())
    }

    /// Letter-wise identity between two presentations on the same ambient.
    pub fn identity(source: BMPresentation, target: BMPresentation) -> Result<GeneratorMap> {
        let images = source.generators().into_iter().map(|g| (g, Word(vec![g]))).collect();
        GeneratorMap::new(source, target, images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateFailure {
    /// Source and target of the two maps do not line up.
    Mismatch,
    /// The image of `relator` under the named map is non-trivial.
    RelatorNotKilled { map: &'static str, relator: Word, normal_form: Word },
    /// `backward(forward(g)) ≠ g` (or the other way round).
    NotInverse { composition: &'static str, generator: Letter, normal_form: Word },
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateFailure::Mismatch => f.write_str("forward and backward maps do not connect the same groups"),
            CertificateFailure::RelatorNotKilled { map, relator, normal_form } => {
                write!(f, "{map} is not a homomorphism: image of relator {relator} reduces to {normal_form}")
            }
            CertificateFailure::NotInverse { composition, generator, normal_form } => {
                let nf = if normal_form.is_empty() { "the empty word".to_string() } else { normal_form.to_string() };
                write!(f, "{composition} sends {generator} to {nf}")
            }
        }
    }
}

fn check_relators(m: &GeneratorMap, name: &'static str) -> Result<Result<(), CertificateFailure>> {
    for r in m.source.relators() {
        let nf = m.target.normal_form(&m.apply(&r)?)?;
        if !nf.is_empty() {
            return Ok(Err(CertificateFailure::RelatorNotKilled { map: name, relator: r, normal_form: nf }));
        }
    }
    Ok(Ok(()))
}

pub fn check_homomorphism(m: &GeneratorMap) -> Result<bool> {
    Ok(check_relators(m, "map")?.is_ok())
}

/// A pair of generator maps claimed to be mutually inverse isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub forward: GeneratorMap,
    pub backward: GeneratorMap,
}

impl IsoCertificate {
    /// Runs every check, returning the first that fails.
    pub fn check(&self) -> Result<Result<(), CertificateFailure>> {
        let (f, b) = (&self.forward, &self.backward);
        if f.target != b.source || b.target != f.source {
            return Ok(Err(CertificateFailure::Mismatch));
        }
        if let Err(e) = check_relators(f, "forward map")? {
            return Ok(Err(e));
        }
        if let Err(e) = check_relators(b, "backward map")? {
            return Ok(Err(e));
        }
        for (outer, inner, name) in [(b, f, "backward ∘ forward"), (f, b, "forward ∘ backward")] {
            for g in inner.source.generators() {
                let nf = inner.source.normal_form(&outer.apply(&inner.image_of(g))?)?;
                if nf.letters() != [g] {
                    return Ok(Err(CertificateFailure::NotInverse {
                        composition: name,
                        generator: g,
                        normal_form: nf,
                    }));
                }
            }
        }
        Ok(Ok(()))
    }
}

pub fn verify_isomorphism(cert: &IsoCertificate) -> Result<bool> {
    Ok(cert.check()?.is_ok())
}

/// Parses a generator token: `a1`, `b2`, … or the shorthand `a`–`d`.
fn parse_generator(tok: &str) -> Result<Letter> {
    let mut chars = tok.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if let Some(l) = alias_letter(c) {
            return Ok(l);
        }
    }
    let l: Letter = tok.parse()?;
    if l.is_inverted() {
        return Err(Error::Parse(format!("{tok} is an inverse, not a generator")));
    }
    Ok(l)
}

/// Certificate text:
///
/// ```text
/// # comment
/// source: gamma4
/// target: gamma30
/// fwd a = a1 a2
/// bwd a1 = a2
/// ```
///
/// `source`/`target` values are handed to `resolve` (preset names or file
/// paths). Generators are written `a1`, `b2`, … or `a`–`d`; images use the
/// letter syntax, with an empty right-hand side for the empty word.
pub fn parse_certificate(
    text: &str,
    mut resolve: impl FnMut(&str) -> Result<BMPresentation>,
) -> Result<IsoCertificate> {
    let mut source = None;
    let mut target = None;
    let mut fwd: Vec<(Letter, Word, usize)> = Vec::new();
    let mut bwd: Vec<(Letter, Word, usize)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |e: Error| e.at_line(line_no);
        if let Some(v) = line.strip_prefix("source:") {
            if source.replace(resolve(v.trim()).map_err(at)?).is_some() {
                return Err(at(Error::Parse("duplicate source".into())));
            }
        } else if let Some(v) = line.strip_prefix("target:") {
            if target.replace(resolve(v.trim()).map_err(at)?).is_some() {
                return Err(at(Error::Parse("duplicate target".into())));
            }
        } else {
            let (kw, rest) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| at(Error::Parse(format!("cannot parse {line:?}"))))?;
            let list = match kw {
                "fwd" => &mut fwd,
                "bwd" => &mut bwd,
                _ => return Err(at(Error::Parse(format!("unknown directive {kw:?}")))),
            };
            let (g, w) = rest.split_once('=').ok_or_else(|| at(Error::Parse("expected '<gen> = <word>'".into())))?;
            list.push((parse_generator(g.trim()).map_err(at)?, w.parse().map_err(at)?, line_no));
        }
    }
    let source = source.ok_or_else(|| Error::Parse("missing 'source:' line".into()))?;
    let target = target.ok_or_else(|| Error::Parse("missing 'target:' line".into()))?;
    let build =
        |src: &BMPresentation, dst: &BMPresentation, entries: Vec<(Letter, Word, usize)>| -> Result<GeneratorMap> {
            let mut images = Vec::with_capacity(entries.len());
            for (g, w, line) in entries {
                if !src.generators().contains(&g) {
                    return Err(Error::Parse(format!("unknown generator {g}")).at_line(line));
                }
                dst.check_word(&w).map_err(|e| e.at_line(line))?;
                if images.iter().any(|(h, _)| *h == g) {
                    return Err(Error::Parse(format!("generator {g} is mapped twice")).at_line(line));
                }
                images.push((g, w));
            }
            GeneratorMap::new(src.clone(), dst.clone(), images)
        };
    let forward = build(&source, &target, fwd)?;
    let backward = build(&target, &source, bwd)?;
    Ok(IsoCertificate { forward, backward })
}
