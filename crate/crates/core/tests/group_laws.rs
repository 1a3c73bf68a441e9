//! Normal forms, rewriting tables and homomorphisms on random words and on
//! every (2,2)-BM group.

mod common;

use bmrel::group::{parse_certificate, preset_names};
use bmrel::{all_relations, preset, BMPresentation, SearchOptions, Word};
use common::*;

const WORDS_PER_PRESET: usize = 1000;
const MAX_LEN: usize = 40;

#[test]
fn random_words_satisfy_the_group_laws() {
    let mut rng = rng();
    let mut failures = Vec::new();
    for name in preset_names() {
        failures.extend(group_law_failures(&preset(name).unwrap(), &mut rng, WORDS_PER_PRESET, MAX_LEN));
    }
    assert!(failures.is_empty(), "seed {}: {} failures, first: {}", seed(), failures.len(), failures[0]);
}

#[test]
fn relators_of_every_22_group_are_trivial() {
    let rels = all_relations(amb(2, 2), &SearchOptions::default()).unwrap();
    assert_eq!(rels.len(), 541);
    for r in rels {
        let p = BMPresentation::from_relation(r.clone()).unwrap();
        for s in r.squares() {
            for q in s.representatives() {
                let w = Word::from(q.letters().to_vec());
                assert!(p.is_trivial(&w).unwrap(), "{w} in {r}");
            }
        }
    }
}

#[test]
fn rewriting_tables_are_total_and_match_the_squares() {
    for r in all_relations(amb(2, 2), &SearchOptions::default()).unwrap() {
        let p = BMPresentation::from_relation(r.clone()).unwrap();
        for y in r.ambient().vertical_letters() {
            for x in r.ambient().horizontal_letters() {
                let (x2, y2) = p.rule(y, x);
                assert!(x2.is_horizontal() && y2.is_vertical());
                // y x = x2 y2 means x2⁻¹ y x y2⁻¹ is a relator
                let w = Word::from(vec![x2.inverse(), y, x, y2.inverse()]);
                assert!(r.contains(&w.to_string().parse().unwrap()), "{w} in {r}");
            }
        }
    }
}

#[test]
fn square_lookup_is_a_bijection() {
    for r in all_relations(amb(2, 2), &SearchOptions::default()).unwrap() {
        for a in r.ambient().horizontal_letters() {
            for b in r.ambient().vertical_letters() {
                let matches: Vec<_> =
                    r.squares().iter().flat_map(|s| s.representatives()).filter(|q| q.a == a && q.b == b).collect();
                assert_eq!(matches.len(), 1);
                let (s, a2, b2) = r.lookup_square(a, b).unwrap();
                assert_eq!((a2, b2), (matches[0].a2, matches[0].b2));
                assert!(s.representatives().contains(&matches[0]));
            }
        }
    }
}

#[test]
fn certificate_maps_respect_equality() {
    let mut rng = rng();
    for file in ["gamma4_gamma30.cert", "gamma5_gamma10.cert"] {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        let cert = parse_certificate(&text, preset).unwrap();
        let (f, g) = (&cert.forward, &cert.backward);
        for _ in 0..300 {
            let w = random_word(&mut rng, f.source(), 24);
            let nw = f.source().normal_form(&w).unwrap();
            let fw = f.apply(&w).unwrap();
            assert!(f.target().equal(&fw, &f.apply(&nw).unwrap()).unwrap(), "{file}: {w}");
            assert!(f.source().equal(&g.apply(&fw).unwrap(), &w).unwrap(), "{file}: {w}");
        }
    }
}
