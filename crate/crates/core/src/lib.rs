//! Enumeration and analysis of BM relations: square complexes with one
//! vertex whose universal cover is a product of two regular trees.
//!
//! * [`square`]: letters, quads and geometric squares.
//! * [`relation`]: links, the link condition and BM relations.
//! * [`search`]: exhaustive enumeration of `R_{α,β}`.
//! * [`psi`]: the level-raising construction `R_{1,β} → R_{1,β+1}`.
//! * [`group`], [`abelian`]: BM groups, normal forms, isomorphism
//!   certificates and abelianizations.
//! * [`store`], [`config`], [`cli`]: level files and the `bmrel` tool.

pub mod abelian;
pub mod cli;
pub mod config;
pub mod error;
pub mod group;
pub mod psi;
pub mod relation;
pub mod search;
pub mod square;
pub mod store;

pub use abelian::{abelianization, classify_by_abelianization, AbelianInvariants, ClassReport};
pub use error::{Error, Result};
pub use group::{check_homomorphism, preset, verify_isomorphism, BMPresentation, GeneratorMap, IsoCertificate, Word};
pub use psi::{build_level, kimberley_count, phi, psi, BuildOptions, RelationLevel};
pub use relation::{diagnose_relation, link, lookup_square, validate_relation, BMRelation, LinkGraph};
pub use search::{all_relations, count_relations, enumerate_relations, Enumeration, Mode, SearchOptions};
pub use square::{all_squares, canonicalize, Ambient, Axis, GeometricSquare, Letter, LinkEdge, SquareQuad};
