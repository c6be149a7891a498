//! Generalised linking diagrams and their composition by pullback.
//!
//! The objects here are finite vertex sets; a morphism is a linking: a
//! bundle of links, each grabbing some vertices on either side, plus a
//! count of free-floating loops. Composition glues two linkings along
//! their shared interface, reads off the resulting paths, and collects
//! every closed circuit as a loop. Brauer diagrams, Temperley-Lieb
//! diagrams, partition-monoid diagrams, and the axiom linkings of
//! multiplicative proof nets all live inside this one category, and their
//! usual compositions are all the same pullback.
//!
//! - [`irel`]: finite sets and injective relations, the ambient category.
//! - [`linking`]: linkings in canonical form, with the loop-deleting
//!   flattening.
//! - [`compose`]: synchronisations, paths, pullback composition, the
//!   mediating map, and a brute-force oracle.
//! - [`families`]: totality/binarity/planarity predicates, the classical
//!   diagram monoids, enumeration and multiplication tables.
//! - [`mll`]: multiplicative formulas, switching correctness, and cut
//!   elimination as linking composition.
//! - [`render`], [`json`]: deterministic drawings and the file formats.

pub mod compose;
pub mod families;
pub mod irel;
pub mod json;
pub mod linking;
pub mod mll;
pub mod render;

pub use compose::{brute_force_syncs, is_synchronisation, mediating, paths, Pullback, Sync};
pub use families::{enumerate, member_of, multiplication_table, Family, FamilyTag};
pub use irel::{InjRel, VertexSet};
pub use linking::{Link, Linking};
pub use mll::{dr_correct, Formula, ProofNet};
