//! Finite 2-degenerate 3-computads.
//!
//! A 2-degenerate 3-computad has one 0-cell and no 1-cells. Its 2-cells then
//! compose commutatively (Eckmann–Hilton), so a 3-cell is just a source and a
//! target multiset of 2-cells. This crate provides:
//!
//! - [`multiset`]: the free commutative monoid and pairings with fixed margins;
//! - [`Computad`] and [`Morphism`] with validation, composition, hom-set
//!   enumeration ([`enumerate_homs`]) and isomorphism search
//!   ([`find_isomorphism`]);
//! - [`constructions`]: binary products, coequalisers and induced maps;
//! - [`oracle`]: exhaustive universal-property checks over bounded families;
//! - [`counterexample`]: a coequaliser that `- × B` does not preserve, so the
//!   category of 3-computads is not cartesian closed.
//!
//! Batch work in [`oracle`] runs on rayon when the `parallel` feature is on
//! (the default); see [`par::Strategy`].

pub mod computad;
pub mod constructions;
pub mod counterexample;
pub mod error;
pub mod format;
pub mod homs;
pub mod iso;
pub mod morphism;
pub mod multiset;
pub mod oracle;
pub mod par;
mod union_find;

pub use computad::{validate_computad, Computad, ThreeCell, Violation};
pub use error::{Error, Result};
pub use homs::{count_homs, enumerate_homs, SearchBudget};
pub use iso::find_isomorphism;
pub use morphism::{validate_morphism, Morphism};
pub use multiset::{enumerate_pairings, make_multiset, Label, Multiset, Pairing};
