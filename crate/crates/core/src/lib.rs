//! Finite simplicial sets and the constructions around non-singular ones:
//! Kan subdivision and the Barratt nerve, desingularization, edens and
//! abysses, Strøm maps with their cobase changes, and integer homology.
//!
//! Everything is finite and exact. Simplices are kept in Eilenberg-Zilber
//! normal form (see [`sset`]), quotients go through a congruence closure (see
//! [`quotient`]), and "weak equivalence" is approximated by an isomorphism on
//! integral homology (see [`homology`]).

pub mod accept;
pub mod cli;
pub mod colimit;
pub mod corpus;
pub mod delta;
pub mod desing;
pub mod error;
pub mod format;
pub mod hom;
pub mod homology;
pub mod iso;
pub mod poset;
pub mod quotient;
pub mod snf;
pub mod sset;
pub mod strom;
pub mod subdivision;

pub use delta::{ElementaryKind, Operator};
pub use error::{Error, Result};
pub use sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId, StandardKind};
