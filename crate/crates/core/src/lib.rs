//! Symbol algebra, reflection groups and eigentope analysis for generalized
//! regular polytopes.
//!
//! Polytopes are handled through their E-symbols `[ε, δ(, η)]`. The relative
//! reflection groups act on E-symbols by rational maps ([`generators3`],
//! [`generators4`]); the absolute group acts on natural frames by 4×4
//! matrices. Words over the generators are composed left to right.

pub mod eigen;
pub mod eigenspace;
pub mod error;
pub mod generators3;
pub mod generators4;
pub mod metric;
pub mod par;
pub mod relations;
pub mod symbols;
pub mod tables;
pub mod tessellation;
pub mod words;

pub use error::{Error, Result};
pub use symbols::{ESymbol, ESymbol3, ESymbol4, FSymbol, HSymbol, RhoVector};
pub use words::{Context, Word};
