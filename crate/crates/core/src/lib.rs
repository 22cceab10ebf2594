//! Exact computation in the groups `A(p, c)` and `G(p, c) = <A, t>`, free
//! product words with constants, and verification of mixed identities.

pub mod coset_enum;
pub mod error;
pub mod grigorchuk;
pub mod identity_lab;
pub mod limit_group;
pub mod mif_search;
pub mod mixed_words;
pub mod pc_group;
pub mod presentations;
pub mod syntax;

pub use error::{Error, Result};
