//! Exact arithmetic for Witt and Grothendieck-Witt rings of Laurent towers,
//! mod-2 Galois cohomology, and the operations and invariants built from
//! lambda-powers.

pub mod cohomology;
pub mod combinat;
pub mod divided;
pub mod error;
pub mod factorized;
pub mod field;
pub mod gw;
pub mod invariant;
pub mod ring;
pub mod sample;
pub mod series;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
