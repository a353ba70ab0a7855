//! Additive sets in finitely generated abelian groups, Freiman
//! homomorphisms between them, and the limit and colimit constructions of
//! the Freiman categories.
//!
//! All arithmetic is exact. Modules build on each other bottom-up:
//! [`intlat`] (integer normal forms) → [`fgab`] (groups) → [`addset`]
//! (sets, sumsets, doubling) → [`freiman`] (maps) → [`cat`] and
//! [`universal`].

pub mod intlat;
pub mod fgab;
pub mod addset;
pub mod freiman;
pub mod cat;
pub mod universal;
pub mod json;
