//! Multilevel constellations from binary codes.
//!
//! Constructions A, C, C* and D lift binary codes into periodic point sets
//! `reps + 2^L Zⁿ`. The crate decides latticeness exactly, computes minimum
//! distances and packing efficiencies, and carries the structured routines
//! needed for the Leech lattice as a three-level Construction C*.

pub mod catalog;
pub mod cli;
pub mod codefile;
pub mod constructions;
pub mod ensembles;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod latticeness;
pub mod packing;

pub use constructions::{MainCode, PeriodicConstellation, Source};
pub use error::{Error, Result};
pub use gf2::{BinaryCode, BitWord};
