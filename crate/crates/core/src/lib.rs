//! Effective construction of free Schottky subgroups for groups acting acylindrically on trees,
//! with the companion entropy, small-cancellation, orbifold and counting tools.

pub mod census;
pub mod entropy;
pub mod group;
pub mod orbifold;
pub mod presentation;
pub mod schottky;
pub mod smallcancel;
pub mod tree;
