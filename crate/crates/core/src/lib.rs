//! Witt vectors in Buium–Joyal coordinates, δ-rings, arithmetic jet spaces
//! and canonical lifts of ordinary elliptic curves, all in exact arithmetic.

pub mod substrate;
pub mod calculus;
pub mod witt;
pub mod delta;
pub mod jets;
pub mod canlift;
pub mod cli;
