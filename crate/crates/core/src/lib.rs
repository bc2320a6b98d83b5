//! Automorphism groups of algebraic curves, computed group-theoretically.
//!
//! The crate materializes small permutation groups, searches for generating
//! systems satisfying the Riemann–Hurwitz relation, restricts ramification
//! types to subgroups, decides which actions are full automorphism groups,
//! and counts components of the resulting loci via braid orbits.

pub mod braid;
pub mod catalog;
pub mod classify;
pub mod config;
pub mod covers;
pub mod error;
pub mod fullness;
pub mod group;
pub mod reference;
pub mod restriction;

pub use config::Caps;
pub use error::{Error, Result};
