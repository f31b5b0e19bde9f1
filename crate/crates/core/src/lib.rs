//! Graded Hopf algebras over F2 centred on the mod-2 dual Steenrod algebra.
//!
//! Everything here is pure computation on finite windows of graded objects;
//! file formats, charts and the command line live in the `hopf-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod comodule;
pub mod error;
pub mod f2;
pub mod graded;
pub mod homalg;
pub mod milnor;
pub mod spectral;
pub mod subquot;

pub use error::{Error, Result};
