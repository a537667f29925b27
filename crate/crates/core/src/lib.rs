//! Exact computation with uniform subgroups of low-dimensional nilpotent Lie groups.
#![no_std]

extern crate alloc;

mod error;
pub mod group;
pub mod classify;
pub mod lattice;
pub mod lie;
pub mod linalg;

pub use error::{Error, Result};
