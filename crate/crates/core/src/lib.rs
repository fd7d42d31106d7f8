//! Exact dilation machinery for degree-3 plane geometric graphs on the
//! square lattice, and a backtracking prover whose refutations come with
//! independently checkable certificates.
//!
//! Everything here is `no_std` with `alloc`; file formats, rendering and the
//! command-line driver live in the companion `dil3` crate.

#![no_std]

extern crate alloc;

pub mod cert;
pub mod dilation;
pub mod exact;
pub mod lattice;
pub mod paths;
pub mod prover;

pub use exact::Zr2;
pub use lattice::{Edge, GraphPatch, Point, Symmetry};
