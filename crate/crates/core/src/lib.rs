//! Exact certificates for Delaunay polytopes of lattices.
//!
//! The crate builds the root lattice `D_m` with its half-cube and
//! cross-polytope cells, and the three-layer polytopes `P_n` over the
//! lattice `L_n` for even `n ≥ 6`. For any such instance it can
//!
//! - compute the circumscribed sphere and certify that it is empty
//!   ([`delaunay::verify_delaunay`]),
//! - decide extremality from the space of quadrics through the vertices
//!   ([`extremality::certify_extreme`]),
//! - compute the isometry group, its order and vertex orbits
//!   ([`symmetry::automorphisms`]).
//!
//! All arithmetic is exact. The JSON file formats live in [`io`] and the
//! command-line front end in [`cli`].

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod constructions;
pub mod delaunay;
pub mod error;
pub mod exactlin;
pub mod extremality;
pub mod io;
pub mod lattice;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};
