//! Bounded-degree localization of finite ordered simplicial complexes.
//!
//! The crate turns a finite simplicial complex `S` into a homotopy-equivalent
//! complex `T` of the same dimension in which every vertex lies in at most
//! `M_n = 2^(n-1)(n^2+3n+2) - 2` edges. The construction multiplies the complex
//! by truncated rays and attaches each top simplex at the position given by a
//! proper coloring of the intersection graph, using iterated telescopes to keep
//! attachments from piling up on a single vertex.
//!
//! Alongside the construction lives a verification engine: exact integer
//! homology (sparse elimination followed by Smith normal form), induced maps
//! over fields, greedy collapse oracles, fiber certification and degree audits.
//!
//! Module map:
//! - [`complex`]: vertices, simplices, complexes and simplicial maps.
//! - [`construction`]: colorings, telescopes, the tower, bounds, edge growing
//!   and the mapping telescope.
//! - [`homology`]: chain complexes, Smith normal form, homology and induced maps.
//! - [`verify`]: collapse oracle, fiber reports, audits, lemma checks, generators.
//! - [`suite`]: the end-to-end property suite used by tests and the CLI.

pub mod complex;
pub mod construction;
mod error;
pub mod homology;
pub mod suite;
pub mod verify;

pub use complex::{Complex, CoordVertex, IndexedComplex, Simplex, SimplicialMap};
pub use error::{Error, Result};
