//! Facet ideals of simplicial complexes: the facet/non-face dictionary
//! between complexes and square-free monomial ideals, vertex covers and
//! minimal primes, simplicial trees and forests, and exact homological
//! checks (Cohen–Macaulayness, depth, Koszul homology, sliding depth).
//!
//! The crate is `no_std` and only needs `alloc`. Vertex sets are `u64`
//! bitmasks, so a universe holds at most [`MAX_VERTICES`] vertices.

#![no_std]

extern crate alloc;

pub mod complex;
pub mod covers;
pub mod error;
pub mod forest;
pub mod homology;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod vertex;

pub use complex::{SimplicialComplex, DEFAULT_SUBCOMPLEX_BOUND};
pub use error::{Error, Result};
pub use ideal::{facet_complex, facet_ideal, nonface_complex, nonface_ideal, MonomialIdeal};
pub use koszul::KoszulLimits;
pub use linalg::FieldSpec;
pub use vertex::{Universe, VertexSet, MAX_VERTICES};

/// Resource caps shared by the exhaustive and homological checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest facet count for which all subcomplexes are enumerated.
    pub subcomplex_bound: usize,
    pub koszul: KoszulLimits,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subcomplex_bound: DEFAULT_SUBCOMPLEX_BOUND,
            koszul: KoszulLimits::default(),
        }
    }
}
