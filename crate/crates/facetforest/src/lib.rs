//! File formats, brute-force oracles, instance enumeration, the property
//! harness and the command-line front end for `facetforest-core`.

pub mod cli;
pub mod enumerate;
pub mod format;
pub mod harness;
pub mod oracles;
