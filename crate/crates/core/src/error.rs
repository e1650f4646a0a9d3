use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("universe has {size} vertices; at most {max} are supported")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("not a facet: {0:?}")]
    NotAFacet(Vec<String>),

    #[error("not a face: {0:?}")]
    NotAFace(Vec<String>),

    #[error("{what} {value} outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("resource limit: {what} is {requested}, limit {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("complex is disconnected ({components} components); use the forest check")]
    Disconnected { components: usize },

    #[error("the unit ideal is not a square-free monomial ideal of this kind")]
    UnitIdeal,

    #[error("localization target does not contain the ideal (some generator misses it)")]
    NotContained,

    #[error("invalid field characteristic {0}: need a prime 2 <= p < 2^31")]
    InvalidPrime(u64),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("degree box did not stabilize after {rounds} rounds:\n{previous}\n{last}")]
    BoxUnstable {
        rounds: usize,
        previous: String,
        last: String,
    },
}
