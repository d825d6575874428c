use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("poset has {0} elements; at most {max} are supported", max = crate::subset::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a poset of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cover relation contains a cycle through {0:?}")]
    Cycle(String),
    #[error("order relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order relation is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("order relation is not transitive on ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("directedness is only defined for nonempty subsets")]
    EmptyDirected,
    #[error("subset is not Scott closed")]
    NotClosed,
    #[error("set is not a member of the family")]
    NotMember,
    #[error("map is not monotone: {0} <= {1} but their images are not ordered")]
    NotMonotone(usize, usize),
    #[error("map table has length {got}, expected {expected}")]
    MapShape { got: usize, expected: usize },
    #[error("map image {image} out of range for a codomain of {n} elements")]
    MapImage { image: usize, n: usize },
    #[error("map codomain does not match the target semilattice")]
    CodomainMismatch,
    #[error("pair ({0}, {1}) is consistent but has no least upper bound")]
    NotVSemilattice(usize, usize),
    #[error("brute-force search over {size} elements exceeds the limit of {limit}")]
    BruteForceLimit { size: usize, limit: usize },
    #[error("requested size {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("malformed canonical form")]
    BadCanonicalForm,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
