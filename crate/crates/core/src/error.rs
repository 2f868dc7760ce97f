use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("vertex {0} does not resolve")]
    UnresolvedVertex(String),

    #[error("vertex {0} is not a leaf")]
    NotALeaf(String),

    #[error("slot collision at {0}: target and subtree root share a nonempty slot")]
    SlotCollision(String),

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("tree kind mismatch: {0} vs {1}")]
    KindMismatch(String, String),

    #[error("slot type {slot} out of range 1..={arity}")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("edge above {0} cannot be legally contracted")]
    IllegalContraction(String),

    #[error("type vector must be nonempty and strictly increasing within 1..={0}")]
    BadTypeVector(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} contains the pattern 231")]
    Contains231(String),

    #[error("value {0} does not occur in the permutation")]
    MissingValue(usize),

    #[error("no universal host up to the cap {cap}; sizes {from}..={cap} refuted")]
    CapExceeded { from: usize, cap: usize },

    #[error("{family} size mismatch at d={d}, k={k}: recurrence {recurrence}, constructed {constructed}")]
    SizeMismatch {
        family: String,
        d: usize,
        k: usize,
        recurrence: u128,
        constructed: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("results file: {0}")]
    Io(String),
}
