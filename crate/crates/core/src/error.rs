//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the algebra, the series layer, the
/// automaton layer and the expression layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Fixed-width arithmetic left the representable range.
    #[error("arithmetic overflow in {0}")]
    Overflow(String),

    /// `star` was applied to an element outside the star domain.
    #[error("star is undefined in {ring} at {value}")]
    StarUndefined { ring: String, value: String },

    /// A matrix star was requested but the entry at the given coordinates
    /// lies outside the star domain of the entry semiring.
    #[error("matrix entry ({row},{col}) = {value} is outside the star domain")]
    EntryNotStarrable {
        row: usize,
        col: usize,
        value: String,
    },

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Two matrices had incompatible shapes for the requested operation.
    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    /// A block split index was outside `1..n`.
    #[error("invalid block split {split} for a matrix of size {size}")]
    BadSplit { split: usize, size: usize },

    /// A mapping handed to `Matrix::permutation` was not a bijection.
    #[error("index mapping is not a bijection")]
    NotBijective,

    /// Rows of unequal length were handed to a matrix constructor.
    #[error("ragged rows: row {row} has length {got}, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },

    /// Two series over different alphabets (or truncation lengths) met.
    #[error("series contexts differ: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    /// A word longer than the truncation length was used.
    #[error("word of length {len} exceeds truncation length {max}")]
    WordTooLong { len: usize, max: usize },

    /// A symbol outside the declared alphabet appeared.
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),

    /// A proper series was required but the empty-word coefficient is nonzero.
    #[error("series is not proper: empty-word coefficient is {0}")]
    NotProper(String),

    /// No power of the series up to the given bound has a zero empty-word
    /// coefficient.
    #[error("series is not cycle-free within power bound {k_max}")]
    NotCycleFree { k_max: usize },

    /// `total_star` needs a coefficient semiring whose star is total.
    #[error("coefficient semiring {0} does not have a total star")]
    CoefficientStarUndefined(String),

    /// The images of a coefficient and a letter under a morphism extension
    /// do not commute, so no well-defined extension exists.
    #[error("morphism images do not commute: {coeff} vs {letter}")]
    CommutationViolated { coeff: String, letter: String },

    /// An automaton construction was invoked on inputs violating its
    /// precondition.
    #[error("automaton precondition violated: {0}")]
    PreconditionViolated(String),

    /// A list had the wrong number of elements.
    #[error("expected {expected} elements, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    /// The expression text failed to parse; `pos` is a 0-based character
    /// offset.
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },

    /// A starred subexpression has a nonzero constant part.
    #[error("ill-starred subexpression: constant part {0} is nonzero")]
    IllStarred(String),

    /// An automaton description (JSON) was malformed.
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// A group table (JSON or in-memory) was malformed.
    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    /// An alphabet description was malformed.
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
}
