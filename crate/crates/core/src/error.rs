use std::fmt;

use thiserror::Error;

/// The birack axioms checked by [`InvolutiveBirack::from_tables`](crate::InvolutiveBirack::from_tables).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Left translations are bijections.
    LeftQuasigroup,
    /// Right translations are bijections.
    RightQuasigroup,
    B1,
    B2,
    B3,
    /// `(x∘y)∘(x•y) = x`
    LeftInvolutive,
    /// `(x∘y)•(x•y) = y`
    RightInvolutive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::LeftQuasigroup => "lq",
            Axiom::RightQuasigroup => "rq",
            Axiom::B1 => "b1",
            Axiom::B2 => "b2",
            Axiom::B3 => "b3",
            Axiom::LeftInvolutive => "linv",
            Axiom::RightInvolutive => "rinv",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("entry ({row}, {col}) = {value} is outside the carrier")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} is not a bijection")]
    RowNotBijective(usize),
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("work limit of {limit} elementary steps exceeded")]
    WorkLimitExceeded { limit: u64 },
    #[error("size {n} exceeds the configured budget of {max} for {what}")]
    SizeOutOfBudget { what: &'static str, n: usize, max: usize },
    #[error("left quasigroup is not right cyclic (witness {0:?})")]
    NotRightCyclic((usize, usize, usize)),
    #[error("left quasigroup is degenerate: x ↦ x\\x is not a bijection")]
    NotNonDegenerate,
    #[error("axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("isotope is not right cyclic (witness {0:?})")]
    IsotopeNotRightCyclic((usize, usize, usize)),
    #[error("birack is not 2-permutational")]
    NotTwoPermutational,
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("generators do not generate the group")]
    GeneratorsDoNotGenerate,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
