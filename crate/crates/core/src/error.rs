use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("monomials live in different ambient rings ({0} vs {1} variables)")]
    AmbientMismatch(usize, usize),
    #[error("the constant monomial generates the whole ring")]
    UnitIdeal,
    #[error("generators are not minimal: {0}")]
    NotMinimal(String),
    #[error("ideal is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("vector is not in the span of the cycles")]
    NotInCycleSpan,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("multidegree {0} is not in the lcm-lattice")]
    NotInLattice(String),
    #[error("invalid simplicial complex: {0}")]
    Complex(String),
    #[error("malformed cochain: {0}")]
    Cochain(String),
    #[error("criterion not applicable: {0}")]
    Inapplicable(String),
    #[error("classes live over different fields")]
    FieldMismatch,
    #[error("grading mismatch: {0}")]
    Grading(String),
    #[error("unsupported Massey arity {0} (only 2 and 3 are implemented)")]
    UnsupportedArity(usize),
    #[error("degree cap insufficient: {0}")]
    CapInsufficient(String),
    #[error("power series error: {0}")]
    Series(String),
    #[error("too many {what}: {count} (limit {limit})")]
    TooLarge { what: &'static str, count: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
