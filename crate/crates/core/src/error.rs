use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("undeclared generator '{name}' at {line}:{col}")]
    UndeclaredGenerator { name: String, line: usize, col: usize },
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range for {1} generators")]
    GeneratorOutOfRange(u32, u32),
    #[error("word has a negative exponent")]
    NegativeExponent,
}

impl WordError {
    /// Rebases a single-line syntax error onto `line` of a larger file.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Self::Syntax { col, msg, .. } => Self::Syntax { line, col, msg },
            Self::UndeclaredGenerator { name, col, .. } => {
                Self::UndeclaredGenerator { name, line, col }
            }
            other => other,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("generator index {index} out of range (presentation has {ngens})")]
    GeneratorOutOfRange { index: u32, ngens: usize },
    #[error("malformed relation: {0}")]
    Malformed(String),
    #[error("subgroup is not central: [{witness}] is nontrivial")]
    NotCentral { witness: String },
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("inconsistent elimination: {0}")]
    Inconsistent(String),
    #[error("presentations differ: {0}")]
    Mismatch(String),
    #[error("target order p^{target} unreachable; candidates reach p^{achieved}")]
    Unreachable { target: usize, achieved: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
