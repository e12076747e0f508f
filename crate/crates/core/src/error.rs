use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in q-scalar")]
    DivisionByZero,

    #[error("pole at q0 = {0}")]
    Pole(String),

    #[error("rewriting budget exceeded after {steps} steps; trace: {trace}")]
    RewritingBudget { steps: usize, trace: String },

    #[error("incomplete Hopf structure: {0}")]
    IncompleteHopf(String),

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("not convolution-invertible under available strategies: {0}")]
    NotConvolutionInvertible(String),

    #[error("π-preimage not found ≤ {degree} for {target}")]
    PreimageNotFound { target: String, degree: usize },

    #[error("Φ is not an intertwiner: {0}")]
    NotIntertwiner(String),

    #[error("section is not an algebra map: {0}")]
    NotAlgebraMap(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("not expressible: {0}")]
    NotExpressible(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("undeclared symbol `{0}`")]
    Undeclared(String),

    #[error("non-orientable relation `{0}` under the chosen order")]
    NonOrientable(String),

    #[error("usage: {0}")]
    Usage(String),
}
