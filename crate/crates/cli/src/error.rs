use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("unsupported shape n = {n}, k = {k} (need 1 ≤ n ≤ 9, k ≤ n)")]
    Shape { n: usize, k: usize },
    #[error("term {term}: coefficient `{text}` is not a Gaussian rational")]
    Coefficient { term: usize, text: String },
    #[error("term {term}: `{field}` has {got} exponents, expected {n}")]
    ExponentLength { term: usize, field: &'static str, got: usize, n: usize },
    #[error("term {term}: index has {got} entries, expected k = {k}")]
    IndexLength { term: usize, got: usize, k: usize },
    #[error("{}index {index} out of range 1..={n}", term.map(|t| format!("term {t}: ")).unwrap_or_default())]
    IndexOutOfRange { term: Option<usize>, index: u8, n: usize },
    #[error("term {term}: repeated index")]
    RepeatedIndex { term: usize },
    #[error("chart base has {got} entries, expected k = {k}")]
    ChartLength { got: usize, k: usize },
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] twistor_core::Error),
}

impl CliError {
    /// Process exit status: 2 for usage and input errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}
