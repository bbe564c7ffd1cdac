use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} exceeds the configured cap of {1}")]
    DegreeCap(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("cycle notation parse error: {0}")]
    Parse(String),
    #[error("empty generator list")]
    NoGenerators,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("conjugacy class has more than {0} elements")]
    ClassCap(usize),

    #[error("invalid field: {0}")]
    Field(String),
    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("unknown catalog entry {0}")]
    UnknownGroup(String),
    #[error("catalog entry {name} is invalid: {reason}")]
    Catalog { name: String, reason: String },
    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("character table {name} rejected: {reason}")]
    Table { name: String, reason: String },
    #[error("class index {0} out of range")]
    ClassIndex(usize),

    #[error("unsupported family {0}")]
    UnsupportedFamily(String),
    #[error("expression error: {0}")]
    Expr(String),
    #[error("invalid counting scenario: {0}")]
    Scenario(String),

    #[error("search budget must be at least 1")]
    Budget,
    #[error("invalid search task: {0}")]
    Task(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reads and parses a JSON data file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: shown, source })
}
