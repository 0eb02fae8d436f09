use thiserror::Error;

pub type Result<T, E = CobwebError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CobwebError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute `{attribute}` expects a {expected} value")]
    KindMismatch {
        attribute: String,
        expected: &'static str,
    },

    #[error("model has no training data")]
    EmptyModel,

    #[error("snapshot parse error at line {line}, column {column} (byte {offset}): {message}")]
    Snapshot {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },
}

impl CobwebError {
    /// Wraps a serde_json failure, translating its line/column into a byte
    /// offset within `input`.
    pub(crate) fn from_json(err: serde_json::Error, input: &[u8]) -> Self {
        let (line, column) = (err.line(), err.column());
        let mut offset = 0;
        let mut seen_lines = 1;
        for (i, b) in input.iter().enumerate() {
            if seen_lines == line {
                offset = i + column.saturating_sub(1);
                break;
            }
            if *b == b'\n' {
                seen_lines += 1;
            }
        }
        CobwebError::Snapshot {
            line,
            column,
            offset: offset.min(input.len()),
            message: err.to_string(),
        }
    }
}
