use thiserror::Error;

/// Errors produced by mask I/O and analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A mask file (PGM or CSV) could not be parsed. Carries the location
    /// of the offending byte or line where one could be determined.
    #[error("format error: {message}{}", location_suffix(.line, .byte))]
    Format {
        message: String,
        /// 1-based line number, when the format is line-oriented.
        line: Option<usize>,
        /// Byte offset into the stream, for binary formats.
        byte: Option<usize>,
    },

    /// An argument violated an operation's preconditions.
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn location_suffix(line: &Option<usize>, byte: &Option<usize>) -> String {
    match (line, byte) {
        (Some(l), _) => format!(" (line {l})"),
        (None, Some(b)) => format!(" (byte {b})"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn format(message: impl Into<String>) -> Self {
        Error::Format {
            message: message.into(),
            line: None,
            byte: None,
        }
    }

    pub(crate) fn format_at_line(message: impl Into<String>, line: usize) -> Self {
        Error::Format {
            message: message.into(),
            line: Some(line),
            byte: None,
        }
    }

    pub(crate) fn format_at_byte(message: impl Into<String>, byte: usize) -> Self {
        Error::Format {
            message: message.into(),
            line: None,
            byte: Some(byte),
        }
    }

    pub(crate) fn argument(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
