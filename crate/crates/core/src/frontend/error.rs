use std::fmt;

use thiserror::Error;

/// 1-based line/column of a source character.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl Position {
    pub fn new(line: u32, column: u32) -> Self {
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrontendError {
    #[error("lexical error at {pos}: {message}")]
    Lexical { pos: Position, message: String },
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: Position,
        expected: String,
        found: String,
    },
    #[error("semantic error at {pos}: {message}")]
    Semantic { pos: Position, message: String },
}

impl FrontendError {
    pub fn position(&self) -> Position {
        match self {
            FrontendError::Lexical { pos, .. }
            | FrontendError::Syntax { pos, .. }
            | FrontendError::Semantic { pos, .. } => *pos,
        }
    }
}
