//! Lexer, parser and AST for the Pascal subset.

mod ast;
mod error;
mod lexer;
mod parser;
mod printer;

pub use ast::{
    annotate_nesting, classify_construct, BinaryOp, CaseArm, CaseLabel, Construct, ConstructClass,
    ConstructId, ConstructKind, ConstructNode, Expr, ForDirection, Program, ScalarType, Stmt,
    UnaryOp, VarDecl, WriteArg,
};
pub use error::{FrontendError, Position};
pub use lexer::{tokenize, Keyword, Operator, Punct, Token, TokenKind};
pub use parser::parse_program;

/// Tokenizes and parses in one step.
pub fn parse_source(source: &str) -> Result<Program, FrontendError> {
    let tokens = tokenize(source)?;
    parse_program(&tokens)
}
